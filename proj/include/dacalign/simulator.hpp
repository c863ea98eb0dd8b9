#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

namespace dacalign::sim {

/// flags[t] is true iff gold alignment t is 1-to-1.
using Arrangement = std::vector<bool>;

struct SimConfig {
    std::size_t n = 1;        // total alignments
    double r = 0.5;           // probability that an alignment is 1-to-1
    std::uint64_t trials = 10000;
    std::uint64_t seed = 42;
};

/// Throws dacalign::ValidationError unless n >= 1, 0 <= r <= 1 and trials >= 1.
void validate(const SimConfig& cfg);

/// The generator is std::mt19937_64; its output sequence is fixed by the standard.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(Rng& rng);

/// Each flag independently true with probability cfg.r.
Arrangement sample_arrangement(const SimConfig& cfg, Rng& rng);

/// Positions t (1 <= t <= n-2) whose flags t-1, t, t+1 are all true.
std::vector<std::size_t> delimiter_positions(const Arrangement& a);

/// Longest run of positions between consecutive delimiters (n if there are none).
std::size_t max_chunk_size(const Arrangement& a);

struct Estimate {
    double mean = 0.0;
    double standard_error = 0.0;
};

/// Monte Carlo mean and standard error of max_chunk_size.
///
/// Trials are drawn in fixed blocks, each from its own generator seeded with
/// (seed, block index), so the estimate depends only on (n, r, trials, seed) and
/// not on `jobs`.
Estimate expected_max_chunk(const SimConfig& cfg, std::size_t jobs = 1);

constexpr std::size_t kMaxExhaustiveN = 20;

/// Exact expectation over all 2^n arrangements weighted by r^#true (1-r)^#false.
double exhaustive_expected_max_chunk(std::size_t n, double r);

/// Largest max_chunk_size over all arrangements of length n with exactly m false flags.
std::size_t worst_case_max_chunk(std::size_t n, std::size_t m);

struct SweepRow {
    std::size_t n = 0;
    double r = 0.0;
    Estimate estimate;
};

/// One row per (n, r), n-major. Every row uses `seed`. With `exact`, rows hold the
/// exhaustive expectation and a zero standard error.
std::vector<SweepRow> sweep(const std::vector<std::size_t>& n_list, const std::vector<double>& r_list,
                            std::uint64_t trials, std::uint64_t seed, bool exact = false, std::size_t jobs = 1);

/// CSV with header `n,r,mean,stderr`; r, mean and stderr with 6 decimals.
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace dacalign::sim
