#include "dacalign/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "dacalign/error.hpp"
#include "dacalign/parallel.hpp"

namespace dacalign::sim {

namespace {

constexpr std::uint64_t kBlockTrials = 1024;

struct Moments {
    std::uint64_t count = 0;
    std::uint64_t sum = 0;
    unsigned __int128 sum_sq = 0;
};

// Scans flags once, tracking the last delimiter position.
std::size_t max_chunk_of(const std::vector<char>& flags) {
    const std::size_t n = flags.size();
    std::size_t best = 0;
    std::size_t chunk_start = 0;  // first position after the previous delimiter
    for (std::size_t t = 1; t + 1 < n; ++t) {
        if (flags[t - 1] && flags[t] && flags[t + 1]) {
            best = std::max(best, t - chunk_start);
            chunk_start = t + 1;
        }
    }
    return std::max(best, n - chunk_start);
}

std::size_t max_chunk_of_mask(std::uint32_t mask, std::size_t n) {
    std::size_t best = 0;
    std::size_t chunk_start = 0;
    for (std::size_t t = 1; t + 1 < n; ++t) {
        if (((mask >> (t - 1)) & 7u) == 7u) {
            best = std::max(best, t - chunk_start);
            chunk_start = t + 1;
        }
    }
    return std::max(best, n - chunk_start);
}

void check_exhaustive(std::size_t n) {
    if (n < 1 || n > kMaxExhaustiveN) {
        throw ValidationError("exhaustive enumeration needs 1 <= n <= " + std::to_string(kMaxExhaustiveN) +
                              ", got " + std::to_string(n));
    }
}

}  // namespace

void validate(const SimConfig& cfg) {
    if (cfg.n < 1) {
        throw ValidationError("--n must be at least 1");
    }
    if (!(cfg.r >= 0.0 && cfg.r <= 1.0)) {
        throw ValidationError("--r must lie in [0, 1]");
    }
    if (cfg.trials < 1) {
        throw ValidationError("--trials must be at least 1");
    }
}

double uniform01(Rng& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

Arrangement sample_arrangement(const SimConfig& cfg, Rng& rng) {
    Arrangement a(cfg.n);
    for (std::size_t t = 0; t < cfg.n; ++t) {
        a[t] = uniform01(rng) < cfg.r;
    }
    return a;
}

std::vector<std::size_t> delimiter_positions(const Arrangement& a) {
    std::vector<std::size_t> out;
    for (std::size_t t = 1; t + 1 < a.size(); ++t) {
        if (a[t - 1] && a[t] && a[t + 1]) {
            out.push_back(t);
        }
    }
    return out;
}

std::size_t max_chunk_size(const Arrangement& a) {
    if (a.empty()) {
        throw ValidationError("arrangement must contain at least one alignment");
    }
    std::vector<char> flags(a.begin(), a.end());
    return max_chunk_of(flags);
}

Estimate expected_max_chunk(const SimConfig& cfg, std::size_t jobs) {
    validate(cfg);
    const std::uint64_t blocks = (cfg.trials + kBlockTrials - 1) / kBlockTrials;
    std::vector<Moments> per_block(blocks);

    parallel_for(blocks, jobs, [&](std::size_t b) {
        std::seed_seq seq{std::uint32_t(cfg.seed), std::uint32_t(cfg.seed >> 32), std::uint32_t(b),
                          std::uint32_t(std::uint64_t(b) >> 32)};
        Rng rng(seq);
        const std::uint64_t begin = b * kBlockTrials;
        const std::uint64_t end = std::min<std::uint64_t>(cfg.trials, begin + kBlockTrials);
        std::vector<char> flags(cfg.n);
        Moments m;
        for (std::uint64_t trial = begin; trial < end; ++trial) {
            for (std::size_t t = 0; t < cfg.n; ++t) {
                flags[t] = uniform01(rng) < cfg.r;
            }
            std::uint64_t g = max_chunk_of(flags);
            ++m.count;
            m.sum += g;
            m.sum_sq += (unsigned __int128)(g * g);
        }
        per_block[b] = m;
    });

    Moments total;
    for (const auto& m : per_block) {
        total.count += m.count;
        total.sum += m.sum;
        total.sum_sq += m.sum_sq;
    }
    const double count = double(total.count);
    Estimate est;
    est.mean = double(total.sum) / count;
    if (total.count > 1) {
        // Sample variance from exact integer moments: (sum_sq - sum^2 / N) / (N - 1).
        long double s = (long double)total.sum;
        long double var = ((long double)total.sum_sq - s * s / (long double)count) / (long double)(count - 1);
        est.standard_error = var > 0 ? double(std::sqrt(var / (long double)count)) : 0.0;
    }
    return est;
}

double exhaustive_expected_max_chunk(std::size_t n, double r) {
    check_exhaustive(n);
    if (!(r >= 0.0 && r <= 1.0)) {
        throw ValidationError("r must lie in [0, 1]");
    }
    // Group arrangements by (number of true flags, G) so each probability power is taken once.
    std::vector<std::vector<std::uint64_t>> counts(n + 1, std::vector<std::uint64_t>(n + 1, 0));
    const std::uint32_t total = std::uint32_t(1) << n;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        counts[std::popcount(mask)][max_chunk_of_mask(mask, n)] += 1;
    }
    double expectation = 0.0;
    for (std::size_t ones = 0; ones <= n; ++ones) {
        double p = std::pow(r, double(ones)) * std::pow(1.0 - r, double(n - ones));
        for (std::size_t g = 1; g <= n; ++g) {
            expectation += p * double(counts[ones][g]) * double(g);
        }
    }
    return expectation;
}

std::size_t worst_case_max_chunk(std::size_t n, std::size_t m) {
    check_exhaustive(n);
    if (m > n) {
        throw ValidationError("m must not exceed n");
    }
    std::size_t worst = 0;
    const std::uint32_t total = std::uint32_t(1) << n;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        if (std::size_t(std::popcount(mask)) == n - m) {
            worst = std::max(worst, max_chunk_of_mask(mask, n));
        }
    }
    return worst;
}

std::vector<SweepRow> sweep(const std::vector<std::size_t>& n_list, const std::vector<double>& r_list,
                            std::uint64_t trials, std::uint64_t seed, bool exact, std::size_t jobs) {
    if (n_list.empty() || r_list.empty()) {
        throw ValidationError("sweep needs at least one n and one r");
    }
    std::vector<SweepRow> rows;
    for (std::size_t n : n_list) {
        for (double r : r_list) {
            SweepRow row{n, r, {}};
            if (exact) {
                row.estimate.mean = exhaustive_expected_max_chunk(n, r);
            } else {
                row.estimate = expected_max_chunk({n, r, trials, seed}, jobs);
            }
            rows.push_back(row);
        }
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "n,r,mean,stderr\n";
    char buf[128];
    for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%zu,%.6f,%.6f,%.6f\n", row.n, row.r, row.estimate.mean,
                      row.estimate.standard_error);
        out << buf;
    }
}

}  // namespace dacalign::sim
