#pragma once

// Independent reference implementations used to check the library.

#include <cstdint>
#include <functional>
#include <vector>

#include "dacalign/core.hpp"
#include "dacalign/dp_aligner.hpp"
#include "dacalign/miner.hpp"

namespace testkit {

using RawMatrix = std::vector<std::vector<double>>;

RawMatrix to_raw(const std::vector<float>& values, std::size_t dim);

/// Cosine from raw (unnormalized) vectors; 0 if either is zero.
double raw_cosine(const std::vector<double>& u, const std::vector<double>& v);

/// Mean of the k largest cosines of `row` against all rows of `other`.
double raw_knn_mean(const std::vector<double>& row, const RawMatrix& other, std::size_t k);

double oracle_margin(std::size_t i, std::size_t j, const RawMatrix& src, const RawMatrix& tgt, std::size_t k);

/// Enumerates every pair, computes its margin, keeps mutual bests above the threshold.
std::vector<dacalign::Candidate> oracle_mine(const RawMatrix& src, const RawMatrix& tgt, std::size_t k,
                                             double threshold);

/// O(n^2) LIS over target indices after sorting by source index.
std::size_t oracle_lis_length(std::vector<dacalign::Candidate> pairs);

/// Scorer returning a fixed random cost per (source span, target span), drawn lazily.
class TableScorer : public dacalign::BeadScorer {
public:
    TableScorer(std::size_t n_src, std::size_t n_tgt, std::uint64_t seed, bool integers);
    double cost(dacalign::Span src, dacalign::Span tgt) const override;
    std::size_t source_size() const override { return n_src_; }
    std::size_t target_size() const override { return n_tgt_; }

private:
    std::size_t n_src_;
    std::size_t n_tgt_;
    std::vector<double> costs_;
};

/// Minimum total cost over every bead sequence that covers the chunk, found by
/// enumerating all sequences.
double exhaustive_best_cost(const dacalign::Chunk& chunk, const dacalign::BeadScorer& scorer,
                            const dacalign::BeadSet& beads);

/// Expected maximum chunk size by enumerating arrangements recursively.
double oracle_expected_max_chunk(std::size_t n, double r);

/// Largest chunk of an arrangement, from an explicit list of delimiter positions.
std::size_t oracle_max_chunk(const std::vector<bool>& arrangement);

}  // namespace testkit
