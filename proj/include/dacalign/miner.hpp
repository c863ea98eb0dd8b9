#pragma once

#include <cstddef>
#include <vector>

#include "dacalign/core.hpp"
#include "dacalign/embed.hpp"

namespace dacalign {

/// A mined 1-to-1 pair. Indices are relative to the matrices it was mined from.
struct Candidate {
    std::size_t src = 0;
    std::size_t tgt = 0;
    double cosine = 0.0;
    double margin = 0.0;

    friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// Mean cosine of every row to its k nearest rows of the other matrix.
///
/// These are the two denominators of the ratio margin; computing them once lets
/// callers score many pairs without repeating the neighbor search.
struct MarginContext {
    std::vector<double> src_neighborhood;
    std::vector<double> tgt_neighborhood;
};

MarginContext margin_context(const EmbeddingMatrix& src, const EmbeddingMatrix& tgt, std::size_t k_nn,
                             std::size_t jobs = 1);

/// Ratio margin from precomputed neighborhoods. Non-positive denominators and
/// negative ratios give 0.
double margin_from_context(double cosine, double src_neighborhood, double tgt_neighborhood);

/// Ratio margin of source row i against target row j:
///   cos(x_i, y_j) / (mean_kNN(x_i)/2 + mean_kNN(y_j)/2)
double margin_score(std::size_t i, std::size_t j, const EmbeddingMatrix& src, const EmbeddingMatrix& tgt,
                    std::size_t k_nn);

/// Pairs that are mutual best by margin and whose cosine reaches `cos_threshold`.
/// Zero rows never participate. Sorted by source index.
std::vector<Candidate> mine_candidates(const EmbeddingMatrix& src, const EmbeddingMatrix& tgt, std::size_t k_nn,
                                       double cos_threshold, std::size_t jobs = 1);

/// Longest subsequence strictly increasing in both coordinates.
///
/// Input is stably sorted by source index first. Patience sorting with binary
/// search over target indices; each pile keeps its most recent element.
std::vector<Candidate> longest_monotone_chain(std::vector<Candidate> pairs);

/// Chain members whose predecessor (i-1, j-1) and successor (i+1, j+1) are also in the chain.
std::vector<Delimiter> select_hard_delimiters(const std::vector<Candidate>& chain, std::size_t n_src,
                                              std::size_t n_tgt);

struct Segmentation {
    std::vector<Bead> fixed_beads;
    std::vector<Chunk> chunks;
};

/// Splits [0, n_src) x [0, n_tgt) at each delimiter. Delimiters become fixed 1-to-1
/// beads; the ranges strictly between them become chunks (empty-both chunks dropped).
Segmentation segment(std::size_t n_src, std::size_t n_tgt, const std::vector<Delimiter>& delimiters);

/// segment() applied inside `chunk`; delimiter indices are document-global.
Segmentation segment(const Chunk& chunk, const std::vector<Delimiter>& delimiters);

}  // namespace dacalign
