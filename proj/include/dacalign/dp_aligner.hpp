#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "dacalign/core.hpp"

namespace dacalign {

/// Ordered set of allowed bead types. Order is the DP tie-break: earlier types win.
class BeadSet {
public:
    /// Throws ValidationError unless the set contains 1-1, 1-0 and 0-1.
    explicit BeadSet(std::vector<BeadType> types);

    /// 1-0, 0-1, 1-1, 1-2, 2-1, 2-2.
    static BeadSet standard();
    /// standard() plus 1-3, 3-1, 1-4, 4-1, 1-5, 5-1.
    static BeadSet extended();

    const std::vector<BeadType>& types() const { return types_; }
    bool contains(BeadType type) const;
    std::size_t max_src() const { return max_src_; }
    std::size_t max_tgt() const { return max_tgt_; }

private:
    std::vector<BeadType> types_;
    std::size_t max_src_ = 0;
    std::size_t max_tgt_ = 0;
};

/// Prior probability of each bead type, used as relative weights (not renormalized).
class BeadPriors {
public:
    BeadPriors() = default;
    explicit BeadPriors(std::map<BeadType, double> priors) : priors_(std::move(priors)) {}

    /// 1-1: 0.89, 1-0/0-1: 0.0099, 2-1/1-2: 0.089, 2-2: 0.011, 1-n/n-1 (n = 3..5): 0.011.
    static BeadPriors defaults();

    /// Throws ValidationError for a type without a prior.
    double prior(BeadType type) const;
    /// -log(prior(type)).
    double cost(BeadType type) const;

private:
    std::map<BeadType, double> priors_;
};

/// Cost of pairing a source span with a target span; lower is better.
///
/// Spans index into the documents the scorer was built for.
class BeadScorer {
public:
    virtual ~BeadScorer() = default;
    virtual double cost(Span src, Span tgt) const = 0;
    virtual std::size_t source_size() const = 0;
    virtual std::size_t target_size() const = 0;
};

/// Length-based bead cost from character counts:
///   -log(2 (1 - Phi(|z|))) - log(prior),  z = (c l1 - l2) / sqrt(s2 mu),  mu = (l1 + l2 / c) / 2
/// with c = 1 and s2 = 6.8. The tail probability is floored at 1e-12.
double gale_church_cost(std::size_t l1, std::size_t l2, BeadType type, const BeadPriors& priors);

/// Standard normal CDF.
double normal_cdf(double x);

class GaleChurchScorer : public BeadScorer {
public:
    GaleChurchScorer(std::vector<std::size_t> src_lengths, std::vector<std::size_t> tgt_lengths,
                     BeadPriors priors = BeadPriors::defaults());

    double cost(Span src, Span tgt) const override;
    std::size_t source_size() const override { return src_prefix_.size() - 1; }
    std::size_t target_size() const override { return tgt_prefix_.size() - 1; }

private:
    static constexpr std::size_t kCacheSide = 8;

    double prior_cost(std::size_t a, std::size_t b) const;

    std::vector<std::size_t> src_prefix_;
    std::vector<std::size_t> tgt_prefix_;
    BeadPriors priors_;
    double prior_cache_[kCacheSide][kCacheSide];
};

/// Beads covering one chunk, in document order, with global sentence indices.
struct ChunkAlignment {
    Chunk chunk;
    std::vector<Bead> beads;
    double cost = 0.0;
};

/// Minimum-cost monotone bead sequence covering `chunk` exactly (full quadratic DP).
ChunkAlignment align_chunk(const Chunk& chunk, const BeadScorer& scorer, const BeadSet& beads);

struct Anchor {
    std::size_t src = 0;
    std::size_t tgt = 0;

    friend bool operator==(const Anchor&, const Anchor&) = default;
};

/// DP restricted to lattice nodes within `band` (Chebyshev distance) of the path
/// through the chunk corners and the anchor pairs. A unit-step staircase along that
/// path is always searchable, so a feasible alignment exists for any band.
///
/// Anchors use global indices and must be strictly increasing and inside the chunk.
ChunkAlignment banded_align(const Chunk& chunk, const BeadScorer& scorer, const BeadSet& beads,
                            const std::vector<Anchor>& anchors, std::size_t band);

/// Sum of scorer costs over beads.
double alignment_cost(const std::vector<Bead>& beads, const BeadScorer& scorer);

}  // namespace dacalign
