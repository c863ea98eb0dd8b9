#include <algorithm>
#include <cmath>
#include <numeric>

#include "dacalign/dp_aligner.hpp"
#include "dacalign/error.hpp"

namespace dacalign {

namespace {

constexpr double kRatio = 1.0;        // expected target characters per source character
constexpr double kVariance = 6.8;     // variance of that ratio per source character
constexpr double kTailFloor = 1e-12;

std::vector<std::size_t> prefix_sums(const std::vector<std::size_t>& lengths) {
    std::vector<std::size_t> prefix(lengths.size() + 1, 0);
    std::partial_sum(lengths.begin(), lengths.end(), prefix.begin() + 1);
    return prefix;
}

}  // namespace

BeadPriors BeadPriors::defaults() {
    return BeadPriors({
        {{1, 1}, 0.89},
        {{1, 0}, 0.0099},
        {{0, 1}, 0.0099},
        {{2, 1}, 0.089},
        {{1, 2}, 0.089},
        {{2, 2}, 0.011},
        {{1, 3}, 0.011},
        {{3, 1}, 0.011},
        {{1, 4}, 0.011},
        {{4, 1}, 0.011},
        {{1, 5}, 0.011},
        {{5, 1}, 0.011},
    });
}

double BeadPriors::prior(BeadType type) const {
    auto it = priors_.find(type);
    if (it == priors_.end()) {
        throw ValidationError("no prior for bead type " + to_string(type));
    }
    return it->second;
}

double BeadPriors::cost(BeadType type) const {
    return -std::log(prior(type));
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

namespace {

double length_cost(std::size_t l1, std::size_t l2) {
    double z = 0.0;
    if (l1 + l2 > 0) {
        double mean = (double(l1) + double(l2) / kRatio) / 2.0;
        z = (kRatio * double(l1) - double(l2)) / std::sqrt(kVariance * mean);
    }
    // 2 (1 - Phi(|z|)) == erfc(|z| / sqrt 2), without cancellation in the tail.
    double tail = std::max(std::erfc(std::abs(z) / std::sqrt(2.0)), kTailFloor);
    return -std::log(tail);
}

}  // namespace

double gale_church_cost(std::size_t l1, std::size_t l2, BeadType type, const BeadPriors& priors) {
    return length_cost(l1, l2) + priors.cost(type);
}

GaleChurchScorer::GaleChurchScorer(std::vector<std::size_t> src_lengths, std::vector<std::size_t> tgt_lengths,
                                   BeadPriors priors)
    : src_prefix_(prefix_sums(src_lengths)), tgt_prefix_(prefix_sums(tgt_lengths)), priors_(std::move(priors)) {
    for (std::size_t a = 0; a < kCacheSide; ++a) {
        for (std::size_t b = 0; b < kCacheSide; ++b) {
            prior_cache_[a][b] = std::nan("");
            if (a + b > 0) {
                try {
                    prior_cache_[a][b] = priors_.cost({a, b});
                } catch (const ValidationError&) {
                    // unknown types are reported when scored
                }
            }
        }
    }
}

double GaleChurchScorer::cost(Span src, Span tgt) const {
    std::size_t l1 = src_prefix_[src.end] - src_prefix_[src.begin];
    std::size_t l2 = tgt_prefix_[tgt.end] - tgt_prefix_[tgt.begin];
    return length_cost(l1, l2) + prior_cost(src.size(), tgt.size());
}

double GaleChurchScorer::prior_cost(std::size_t a, std::size_t b) const {
    if (a < kCacheSide && b < kCacheSide) {
        double cached = prior_cache_[a][b];
        if (!std::isnan(cached)) {
            return cached;
        }
    }
    return priors_.cost({a, b});
}

}  // namespace dacalign
