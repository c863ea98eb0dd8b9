#include "dacalign/evaluation.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "dacalign/error.hpp"

namespace dacalign {

namespace {

using SpanPair = std::pair<Span, Span>;

std::vector<SpanPair> non_null(const AlignmentSet& a) {
    std::vector<SpanPair> out;
    for (const Bead& bead : a.beads) {
        if (!bead.is_null()) {
            out.emplace_back(bead.src, bead.tgt);
        }
    }
    return out;
}

double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : double(num) / double(den);
}

}  // namespace

Prf prf_from_counts(std::size_t correct, std::size_t predicted, std::size_t reference) {
    Prf out;
    out.precision = ratio(correct, predicted);
    out.recall = ratio(correct, reference);
    double sum = out.precision + out.recall;
    out.f1 = sum == 0.0 ? 0.0 : 2.0 * out.precision * out.recall / sum;
    return out;
}

Prf strict_prf(const AlignmentSet& test, const AlignmentSet& gold) {
    if (test.n_src != gold.n_src || test.n_tgt != gold.n_tgt) {
        throw ValidationError("test covers " + std::to_string(test.n_src) + "/" + std::to_string(test.n_tgt) +
                              " sentences but gold covers " + std::to_string(gold.n_src) + "/" +
                              std::to_string(gold.n_tgt));
    }
    const auto test_beads = non_null(test);
    const auto gold_beads = non_null(gold);
    std::set<SpanPair> gold_set(gold_beads.begin(), gold_beads.end());
    std::size_t correct = 0;
    for (const auto& bead : test_beads) {
        correct += gold_set.count(bead);
    }
    return prf_from_counts(correct, test_beads.size(), gold_beads.size());
}

std::vector<Delimiter> true_hard_delimiters(const AlignmentSet& gold) {
    auto is_one_to_one = [](const Bead& b) { return b.type() == BeadType{1, 1}; };
    std::vector<Delimiter> out;
    for (std::size_t k = 1; k + 1 < gold.beads.size(); ++k) {
        if (is_one_to_one(gold.beads[k - 1]) && is_one_to_one(gold.beads[k]) && is_one_to_one(gold.beads[k + 1])) {
            Delimiter d;
            d.src_idx = gold.beads[k].src.begin;
            d.tgt_idx = gold.beads[k].tgt.begin;
            d.cosine = 1.0;
            out.push_back(d);
        }
    }
    return out;
}

Prf delimiter_prf(const std::vector<Delimiter>& found, const AlignmentSet& gold) {
    std::set<std::pair<std::size_t, std::size_t>> truth;
    for (const Delimiter& d : true_hard_delimiters(gold)) {
        truth.emplace(d.src_idx, d.tgt_idx);
    }
    std::set<std::pair<std::size_t, std::size_t>> predicted;
    for (const Delimiter& d : found) {
        predicted.emplace(d.src_idx, d.tgt_idx);
    }
    std::size_t correct = 0;
    for (const auto& p : predicted) {
        correct += truth.count(p);
    }
    return prf_from_counts(correct, predicted.size(), truth.size());
}

}  // namespace dacalign
