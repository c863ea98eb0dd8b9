#include "dacalign/miner.hpp"

#include <algorithm>
#include <limits>

#include "dacalign/error.hpp"
#include "dacalign/parallel.hpp"

namespace dacalign {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr double kDenominatorGuard = 1e-9;

// Rows per block in the column-best reduction; fixed so results do not depend on jobs.
constexpr std::size_t kRowBlock = 256;

struct Best {
    std::size_t index = kNone;
    double margin = 0.0;
    double cosine = 0.0;

    void offer(std::size_t idx, double m, double c) {
        if (index == kNone || m > margin || (m == margin && idx < index)) {
            index = idx;
            margin = m;
            cosine = c;
        }
    }
};

double mean_score(const std::vector<Neighbor>& neighbors) {
    double sum = 0.0;
    for (const auto& n : neighbors) {
        sum += n.score;
    }
    return neighbors.empty() ? 0.0 : sum / double(neighbors.size());
}

void check_k(std::size_t k_nn, const EmbeddingMatrix& src, const EmbeddingMatrix& tgt) {
    if (src.dim() != tgt.dim()) {
        throw ValidationError("source and target embeddings differ in dimension");
    }
    if (k_nn == 0 || k_nn > std::min(src.rows(), tgt.rows())) {
        throw ValidationError("k_nn = " + std::to_string(k_nn) + " out of range [1, " +
                              std::to_string(std::min(src.rows(), tgt.rows())) + "]");
    }
}

}  // namespace

MarginContext margin_context(const EmbeddingMatrix& src, const EmbeddingMatrix& tgt, std::size_t k_nn,
                             std::size_t jobs) {
    check_k(k_nn, src, tgt);
    MarginContext ctx;
    auto forward = knn(src, tgt, k_nn, jobs);
    ctx.src_neighborhood.reserve(forward.size());
    for (const auto& row : forward) {
        ctx.src_neighborhood.push_back(mean_score(row));
    }
    auto backward = knn(tgt, src, k_nn, jobs);
    ctx.tgt_neighborhood.reserve(backward.size());
    for (const auto& row : backward) {
        ctx.tgt_neighborhood.push_back(mean_score(row));
    }
    return ctx;
}

double margin_from_context(double cosine, double src_neighborhood, double tgt_neighborhood) {
    double denominator = src_neighborhood / 2.0 + tgt_neighborhood / 2.0;
    if (denominator <= kDenominatorGuard) {
        return 0.0;
    }
    return std::max(0.0, cosine / denominator);
}

double margin_score(std::size_t i, std::size_t j, const EmbeddingMatrix& src, const EmbeddingMatrix& tgt,
                    std::size_t k_nn) {
    check_k(k_nn, src, tgt);
    if (i >= src.rows() || j >= tgt.rows()) {
        throw ValidationError("margin_score: row index out of range");
    }
    EmbeddingMatrix x = src.slice({i, i + 1});
    EmbeddingMatrix y = tgt.slice({j, j + 1});
    double src_nb = mean_score(knn(x, tgt, k_nn).front());
    double tgt_nb = mean_score(knn(y, src, k_nn).front());
    return margin_from_context(row_cosine(src, i, tgt, j), src_nb, tgt_nb);
}

std::vector<Candidate> mine_candidates(const EmbeddingMatrix& src, const EmbeddingMatrix& tgt, std::size_t k_nn,
                                       double cos_threshold, std::size_t jobs) {
    check_k(k_nn, src, tgt);
    const MarginContext ctx = margin_context(src, tgt, k_nn, jobs);
    const std::size_t n = src.rows();
    const std::size_t m = tgt.rows();

    std::vector<Best> row_best(n);
    const std::size_t blocks = (n + kRowBlock - 1) / kRowBlock;
    std::vector<std::vector<Best>> col_best_blocks(blocks);

    parallel_for(blocks, jobs, [&](std::size_t b) {
        auto& col_best = col_best_blocks[b];
        col_best.assign(m, Best{});
        const std::size_t end = std::min(n, (b + 1) * kRowBlock);
        for (std::size_t i = b * kRowBlock; i < end; ++i) {
            if (src.is_zero(i)) {
                continue;
            }
            for (std::size_t j = 0; j < m; ++j) {
                if (tgt.is_zero(j)) {
                    continue;
                }
                double c = row_cosine(src, i, tgt, j);
                double mg = margin_from_context(c, ctx.src_neighborhood[i], ctx.tgt_neighborhood[j]);
                row_best[i].offer(j, mg, c);
                col_best[j].offer(i, mg, c);
            }
        }
    });

    std::vector<Best> col_best(m);
    for (const auto& block : col_best_blocks) {
        for (std::size_t j = 0; j < m; ++j) {
            if (block[j].index != kNone) {
                col_best[j].offer(block[j].index, block[j].margin, block[j].cosine);
            }
        }
    }

    std::vector<Candidate> out;
    for (std::size_t i = 0; i < n; ++i) {
        const Best& rb = row_best[i];
        if (rb.index == kNone || col_best[rb.index].index != i) {
            continue;
        }
        if (rb.cosine >= cos_threshold) {
            out.push_back({i, rb.index, rb.cosine, rb.margin});
        }
    }
    return out;
}

std::vector<Candidate> longest_monotone_chain(std::vector<Candidate> pairs) {
    // Equal source indices are visited in descending target order so they cannot chain.
    std::stable_sort(pairs.begin(), pairs.end(), [](const Candidate& a, const Candidate& b) {
        return a.src < b.src || (a.src == b.src && a.tgt > b.tgt);
    });

    std::vector<std::size_t> tops;
    std::vector<std::size_t> predecessor(pairs.size(), kNone);
    for (std::size_t e = 0; e < pairs.size(); ++e) {
        auto pos = std::lower_bound(tops.begin(), tops.end(), pairs[e].tgt,
                                    [&](std::size_t top, std::size_t tgt) { return pairs[top].tgt < tgt; });
        std::size_t pile = static_cast<std::size_t>(pos - tops.begin());
        predecessor[e] = pile > 0 ? tops[pile - 1] : kNone;
        if (pos == tops.end()) {
            tops.push_back(e);
        } else {
            *pos = e;
        }
    }

    std::vector<Candidate> chain;
    chain.reserve(tops.size());
    for (std::size_t e = tops.empty() ? kNone : tops.back(); e != kNone; e = predecessor[e]) {
        chain.push_back(pairs[e]);
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

std::vector<Delimiter> select_hard_delimiters(const std::vector<Candidate>& chain, std::size_t n_src,
                                              std::size_t n_tgt) {
    std::vector<Delimiter> out;
    for (std::size_t p = 1; p + 1 < chain.size(); ++p) {
        const Candidate& c = chain[p];
        const Candidate& prev = chain[p - 1];
        const Candidate& next = chain[p + 1];
        if (c.src == 0 || c.tgt == 0 || c.src + 1 >= n_src || c.tgt + 1 >= n_tgt) {
            continue;
        }
        if (prev.src + 1 == c.src && prev.tgt + 1 == c.tgt && next.src == c.src + 1 && next.tgt == c.tgt + 1) {
            out.push_back({c.src, c.tgt, c.cosine, c.margin});
        }
    }
    return out;
}

Segmentation segment(const Chunk& chunk, const std::vector<Delimiter>& delimiters) {
    Segmentation out;
    std::size_t s = chunk.src.begin;
    std::size_t t = chunk.tgt.begin;
    for (const Delimiter& d : delimiters) {
        if (d.src_idx < s || d.tgt_idx < t || d.src_idx >= chunk.src.end || d.tgt_idx >= chunk.tgt.end) {
            throw ValidationError("delimiter (" + std::to_string(d.src_idx) + ", " + std::to_string(d.tgt_idx) +
                                  ") is not monotone or lies outside the chunk");
        }
        Chunk before{{s, d.src_idx}, {t, d.tgt_idx}};
        if (!before.empty()) {
            out.chunks.push_back(before);
        }
        out.fixed_beads.push_back(one_to_one(d.src_idx, d.tgt_idx));
        s = d.src_idx + 1;
        t = d.tgt_idx + 1;
    }
    Chunk last{{s, chunk.src.end}, {t, chunk.tgt.end}};
    if (!last.empty()) {
        out.chunks.push_back(last);
    }
    return out;
}

Segmentation segment(std::size_t n_src, std::size_t n_tgt, const std::vector<Delimiter>& delimiters) {
    return segment(Chunk{{0, n_src}, {0, n_tgt}}, delimiters);
}

}  // namespace dacalign
