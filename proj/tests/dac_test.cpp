#include <doctest.h>

#include <random>

#include "dacalign/dac.hpp"
#include "dacalign/document.hpp"
#include "dacalign/error.hpp"
#include "dacalign/evaluation.hpp"
#include "synthetic.hpp"

using namespace dacalign;

namespace {

EmbeddingMatrix orthogonal(std::size_t n, std::size_t dim) {
    std::vector<float> v(n * dim, 0.0f);
    for (std::size_t i = 0; i < n; ++i) v[i * dim + i % dim] = 1.0f;
    return EmbeddingMatrix(dim, v);
}

GaleChurchScorer scorer_for(const testkit::SyntheticPair& p) {
    return GaleChurchScorer(char_lengths(p.src), char_lengths(p.tgt));
}

}  // namespace

TEST_CASE("identical documents with perfect signal align 1-1") {
    auto emb = orthogonal(10, 10);
    std::vector<std::size_t> len{12, 40, 7, 33, 25, 18, 60, 9, 14, 21};
    GaleChurchScorer s(len, len);
    auto r = dac_align(emb, emb, s, DacConfig{});
    REQUIRE(r.alignment.beads.size() == 10);
    for (std::size_t i = 0; i < 10; ++i) CHECK(r.alignment.beads[i] == one_to_one(i, i));
    CHECK(r.delimiters.size() == 8);
}

TEST_CASE("all-zero embeddings fall back to a single full DP") {
    EmbeddingMatrix zs(4, std::vector<float>(6 * 4, 0.0f));
    EmbeddingMatrix zt(4, std::vector<float>(5 * 4, 0.0f));
    GaleChurchScorer s({10, 20, 30, 40, 50, 60}, {30, 30, 40, 50, 60});
    auto r = dac_align(zs, zt, s, DacConfig{});
    CHECK(r.delimiters.empty());
    CHECK(r.stats.chunks == 1);
    CHECK(r.alignment.beads == align_chunk({{0, 6}, {0, 5}}, s, BeadSet::standard()).beads);
}

TEST_CASE("embedding rows must match the scorer") {
    auto emb = orthogonal(3, 3);
    GaleChurchScorer s({1, 2}, {1, 2, 3});
    CHECK_THROWS_AS(dac_align(emb, emb, s, DacConfig{}), ValidationError);
    DacConfig bad;
    bad.max_chunk = 0;
    CHECK_THROWS_AS(validate(bad), ValidationError);
}

TEST_CASE("dac is about as accurate as the whole-document DP") {
    double dac_f1 = 0, full_f1 = 0;
    const int pairs = 20;
    for (int p = 0; p < pairs; ++p) {
        testkit::SyntheticOptions o;
        o.beads = 15 + p;
        o.seed = 1000 + p;
        auto pair = testkit::make_synthetic(o);
        auto s = scorer_for(pair);
        auto r = dac_align(pair.src_emb, pair.tgt_emb, s, DacConfig{});
        CHECK_FALSE(validate_alignment_set(r.alignment).has_value());
        AlignmentSet full{align_chunk({{0, pair.src.size()}, {0, pair.tgt.size()}}, s, BeadSet::standard()).beads,
                          pair.src.size(), pair.tgt.size()};
        dac_f1 += strict_prf(r.alignment, pair.gold).f1;
        full_f1 += strict_prf(full, pair.gold).f1;
    }
    CHECK(dac_f1 / pairs >= full_f1 / pairs - 0.02);
}

TEST_CASE("oversized chunks with interior signal are split recursively") {
    // Identity embeddings everywhere except three zero rows that break the global
    // chain around index 10, leaving one chunk larger than max_chunk. Inside it the
    // local chain finds new delimiters.
    const std::size_t n = 30;
    std::vector<float> v(n * n, 0.0f);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0f;
    auto src = EmbeddingMatrix(n, v);
    for (std::size_t z : {9u, 11u, 13u}) v[z * n + z] = 0.0f;
    auto tgt = EmbeddingMatrix(n, v);
    std::vector<std::size_t> len(n, 20);
    GaleChurchScorer s(len, len);

    Chunk chunk{{8, 15}, {8, 15}};
    DacConfig cfg;
    cfg.max_chunk = 3;
    auto split = recurse_or_band(chunk, src, tgt, s, cfg, 0);
    CHECK(split.stats.recursive_splits == 0);  // zero rows leave no surrounded pair inside
    CHECK(split.stats.banded_chunks == 1);

    Chunk wide{{0, 30}, {0, 30}};
    auto rec = recurse_or_band(wide, src, tgt, s, cfg, 0);
    CHECK(rec.stats.recursive_splits >= 1);
    CHECK_FALSE(rec.delimiters.empty());
    CHECK_FALSE(validate_chunk_beads(rec.alignment.beads, wide).has_value());

    auto capped = recurse_or_band(wide, src, tgt, s, cfg, cfg.max_depth);
    CHECK(capped.stats.recursive_splits == 0);
    CHECK(capped.stats.banded_chunks == 1);
    CHECK_FALSE(validate_chunk_beads(capped.alignment.beads, wide).has_value());
}

TEST_CASE("chunk without candidates uses the full DP") {
    EmbeddingMatrix z(2, std::vector<float>(10 * 2, 0.0f));
    std::vector<std::size_t> len{5, 9, 12, 30, 2, 8, 8, 17, 3, 40};
    GaleChurchScorer s(len, len);
    DacConfig cfg;
    cfg.max_chunk = 2;
    Chunk chunk{{0, 10}, {0, 10}};
    auto r = recurse_or_band(chunk, z, z, s, cfg, 0);
    CHECK(r.stats.full_chunks == 1);
    CHECK(r.alignment.beads == align_chunk(chunk, s, BeadSet::standard()).beads);
}

TEST_CASE("merge") {
    ChunkAlignment left{{{0, 1}, {0, 1}}, {one_to_one(0, 0)}, 0.0};
    ChunkAlignment right{{{2, 3}, {2, 3}}, {one_to_one(2, 2)}, 0.0};
    auto a = merge({one_to_one(1, 1)}, {left, right}, 3, 3);
    REQUIRE(a.beads.size() == 3);
    CHECK(a.beads[1] == one_to_one(1, 1));

    ChunkAlignment overlap{{{0, 2}, {0, 2}}, {{{0, 2}, {0, 2}}}, 0.0};
    CHECK_THROWS_WITH_AS(merge({one_to_one(1, 1)}, {overlap, right}, 3, 3), doctest::Contains("coverage"),
                         ValidationError);
}

TEST_CASE("merge of segment pieces round-trips a known alignment") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        testkit::SyntheticOptions o;
        o.beads = 30;
        o.seed = 500 + trial;
        auto gold = testkit::make_synthetic(o).gold;
        std::vector<Delimiter> truth = true_hard_delimiters(gold);
        std::vector<Delimiter> subset;
        for (const auto& d : truth) {
            if (rng() % 2) subset.push_back(d);
        }
        auto seg = segment(gold.n_src, gold.n_tgt, subset);
        std::vector<ChunkAlignment> pieces;
        for (const auto& c : seg.chunks) {
            ChunkAlignment ca{c, {}, 0.0};
            for (const auto& b : gold.beads) {
                bool inside_src = b.src.empty() ? (b.src.begin >= c.src.begin && b.src.begin <= c.src.end)
                                                : (b.src.begin >= c.src.begin && b.src.end <= c.src.end);
                bool inside_tgt = b.tgt.empty() ? (b.tgt.begin >= c.tgt.begin && b.tgt.begin <= c.tgt.end)
                                                : (b.tgt.begin >= c.tgt.begin && b.tgt.end <= c.tgt.end);
                bool is_fixed = std::any_of(seg.fixed_beads.begin(), seg.fixed_beads.end(),
                                            [&](const Bead& f) { return f == b; });
                if (inside_src && inside_tgt && !is_fixed) ca.beads.push_back(b);
            }
            pieces.push_back(ca);
        }
        auto merged = merge(seg.fixed_beads, pieces, gold.n_src, gold.n_tgt);
        CHECK(merged == gold);
    }
}

TEST_CASE("output does not depend on jobs") {
    testkit::SyntheticOptions o;
    o.beads = 300;
    o.seed = 77;
    auto pair = testkit::make_synthetic(o);
    auto s = scorer_for(pair);
    DacConfig cfg;
    cfg.max_chunk = 5;
    auto one = dac_align(pair.src_emb, pair.tgt_emb, s, cfg);
    cfg.jobs = 4;
    auto four = dac_align(pair.src_emb, pair.tgt_emb, s, cfg);
    CHECK(one.alignment == four.alignment);
    CHECK(one.delimiters.size() == four.delimiters.size());
}
