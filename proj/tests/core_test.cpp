#include <doctest.h>

#include <random>
#include <sstream>

#include "dacalign/alignment_io.hpp"
#include "dacalign/core.hpp"
#include "dacalign/error.hpp"

using namespace dacalign;

TEST_CASE("identity alignment is valid") {
    AlignmentSet a{{one_to_one(0, 0), one_to_one(1, 1)}, 2, 2};
    CHECK_FALSE(validate_alignment_set(a).has_value());
}

TEST_CASE("coverage gap names the uncovered index") {
    AlignmentSet a{{one_to_one(0, 0)}, 2, 1};
    auto v = validate_alignment_set(a);
    REQUIRE(v.has_value());
    CHECK(v->message.find("source index 1 uncovered") != std::string::npos);
}

TEST_CASE("overlap names the offending bead") {
    AlignmentSet a{{{{0, 2}, {0, 1}}, one_to_one(1, 1)}, 2, 2};
    auto v = validate_alignment_set(a);
    REQUIRE(v.has_value());
    CHECK(v->bead_index == 1);
    CHECK(v->message.find("source overlap at bead 1") != std::string::npos);
}

TEST_CASE("other violations") {
    SUBCASE("empty bead") {
        AlignmentSet a{{{{0, 0}, {0, 0}}, one_to_one(0, 0)}, 1, 1};
        auto v = validate_alignment_set(a);
        REQUIRE(v.has_value());
        CHECK(v->bead_index == 0);
    }
    SUBCASE("out of range") {
        AlignmentSet a{{{{0, 1}, {0, 3}}}, 1, 2};
        CHECK(validate_alignment_set(a).has_value());
    }
    SUBCASE("target gap") {
        AlignmentSet a{{one_to_one(0, 0), one_to_one(1, 2)}, 2, 3};
        auto v = validate_alignment_set(a);
        REQUIRE(v.has_value());
        CHECK(v->message.find("target index 1 uncovered") != std::string::npos);
    }
    SUBCASE("bead type not allowed") {
        AlignmentSet a{{{{0, 3}, {0, 1}}}, 3, 1};
        CHECK_FALSE(validate_alignment_set(a).has_value());
        CHECK(validate_alignment_set(a, {{1, 1}, {1, 0}, {0, 1}}).has_value());
    }
}

TEST_CASE("null beads contribute empty spans") {
    AlignmentSet a{{{{0, 1}, {0, 0}}, one_to_one(1, 0), {{2, 2}, {1, 2}}}, 2, 2};
    CHECK_FALSE(validate_alignment_set(a).has_value());
}

TEST_CASE("random valid alignments cover each index exactly once") {
    std::mt19937_64 rng(3);
    const BeadType types[] = {{1, 1}, {1, 0}, {0, 1}, {2, 1}, {1, 2}, {2, 2}};
    for (int trial = 0; trial < 200; ++trial) {
        AlignmentSet a;
        std::size_t beads = rng() % 20 + 1;
        for (std::size_t b = 0; b < beads; ++b) {
            BeadType t = types[rng() % 6];
            a.beads.push_back({{a.n_src, a.n_src + t.src}, {a.n_tgt, a.n_tgt + t.tgt}});
            a.n_src += t.src;
            a.n_tgt += t.tgt;
        }
        CHECK_FALSE(validate_alignment_set(a).has_value());

        std::vector<int> src_hits(a.n_src, 0), tgt_hits(a.n_tgt, 0);
        for (const auto& b : a.beads) {
            for (auto s = b.src.begin; s < b.src.end; ++s) ++src_hits[s];
            for (auto t = b.tgt.begin; t < b.tgt.end; ++t) ++tgt_hits[t];
        }
        for (int h : src_hits) CHECK(h == 1);
        for (int h : tgt_hits) CHECK(h == 1);

        // Swapping two non-null beads breaks monotonicity.
        if (a.beads.size() >= 2 && !a.beads[0].is_null() && !a.beads[1].is_null()) {
            std::swap(a.beads[0], a.beads[1]);
            CHECK(validate_alignment_set(a).has_value());
        }
    }
}

TEST_CASE("strict monotonicity of delimiter lists") {
    CHECK(is_strictly_monotone({{1, 1}, {3, 4}}));
    CHECK_FALSE(is_strictly_monotone({{1, 1}, {3, 1}}));
    CHECK_FALSE(is_strictly_monotone({{3, 1}, {1, 2}}));
    CHECK(is_strictly_monotone({}));
}

TEST_CASE("chunk bead validation") {
    Chunk chunk{{2, 4}, {5, 6}};
    CHECK_FALSE(validate_chunk_beads({{{2, 4}, {5, 6}}}, chunk).has_value());
    CHECK(validate_chunk_beads({{{2, 3}, {5, 6}}}, chunk).has_value());
}

TEST_CASE("alignment text round trip") {
    AlignmentSet a{{one_to_one(0, 0), {{1, 3}, {1, 2}}, {{3, 3}, {2, 3}}, {{3, 4}, {3, 3}}}, 4, 3};
    std::ostringstream out;
    write_alignment(out, a);
    CHECK(out.str() == "0:0\n1,2:1\n:2\n3:\n");
    std::istringstream in(out.str());
    CHECK(read_alignment(in) == a);
    CHECK(format_bead({{3, 5}, {5, 6}}) == "3,4:5");
}

TEST_CASE("alignment parse errors carry the line number") {
    std::istringstream gap("0:0\n1,3:1\n");
    CHECK_THROWS_WITH_AS(read_alignment(gap), doctest::Contains("line 2"), ParseError);
    std::istringstream colon("0:0\n0\n");
    CHECK_THROWS_AS(read_alignment(colon), ParseError);
    std::istringstream empty(":\n");
    CHECK_THROWS_AS(read_alignment(empty), ParseError);
    CHECK_THROWS_AS(read_alignment_file("/nonexistent/file"), IoError);
}

TEST_CASE("delimiter listing round trip") {
    std::vector<Delimiter> d{{1, 2, 0.9, 1.25}, {4, 5, 0.75, 1.0}};
    std::ostringstream out;
    write_delimiters(out, d);
    CHECK(out.str() == "1\t2\t0.900000\t1.250000\n4\t5\t0.750000\t1.000000\n");
    std::istringstream in(out.str());
    auto back = read_delimiters(in);
    REQUIRE(back.size() == 2);
    CHECK(back[1].src_idx == 4);
    CHECK(back[1].margin == doctest::Approx(1.0));
    std::istringstream two("3\t4\n");
    CHECK(read_delimiters(two).at(0).tgt_idx == 4);
    std::istringstream bad("3\n");
    CHECK_THROWS_AS(read_delimiters(bad), ParseError);
}
