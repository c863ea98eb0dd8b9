#include <doctest.h>

#include "dacalign/error.hpp"
#include "dacalign/evaluation.hpp"

using namespace dacalign;

namespace {

AlignmentSet from_types(std::initializer_list<BeadType> types) {
    AlignmentSet a;
    for (auto t : types) {
        a.beads.push_back({{a.n_src, a.n_src + t.src}, {a.n_tgt, a.n_tgt + t.tgt}});
        a.n_src += t.src;
        a.n_tgt += t.tgt;
    }
    return a;
}

}  // namespace

TEST_CASE("strict prf") {
    auto gold = from_types({{1, 1}, {2, 1}, {1, 1}});
    auto p = strict_prf(gold, gold);
    CHECK(p.precision == 1.0);
    CHECK(p.recall == 1.0);
    CHECK(p.f1 == 1.0);

    AlignmentSet g{{one_to_one(0, 0), {{1, 3}, {1, 2}}}, 3, 2};
    AlignmentSet t{{one_to_one(0, 0), one_to_one(1, 1), {{2, 3}, {2, 2}}}, 3, 2};
    p = strict_prf(t, g);
    CHECK(p.precision == doctest::Approx(0.5));
    CHECK(p.recall == doctest::Approx(0.5));
    CHECK(p.f1 == doctest::Approx(0.5));

    AlignmentSet nulls{{{{0, 1}, {0, 0}}, {{1, 1}, {0, 1}}}, 1, 1};
    p = strict_prf(nulls, AlignmentSet{{one_to_one(0, 0)}, 1, 1});
    CHECK(p.precision == 0.0);
    CHECK(p.recall == 0.0);
    CHECK(p.f1 == 0.0);

    CHECK_THROWS_AS(strict_prf(g, gold), ValidationError);
}

TEST_CASE("true hard delimiters") {
    auto five = true_hard_delimiters(from_types({{1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}}));
    REQUIRE(five.size() == 3);
    CHECK(five[0].src_idx == 1);
    CHECK(five[2].tgt_idx == 3);
    CHECK(true_hard_delimiters(from_types({{1, 1}, {2, 1}, {1, 1}})).empty());
    auto mixed = true_hard_delimiters(from_types({{1, 1}, {1, 1}, {1, 1}, {1, 2}, {1, 1}, {1, 1}, {1, 1}}));
    REQUIRE(mixed.size() == 2);
    CHECK(mixed[0].src_idx == 1);
    CHECK(mixed[0].tgt_idx == 1);
    CHECK(mixed[1].src_idx == 5);
    CHECK(mixed[1].tgt_idx == 6);
}

TEST_CASE("delimiter prf") {
    auto gold = from_types({{1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}, {1, 1}});
    auto truth = true_hard_delimiters(gold);
    REQUIRE(truth.size() == 4);
    auto p = delimiter_prf(truth, gold);
    CHECK(p.f1 == 1.0);
    p = delimiter_prf({}, gold);
    CHECK(p.precision == 0.0);
    CHECK(p.recall == 0.0);
    p = delimiter_prf({truth[0], truth[2]}, gold);
    CHECK(p.precision == 1.0);
    CHECK(p.recall == doctest::Approx(0.5));
    CHECK(prf_from_counts(0, 0, 0).f1 == 0.0);
}
