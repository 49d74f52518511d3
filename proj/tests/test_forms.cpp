#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <vector>

#include <stabclass/forms.hpp>

#include "test_util.hpp"

using namespace stabclass;
using testutil::code_of;

namespace {

bool mat_eq(const Mat2& x, const Mat2& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
}

bool in_list(const Mat2& m, const std::vector<Mat2>& list) {
    return std::any_of(list.begin(), list.end(), [&](const Mat2& x) { return mat_eq(m, x); });
}

// Every integer matrix with P^T G P = sign * G, entries scanned over a box.
// Isometries of this Gram matrix have entries in {-1,0,1}, so a box of
// radius 3 is already exhaustive with margin.
std::vector<Mat2> search_box(int sign, int radius) {
    std::vector<Mat2> hits;
    for (int a = -radius; a <= radius; ++a)
        for (int b = -radius; b <= radius; ++b)
            for (int c = -radius; c <= radius; ++c)
                for (int d = -radius; d <= radius; ++d) {
                    Mat2 p{a, b, c, d};
                    Mat2 g = gram_transform(p);
                    Mat2 want{sign * kHyperbolicGram.a, sign * kHyperbolicGram.b,
                              sign * kHyperbolicGram.c, sign * kHyperbolicGram.d};
                    if (mat_eq(g, want)) hits.push_back(p);
                }
    return hits;
}

ExtSymForm form(int sign, long long modulus, long long f1, long long f2) {
    return make_form(sign, modulus, f1, f2, false);
}

} // namespace

TEST_CASE("exhaustive search finds exactly four isometries") {
    auto hits = search_box(+1, 3);
    auto group = isometry_group_hyperbolic();
    REQUIRE(hits.size() == 4);
    for (const Mat2& m : group)
        CHECK(in_list(m, hits));
}

TEST_CASE("exhaustive search finds exactly four sign-reversing maps") {
    auto hits = search_box(-1, 3);
    auto anti = antiisometries_hyperbolic();
    REQUIRE(hits.size() == 4);
    for (const Mat2& m : anti)
        CHECK(in_list(m, hits));
}

TEST_CASE("the eight signed permutations form a group") {
    auto all = signed_permutation_group();
    REQUIRE(all.size() == 8);
    for (const Mat2& x : all) {
        CHECK((mat_det(x) == 1 || mat_det(x) == -1));
        for (const Mat2& y : all)
            CHECK(in_list(mat_mul(x, y), all));
    }
    // No duplicates.
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            CHECK(!mat_eq(all[i], all[j]));
}

TEST_CASE("marking action composes contravariantly on row vectors") {
    std::mt19937_64 rng(1234);
    auto all = signed_permutation_group();
    for (int trial = 0; trial < 100; ++trial) {
        MarkingPair f{Int(rng() % 200) - 100, Int(rng() % 200) - 100};
        const Mat2& p = all[rng() % all.size()];
        const Mat2& q = all[rng() % all.size()];
        CHECK(marking_apply(marking_apply(f, p), q) == marking_apply(f, mat_mul(p, q)));
    }
}

TEST_CASE("construction validates its inputs") {
    CHECK(code_of([] { make_form(0, 0, 1, 1, false); }) == "invalid-argument");
    CHECK(code_of([] { make_form(2, 0, 1, 1, false); }) == "invalid-argument");
    CHECK(code_of([] { make_form(1, -24, 1, 1, false); }) == "invalid-argument");
    // A nonzero quadratic refinement needs an even modulus and even markings.
    CHECK(code_of([] { make_form(1, 7, 2, 2, true); }) == "parity-violation");
    CHECK(code_of([] { make_form(1, 24, 22, 3, true); }) == "parity-violation");
    CHECK(code_of([] { make_form(1, 0, 1, 2, true); }) == "parity-violation");
    CHECK(code_of([] { make_form(1, 24, 22, 4, true); }).empty());
    CHECK(code_of([] { make_form(1, 0, -2, 4, true); }).empty());
    // Modular markings come out reduced.
    ExtSymForm e = form(+1, 24, -2, 27);
    CHECK(e.f1 == 22);
    CHECK(e.f2 == 3);
}

TEST_CASE("oriented equivalence over the integers") {
    CHECK(oriented_equivalent(form(+1, 0, 3, 2), form(+1, 0, 2, 3)));
    CHECK(oriented_equivalent(form(+1, 0, 3, 2), form(+1, 0, -3, -2)));
    CHECK(!oriented_equivalent(form(+1, 0, 3, 2), form(+1, 0, 3, -2)));
    CHECK(!oriented_equivalent(form(+1, 0, 3, 2), form(-1, 0, 3, 2)));
    CHECK(!oriented_equivalent(form(+1, 0, 3, 2), form(+1, 0, 6, 1)));
}

TEST_CASE("equivalence with orientation reversal allowed") {
    // Same sign: still only the four orientation-preserving moves.
    CHECK(!unoriented_equivalent(form(+1, 0, 3, 2), form(+1, 0, 3, -2)));
    CHECK(unoriented_equivalent(form(+1, 0, 3, 2), form(+1, 0, -2, -3)));
    // Opposite signs: matched through a sign-reversing map.
    CHECK(unoriented_equivalent(form(+1, 0, 3, 2), form(-1, 0, 3, -2)));
    CHECK(unoriented_equivalent(form(+1, 0, 2, -3), form(-1, 0, 2, 3)));
    CHECK(!unoriented_equivalent(form(+1, 0, 3, 2), form(-1, 0, 3, 2)));
}

TEST_CASE("modular equivalence wraps around") {
    CHECK(oriented_equivalent(form(+1, 24, 22, 3), form(+1, 24, 2, 21)));
    CHECK(oriented_equivalent(form(+1, 24, 5, 7), form(+1, 24, 19, 17)));
    CHECK(!oriented_equivalent(form(+1, 24, 5, 7), form(+1, 24, 5, 17)));
}

TEST_CASE("mismatched targets are not comparable") {
    CHECK(code_of([] {
              oriented_equivalent(form(+1, 24, 2, 3), form(+1, 0, 2, 3));
          }) == "invalid-argument");
    CHECK(code_of([] {
              unoriented_equivalent(make_form(1, 24, 2, 4, true), make_form(1, 24, 2, 4, false));
          }) == "invalid-argument");
}

TEST_CASE("canonical representatives") {
    CHECK(canonical_pair(form(+1, 0, 3, 2), false) == MarkingPair{2, 3});
    CHECK(canonical_pair(form(+1, 24, 22, 3), false) == MarkingPair{2, 21});
    CHECK(canonical_pair(form(+1, 0, 2, -3), true) == MarkingPair{2, 3});
    CHECK(canonical_pair(form(+1, 0, 2, -3), false) == MarkingPair{2, -3});
    CHECK(canonical_pair(form(+1, 0, 0, 0), true) == MarkingPair{0, 0});
}

TEST_CASE("class invariant separates orbits exactly") {
    // Within a fixed target the invariant must agree exactly with the
    // relation that allows reversal.
    std::mt19937_64 rng(0xf002ba11ULL);
    auto sample = [&](long long modulus) {
        int sign = (rng() % 2) ? +1 : -1;
        Int f1, f2;
        if (modulus == 0) {
            f1 = Int(rng() % 13) - 6;
            f2 = Int(rng() % 13) - 6;
        } else {
            f1 = Int(rng() % modulus);
            f2 = Int(rng() % modulus);
        }
        return make_form(sign, modulus, f1, f2, false);
    };
    for (long long modulus : {0LL, 24LL}) {
        for (int trial = 0; trial < 400; ++trial) {
            ExtSymForm e1 = sample(modulus), e2 = sample(modulus);
            bool related = unoriented_equivalent(e1, e2);
            bool same_key = unoriented_class_invariant(e1) == unoriented_class_invariant(e2);
            CHECK(related == same_key);
        }
    }
}

TEST_CASE("orbit counting formula matches brute force") {
    CHECK(orbit_count_pairs_formula(1) == 1);
    CHECK(orbit_count_pairs_formula(2) == 3);
    CHECK(orbit_count_pairs_formula(12) == 43);
    CHECK(orbit_count_pairs_formula(24) == 157);
    CHECK(orbit_count_pairs_formula(120) == 3661);
    for (long long n : {1LL, 2LL, 3LL, 7LL, 12LL, 24LL, 25LL, 120LL, 241LL})
        CHECK(orbit_count_pairs_formula(n) == orbit_count_pairs_bruteforce(n));
    CHECK(code_of([] { orbit_count_pairs_bruteforce(20001); }) == "invalid-argument");
    CHECK(code_of([] { orbit_count_pairs_formula(0); }) == "invalid-argument");
}
