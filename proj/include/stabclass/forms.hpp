#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "error.hpp"
#include "numeric.hpp"

namespace stabclass {

// 2x2 integer matrix acting on the rank-2 hyperbolic lattice.  Markings are
// row vectors, so a matrix acts on a marking pair by right multiplication.
struct Mat2 {
    int a, b, c, d;

    friend bool operator==(const Mat2& x, const Mat2& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
};

inline Mat2 mat_mul(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

inline int mat_det(const Mat2& x) { return x.a * x.d - x.b * x.c; }

constexpr Mat2 kHyperbolicGram{0, 1, 1, 0};

/// P^T G P for the Gram matrix G of the hyperbolic form.
inline Mat2 gram_transform(const Mat2& p) {
    Mat2 pt{p.a, p.c, p.b, p.d};
    return mat_mul(mat_mul(pt, kHyperbolicGram), p);
}

/// The full isometry group of the rank-2 hyperbolic form over Z:
/// plus/minus identity and plus/minus the basis swap.
inline const std::array<Mat2, 4>& isometry_group_hyperbolic() {
    static const std::array<Mat2, 4> g{{
        {1, 0, 0, 1},
        {-1, 0, 0, -1},
        {0, 1, 1, 0},
        {0, -1, -1, 0},
    }};
    return g;
}

/// All integer matrices carrying the hyperbolic form to its negative
/// (P^T G P = -G).  There are exactly four: they form one coset of the
/// isometry group, obtained by composing it with diag(1,-1); note
/// diag(-1,1) = -diag(1,-1) already lies in that coset.
inline const std::array<Mat2, 4>& antiisometries_hyperbolic() {
    static const std::array<Mat2, 4> g{{
        {1, 0, 0, -1},
        {-1, 0, 0, 1},
        {0, -1, 1, 0},
        {0, 1, -1, 0},
    }};
    return g;
}

/// Isometries and anti-isometries together: the order-8 group of signed
/// permutations of the basis, i.e. swap plus independent negation of each
/// coordinate of a marking pair.
inline std::vector<Mat2> signed_permutation_group() {
    std::vector<Mat2> out;
    for (const auto& p : isometry_group_hyperbolic()) out.push_back(p);
    for (const auto& p : antiisometries_hyperbolic()) out.push_back(p);
    return out;
}

using MarkingPair = std::pair<Int, Int>;

inline MarkingPair marking_apply(const MarkingPair& f, const Mat2& p) {
    return {f.first * p.a + f.second * p.c, f.first * p.b + f.second * p.d};
}

// Extended symmetric form on the rank-2 hyperbolic lattice: a sign for the
// form itself, a marking with values in Z (modulus 0) or Z/modulus, and
// optionally the nonzero quadratic refinement v.  When v is present the
// diagonal condition lambda(x,x) = v(f(x)) mod 2 forces even marking values
// on the standard basis; checking the basis suffices because
// lambda(x+y,x+y) - lambda(x,x) - lambda(y,y) = 2 lambda(x,y) is even and
// v o f is additive mod 2, so the congruence propagates to every x.
struct ExtSymForm {
    int sign = +1;       // +1 for the hyperbolic form, -1 for its negative
    Int modulus = 0;     // 0: marking in Z; N >= 1: marking in Z/N
    Int f1, f2;          // marking of the standard basis vectors
    bool v_nonzero = false;

    MarkingPair marking() const { return {f1, f2}; }
};

inline ExtSymForm make_form(int sign, const Int& modulus, Int f1, Int f2, bool v_nonzero) {
    if (sign != 1 && sign != -1) fail("invalid-argument", "form sign must be +1 or -1");
    if (modulus < 0) fail("invalid-argument", "marking modulus must be >= 0");
    if (modulus > 0) {
        f1 = mod_reduce(f1, modulus);
        f2 = mod_reduce(f2, modulus);
    }
    if (v_nonzero) {
        if (modulus > 0 && modulus % 2 != 0)
            fail("parity-violation",
                 "a nonzero quadratic refinement needs an even modulus, got " + modulus.str());
        if (f1 % 2 != 0 || f2 % 2 != 0)
            fail("parity-violation", "quadratic refinement forces even marking values, got (" +
                                         f1.str() + ", " + f2.str() + ")");
    }
    return ExtSymForm{sign, modulus, std::move(f1), std::move(f2), v_nonzero};
}

namespace detail {

inline void check_same_target(const ExtSymForm& e1, const ExtSymForm& e2) {
    if (e1.modulus != e2.modulus || e1.v_nonzero != e2.v_nonzero)
        fail("invalid-argument", "forms with different marking targets are not comparable");
}

inline MarkingPair reduce_pair(MarkingPair f, const Int& modulus) {
    if (modulus > 0) {
        f.first = mod_reduce(f.first, modulus);
        f.second = mod_reduce(f.second, modulus);
    }
    return f;
}

template <typename Group>
bool marking_matches(const ExtSymForm& e1, const ExtSymForm& e2, const Group& group) {
    MarkingPair target = reduce_pair(e2.marking(), e1.modulus);
    for (const auto& p : group)
        if (reduce_pair(marking_apply(e1.marking(), p), e1.modulus) == target) return true;
    return false;
}

} // namespace detail

/// Orientation-preserving equivalence: equal signs and markings related by an
/// isometry.  For the hyperbolic form this says the unordered marking pairs
/// agree up to simultaneous negation.
inline bool oriented_equivalent(const ExtSymForm& e1, const ExtSymForm& e2) {
    detail::check_same_target(e1, e2);
    if (e1.sign != e2.sign) return false;
    return detail::marking_matches(e1, e2, isometry_group_hyperbolic());
}

/// Equivalence allowing the underlying isometry to reverse the form sign:
/// either oriented-equivalent, or opposite signs with markings related by an
/// anti-isometry.  Across both cases marking pairs are compared under the
/// order-8 signed-permutation group, with the sign bookkeeping selecting
/// which half of the group applies.
inline bool unoriented_equivalent(const ExtSymForm& e1, const ExtSymForm& e2) {
    detail::check_same_target(e1, e2);
    if (e1.sign == e2.sign) return detail::marking_matches(e1, e2, isometry_group_hyperbolic());
    return detail::marking_matches(e1, e2, antiisometries_hyperbolic());
}

namespace detail {

// Z is ordered for canonicalization by (|x|, sign) with nonnegative first:
// 0 < 1 < -1 < 2 < -2 < ...
inline std::pair<Int, int> zkey(const Int& x) { return {abs(x), x < 0 ? 1 : 0}; }

inline bool pair_less(const MarkingPair& a, const MarkingPair& b, const Int& modulus) {
    if (modulus > 0) return a < b;  // residues live in [0, N), natural order
    auto ka = std::make_pair(zkey(a.first), zkey(a.second));
    auto kb = std::make_pair(zkey(b.first), zkey(b.second));
    return ka < kb;
}

} // namespace detail

/// Lexicographically least marking pair in the orbit under the isometry
/// group, or under the full signed-permutation group when allow_reversal is
/// set.  Z values are compared by (|x|, sign) with positive before negative.
inline MarkingPair canonical_pair(const ExtSymForm& e, bool allow_reversal) {
    MarkingPair best = detail::reduce_pair(e.marking(), e.modulus);
    auto consider = [&](const Mat2& p) {
        MarkingPair cand = detail::reduce_pair(marking_apply(e.marking(), p), e.modulus);
        if (detail::pair_less(cand, best, e.modulus)) best = cand;
    };
    for (const auto& p : isometry_group_hyperbolic()) consider(p);
    if (allow_reversal)
        for (const auto& p : antiisometries_hyperbolic()) consider(p);
    return best;
}

/// Complete invariant for unoriented equivalence: normalize a negative form
/// by one anti-isometry twist, then canonicalize under the isometry group.
/// Two forms are unoriented-equivalent iff these pairs coincide (the plain
/// order-8 canonical pair is invariant but conflates opposite-sign forms
/// whose markings happen to share an orbit).
inline MarkingPair unoriented_class_invariant(const ExtSymForm& e) {
    ExtSymForm n = e;
    if (n.sign < 0) {
        // negation keeps parity, so the twisted marking passes the same validation
        MarkingPair twisted = marking_apply(e.marking(), antiisometries_hyperbolic()[0]);
        n = make_form(+1, e.modulus, twisted.first, twisted.second, e.v_nonzero);
    }
    return canonical_pair(n, false);
}

/// Number of unordered pairs over Z/N modulo simultaneous negation, by
/// exhaustive enumeration.  Serves as the independent check on the closed
/// formula below.
inline Int orbit_count_pairs_bruteforce(const Int& modulus) {
    if (modulus < 1) fail("invalid-argument", "modulus must be >= 1");
    if (modulus > 20000) fail("invalid-argument", "bruteforce orbit count capped at modulus 20000");
    const std::uint32_t n = modulus.convert_to<std::uint32_t>();
    std::uint64_t count = 0;
    for (std::uint32_t x = 0; x < n; ++x) {
        const std::uint32_t nx = x ? n - x : 0;
        for (std::uint32_t y = x; y < n; ++y) {
            std::uint32_t a = nx, b = y ? n - y : 0;
            if (a > b) std::swap(a, b);
            if (x < a || (x == a && y <= b)) ++count;  // (x,y) is its orbit's least pair
        }
    }
    return Int(count);
}

/// floor((N^2 + 2N + 4) / 4): closed form for the count above, covering both
/// parities of N.
inline Int orbit_count_pairs_formula(const Int& modulus) {
    if (modulus < 1) fail("invalid-argument", "modulus must be >= 1");
    return (modulus * modulus + 2 * modulus + 4) / 4;
}

} // namespace stabclass
