#pragma once

#include <utility>
#include <vector>

#include "error.hpp"
#include "factor.hpp"
#include "forms.hpp"
#include "numeric.hpp"

namespace stabclass {

// Spin-c structure on the twisted product of two 2-spheres, recorded by the
// first Chern class against the standard basis.  c1 is characteristic for
// the hyperbolic intersection form, which here just says both coordinates
// are even.
struct SpinCClass {
    Int z1, z2;
};

/// Characteristic test lambda(x,x) = lambda(x,v) mod 2, checked on the two
/// basis vectors; linearity mod 2 of both sides extends it to every x.  For
/// the hyperbolic form this is evenness of both coordinates.
inline bool is_characteristic(const Int& z1, const Int& z2) {
    // basis vector e1: lambda(e1,e1) = 0, lambda(e1,(z1,z2)) = z2; e2 symmetric
    return mod_reduce(z2, 2) == 0 && mod_reduce(z1, 2) == 0;
}

inline SpinCClass make_spinc(Int z1, Int z2) {
    if (!is_characteristic(z1, z2))
        fail("parity-violation", "first Chern class must be characteristic: (" + z1.str() +
                                     ", " + z2.str() + ") has an odd coordinate");
    return SpinCClass{std::move(z1), std::move(z2)};
}

inline Int c1_square(const SpinCClass& s) { return 2 * s.z1 * s.z2; }

/// Free transitive translation action of H^2: x shifts c1 by 2x.
inline SpinCClass chern_action(const Int& x1, const Int& x2, const SpinCClass& s) {
    return SpinCClass{s.z1 + 2 * x1, s.z2 + 2 * x2};
}

/// Equivalence of structures = isometry orbit of c1: unordered pairs up to
/// simultaneous negation.
inline bool spinc_equivalent(const SpinCClass& s1, const SpinCClass& s2) {
    ExtSymForm e1 = make_form(+1, 0, s1.z1, s1.z2, false);
    ExtSymForm e2 = make_form(+1, 0, s2.z1, s2.z2, false);
    return oriented_equivalent(e1, e2);
}

/// Stably (after connected sums) only the square survives.
inline bool spinc_stably_equivalent(const SpinCClass& s1, const SpinCClass& s2) {
    return c1_square(s1) == c1_square(s2);
}

struct BordismClass {
    Int signature;  // 0 for these manifolds
    Int reduced;    // (c1^2 - signature) / 8
};

inline BordismClass bordism_invariant(const SpinCClass& s) {
    Int sq = c1_square(s);
    if (sq % 8 != 0)
        fail("not-characteristic-square", "c1^2 = " + sq.str() + " is not divisible by 8");
    return {0, sq / 8};
}

/// The pairwise stably-equivalent, pairwise inequivalent structures with
/// c1^2 = C: one per unordered coprime splitting {q1,q2} of Q = C/8.  For
/// negative C exactly one entry of each representative is negative (negating
/// both would flip the square back to positive); (2q1, -2q2) with q1 <= q2
/// is the canonical orbit representative.
inline std::vector<SpinCClass> spinc_census(const Int& C, const FactorConfig& cfg = {}) {
    if (C % 8 != 0)
        fail("not-characteristic-square",
             "a characteristic square is divisible by 8, got " + C.str());
    if (abs(C) < 16)
        fail("hypothesis-violation",
             "census requires |C| >= 16 (Q = C/8 must have a prime factor), got " + C.str());
    Int Q = C / 8;
    std::vector<SpinCClass> out;
    for (const auto& sp : coprime_splittings(abs(Q), cfg)) {
        if (Q > 0)
            out.push_back(make_spinc(2 * sp.left, 2 * sp.right));
        else
            out.push_back(make_spinc(2 * sp.left, -2 * sp.right));
    }
    return out;
}

/// Every isometry orbit of characteristic elements with the given square,
/// coprime or not: one per unordered factorization of Q.
inline std::vector<SpinCClass> spinc_all_orbits(const Int& C) {
    if (C == 0) fail("invalid-argument", "square 0 has infinitely many orbits");
    if (C % 8 != 0)
        fail("not-characteristic-square",
             "a characteristic square is divisible by 8, got " + C.str());
    Int Q = C / 8, aQ = abs(Q);
    std::vector<SpinCClass> out;
    for (Int u = 1; u * u <= aQ; ++u) {
        if (aQ % u != 0) continue;
        Int v = aQ / u;
        if (Q > 0)
            out.push_back(make_spinc(2 * u, 2 * v));
        else
            out.push_back(make_spinc(2 * u, -2 * v));
    }
    return out;
}

} // namespace stabclass
