#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "factor.hpp"
#include "forms.hpp"
#include "jdata.hpp"
#include "numeric.hpp"

namespace stabclass {

// ---------------------------------------------------------------------------
// (8m-1)-connected 8m-manifolds with boundary a homotopy sphere, described by
// their pair of obstruction values.
// ---------------------------------------------------------------------------

struct WallManifold {
    unsigned long m = 1;
    Int alpha, beta;          // positive, both divisible by c_factor(m)
    int orientation = +1;
    std::optional<Int> bp_override;  // replaces the default boundary-sphere modulus
};

inline Int effective_bp(const WallManifold& w) {
    return w.bp_override ? *w.bp_override : dimension_data(w.m).bp_default;
}

inline WallManifold make_wall(unsigned long m, const Int& alpha, const Int& beta,
                              int orientation = +1,
                              std::optional<Int> bp_override = std::nullopt) {
    if (m == 0) fail("invalid-argument", "dimension index m must be >= 1");
    if (orientation != 1 && orientation != -1)
        fail("invalid-argument", "orientation must be +1 or -1");
    if (alpha < 1 || beta < 1)
        fail("invalid-argument", "obstruction values must be positive");
    if (bp_override && *bp_override < 1)
        fail("invalid-argument", "boundary modulus override must be >= 1");
    const DimensionData& dd = dimension_data(m);
    if (alpha % dd.c != 0 || beta % dd.c != 0)
        fail("parity-violation", "obstruction values must be divisible by " + dd.c.str() +
                                     " in dimension 8*" + std::to_string(m));
    WallManifold w{m, alpha, beta, orientation, std::move(bp_override)};
    Int bp = effective_bp(w);
    Int ab = (alpha / dd.c) * (beta / dd.c);
    if (ab % bp != 0)
        fail("boundary-not-standard-sphere",
             "boundary is standard only when " + bp.str() + " divides (alpha/c)(beta/c) = " +
                 ab.str());
    return w;
}

/// Build the manifold from the coprime-free parameters (a, b): the
/// obstruction values are a*c_m and b*c_m, with the standard orientation.
inline WallManifold wall_from_ab(unsigned long m, const Int& a, const Int& b,
                                 std::optional<Int> bp_override = std::nullopt) {
    if (m == 0) fail("invalid-argument", "dimension index m must be >= 1");
    if (a < 1 || b < 1) fail("invalid-argument", "parameters a, b must be positive");
    Int c = c_factor(m);
    return make_wall(m, a * c, b * c, +1, std::move(bp_override));
}

inline WallManifold reverse_orientation(WallManifold w) {
    w.orientation = -w.orientation;
    return w;
}

inline Int wall_signature(const WallManifold&) { return 0; }
inline Int wall_euler_characteristic(const WallManifold&) { return 4; }

struct WallInvariants {
    Int d;          // gcd of the obstruction values
    Int sigma;      // always 0: the intersection form is hyperbolic
    Int salpha_sq;  // orientation * 2 * alpha * beta
};

inline WallInvariants wall_invariants(const WallManifold& w) {
    return {gcd(w.alpha, w.beta), 0, Int(w.orientation) * 2 * w.alpha * w.beta};
}

/// Integral extended symmetric form of the manifold.  The quadratic
/// refinement is present exactly in the two low dimensions where c_m = 2.
inline ExtSymForm smooth_ext_form(const WallManifold& w) {
    return make_form(w.orientation, 0, w.alpha, w.beta, w.m <= 2);
}

/// Same form with the marking reduced mod j_m; this is the homotopy-level
/// invariant.
inline ExtSymForm homotopy_ext_form(const WallManifold& w) {
    return make_form(w.orientation, dimension_data(w.m).j, w.alpha, w.beta, w.m <= 2);
}

namespace detail {

inline void check_same_dimension(const WallManifold& w1, const WallManifold& w2) {
    if (w1.m != w2.m)
        fail("invalid-argument", "manifolds from different dimensions are not comparable");
}

} // namespace detail

inline bool almost_diffeomorphic(const WallManifold& w1, const WallManifold& w2) {
    detail::check_same_dimension(w1, w2);
    return unoriented_equivalent(smooth_ext_form(w1), smooth_ext_form(w2));
}

inline bool homotopy_equivalent(const WallManifold& w1, const WallManifold& w2) {
    detail::check_same_dimension(w1, w2);
    return unoriented_equivalent(homotopy_ext_form(w1), homotopy_ext_form(w2));
}

/// Stable equivalence is decided by the gcd d, the signature (identically 0
/// here) and the square of the characteristic element up to the orientation
/// convention, i.e. |salpha_sq|.
inline bool stably_almost_diffeomorphic(const WallManifold& w1, const WallManifold& w2) {
    detail::check_same_dimension(w1, w2);
    WallInvariants i1 = wall_invariants(w1), i2 = wall_invariants(w2);
    return i1.d == i2.d && i1.sigma == i2.sigma && abs(i1.salpha_sq) == abs(i2.salpha_sq);
}

// ---------------------------------------------------------------------------
// Stable class enumeration
// ---------------------------------------------------------------------------

struct StableClassReport {
    WallManifold base;
    Int d, A;                        // gcd and alpha*beta/d^2
    std::vector<WallManifold> members;
    Int count_stable_mod_spheres;    // 2^(omega(A)-1)
    Int homotopy_lower;              // size of the homotopy family
    Int homotopy_upper;              // orbit-count formula at jbar
    std::vector<WallManifold> homotopy_family;
    Int jbar, A_prime, d_prime;      // intermediate constants, reported for traceability
};

inline Int homotopy_upper_bound(const WallManifold& w) {
    Int d = gcd(w.alpha, w.beta);
    Int jbar = dimension_data(w.m).j / gcd(dimension_data(w.m).j, d);
    return orbit_count_pairs_formula(jbar);
}

namespace detail {

struct FamilyData {
    Int jbar, A_prime, d_prime;
    std::vector<WallManifold> members;
};

inline FamilyData build_homotopy_family(const WallManifold& w, const Int& d, const Int& A,
                                        const FactorConfig& cfg) {
    const DimensionData& dd = dimension_data(w.m);
    FamilyData out;
    out.jbar = dd.j / gcd(dd.j, d);

    Factorization fA = factorize(A, cfg);
    out.A_prime = 1;
    Int largest_kept = 0;
    for (const auto& pf : fA.factors) {
        if (out.jbar % pf.prime == 0) {
            out.A_prime *= pow_int(pf.prime, pf.exponent);
            largest_kept = pf.prime;  // factors ascend, so this ends at the largest
        }
    }
    out.d_prime = d * (A / out.A_prime);

    for (const auto& sp : coprime_splittings(out.A_prime, cfg)) {
        // the full power of the largest retained prime sits on the d'-side
        Int v = sp.left, ww = sp.right;
        if (largest_kept > 0 && v % largest_kept == 0) std::swap(v, ww);
        out.members.push_back(
            make_wall(w.m, d * v, out.d_prime * ww, +1, w.bp_override));
    }
    return out;
}

} // namespace detail

/// All manifolds in the stable class of w (one per coprime splitting of A),
/// together with the homotopy-level family and the class-count bounds.
inline StableClassReport enumerate_stable_class(const WallManifold& w,
                                                const FactorConfig& cfg = {}) {
    if (w.orientation != +1)
        fail("invalid-argument", "stable class enumeration expects the +1 orientation");
    StableClassReport r;
    r.base = w;
    r.d = gcd(w.alpha, w.beta);
    r.A = (w.alpha * w.beta) / (r.d * r.d);

    Factorization fA = factorize(r.A, cfg);
    for (const auto& sp : coprime_splittings(fA))
        r.members.push_back(make_wall(w.m, r.d * sp.left, r.d * sp.right, +1, w.bp_override));
    std::size_t qA = fA.omega() > 0 ? fA.omega() - 1 : 0;
    r.count_stable_mod_spheres = Int(1) << qA;

    detail::FamilyData fam = detail::build_homotopy_family(w, r.d, r.A, cfg);
    r.jbar = fam.jbar;
    r.A_prime = fam.A_prime;
    r.d_prime = fam.d_prime;
    r.homotopy_family = std::move(fam.members);
    r.homotopy_lower = Int(r.homotopy_family.size());
    r.homotopy_upper = orbit_count_pairs_formula(r.jbar);
    return r;
}

inline std::vector<WallManifold> homotopy_family(const WallManifold& w,
                                                 const FactorConfig& cfg = {}) {
    if (w.orientation != +1)
        fail("invalid-argument", "homotopy family expects the +1 orientation");
    Int d = gcd(w.alpha, w.beta);
    Int A = (w.alpha * w.beta) / (d * d);
    return detail::build_homotopy_family(w, d, A, cfg).members;
}

// ---------------------------------------------------------------------------
// 2k-connected 4k-manifolds N_{a,b} built from a pair of coprime parameters
// ---------------------------------------------------------------------------

struct FourKManifold {
    unsigned long k = 2;
    Int a, b;  // coprime, positive, stored a <= b, with (2k)! | 2ab
};

namespace detail {

inline std::string factorial_name(unsigned long k) {
    std::string s = "(2k)! with k = " + std::to_string(k);
    if (k <= 8) {  // small enough to spell out
        Int f = 1;
        for (unsigned long i = 2; i <= 2 * k; ++i) f *= i;
        s = "(2k)! = " + f.str();
    }
    return s;
}

} // namespace detail

inline FourKManifold make_n4k(unsigned long k, Int a, Int b) {
    if (k < 2) fail("invalid-argument", "construction requires k >= 2");
    if (a < 1 || b < 1) fail("invalid-argument", "parameters a, b must be positive");
    if (gcd(a, b) != 1)
        fail("invalid-argument", "parameters must be coprime, got gcd = " + gcd(a, b).str());
    if (!factorial_divides(k, 2 * a * b))
        fail("factorial-divisibility",
             detail::factorial_name(k) + " must divide 2ab = " + Int(2 * a * b).str());
    if (a > b) std::swap(a, b);
    return FourKManifold{k, std::move(a), std::move(b)};
}

namespace detail {

inline void check_same_k(const FourKManifold& n1, const FourKManifold& n2) {
    if (n1.k != n2.k)
        fail("invalid-argument", "manifolds from different dimensions are not comparable");
}

} // namespace detail

/// The cohomology ring determines and is determined by the unordered pair.
inline bool n4k_homotopy_equivalent(const FourKManifold& n1, const FourKManifold& n2) {
    detail::check_same_k(n1, n2);
    return n1.a == n2.a && n1.b == n2.b;  // both stored sorted
}

/// Stable diffeomorphism only sees the product ab.
inline bool n4k_stably_diffeomorphic(const FourKManifold& n1, const FourKManifold& n2) {
    detail::check_same_k(n1, n2);
    return n1.a * n1.b == n2.a * n2.b;
}

/// One representative per coprime splitting of the product.
inline std::vector<FourKManifold> n4k_enumerate_stable_class(unsigned long k, const Int& product,
                                                             const FactorConfig& cfg = {}) {
    if (k < 2) fail("invalid-argument", "enumeration requires k >= 2");
    if (product < 1) fail("invalid-argument", "product must be positive");
    if (!factorial_divides(k, 2 * product))
        fail("factorial-divisibility",
             detail::factorial_name(k) + " must divide 2ab = " + Int(2 * product).str());
    std::vector<FourKManifold> out;
    for (const auto& sp : coprime_splittings(product, cfg))
        out.push_back(make_n4k(k, sp.left, sp.right));
    return out;
}

struct WitnessFamily {
    Int product;
    std::vector<FourKManifold> members;  // pairwise stably diffeomorphic, pairwise
                                         // non-homotopy-equivalent, >= n of them
};

/// Smallest product of the form (2k)!/2 times extra ascending primes whose
/// coprime splittings give at least n distinct homotopy types in one stable
/// class.
inline WitnessFamily n4k_witness_family(unsigned long k, const Int& n,
                                        const FactorConfig& cfg = {}) {
    if (k < 2) fail("invalid-argument", "witness family requires k >= 2");
    if (n < 1) fail("invalid-argument", "requested family size must be positive");
    if (n > (Int(1) << 20))
        fail("invalid-argument", "requested family size too large to materialize");
    Int product = 1;
    for (unsigned long i = 2; i <= 2 * k; ++i) product *= i;
    product /= 2;
    Factorization f = factorize(product, cfg);
    std::size_t w = f.omega();
    Int extra = 2;
    while ((Int(1) << (w - 1)) < n) {
        while (product % extra == 0 || classify_prime(extra) != Primality::prime) ++extra;
        product *= extra;
        ++w;
    }
    WitnessFamily out;
    out.product = product;
    out.members = n4k_enumerate_stable_class(k, product, cfg);
    return out;
}

} // namespace stabclass
