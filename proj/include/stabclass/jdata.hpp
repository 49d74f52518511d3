#pragma once

#include <map>
#include <mutex>
#include <set>
#include <utility>

#include "bernoulli.hpp"
#include "error.hpp"
#include "factor.hpp"
#include "numeric.hpp"

namespace stabclass {

/// Order of the cyclic image of the J-homomorphism in dimension 4m-1:
/// the denominator of B_m / 4m in lowest terms.  j_1 = 24, j_2 = 240,
/// j_3 = 504.
inline Int j_order(unsigned long m) {
    if (m == 0) fail("invalid-argument", "j_order requires m >= 1");
    Rat r = bernoulli_paper(m) / Rat(4 * m);
    return den(r);
}

/// Primes p with (p-1) | 2m.  These are exactly the primes dividing j_m
/// (von Staudt-Clausen); {2,3} always qualifies.
inline std::set<Int> prime_set_j(unsigned long m) {
    if (m == 0) fail("invalid-argument", "prime_set_j requires m >= 1");
    std::set<Int> out;
    for (unsigned long d = 1; d <= 2 * m; ++d)
        if ((2 * m) % d == 0 && classify_prime(Int(d + 1)) == Primality::prime)
            out.insert(Int(d + 1));
    return out;
}

/// Order of the group of homotopy (8m-1)-spheres bounding parallelizable
/// manifolds: 2^(4m-2) (2^(4m-1) - 1) numerator(2 B_{2m} / m).
/// Gives 28 for m=1 and 8128 for m=2.
inline Int bp8_order(unsigned long m) {
    if (m == 0) fail("invalid-argument", "bp8_order requires m >= 1");
    Rat r = Rat(2) * bernoulli_paper(2 * m) / Rat(m);
    Int nr = num(r);
    if (nr < 0) nr = -nr;
    return (Int(1) << (4 * m - 2)) * ((Int(1) << (4 * m - 1)) - 1) * nr;
}

/// Divisibility constant for obstruction values: 2 in the two low dimensions
/// (m = 1, 2), otherwise 1.
inline Int c_factor(unsigned long m) {
    if (m == 0) fail("invalid-argument", "c_factor requires m >= 1");
    return (m == 1 || m == 2) ? 2 : 1;
}

struct DimensionData {
    unsigned long m = 0;
    Int j;                    // j_order(m)
    Rat bernoulli;            // B_m in this library's indexing, see bernoulli_paper
    std::set<Int> prime_set;  // primes dividing j
    std::size_t q = 0;        // |prime_set| - 1
    Int c;                    // c_factor(m)
    Int bp8;                  // bp8_order(m)
    Int bp_default;           // default modulus for the boundary-sphere hypothesis
};

/// One-stop bundle of the dimension constants, memoized per m.
inline const DimensionData& dimension_data(unsigned long m) {
    static std::mutex mu;
    static std::map<unsigned long, DimensionData> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it == cache.end()) {
        DimensionData d;
        d.m = m;
        d.j = j_order(m);
        d.bernoulli = bernoulli_paper(m);
        d.prime_set = prime_set_j(m);
        d.q = d.prime_set.size() - 1;
        d.c = c_factor(m);
        d.bp8 = bp8_order(m);
        d.bp_default = d.bp8;
        it = cache.emplace(m, std::move(d)).first;
    }
    return it->second;
}

/// Injectivity of (x, y) |-> (x, x + 2y) from Z + Z/(j_m/2) to Z + Z/j_m,
/// checked by enumeration over the full torsion range and a window of
/// [-j_m, j_m] in the free coordinate, together with the mod-2 relation
/// between the two coordinates of the image.  Only meaningful for m = 1, 2
/// where the torsion halving happens.
inline bool hopf_stabilization_check(unsigned long m) {
    if (m != 1 && m != 2)
        fail("invalid-argument", "stabilization check applies to m = 1 or 2 only");
    long j = dimension_data(m).j.convert_to<long>();
    long half = j / 2;
    std::set<std::pair<long, long>> images;
    long count = 0;
    for (long x = -j; x <= j; ++x) {
        for (long y = 0; y < half; ++y) {
            long second = ((x + 2 * y) % j + j) % j;
            if (((second - x) % 2 + 2) % 2 != 0) return false;  // image parity must follow x
            images.emplace(x, second);
            ++count;
        }
    }
    return (long)images.size() == count;
}

} // namespace stabclass
