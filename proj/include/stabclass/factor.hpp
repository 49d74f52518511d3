#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "error.hpp"
#include "numeric.hpp"

namespace stabclass {

enum class Primality { composite, prime, probable_prime };

struct FactorConfig {
    std::uint64_t trial_limit = 1'000'000;  // trial division bound
    std::uint64_t rho_budget = 4'000'000;   // squarings per rho attempt
    unsigned rho_restarts = 24;             // polynomial offsets tried before giving up
    unsigned mr_rounds = 64;                // Miller-Rabin bases above the deterministic range
};

struct PrimeFactor {
    Int prime;
    unsigned exponent = 1;
    bool certified = true;  // false: "probable-prime", no deterministic witness set applies

    friend bool operator==(const PrimeFactor& a, const PrimeFactor& b) {
        return a.prime == b.prime && a.exponent == b.exponent;
    }
};

struct Factorization {
    Int value;
    std::vector<PrimeFactor> factors;  // ascending primes, exponents >= 1

    std::size_t omega() const { return factors.size(); }

    Int reconstruct() const {
        Int r = 1;
        for (const auto& f : factors) r *= pow_int(f.prime, f.exponent);
        return r;
    }

    bool fully_certified() const {
        for (const auto& f : factors)
            if (!f.certified) return false;
        return true;
    }
};

namespace detail {

inline Int mr_witness_round(const Int& n, const Int& a, const Int& d, unsigned s) {
    // returns nonzero if a proves n composite
    Int x = boost::multiprecision::powm(a % n, d, n);
    if (x == 1 || x == n - 1) return 0;
    for (unsigned i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1) return 0;
    }
    return 1;
}

inline const std::uint64_t kDeterministicBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

} // namespace detail

/// Miller-Rabin.  Below 2^64 the fixed witness set {2,...,37} is known to be
/// exact, so the answer is `prime` or `composite` with certainty; above that
/// a passing n is only ever `probable_prime` (cfg.mr_rounds small-prime bases).
inline Primality classify_prime(const Int& n, const FactorConfig& cfg = {}) {
    if (n < 2) return Primality::composite;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return Primality::prime;
        if (n % p == 0) return Primality::composite;
    }
    Int d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }

    static const Int kU64Max = (Int(1) << 64) - 1;
    if (n <= kU64Max) {
        for (std::uint64_t a : detail::kDeterministicBases)
            if (detail::mr_witness_round(n, Int(a), d, s) != 0) return Primality::composite;
        return Primality::prime;
    }
    // first cfg.mr_rounds primes as bases: deterministic output, overwhelming confidence
    std::uint64_t a = 2;
    for (unsigned r = 0; r < cfg.mr_rounds; ++r) {
        if (detail::mr_witness_round(n, Int(a), d, s) != 0) return Primality::composite;
        do { ++a; } while (classify_prime(Int(a)) == Primality::composite);
    }
    return Primality::probable_prime;
}

inline bool is_prime(const Int& n, const FactorConfig& cfg = {}) {
    return classify_prime(n, cfg) != Primality::composite;
}

namespace detail {

// Brent's cycle variant of Pollard rho on x^2 + c.  Returns a nontrivial
// factor, or 0 when the squaring budget runs out first.
inline Int pollard_brent(const Int& n, std::uint64_t c, std::uint64_t budget) {
    Int y = 2, q = 1, g = 1, x = 0, ys = 0;
    std::uint64_t r = 1, used = 0;
    const std::uint64_t batch = 128;
    while (g == 1 && used < budget) {
        x = y;
        for (std::uint64_t i = 0; i < r && used < budget; ++i, ++used)
            y = (y * y + c) % n;
        for (std::uint64_t k = 0; k < r && g == 1 && used < budget; k += batch) {
            ys = y;
            std::uint64_t lim = std::min(batch, r - k);
            for (std::uint64_t i = 0; i < lim && used < budget; ++i, ++used) {
                y = (y * y + c) % n;
                Int diff = x > y ? x - y : y - x;
                q = (q * diff) % n;
            }
            g = gcd(q, n);
        }
        r <<= 1;
    }
    if (g == n) {
        // batched gcd overshot: replay one step at a time
        do {
            ys = (ys * ys + c) % n;
            Int diff = x > ys ? x - ys : ys - x;
            g = gcd(diff, n);
        } while (g == 1);
    }
    if (g > 1 && g < n) return g;
    return 0;
}

inline void push_factor(std::map<Int, std::pair<unsigned, bool>>& acc, const Int& p,
                        unsigned e, bool certified) {
    auto& slot = acc[p];
    slot.first += e;
    slot.second = acc[p].first == e ? certified : (slot.second && certified);
}

inline void split_composite(const Int& n, std::map<Int, std::pair<unsigned, bool>>& acc,
                            const FactorConfig& cfg) {
    Primality pr = classify_prime(n, cfg);
    if (pr != Primality::composite) {
        push_factor(acc, n, 1, pr == Primality::prime);
        return;
    }
    for (unsigned attempt = 0; attempt < cfg.rho_restarts; ++attempt) {
        Int g = pollard_brent(n, attempt + 1, cfg.rho_budget);
        if (g != 0) {
            split_composite(g, acc, cfg);
            split_composite(n / g, acc, cfg);
            return;
        }
    }
    fail("factorization-incomplete",
         "no factor of " + n.str() + " found within the configured effort bound");
}

} // namespace detail

/// Trial division to cfg.trial_limit, then Miller-Rabin + Pollard rho on the
/// cofactor.  Either returns a complete factorization (product reconstructs n,
/// every listed prime at worst probable) or raises factorization-incomplete;
/// it never silently returns a wrong or partial answer.
inline Factorization factorize(const Int& n, const FactorConfig& cfg = {}) {
    if (n < 1) fail("invalid-argument", "factorize requires a positive integer, got " + n.str());
    Factorization out;
    out.value = n;
    if (n == 1) return out;

    std::map<Int, std::pair<unsigned, bool>> acc;  // prime -> (exponent, certified)
    Int rest = n;
    static const Int kU64Max = (Int(1) << 64) - 1;
    if (rest <= kU64Max) {
        // fast path entirely in machine words
        std::uint64_t m = rest.convert_to<std::uint64_t>();
        for (std::uint64_t d = 2; d <= cfg.trial_limit && d * d <= m; d += (d == 2 ? 1 : 2)) {
            unsigned e = 0;
            while (m % d == 0) { m /= d; ++e; }
            if (e) detail::push_factor(acc, Int(d), e, true);
        }
        rest = m;
    } else {
        for (std::uint64_t d = 2; d <= cfg.trial_limit; d += (d == 2 ? 1 : 2)) {
            if (rest % d == 0) {
                unsigned e = 0;
                while (rest % d == 0) { rest /= d; ++e; }
                detail::push_factor(acc, Int(d), e, true);
                if (rest == 1) break;
            }
        }
    }
    if (rest > 1) {
        Int limit_sq = Int(cfg.trial_limit) * Int(cfg.trial_limit);
        if (rest <= limit_sq) {
            // survived trial division to past its square root, hence prime
            detail::push_factor(acc, rest, 1, true);
        } else {
            detail::split_composite(rest, acc, cfg);
        }
    }
    for (const auto& [p, ec] : acc)
        out.factors.push_back(PrimeFactor{p, ec.first, ec.second});
    return out;
}

/// Unordered pairs {u, v} with u*v = n, gcd(u,v) = 1, stored left <= right,
/// sorted lexicographically.  Exactly 2^(omega(n)-1) of them for n > 1.
struct CoprimeSplitting {
    Int left, right;
    friend bool operator==(const CoprimeSplitting& a, const CoprimeSplitting& b) {
        return a.left == b.left && a.right == b.right;
    }
};

inline std::vector<CoprimeSplitting> coprime_splittings(const Factorization& f) {
    std::vector<Int> pp;
    for (const auto& pf : f.factors) pp.push_back(pow_int(pf.prime, pf.exponent));
    std::size_t w = pp.size();
    std::vector<CoprimeSplitting> out;
    if (w == 0) {
        out.push_back({1, 1});
        return out;
    }
    if (w > 62) fail("invalid-argument", "too many distinct primes to enumerate splittings");
    // keep the last prime power out of u: each unordered pair appears once
    std::uint64_t masks = std::uint64_t(1) << (w - 1);
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
        Int u = 1;
        for (std::size_t i = 0; i + 1 < w; ++i)
            if (mask & (std::uint64_t(1) << i)) u *= pp[i];
        Int v = f.value / u;
        if (u > v) std::swap(u, v);
        out.push_back({u, v});
    }
    std::sort(out.begin(), out.end(), [](const CoprimeSplitting& a, const CoprimeSplitting& b) {
        return a.left != b.left ? a.left < b.left : a.right < b.right;
    });
    return out;
}

inline std::vector<CoprimeSplitting> coprime_splittings(const Int& n,
                                                        const FactorConfig& cfg = {}) {
    return coprime_splittings(factorize(n, cfg));
}

namespace detail {

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = 2; p <= n; ++p) {
        if (comp[p]) continue;
        out.push_back(p);
        for (std::uint64_t q = p * p; q <= n; q += p) comp[q] = true;
    }
    return out;
}

} // namespace detail

/// Does (2k)! divide n?  Decided prime by prime with Legendre's formula for
/// the exponent of p in (2k)!; the factorial itself is never materialized.
inline bool factorial_divides(unsigned long k, const Int& n) {
    if (n < 1) fail("invalid-argument", "factorial_divides requires n >= 1");
    std::uint64_t t = 2 * (std::uint64_t)k;
    if (t > 4'000'000) fail("invalid-argument", "factorial argument too large to sieve");
    for (std::uint64_t p : detail::primes_up_to(t)) {
        std::uint64_t want = 0;
        for (std::uint64_t q = p; q <= t; q *= p) {
            want += t / q;
            if (q > t / p) break;  // q*p would overflow past t anyway
        }
        std::uint64_t have = 0;
        Int m = n;
        while (have < want && m % p == 0) { m /= p; ++have; }
        if (have < want) return false;
    }
    return true;
}

} // namespace stabclass
