#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "stabclass.hpp"

namespace stabclass {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // one-line summary, or the first failure found
    double ms = 0.0;
};

namespace selftest_detail {

// Failure collector: checks append everything wrong they find, and an empty
// list means pass.
struct Ctx {
    std::vector<std::string> errors;
    template <typename... Args>
    void expect(bool ok, Args&&... parts) {
        if (ok) return;
        std::ostringstream os;
        (os << ... << parts);
        errors.push_back(os.str());
    }
};

inline std::string wall_str(const WallManifold& w) {
    return "(" + w.alpha.str() + "," + w.beta.str() + ")";
}

// Deterministic sampler of valid manifolds for the randomized checks: the
// default boundary modulus is split across the two sides prime power by
// prime power, then small extra factors are mixed in.
inline WallManifold sample_wall(std::mt19937_64& rng) {
    unsigned long m = 1 + rng() % 3;
    const DimensionData& dd = dimension_data(m);
    Int a = 1, b = 1;
    for (const auto& pf : factorize(dd.bp_default).factors) {
        Int q = pow_int(pf.prime, pf.exponent);
        if (rng() & 1) a *= q; else b *= q;
    }
    static const int extras[] = {1, 1, 2, 3, 4, 5, 6, 7, 9, 10, 12, 15, 25};
    a *= extras[rng() % 13];
    b *= extras[rng() % 13];
    return wall_from_ab(m, a, b);
}

// Independent count of unordered pairs {alpha, beta} with alpha*beta = P,
// gcd = d and both sides divisible by c: plain divisor scan, no reuse of the
// splitting enumerator.
inline Int member_count_scan(const WallManifold& w) {
    Int P = w.alpha * w.beta;
    Int d = gcd(w.alpha, w.beta);
    Int c = dimension_data(w.m).c;
    if (P <= Int(std::numeric_limits<std::int64_t>::max())) {
        std::uint64_t p = P.convert_to<std::uint64_t>();
        std::uint64_t dd = d.convert_to<std::uint64_t>();
        std::uint64_t cc = c.convert_to<std::uint64_t>();
        std::uint64_t count = 0;
        for (std::uint64_t x = 1; x * x <= p; ++x) {
            if (p % x) continue;
            std::uint64_t y = p / x;
            if (std::gcd(x, y) == dd && x % cc == 0 && y % cc == 0) ++count;
        }
        return Int(count);
    }
    Int count = 0;
    for (Int x = 1; x * x <= P; ++x) {
        if (P % x != 0) continue;
        Int y = P / x;
        if (gcd(x, y) == d && x % c == 0 && y % c == 0) ++count;
    }
    return count;
}

// Greedy partition of manifolds into classes of the given predicate.
template <typename Pred>
std::size_t class_count(const std::vector<WallManifold>& ms, Pred&& eq) {
    std::vector<const WallManifold*> reps;
    for (const auto& w : ms) {
        bool found = false;
        for (const auto* r : reps)
            if (eq(*r, w)) { found = true; break; }
        if (!found) reps.push_back(&w);
    }
    return reps.size();
}

// --------------------------------------------------------------------------
// the individual checks
// --------------------------------------------------------------------------

inline void check_j_orders(Ctx& c) {
    j_order(3);  // warm the shared Bernoulli table before timing
    const long expected[] = {24, 240, 504};
    for (unsigned long m = 1; m <= 3; ++m) {
        auto t0 = std::chrono::steady_clock::now();
        Int j = j_order(m);
        double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0).count();
        c.expect(j == expected[m - 1], "j_order(", m, ") = ", j.str(), ", expected ",
                 expected[m - 1]);
        c.expect(ms < 1.0, "j_order(", m, ") took ", ms, " ms, budget is 1 ms");
    }
}

inline void check_prime_set_rule(Ctx& c) {
    for (unsigned long m = 1; m <= 30; ++m) {
        std::set<Int> rule = prime_set_j(m);
        std::set<Int> divisors;
        for (const auto& pf : factorize(j_order(m)).factors) divisors.insert(pf.prime);
        c.expect(rule == divisors, "m = ", m, ": divisor rule and j factorization disagree");
        c.expect(rule.count(2) == 1 && rule.count(3) == 1, "m = ", m,
                 ": prime set must contain 2 and 3");
    }
}

inline void check_von_staudt_clausen(Ctx& c) {
    for (unsigned long m = 1; m <= 30; ++m) {
        Int from_recurrence = den(bernoulli_paper(m));
        Int from_rule = 1;
        for (const Int& p : prime_set_j(m)) from_rule *= p;
        c.expect(from_recurrence == from_rule, "m = ", m, ": denominator ",
                 from_recurrence.str(), " vs prime product ", from_rule.str());
    }
}

inline void check_bp_orders(Ctx& c) {
    c.expect(bp8_order(1) == 28, "bp8_order(1) = ", bp8_order(1).str());
    c.expect(bp8_order(2) == 8128, "bp8_order(2) = ", bp8_order(2).str());
    for (unsigned long m = 1; m <= 2; ++m) {
        // oracle: evaluate the closed expression with manual reduction of
        // 2*B/m instead of trusting the rational type's canonical form
        Rat B = bernoulli_paper(2 * m);
        Int n2 = 2 * num(B), d2 = Int(m) * den(B);
        Int numerator = n2 / gcd(n2, d2);
        Int direct = (Int(1) << (4 * m - 2)) * ((Int(1) << (4 * m - 1)) - 1) * numerator;
        c.expect(direct == bp8_order(m), "m = ", m, ": direct evaluation ", direct.str(),
                 " vs bp8_order ", bp8_order(m).str());
    }
}

inline void check_orbit_counts(Ctx& c) {
    auto t0 = std::chrono::steady_clock::now();
    for (long n = 1; n <= 1000; ++n) {
        Int bf = orbit_count_pairs_bruteforce(n);
        Int fo = orbit_count_pairs_formula(n);
        if (bf != fo) {
            c.expect(false, "modulus ", n, ": bruteforce ", bf.str(), " vs formula ", fo.str());
            return;
        }
    }
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - t0).count();
    c.expect(ms < 5000.0, "full sweep took ", ms, " ms, budget is 5000 ms");
}

inline void check_worked_family(Ctx& c) {
    WallManifold base = make_wall(1, 56, 6);
    WallInvariants inv = wall_invariants(base);
    c.expect(inv.d == 2 && inv.sigma == 0 && inv.salpha_sq == 672, "invariants of (56,6): d = ",
             inv.d.str(), ", sigma = ", inv.sigma.str(), ", square = ", inv.salpha_sq.str());

    StableClassReport r = enumerate_stable_class(base);
    const std::pair<long, long> want_members[] = {{2, 168}, {6, 56}, {8, 42}, {14, 24}};
    c.expect(r.members.size() == 4 && r.count_stable_mod_spheres == 4,
             "expected 4 stable-class members, got ", r.members.size());
    for (std::size_t i = 0; i < r.members.size() && i < 4; ++i)
        c.expect(r.members[i].alpha == want_members[i].first &&
                     r.members[i].beta == want_members[i].second,
                 "member ", i, " is ", wall_str(r.members[i]));

    for (std::size_t i = 0; i < r.members.size(); ++i) {
        for (std::size_t j = i + 1; j < r.members.size(); ++j) {
            c.expect(stably_almost_diffeomorphic(r.members[i], r.members[j]),
                     "members ", i, ",", j, " should be stably equivalent");
            c.expect(!almost_diffeomorphic(r.members[i], r.members[j]),
                     "members ", i, ",", j, " should be distinct");
            c.expect(!almost_diffeomorphic(r.members[i], reverse_orientation(r.members[j])),
                     "members ", i, ",", j, " should stay distinct after reversal");
        }
    }

    c.expect(r.homotopy_family.size() == 2, "family size ", r.homotopy_family.size());
    const std::pair<long, long> want_family[] = {{2, 168}, {8, 42}};
    for (std::size_t i = 0; i < r.homotopy_family.size() && i < 2; ++i)
        c.expect(r.homotopy_family[i].alpha == want_family[i].first &&
                     r.homotopy_family[i].beta == want_family[i].second,
                 "family member ", i, " is ", wall_str(r.homotopy_family[i]));
    if (r.homotopy_family.size() == 2)
        c.expect(!homotopy_equivalent(r.homotopy_family[0], r.homotopy_family[1]),
                 "family members must be homotopy distinct");
    c.expect(r.homotopy_upper == 43, "upper bound ", r.homotopy_upper.str());
    c.expect(r.homotopy_lower == 2, "lower bound ", r.homotopy_lower.str());
}

inline void check_class_count_sandwich(Ctx& c) {
    std::mt19937_64 rng(0x5eed5eed1ULL);
    for (int trial = 0; trial < 50; ++trial) {
        WallManifold w = sample_wall(rng);
        StableClassReport r = enumerate_stable_class(w);

        // independent size of the homotopy family: primes of A dividing jbar
        std::size_t shared = 0;
        for (const auto& pf : factorize(r.A).factors)
            if (r.jbar % pf.prime == 0) ++shared;
        Int expect_lower = Int(1) << (shared > 0 ? shared - 1 : 0);
        c.expect(r.homotopy_lower == expect_lower, "trial ", trial, " ", wall_str(w),
                 ": family size ", r.homotopy_lower.str(), " vs 2^q = ", expect_lower.str());
        c.expect(r.d_prime * r.A_prime == r.d * r.A, "trial ", trial,
                 ": d'A' must equal dA");

        for (std::size_t i = 0; i < r.homotopy_family.size(); ++i)
            for (std::size_t j = i + 1; j < r.homotopy_family.size(); ++j)
                c.expect(!homotopy_equivalent(r.homotopy_family[i], r.homotopy_family[j]),
                         "trial ", trial, ": family members ", i, ",", j, " coincide");

        std::size_t classes = class_count(r.members, [](const auto& a, const auto& b) {
            return homotopy_equivalent(a, b);
        });
        c.expect(r.homotopy_lower <= Int(classes), "trial ", trial, " ", wall_str(w),
                 ": lower ", r.homotopy_lower.str(), " > classes ", classes);
        c.expect(Int(classes) <= r.homotopy_upper, "trial ", trial, " ", wall_str(w),
                 ": classes ", classes, " > upper ", r.homotopy_upper.str());
        if (!c.errors.empty()) return;
    }
}

inline void check_member_count_scan(Ctx& c) {
    std::mt19937_64 rng(0xfacade02ULL);
    for (int trial = 0; trial < 50; ++trial) {
        WallManifold w = sample_wall(rng);
        StableClassReport r = enumerate_stable_class(w);
        Int scanned = member_count_scan(w);
        c.expect(Int(r.members.size()) == scanned && r.count_stable_mod_spheres == scanned,
                 "trial ", trial, " ", wall_str(w), ": enumerated ", r.members.size(),
                 ", scan found ", scanned.str());
        if (!c.errors.empty()) return;
    }
}

inline void check_n4k(Ctx& c) {
    std::vector<FourKManifold> reps = n4k_enumerate_stable_class(2, 60);
    const std::pair<long, long> want[] = {{1, 60}, {3, 20}, {4, 15}, {5, 12}};
    c.expect(reps.size() == 4, "expected 4 representatives for product 60, got ", reps.size());
    for (std::size_t i = 0; i < reps.size() && i < 4; ++i)
        c.expect(reps[i].a == want[i].first && reps[i].b == want[i].second, "representative ",
                 i, " is (", reps[i].a.str(), ",", reps[i].b.str(), ")");
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            c.expect(n4k_stably_diffeomorphic(reps[i], reps[j]), "reps ", i, ",", j,
                     " should be stably diffeomorphic");
            c.expect(!n4k_homotopy_equivalent(reps[i], reps[j]), "reps ", i, ",", j,
                     " should be homotopy distinct");
        }
    try {
        n4k_enumerate_stable_class(3, 12);
        c.expect(false, "product 12 must be rejected for k = 3");
    } catch (const Error& e) {
        c.expect(e.code() == std::string("factorial-divisibility"), "rejection code ", e.code());
        c.expect(std::string(e.what()).find("720") != std::string::npos,
                 "rejection must name the factorial 720: ", e.what());
    }
}

inline void check_spinc_census(Ctx& c) {
    for (long mag = 16; mag <= 10000; mag += 8) {
        for (long C : {mag, -mag}) {
            std::vector<SpinCClass> cs = spinc_census(C);
            std::size_t w = factorize(Int(mag / 8)).omega();
            c.expect(cs.size() == std::size_t(1) << (w - 1), "C = ", C, ": census size ",
                     cs.size());
            for (std::size_t i = 0; i < cs.size(); ++i) {
                c.expect(c1_square(cs[i]) == C, "C = ", C, ": member ", i, " has square ",
                         c1_square(cs[i]).str());
                for (std::size_t j = i + 1; j < cs.size(); ++j) {
                    c.expect(spinc_stably_equivalent(cs[i], cs[j]), "C = ", C, ": members ", i,
                             ",", j, " not stably equivalent");
                    c.expect(!spinc_equivalent(cs[i], cs[j]), "C = ", C, ": members ", i, ",",
                             j, " coincide");
                }
            }
            if (!c.errors.empty()) return;
        }
    }
    std::vector<SpinCClass> c48 = spinc_census(48);
    c.expect(c48.size() == 2 && c48[0].z1 == 2 && c48[0].z2 == 12 && c48[1].z1 == 4 &&
                 c48[1].z2 == 6,
             "census(48) must be {(2,12),(4,6)}");

    // bordism invariant across the coordinate box: constant on each square,
    // distinct across squares
    std::map<Int, Int> reduced_by_square;
    for (long a = -50; a <= 50; ++a) {
        for (long b = -50; b <= 50; ++b) {
            SpinCClass s = make_spinc(2 * a, 2 * b);
            BordismClass bc = bordism_invariant(s);
            c.expect(bc.signature == 0, "signature must vanish");
            auto [it, fresh] = reduced_by_square.emplace(c1_square(s), bc.reduced);
            if (!fresh)
                c.expect(it->second == bc.reduced, "square ", c1_square(s).str(),
                         " maps to two bordism values");
        }
    }
    std::set<Int> distinct;
    for (const auto& [sq, red] : reduced_by_square) distinct.insert(red);
    c.expect(distinct.size() == reduced_by_square.size(),
             "bordism invariant must separate distinct squares");
}

inline void check_equivalence_laws(Ctx& c) {
    std::mt19937_64 rng(0xab5ac7e5ULL);

    // pools with deliberate repetition so the transitivity hypothesis fires
    std::vector<WallManifold> wall_pool;
    {
        std::mt19937_64 gen(42);
        for (int i = 0; i < 6; ++i) {
            WallManifold w = sample_wall(gen);
            StableClassReport r = enumerate_stable_class(w);
            for (const auto& mem : r.members) {
                wall_pool.push_back(mem);
                wall_pool.push_back(make_wall(mem.m, mem.beta, mem.alpha, +1, mem.bp_override));
                wall_pool.push_back(reverse_orientation(mem));
            }
        }
        // mod-j translates with the boundary hypothesis switched off
        for (int i = 0; i < 12; ++i) {
            unsigned long m = 1 + gen() % 3;
            const DimensionData& dd = dimension_data(m);
            Int a = dd.c * (1 + gen() % 40), b = dd.c * (1 + gen() % 40);
            wall_pool.push_back(make_wall(m, a, b, +1, Int(1)));
            wall_pool.push_back(make_wall(m, a, b + dd.j * dd.c, +1, Int(1)));
        }
    }
    auto pick_same_m = [&](unsigned long m) {
        for (;;) {
            const WallManifold& w = wall_pool[rng() % wall_pool.size()];
            if (w.m == m) return w;
        }
    };

    using WallPred = bool (*)(const WallManifold&, const WallManifold&);
    const std::pair<const char*, WallPred> wall_preds[] = {
        {"almost-diffeomorphic", &almost_diffeomorphic},
        {"homotopy-equivalent", &homotopy_equivalent},
        {"stably-almost-diffeomorphic", &stably_almost_diffeomorphic},
    };
    for (const auto& [name, eq] : wall_preds) {
        for (int t = 0; t < 1000; ++t) {
            unsigned long m = 1 + rng() % 3;
            const WallManifold &x = pick_same_m(m), &y = pick_same_m(m), &z = pick_same_m(m);
            c.expect(eq(x, x), name, ": not reflexive at ", wall_str(x));
            c.expect(eq(x, y) == eq(y, x), name, ": not symmetric at ", wall_str(x), " ",
                     wall_str(y));
            if (eq(x, y) && eq(y, z))
                c.expect(eq(x, z), name, ": not transitive at ", wall_str(x), " ", wall_str(y),
                         " ", wall_str(z));
            if (!c.errors.empty()) return;
        }
    }

    std::vector<FourKManifold> n4k_pool;
    for (const auto& n : n4k_enumerate_stable_class(2, 60)) n4k_pool.push_back(n);
    for (const auto& n : n4k_enumerate_stable_class(2, 12)) n4k_pool.push_back(n);
    for (const auto& n : n4k_enumerate_stable_class(2, 60)) n4k_pool.push_back(n);  // repeats
    for (const auto& n : n4k_enumerate_stable_class(3, 360)) n4k_pool.push_back(n);
    for (const auto& n : n4k_enumerate_stable_class(3, 2520)) n4k_pool.push_back(n);
    auto pick_same_k = [&](unsigned long k) {
        for (;;) {
            const FourKManifold& n = n4k_pool[rng() % n4k_pool.size()];
            if (n.k == k) return n;
        }
    };
    using N4kPred = bool (*)(const FourKManifold&, const FourKManifold&);
    const std::pair<const char*, N4kPred> n4k_preds[] = {
        {"n4k-homotopy-equivalent", &n4k_homotopy_equivalent},
        {"n4k-stably-diffeomorphic", &n4k_stably_diffeomorphic},
    };
    for (const auto& [name, eq] : n4k_preds) {
        for (int t = 0; t < 1000; ++t) {
            unsigned long k = 2 + rng() % 2;
            const FourKManifold &x = pick_same_k(k), &y = pick_same_k(k), &z = pick_same_k(k);
            c.expect(eq(x, x), name, ": not reflexive");
            c.expect(eq(x, y) == eq(y, x), name, ": not symmetric");
            if (eq(x, y) && eq(y, z)) c.expect(eq(x, z), name, ": not transitive");
            if (!c.errors.empty()) return;
        }
    }
}

inline void check_stabilization(Ctx& c) {
    c.expect(hopf_stabilization_check(1), "injectivity fails for m = 1");
    c.expect(hopf_stabilization_check(2), "injectivity fails for m = 2");
}

} // namespace selftest_detail

/// The bundled acceptance checks, in a fixed order with fixed seeds; results
/// are deterministic apart from the timings.
inline std::vector<CheckResult> run_selftest() {
    using namespace selftest_detail;
    const std::pair<const char*, void (*)(Ctx&)> checks[] = {
        {"j-orders-low-dimensions", &check_j_orders},
        {"prime-set-rule-matches-j-divisors", &check_prime_set_rule},
        {"von-staudt-clausen-denominators", &check_von_staudt_clausen},
        {"bp-orders-28-8128", &check_bp_orders},
        {"orbit-formula-vs-bruteforce", &check_orbit_counts},
        {"worked-family-dim8", &check_worked_family},
        {"class-count-sandwich", &check_class_count_sandwich},
        {"member-count-divisor-scan", &check_member_count_scan},
        {"n4k-representatives-and-rejection", &check_n4k},
        {"spinc-census-sweep", &check_spinc_census},
        {"equivalence-relation-laws", &check_equivalence_laws},
        {"stabilization-injectivity", &check_stabilization},
    };
    std::vector<CheckResult> out;
    for (const auto& [name, fn] : checks) {
        CheckResult r;
        r.name = name;
        Ctx ctx;
        auto t0 = std::chrono::steady_clock::now();
        try {
            fn(ctx);
        } catch (const std::exception& e) {
            ctx.errors.push_back(std::string("unexpected exception: ") + e.what());
        }
        r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                   .count();
        r.passed = ctx.errors.empty();
        r.detail = r.passed ? "ok" : ctx.errors.front();
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace stabclass
