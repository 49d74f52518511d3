#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <thread>
#include <vector>

#include <stabclass/bernoulli.hpp>
#include <stabclass/jdata.hpp>

#include "test_util.hpp"

using namespace stabclass;
using testutil::code_of;

TEST_CASE("orders of the cyclic image in low dimensions") {
    CHECK(j_order(1) == 24);
    CHECK(j_order(2) == 240);
    CHECK(j_order(3) == 504);
    CHECK(j_order(4) == 480);
    CHECK(j_order(5) == 264);
    CHECK(j_order(6) == 65520);
    CHECK(code_of([] { j_order(0); }) == "invalid-argument");
}

TEST_CASE("the order is the reduced denominator of B_m over 4m") {
    for (unsigned long m = 1; m <= 20; ++m) {
        Rat r = bernoulli_paper(m) / (4 * m);
        CHECK(j_order(m) == den(r));
    }
}

TEST_CASE("prime membership is the divisor condition on p-1") {
    for (unsigned long m = 1; m <= 30; ++m) {
        std::set<Int> expected;
        for (Int p = 2; p <= 2 * m + 1; ++p) {
            bool prime = true;
            for (Int d = 2; d * d <= p; ++d)
                if (p % d == 0) prime = false;
            if (prime && (2 * m) % (p - 1) == 0) expected.insert(p);
        }
        CHECK(prime_set_j(m) == expected);
        // 2 and 3 always qualify, so the count q is at least one.
        CHECK(expected.count(2) == 1);
        CHECK(expected.count(3) == 1);
        CHECK(dimension_data(m).q >= 1);
        CHECK(dimension_data(m).q == Int(expected.size()) - 1);
    }
}

TEST_CASE("dimension snapshot in the first few rows") {
    const DimensionData& d1 = dimension_data(1);
    CHECK(d1.j == 24);
    CHECK(d1.prime_set == std::set<Int>{2, 3});
    CHECK(d1.q == 1);
    CHECK(d1.c == 2);
    CHECK(d1.bp8 == 28);
    CHECK(d1.bp_default == 28);

    const DimensionData& d2 = dimension_data(2);
    CHECK(d2.j == 240);
    CHECK(d2.prime_set == std::set<Int>{2, 3, 5});
    CHECK(d2.q == 2);
    CHECK(d2.c == 2);
    CHECK(d2.bp8 == 8128);

    const DimensionData& d3 = dimension_data(3);
    CHECK(d3.prime_set == std::set<Int>{2, 3, 7});
    CHECK(d3.c == 1);
    CHECK(d3.bp8 == Int("1448424448"));

    // The cache hands out stable references.
    CHECK(&dimension_data(2) == &d2);
}

TEST_CASE("boundary group orders") {
    CHECK(bp8_order(1) == 28);
    CHECK(bp8_order(2) == 8128);
    CHECK(bp8_order(3) == Int("1448424448"));
    CHECK(c_factor(1) == 2);
    CHECK(c_factor(2) == 2);
    CHECK(c_factor(3) == 1);
    CHECK(c_factor(7) == 1);
}

TEST_CASE("quaternionic stabilization is injective where defined") {
    CHECK(hopf_stabilization_check(1));
    CHECK(hopf_stabilization_check(2));
    CHECK(code_of([] { hopf_stabilization_check(3); }) == "invalid-argument");
}

TEST_CASE("table access from concurrent threads") {
    std::vector<std::thread> pool;
    std::vector<Int> out(8);
    for (int t = 0; t < 8; ++t)
        pool.emplace_back([t, &out] {
            out[t] = j_order(10 + (unsigned long)t) + num(bernoulli_paper(15 + (unsigned long)t));
        });
    for (auto& th : pool) th.join();
    for (int t = 0; t < 8; ++t)
        CHECK(out[t] == j_order(10 + (unsigned long)t) + num(bernoulli_paper(15 + (unsigned long)t)));
}
