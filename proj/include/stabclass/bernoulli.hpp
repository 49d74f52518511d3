#pragma once

#include <cstddef>
#include <mutex>
#include <vector>

#include "error.hpp"
#include "numeric.hpp"

namespace stabclass {

inline Int binomial(unsigned long n, unsigned long k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (unsigned long i = 0; i < k; ++i) {
        r *= Int(n - i);
        r /= Int(i + 1);    // exact: r is always a binomial coefficient here
    }
    return r;
}

namespace detail {

// Shared table of standard-convention Bernoulli numbers B_0, B_1, B_2, ...
// (B_1 = -1/2), grown on demand via the classical recurrence
//
//     sum_{k=0}^{n} C(n+1, k) B_k = 0,
//
// i.e. B_n = -1/(n+1) * sum_{k<n} C(n+1,k) B_k.  Lookups from concurrent
// threads are safe; the mutex serializes growth and reads hold it only long
// enough to copy one entry.
class BernoulliTable {
public:
    static BernoulliTable& instance() {
        static BernoulliTable t;
        return t;
    }

    Rat std_index(std::size_t n) {
        std::lock_guard<std::mutex> lock(mu_);
        while (table_.size() <= n) {
            std::size_t m = table_.size();
            Rat s = 0;
            for (std::size_t k = 0; k < m; ++k)
                s += Rat(binomial((unsigned long)m + 1, (unsigned long)k)) * table_[k];
            table_.push_back(-s / Rat((unsigned long)m + 1));
        }
        return table_[n];
    }

private:
    BernoulliTable() : table_{Rat(1)} {}
    std::mutex mu_;
    std::vector<Rat> table_;
};

} // namespace detail

/// Standard-convention Bernoulli number B_n (B_1 = -1/2).
inline Rat bernoulli_std(std::size_t n) {
    return detail::BernoulliTable::instance().std_index(n);
}

/// B_m in the indexing used throughout this library: the absolute value of
/// the standard B_{2m}.  So B_1 = 1/6, B_2 = 1/30, B_3 = 1/42, B_4 = 1/30.
inline Rat bernoulli_paper(unsigned long m) {
    if (m == 0) fail("invalid-argument", "bernoulli_paper requires m >= 1");
    Rat b = bernoulli_std(2 * m);
    return b < 0 ? -b : b;
}

} // namespace stabclass
