// Runs every bundled consistency check and reports one line per check.
// Exits nonzero if any check fails, so CI can gate on this binary alone.

#include <cstdio>

#include <stabclass/selftest.hpp>

int main() {
    auto results = stabclass::run_selftest();
    int failed = 0;
    double total_ms = 0.0;
    for (const auto& r : results) {
        total_ms += r.ms;
        std::printf("%s  %-36s %9.2f ms\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.ms);
        if (!r.passed) {
            std::printf("      %s\n", r.detail.c_str());
            ++failed;
        }
    }
    std::printf("%zu/%zu checks passed, %.2f ms total\n", results.size() - failed,
                results.size(), total_ms);
    return failed == 0 ? 0 : 1;
}
