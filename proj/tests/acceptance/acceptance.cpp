// One line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>

#include "weilab/verify.hpp"

int main() {
    weilab::Verifier v{weilab::VerifyConfig{}};
    int failed = 0;
    v.run_all([&](const weilab::CheckResult& r) {
        if (!r.passed) ++failed;
        std::printf("criterion %2d %s  %s: value %.3e, tolerance %.3e  (%.1fs)\n", r.id, r.passed ? "PASS" : "FAIL",
                    r.name.c_str(), r.value, r.tolerance, r.seconds);
        std::printf("             %s\n", r.criterion.c_str());
        if (!r.error.empty()) std::printf("             error: %s\n", r.error.c_str());
        std::fflush(stdout);
    });
    std::printf("%d of %d criteria passed\n", weilab::Verifier::check_count() - failed, weilab::Verifier::check_count());
    return failed == 0 ? 0 : 1;
}
