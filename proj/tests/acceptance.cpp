// Runs the ten acceptance criteria and prints one line per criterion.
// Exit status: 0 all pass, 3 a check failed, 4 an oracle did not converge, 2 bad configuration.

#include <cstdio>
#include <exception>

#include "trapspec/errors.hpp"
#include "trapspec/verify.hpp"

int main() {
    using namespace trapspec;
    VerifyOptions opts;
    try {
        opts.tol_scale = tolerance_scale_from_env();
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "acceptance: %s\n", e.what());
        return 2;
    }
    bool failed = false;
    bool oracle = false;
    double total = 0.0;
    for (const auto& r : run_all(opts)) {
        std::printf("%s\n", r.summary().c_str());
        std::fflush(stdout);
        failed = failed || !r.passed();
        oracle = oracle || r.oracle_failure;
        total += r.seconds;
    }
    std::printf("tolerance scale %.3g, total %.2f s: %s\n", opts.tol_scale, total, failed ? "FAILED" : "all passed");
    if (oracle) return 4;
    return failed ? 3 : 0;
}
