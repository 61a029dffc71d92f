#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "trapspec/errors.hpp"
#include "trapspec/polybasis.hpp"
#include "trapspec/radialoracle.hpp"

using namespace trapspec;

namespace {

long double binom_real(long double top, int k) {
    // C(top, k) for real top, integer k >= 0
    long double c = 1.0L;
    for (int i = 0; i < k; ++i) c *= (top - i) / (i + 1);
    return c;
}

// Alternating sum; `magnitude` receives the sum of |terms| (its conditioning).
double laguerre_series(int n, double alpha, double x, double* magnitude = nullptr) {
    long double s = 0.0L;
    long double abs_sum = 0.0L;
    long double xk_over_kfact = 1.0L;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) xk_over_kfact *= static_cast<long double>(x) / k;
        const long double term = binom_real(n + static_cast<long double>(alpha), n - k) * xk_over_kfact;
        s += (k % 2) ? -term : term;
        abs_sum += term < 0 ? -term : term;
    }
    if (magnitude) *magnitude = static_cast<double>(abs_sum);
    return static_cast<double>(s);
}

double hermite_series(int n, double x) {
    double s = 0.0;
    for (int m = 0; 2 * m <= n; ++m) {
        s += ((m % 2) ? -1.0 : 1.0) * std::tgamma(n + 1.0) / (std::tgamma(m + 1.0) * std::tgamma(n - 2 * m + 1.0)) *
             std::pow(2.0 * x, n - 2 * m);
    }
    return s;
}

}  // namespace

TEST_CASE("laguerre_gen low orders") {
    CHECK(laguerre_gen(0, 0.5, 3.7) == 1.0);
    CHECK(laguerre_gen(1, 0.5, 2.0) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(laguerre_gen(4, 1.5, 0.8) == doctest::Approx(laguerre_series(4, 1.5, 0.8)).epsilon(1e-13));
}

TEST_CASE("laguerre_gen matches series on a grid") {
    for (int n = 0; n <= 12; ++n) {
        for (double alpha : {-0.5, -0.21, 0.0, 0.5, 1.0, 2.5, 7.0}) {
            for (double x : {0.0, 0.3, 1.0, 4.2, 9.0}) {
                double magnitude = 0.0;
                const double ref = laguerre_series(n, alpha, x, &magnitude);
                CHECK(std::abs(laguerre_gen(n, alpha, x) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)) + 1e-14 * magnitude);
            }
        }
    }
}

TEST_CASE("laguerre_gen domain errors") {
    CHECK_THROWS_AS((void)laguerre_gen(2, -1.0, 1.0), DomainError);
    CHECK_THROWS_AS((void)laguerre_gen(-1, 0.5, 1.0), DomainError);
}

TEST_CASE("hermite") {
    CHECK(hermite(0, 1.9) == 1.0);
    CHECK(hermite(1, 0.5) == doctest::Approx(1.0));
    CHECK(hermite(5, 1.3) == doctest::Approx(hermite_series(5, 1.3)).epsilon(1e-13));
    for (int k = 0; k <= 15; ++k) {
        for (double x : {-2.0, -0.4, 0.0, 0.7, 3.1}) {
            const double ref = hermite_series(k, x);
            CHECK(std::abs(hermite(k, x) - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
        }
    }
    CHECK_THROWS_AS((void)hermite(-1, 0.0), DomainError);
}

TEST_CASE("log_gamma") {
    CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
}

TEST_CASE("radial_norm_3d closed form and scaling") {
    const double c00 = 2.0 / (std::pow(std::numbers::pi, 0.25));
    CHECK(radial_norm_3d(0, 0, 1.0) == doctest::Approx(c00).epsilon(1e-14));
    CHECK(radial_norm_3d(0, 0, 4.0) == doctest::Approx(c00 / 2.0).epsilon(1e-14));
    for (double r0 : {0.3, 2.0, 1e-6}) {
        CHECK(radial_norm_3d(6, 2, r0) == doctest::Approx(radial_norm_3d(6, 2, 1.0) / std::sqrt(r0)).epsilon(1e-13));
    }
    CHECK_THROWS_AS((void)radial_norm_3d(3, 0, 1.0), DomainError);
    CHECK_THROWS_AS((void)radial_norm_3d(1, 3, 1.0), DomainError);
}

TEST_CASE("radial_norm_2d closed form and scaling") {
    // Gaussian moment: integral of v exp(-v^2) dv = 1/2, so C^2 rho_p / 2 = 1
    CHECK(radial_norm_2d(0, 0, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(radial_norm_2d(5, 3, 0.25) == doctest::Approx(radial_norm_2d(5, 3, 1.0) * 2.0).epsilon(1e-13));
}

TEST_CASE("oscillator radial functions have unit norm") {
    for (int N = 0; N <= 10; ++N) {
        for (int L = N % 2; L <= N; L += 2) {
            OscillatorRadial w((N - L) / 2, L, 1.3);
            const double n2 = overlap(w, w, 0.0, 30.0);
            CHECK(std::abs(n2 - 1.0) < 1e-10);
        }
    }
    for (int N = 0; N <= 8; ++N) {
        for (int m = N % 2; m <= N; m += 2) {
            OscillatorRadial x((N - m) / 2, m - 0.5, 0.7);
            CHECK(std::abs(overlap(x, x, 0.0, 20.0) - 1.0) < 1e-10);
        }
    }
    // non-integer angular index
    OscillatorRadial d(2, -0.3, 1.0);
    CHECK(std::abs(overlap(d, d, 0.0, 20.0) - 1.0) < 1e-10);
}

TEST_CASE("hermite_function_norm") {
    for (int k = 0; k <= 8; ++k) {
        const double a = hermite_function_norm(k, 0.8);
        auto f = [&](double z) { return a * std::exp(-0.5 * (z / 0.8) * (z / 0.8)) * hermite(k, z / 0.8); };
        CHECK(std::abs(overlap(f, f, -20.0, 20.0) - 1.0) < 1e-10);
    }
}

TEST_CASE("OscillatorRadial derivative and nodes") {
    OscillatorRadial w(3, 1.0, 1.0);
    CHECK(w.nodes() == 3);
    for (double r : {0.4, 1.1, 2.5}) {
        const double h = 1e-5;
        const double fd = (w(r + h) - w(r - h)) / (2 * h);
        CHECK(w.derivative(r) == doctest::Approx(fd).epsilon(1e-7));
    }
    CHECK(laguerre_degree(7, 3) == 2);
    CHECK(laguerre_degree(2.3, 0.3) == 1);
    CHECK_THROWS_AS((void)laguerre_degree(2, 1), DomainError);
}

TEST_CASE("large N stays finite") {
    OscillatorRadial w(60, 1.0, 1.0);
    for (double r : {0.1, 5.0, 11.0, 16.0}) CHECK(std::isfinite(w(r)));
}
