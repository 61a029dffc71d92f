// Randomized identities with fixed seeds.

#include <cmath>
#include <random>
#include <set>
#include <string>

#include "doctest.h"
#include "trapspec/config.hpp"
#include "trapspec/fieldlab.hpp"
#include "trapspec/io.hpp"
#include "trapspec/isospec3d.hpp"
#include "trapspec/planartraps.hpp"
#include "trapspec/polybasis.hpp"
#include "trapspec/susyladder.hpp"

using namespace trapspec;

namespace {

std::mt19937_64& rng() {
    static std::mt19937_64 g(20260914);
    return g;
}

double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }
int uniform_int(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng()); }

}  // namespace

TEST_CASE("laguerre derivative identity d/dx L_n^a = -L_{n-1}^{a+1}") {
    for (int t = 0; t < 300; ++t) {
        const int n = uniform_int(1, 14);
        const double a = uniform(-0.9, 6.0);
        const double x = uniform(0.05, 12.0);
        const double h = 1e-5 * std::max(1.0, x);
        const double fd = (laguerre_gen(n, a, x + h) - laguerre_gen(n, a, x - h)) / (2 * h);
        const double ref = -laguerre_gen(n - 1, a + 1, x);
        CHECK(std::abs(fd - ref) <= 1e-6 * std::max(1.0, std::abs(ref)));
    }
}

TEST_CASE("laguerre three-term relation in alpha") {
    // L_n^a = L_n^{a+1} - L_{n-1}^{a+1}
    for (int t = 0; t < 300; ++t) {
        const int n = uniform_int(1, 20);
        const double a = uniform(-0.9, 8.0);
        const double x = uniform(0.0, 15.0);
        const double lhs = laguerre_gen(n, a, x);
        const double rhs = laguerre_gen(n, a + 1, x) - laguerre_gen(n - 1, a + 1, x);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max({1.0, std::abs(laguerre_gen(n, a + 1, x))}));
    }
}

TEST_CASE("hermite parity and derivative") {
    for (int t = 0; t < 300; ++t) {
        const int k = uniform_int(1, 18);
        const double x = uniform(-3.0, 3.0);
        const double scale = std::max(1.0, std::abs(hermite(k, x)));
        CHECK(std::abs(hermite(k, -x) - ((k % 2) ? -1.0 : 1.0) * hermite(k, x)) <= 1e-12 * scale);
        const double h = 1e-5;
        const double fd = (hermite(k, x + h) - hermite(k, x - h)) / (2 * h);
        CHECK(std::abs(fd - 2.0 * k * hermite(k - 1, x)) <= 1e-6 * std::max(1.0, std::abs(fd)));
    }
}

TEST_CASE("norm scaling with random scales") {
    for (int t = 0; t < 100; ++t) {
        const int L = uniform_int(0, 8);
        const int N = L + 2 * uniform_int(0, 10);
        const double r0 = std::exp(uniform(-20.0, 5.0));
        CHECK(radial_norm_3d(N, L, r0) == doctest::Approx(radial_norm_3d(N, L, 1.0) / std::sqrt(r0)).epsilon(1e-12));
        const int m = uniform_int(0, 8);
        const int Np = m + 2 * uniform_int(0, 10);
        CHECK(radial_norm_2d(Np, m, r0) == doctest::Approx(radial_norm_2d(Np, m, 1.0) / std::sqrt(r0)).epsilon(1e-12));
    }
}

TEST_CASE("shell identities") {
    for (int N = -1; N <= 200; ++N) {
        if (N >= 0) CHECK(shell_capacity(N) - shell_capacity(N - 1) == degeneracy(N));
        for (int d : {1, static_cast<int>(degeneracy(N + 1))}) {
            CHECK(valence_total(N, d) == shell_capacity(N) + d);
        }
    }
}

TEST_CASE("superpotential identity at random points") {
    for (int t = 0; t < 200; ++t) {
        const int L = uniform_int(0, 10);
        const double r0 = uniform(0.2, 3.0);
        OscillatorUnits u{1.0, 1.0, 1.0 / (r0 * r0), 0.0};
        auto pair = partner_pair(superpotential(L, r0), u);
        const double r = r0 * uniform(0.05, 6.0);
        const double direct = pair.plus(r);
        const double via_u = pair.plus_from_superpotential(r);
        const double size = u.kinetic() * (L + 1.0) * (L + 2.0) / (r * r) + u.spring() * r * r + u.quantum() * (L + 2);
        CHECK(std::abs(direct - via_u) <= 1e-13 * size);
    }
}

TEST_CASE("isotropy residual is quadratic in the bar current") {
    for (int t = 0; t < 50; ++t) {
        IoffePritchardGeometry g{uniform(0.005, 0.05), 0.0, uniform(10.0, 500.0), uniform(0.002, 0.02), 1.0};
        g.coil_halfspacing = g.coil_radius * uniform(0.6, 2.0);
        const double tuned = solve_bar_current(g);
        const double lambda = uniform(0.1, 3.0);
        g.bar_current = lambda * tuned;
        CHECK(ip_isotropy_residual(ip_scales(g)) == doctest::Approx(lambda * lambda - 1.0).epsilon(1e-10));
    }
}

TEST_CASE("penning labels map to distinct energies") {
    // incommensurate frequencies make (N, K, M) -> E injective on a box
    auto f = penning_frequencies(1.0, std::sqrt(7.0), 1.0, 1.0);
    std::set<long long> seen;
    int count = 0;
    for (int M = -6; M <= 6; ++M) {
        for (int N = std::abs(M); N <= 6; N += 2) {
            for (int K = 0; K <= 6; ++K) {
                const double e = penning_energy(N, K, M, f);
                seen.insert(std::llround(e * 1e9));
                ++count;
            }
        }
    }
    CHECK(static_cast<int>(seen.size()) == count);
}

TEST_CASE("paul energy depends on N + 2K only") {
    const auto u = OscillatorUnits::natural();
    for (int t = 0; t < 100; ++t) {
        const int N = uniform_int(0, 20);
        const int K = uniform_int(1, 10);
        CHECK(paul_energy(N, K, u) == paul_energy(N + 2, K - 1, u));
    }
}

TEST_CASE("format_real round trips") {
    for (int t = 0; t < 1000; ++t) {
        const double x = uniform(-1.0, 1.0) * std::exp(uniform(-300.0, 300.0));
        CHECK(std::stod(format_real(x)) == x);
    }
}

TEST_CASE("config round trip with random values") {
    for (int t = 0; t < 50; ++t) {
        RunConfig c;
        c.trap = TrapKind::Top;
        c.top = TopGeometry{uniform(0.01, 0.1), uniform(0.01, 0.1), uniform(-10, 10), uniform(0.01, 0.1),
                            uniform(0.01, 0.1), uniform(0.1, 10),  uniform(1e3, 1e5)};
        c.particle = DipoleParticle{uniform(1e-24, 1e-23), uniform(1e-26, 1e-24)};
        auto back = parse_config(config_to_json(c).dump());
        CHECK(back.top->quad_current == c.top->quad_current);
        CHECK(back.top->bias_frequency == c.top->bias_frequency);
        CHECK(back.particle->mass == c.particle->mass);
    }
}
