#include <cmath>

#include "doctest.h"
#include "trapspec/defectmodel.hpp"
#include "trapspec/errors.hpp"
#include "trapspec/isospec3d.hpp"
#include "trapspec/radialoracle.hpp"
#include "trapspec/susyladder.hpp"

using namespace trapspec;

namespace {

EffectiveModel model(int L, int I, double delta, int S = 0) {
    EffectiveModel m;
    m.L = L;
    m.I = I;
    m.S = S;
    m.delta = delta;
    m.units = OscillatorUnits::natural();
    return m;
}

}  // namespace

TEST_CASE("effective potential") {
    auto zero = effective_potential(model(2, 0, 0.0));
    for (double r : {0.2, 1.0, 5.0}) CHECK(zero(r) == 0.0);

    auto one = effective_potential(model(0, 1, 0.0));
    for (double r : {0.5, 1.0, 3.0}) CHECK(one(r) == doctest::Approx(0.5 * 2.0 / (r * r) - 1.0));

    auto m = model(0, 0, 0.3);
    CHECK(m.L_star() * (m.L_star() + 1) == doctest::Approx(-0.21));
    CHECK(defect_radial_potential(m).centrifugal == doctest::Approx(-0.21));
}

// N counts along the original L tower: N = Ns - 2I.
TEST_CASE("V_EFF constant equals hbar w (N - N*)") {
    for (double delta : {-0.4, 0.0, 0.25}) {
        for (int I : {0, 1, 2}) {
            auto m = model(1, I, delta);
            auto v = effective_potential(m);
            const double big_r = 1e8;
            for (int Ns = m.first_Ns(); Ns <= m.first_Ns() + 6; Ns += 2) {
                CHECK(v(big_r) == doctest::Approx(Ns - 2 * I - m.N_star(Ns)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("defect energies") {
    for (int Ns = 0; Ns <= 8; Ns += 2) {
        CHECK(defect_energy(model(0, 0, 0.0), Ns) == doctest::Approx(energy_3d(Ns, OscillatorUnits::natural())));
        CHECK(defect_energy(model(0, 0, 0.3), Ns) == doctest::Approx(defect_energy(model(0, 0, 0.0), Ns) - 0.3));
    }
    CHECK_THROWS_AS((void)defect_energy(model(1, 1, 0.0), 1), DomainError);
    CHECK_THROWS_AS((void)defect_energy(model(1, 0, 0.0), 2), DomainError);
}

TEST_CASE("defect energies against the shooting solver") {
    for (double delta : {-0.3, 0.2, 0.45}) {
        auto m = model(1, 0, delta);
        auto v = defect_radial_potential(m);
        for (int k = 0; k < 3; ++k) {
            const int Ns = 1 + 2 * k;
            auto prob = make_problem(v, 1.0, 1.0, defect_energy(m, Ns) + 10.0);
            const double e = solve_eigen(prob, k).energy;
            CHECK(e == doctest::Approx(defect_energy(m, Ns)).epsilon(1e-6));
        }
    }
}

TEST_CASE("defect wavefunctions") {
    auto plain = defect_wavefunction(model(1, 2, 0.0), 7);
    auto ref = radial_wavefunction_3d(5, 3, OscillatorUnits::natural());
    for (double r : {0.4, 1.2, 2.7}) CHECK(plain(r) == doctest::Approx(ref(r)).epsilon(1e-13));

    auto m = model(0, 0, 0.35);
    for (int a = 0; a <= 6; a += 2) {
        CHECK(defect_wavefunction(m, a).nodes() == a / 2);
        for (int b = 0; b <= 6; b += 2) {
            auto x = defect_wavefunction(m, a);
            auto y = defect_wavefunction(m, b);
            CHECK(std::abs(overlap(x, y, 0.0, 20.0) - (a == b ? 1.0 : 0.0)) < 1e-10);
        }
    }
    CHECK_THROWS_AS((void)defect_wavefunction(model(0, 0, 1.5), 0), DomainError);
    CHECK_FALSE(model(0, 0, 1.6).normalizable());
}

TEST_CASE("recover partner") {
    const auto u = OscillatorUnits::natural();
    for (int L = 0; L <= 2; ++L) {
        auto plus = recover_partner(0, 0, L, u);
        auto minus = recover_partner(1, 0, L, u);
        auto pair = partner_pair(superpotential(L, 1.0), u);
        for (double r : {0.3, 1.0, 2.4}) {
            CHECK(plus.potential(r) == doctest::Approx(pair.plus(r)).epsilon(1e-12));
            CHECK(minus.potential(r) == doctest::Approx(pair.minus(r)).epsilon(1e-12));
        }
        CHECK(plus.level(0) == 0.0);
        CHECK(minus.level(0) == doctest::Approx(2.0));
    }
    auto r2 = recover_partner(0, 2, 0, u);
    auto prob = make_problem(r2.potential, 1.0, 1.0, 12.0);
    CHECK(std::abs(solve_eigen(prob, 0).energy) < 1e-8);
    CHECK(r2.spectrum(3).size() == 3);
}

TEST_CASE("model json round trip") {
    auto m = model(2, 1, 0.125, 1);
    auto back = model_from_json(model_to_json(m));
    CHECK(back.L == 2);
    CHECK(back.I == 1);
    CHECK(back.S == 1);
    CHECK(back.delta == 0.125);
}
