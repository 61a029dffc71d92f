#include <cmath>
#include <vector>

#include "doctest.h"
#include "trapspec/errors.hpp"
#include "trapspec/radialoracle.hpp"
#include "trapspec/susyladder.hpp"

using namespace trapspec;

namespace {

const OscillatorUnits kNat = OscillatorUnits::natural();

double ground_of(const RadialPotential& v, int nodes = 0) {
    auto prob = make_problem(v, 1.0, 1.0, 12.0);
    return solve_eigen(prob, nodes).energy;
}

}  // namespace

TEST_CASE("input potential") {
    auto v = input_potential(0, kNat);
    CHECK(v(std::sqrt(1.5)) == doctest::Approx(-0.75).epsilon(1e-14));
    CHECK(std::abs(ground_of(v)) < 1e-8);
    CHECK(plus_spectrum(2, 2, kNat) == 0.0);
    CHECK(plus_spectrum(2, 6, kNat) == doctest::Approx(4.0));
}

TEST_CASE("superpotential") {
    for (int L = 0; L <= 4; ++L) {
        Superpotential U(L, 1.7);
        CHECK(U.stationary_point() == doctest::Approx(1.7 * std::sqrt(L + 1.0)));
        CHECK(std::abs(U.first(U.stationary_point())) < 1e-14);
        const std::vector<double> pts{0.3, 0.9, 2.2, 4.0};
        CHECK(fd_check([&](double r) { return U.value(r); }, [&](double r) { return U.first(r); },
                       [&](double r) { return U.second(r); }, pts) < 1e-7);
        auto pair = partner_pair(U, OscillatorUnits{1.0, 1.0, 1.0 / (1.7 * 1.7), 0.0});
        for (double r : pts) {
            CHECK(pair.plus_from_superpotential(r) == doctest::Approx(pair.plus(r)).epsilon(1e-12));
            CHECK(pair.minus_from_superpotential(r) == doctest::Approx(pair.minus(r)).epsilon(1e-12));
        }
    }
    Superpotential U(0, 1.0);
    CHECK_THROWS_AS((void)U.value(0.0), DomainError);
    CHECK_THROWS_AS((void)U.first(-1.0), DomainError);
}

TEST_CASE("exp(-U) is the ground state shape") {
    for (int L = 0; L <= 3; ++L) {
        Superpotential U(L, 1.0);
        auto w = radial_wavefunction_3d(L, L, kNat);
        const double ratio = std::exp(-U.value(1.0)) / w(1.0);
        for (double r : {0.4, 1.5, 3.0}) {
            CHECK(std::exp(-U.value(r)) / w(r) == doctest::Approx(ratio).epsilon(1e-12));
        }
    }
}

TEST_CASE("partner pair") {
    auto pair = partner_pair(superpotential(0, 1.0), kNat);
    CHECK(pair.minus.centrifugal == doctest::Approx(2.0));
    CHECK(partner_pair(superpotential(3, 1.0), kNat).minus.centrifugal == doctest::Approx(20.0));
    for (double r : {0.5, 1.0, 2.0}) {
        CHECK(pair.minus(r) - pair.plus(r) == doctest::Approx(1.0 / (r * r) + 1.0).epsilon(1e-12));
    }
    CHECK(ground_of(pair.minus) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("partner spectrum") {
    CHECK(partner_spectrum(0, 2, kNat) == doctest::Approx(2.0));
    for (int L = 0; L <= 3; ++L) {
        for (int Ns = L + 2; Ns <= L + 12; Ns += 2) CHECK(partner_spectrum(L, Ns, kNat) == plus_spectrum(L, Ns, kNat));
        CHECK_THROWS_AS((void)partner_spectrum(L, L, kNat), DomainError);
    }
}

TEST_CASE("partner wavefunctions") {
    auto a = partner_wavefunction(2, 0, kNat);
    auto ref = radial_wavefunction_3d(1, 1, kNat);
    for (double r : {0.3, 1.0, 2.5}) CHECK(a(r) == doctest::Approx(ref(r)));
    CHECK(a.radial.nodes() == 0);
    CHECK(partner_wavefunction(4, 0, kNat).radial.nodes() == 1);
    for (int n = 2; n <= 10; n += 2) {
        for (int m = 2; m <= 10; m += 2) {
            auto x = partner_wavefunction(n, 0, kNat);
            auto y = partner_wavefunction(m, 0, kNat);
            CHECK(std::abs(overlap(x, y, 0.0, 20.0) - (n == m ? 1.0 : 0.0)) < 1e-10);
        }
    }
    CHECK_THROWS_AS((void)partner_wavefunction(0, 0, kNat), DomainError);
}

TEST_CASE("related systems") {
    CHECK(related_systems_3d(0, 4) == std::vector<long long>{1, 5, 21, 57});
    CHECK(related_systems_3d(1, 4) == std::vector<long long>{2, 11, 36, 85});
    auto seq = related_systems_3d(0, 8);
    for (int k = 0; k < 8; ++k) CHECK(seq[k] == 1 + shell_capacity(2 * k - 1));
    CHECK_THROWS((void)related_systems_3d(2, 3));
}

TEST_CASE("iterated partner ground levels") {
    for (int it = 0; it <= 3; ++it) {
        double acc = 0.0;
        auto v = iterated_partner(0, it, kNat, &acc);
        CHECK(std::abs(ground_of(v)) < 1e-8);
        CHECK(acc == doctest::Approx(1.5 + 2.0 * it));
    }
}

TEST_CASE("partner report") {
    auto j = partner_report(0, 1, kNat, 3, {0.5, 1.0});
    CHECK(j["L"] == 0);
    CHECK(j["spectrum"].size() == 3);
    CHECK(j["potential_samples"].size() == 2);
}
