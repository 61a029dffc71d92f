#include <cmath>

#include "doctest.h"
#include "trapspec/errors.hpp"
#include "trapspec/isospec3d.hpp"
#include "trapspec/radialoracle.hpp"

using namespace trapspec;

namespace {

OscillatorUnits si_units() { return {kHbar, 1.443e-25, 2 * 3.14159 * 20.0, 4.0e-28}; }

long long cartesian_count(int N) {
    long long c = 0;
    for (int nx = 0; nx <= N; ++nx)
        for (int ny = 0; nx + ny <= N; ++ny) ++c;
    return c;
}

}  // namespace

TEST_CASE("quantum number validity") {
    CHECK(QuantumNumbers3D{4, 2, -2}.valid());
    CHECK_FALSE(QuantumNumbers3D{3, 2, 0}.valid());
    CHECK_FALSE(QuantumNumbers3D{2, 4, 0}.valid());
    CHECK_FALSE(QuantumNumbers3D{2, 2, 3}.valid());
    CHECK_THROWS_AS(QuantumNumbers3D({3, 0, 0}).validate(), DomainError);
    CHECK(on_ladder(5, 1));
    CHECK_FALSE(on_ladder(4, 1));
}

TEST_CASE("energy_3d") {
    auto u = si_units();
    CHECK(energy_3d(0, u) == doctest::Approx(u.offset + 1.5 * u.quantum()).epsilon(1e-15));
    for (int N = 0; N < 10; ++N) {
        CHECK(energy_3d(N + 2, u) - energy_3d(N, u) == doctest::Approx(2 * u.quantum()).epsilon(1e-9));
    }
    CHECK_THROWS_AS((void)energy_3d(-1, u), DomainError);
}

TEST_CASE("radial wavefunction nodes and orthonormality") {
    auto u = OscillatorUnits::natural();
    for (int L = 0; L <= 3; ++L) {
        for (int N = L; N <= L + 8; N += 2) {
            auto w = radial_wavefunction_3d(N, L, u);
            CHECK(w.energy == doctest::Approx(N + 1.5));
            // sign-change scan
            int changes = 0;
            double prev = w(1e-3);
            for (int i = 1; i <= 4000; ++i) {
                const double v = w(1e-3 + i * 10.0 / 4000);
                if (std::abs(v) > 1e-10 && std::abs(prev) > 1e-10 && v * prev < 0) ++changes;
                if (std::abs(v) > 1e-10) prev = v;
            }
            CHECK(changes == (N - L) / 2);
            for (int M = L; M <= N; M += 2) {
                auto x = radial_wavefunction_3d(M, L, u);
                CHECK(std::abs(overlap(w, x, 0.0, 20.0) - (M == N ? 1.0 : 0.0)) < 1e-10);
            }
        }
    }
    CHECK_THROWS_AS((void)radial_wavefunction_3d(3, 2, u), DomainError);
}

TEST_CASE("degeneracy and shells") {
    CHECK(degeneracy(0) == 1);
    CHECK(degeneracy(1) == 3);
    CHECK(degeneracy(7) == 36);
    for (int N = 0; N <= 20; ++N) {
        CHECK(degeneracy(N) == cartesian_count(N));
        long long sum = 0;
        for (int L = N % 2; L <= N; L += 2) sum += 2 * L + 1;
        CHECK(degeneracy(N) == sum);
    }
    CHECK(shell_capacity(-1) == 0);
    CHECK(shell_capacity(1) == 4);
    CHECK(shell_capacity(3) == 20);
    long long acc = 0;
    for (int k = 0; k <= 10; ++k) acc += degeneracy(k);
    CHECK(shell_capacity(10) == acc);
    CHECK(valence_total(1, 1) == 5);
    CHECK(valence_total(-1, 1) == 1);
    CHECK(valence_total(3, 1) == 21);
    CHECK_THROWS_AS((void)valence_total(1, 0), DomainError);
    CHECK_THROWS_AS((void)valence_total(1, 7), DomainError);
    auto r = shell_report(3, 2);
    CHECK(r.total == 22);
    CHECK(r.cumulative_capacity == 20);
}

TEST_CASE("spectrum table") {
    auto rows = spectrum_table_3d(4, OscillatorUnits::natural());
    CHECK(rows.size() == 9);
    long long states = 0;
    for (const auto& row : rows) {
        CHECK(row.energy_in_quanta == row.N + 1.5);
        states += row.degeneracy;
    }
    CHECK(states == shell_capacity(4));
    auto csv = spectrum_csv_3d(rows);
    CHECK(csv.rfind("N,L,degeneracy,E_joules,E_over_hbar_omega0\n", 0) == 0);
}
