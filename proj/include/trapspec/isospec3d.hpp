#pragma once

// Spectrum, radial eigenfunctions and shell counting for a particle in an
// isotropic three-dimensional harmonic trap.

#include <string>
#include <vector>

#include "trapspec/polybasis.hpp"
#include "trapspec/units.hpp"

namespace trapspec {

struct QuantumNumbers3D {
    int N = 0;  // principal
    int L = 0;  // angular
    int M = 0;  // azimuthal

    /// L <= N, N - L even, |M| <= L.
    [[nodiscard]] bool valid() const;
    void validate() const;
};

/// True when N is on the ladder L, L+2, L+4, ...
bool on_ladder(int N, int L);

struct RadialEigenstate3D {
    QuantumNumbers3D qn;
    double r0 = 1.0;
    double norm = 1.0;
    double energy = 0.0;
    OscillatorRadial radial;

    [[nodiscard]] double operator()(double r) const { return radial(r); }
};

/// E_N = offset + hbar omega (N + 3/2).
double energy_3d(int N, const OscillatorUnits& units);

/// Unit-normalized W_{N,L}; energy filled in from `units`.
RadialEigenstate3D radial_wavefunction_3d(int N, int L, const OscillatorUnits& units);

/// (N+1)(N+2)/2; no spin doubling.
long long degeneracy(int N);

/// (N+1)(N+2)(N+3)/6 states at or below level N; N = -1 means an empty core.
long long shell_capacity(int N);

/// n_d = d + shell_capacity(N), 1 <= d <= degeneracy(N+1).
long long valence_total(int N, int d);

struct ShellReport {
    int shell_index = 0;
    long long degeneracy = 0;
    long long cumulative_capacity = 0;
    int valence_count = 1;
    long long total = 0;
};

ShellReport shell_report(int N, int valence_count = 1);

struct SpectrumRow {
    int N = 0;
    int L = 0;
    long long degeneracy = 0;  // 2L+1 states of this (N, L)
    double energy = 0.0;
    double energy_in_quanta = 0.0;  // (E - offset) / hbar omega
};

/// All (N, L) with N <= max_N, in order of N then L.
std::vector<SpectrumRow> spectrum_table_3d(int max_N, const OscillatorUnits& units);

/// Header N,L,degeneracy,E_joules,E_over_hbar_omega0.
std::string spectrum_csv_3d(const std::vector<SpectrumRow>& rows);

}  // namespace trapspec
