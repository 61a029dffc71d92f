#pragma once

// Supersymmetric partner construction for the radial oscillator towers.
//
// For a fixed L the radial hamiltonian with its ground energy removed,
// H+ = (hbar^2/2m)(-d^2/dr^2 + U'^2 - U''), is paired with
// H- = (hbar^2/2m)(-d^2/dr^2 + U'^2 + U''). H- carries every level of H+
// except the ground state.

#include <string>
#include <vector>

#include "json.hpp"
#include "trapspec/isospec3d.hpp"
#include "trapspec/units.hpp"

namespace trapspec {

/// U(r) = r^2 / 2 r0^2 - (L+1) ln(r / r0); dimensionless, U' in 1/length.
class Superpotential {
public:
    Superpotential(int L, double r0);

    [[nodiscard]] double value(double r) const;
    [[nodiscard]] double first(double r) const;
    [[nodiscard]] double second(double r) const;

    /// Single positive zero of U', at r0 sqrt(L+1).
    [[nodiscard]] double stationary_point() const;

    [[nodiscard]] int L() const { return L_; }
    [[nodiscard]] double r0() const { return r0_; }

private:
    void check(double r) const;

    int L_;
    double r0_;
};

struct PartnerPair {
    int L = 0;
    OscillatorUnits units;
    Superpotential superpotential;
    RadialPotential plus;   // V+ = kinetic (U'^2 - U'')
    RadialPotential minus;  // V- = kinetic (U'^2 + U'')

    /// Direct kinetic * (U'^2 -/+ U'') evaluation through the superpotential.
    [[nodiscard]] double plus_from_superpotential(double r) const;
    [[nodiscard]] double minus_from_superpotential(double r) const;
};

/// V_L+(r) = kinetic L(L+1)/r^2 + m w^2 r^2 / 2 - hbar w (2L+3)/2.
RadialPotential input_potential(int L, const OscillatorUnits& units);

Superpotential superpotential(int L, double r0);

/// Partner pair generated by U. Units must share U's r0.
PartnerPair partner_pair(const Superpotential& U, const OscillatorUnits& units);

/// E+_{N,L} = hbar w (N - L), N = L, L+2, ...
double plus_spectrum(int L, int N, const OscillatorUnits& units);

/// E-_{Ns,L} = hbar w (Ns - L), Ns = L+2, L+4, ...; Ns = L is the removed level.
double partner_spectrum(int L, int Ns, const OscillatorUnits& units);

/// W-_{Ns,L} = W_{Ns-1,L+1}; not the oscillator state W_{Ns,L}.
RadialEigenstate3D partner_wavefunction(int Ns, int L, const OscillatorUnits& units);

/// n = 1 + shell_capacity(N): N = -1, 1, 3, ... for L = 0 and N = 0, 2, 4, ... for L = 1.
std::vector<long long> related_systems_3d(int L, int count);

/// Partner potential after `iteration` repeated constructions at fixed L,
/// with the energy zero at its own ground level. Iteration 0 is V_L+.
/// `accumulated_offset` receives the total energy subtracted so far
/// (constant offset plus the removed ground levels).
RadialPotential iterated_partner(int L, int iteration, const OscillatorUnits& units,
                                 double* accumulated_offset = nullptr);

/// {L, sequence_index, removed_level, potential_samples[], spectrum[]}.
nlohmann::json partner_report(int L, int sequence_index, const OscillatorUnits& units, int levels,
                              const std::vector<double>& sample_radii);

}  // namespace trapspec
