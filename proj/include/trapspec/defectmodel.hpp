#pragma once

// Quantum-defect extension of the effective radial models: the principal
// quantum number of a whole fixed-L tower is shifted by a real Delta while
// the eigenfunctions stay analytic, with angular index L* = L + I - Delta.

#include <vector>

#include "json.hpp"
#include "trapspec/polybasis.hpp"
#include "trapspec/units.hpp"

namespace trapspec {

struct EffectiveModel {
    int L = 0;
    int I = 0;           // iteration integer I(L)
    int S = 0;           // partner selector, 0 or 1
    double delta = 0.0;  // N-independent level shift
    OscillatorUnits units;

    [[nodiscard]] double L_star() const { return L + I - delta; }
    /// Delta < L + I + 3/2, i.e. L* > -3/2.
    [[nodiscard]] bool normalizable() const { return delta < L + I + 1.5; }
    void validate() const;

    /// Lowest spectroscopic quantum number of the tower, L + 2I.
    [[nodiscard]] int first_Ns() const { return L + 2 * I; }
    /// N* = Ns - I - Delta.
    [[nodiscard]] double N_star(int Ns) const;
};

/// V_EFF(r) = kinetic [L*(L*+1) - L(L+1)] / r^2 + hbar w (Delta - I).
/// The constant equals hbar w (N - N*) for every N of the tower.
RadialPotential effective_potential(const EffectiveModel& m);

/// Full shifted radial potential: kinetic L*(L*+1)/r^2 + offset + m w^2 r^2 / 2.
RadialPotential defect_radial_potential(const EffectiveModel& m);

/// E_{N*} = offset + hbar w (N* + 3/2).
double defect_energy(const EffectiveModel& m, int Ns);

/// W_{N*,L*}: exponent L*+1, Laguerre order L*+1/2, degree (Ns - L - 2I)/2.
OscillatorRadial defect_wavefunction(const EffectiveModel& m, int Ns);

struct RecoveredPartner {
    EffectiveModel model;      // Delta = 0, I = I0 + S
    double subtraction = 0.0;  // offset + hbar w (L* + 3/2 - 2S)
    RadialPotential potential;

    /// k-th level (k = 0, 1, ...) after the subtraction: hbar w (2k + 2S).
    [[nodiscard]] double level(int k) const;
    [[nodiscard]] std::vector<double> spectrum(int count) const;
};

/// Delta = 0 model reproducing the I0-th iterate of H+ (S = 0) or of H- (S = 1).
RecoveredPartner recover_partner(int S, int I0, int L, const OscillatorUnits& units);

/// {trap_scales, L, I, S, delta}.
nlohmann::json model_to_json(const EffectiveModel& m);
EffectiveModel model_from_json(const nlohmann::json& j);

}  // namespace trapspec
