#pragma once

// Paul (ponderomotive approximation) and Penning traps: frequencies, planar
// radial eigenproblems, axial modes, energies, planar partner potentials and
// spin-1/2 state counting.

#include <complex>
#include <string>
#include <vector>

#include "trapspec/polybasis.hpp"
#include "trapspec/units.hpp"

namespace trapspec {

struct QuantumNumbersPlanar {
    int N = 0;  // radial/principal
    int M = 0;  // azimuthal
    int K = 0;  // axial

    /// N in {|M|, |M|+2, ...}, K >= 0.
    [[nodiscard]] bool valid() const;
    void validate() const;
};

struct PaulParams {
    double voltage = 0.0;          // V_p
    double size = 0.0;             // d_p
    double drive_frequency = 0.0;  // rf drive, rad/s
    double charge = 0.0;
    double mass = 0.0;

    void validate() const;
};

struct PaulFrequencies {
    double Omega_p = 0.0;      // (sqrt(2)|q V_p| / m d_p^2)^(1/2)
    double omega_p = 0.0;      // Omega_p^2 / 4 drive
    double rho_p = 0.0;        // (hbar / m omega_p)^(1/2)
    double drive_ratio = 0.0;  // drive / Omega_p
    [[nodiscard]] bool adiabatic() const { return drive_ratio >= kDriveRatioWarning; }

    static constexpr double kDriveRatioWarning = 10.0;
};

PaulFrequencies paul_frequencies(const PaulParams& p);
OscillatorUnits paul_units(const PaulParams& p);

/// Electrode potential phi = V_p (z^2 - rho^2/2) / 2 d_p^2.
double paul_electrode_potential(const PaulParams& p, double rho, double z);
/// m omega_p^2 (rho^2 + 4 z^2) / 2.
double paul_effective_potential(const PaulParams& p, double rho, double z);

/// hbar omega_p (N + 2K + 2); `units` carries omega_p.
double paul_energy(int N, int K, const OscillatorUnits& units);

/// Planar radial potential of the Paul trap at axial number K:
/// kinetic (M^2 - 1/4)/rho^2 + m omega_p^2 rho^2 / 2 + hbar omega_p (2K + 1).
RadialPotential paul_radial_potential(int K, int abs_m, const OscillatorUnits& units);

/// z-factor of Upsilon_{M,K}: A_K exp(-z^2/rho_p^2) H_K(sqrt(2) z / rho_p),
/// normalized so the integral of its square over z is 1.
class PaulAxial {
public:
    PaulAxial(int K, int M, double rho_p);

    [[nodiscard]] double operator()(double z) const;
    /// Including the exp(i M phi) factor.
    [[nodiscard]] std::complex<double> value(double phi, double z) const;
    [[nodiscard]] double norm() const { return norm_; }

private:
    int K_;
    int M_;
    double rho_p_;
    double norm_;
};

struct PaulState {
    QuantumNumbersPlanar qn;
    double energy = 0.0;
    PaulAxial axial;
    OscillatorRadial radial;  // X_{N,|M|}, unit norm in rho
};

PaulState paul_wavefunctions(int N, int M, int K, const OscillatorUnits& units);

/// X_{N,|M|} = C (rho/scale)^{|M|+1/2} exp(-rho^2/2 scale^2) L_{(N-|M|)/2}^{|M|}(rho^2/scale^2).
OscillatorRadial planar_radial(int N, int abs_m, double scale);

/// Ground-subtracted planar oscillator towers with frequency `units.omega`:
///   V+_{|M|} = kinetic (M^2 - 1/4)/rho^2 + m w^2 rho^2/2 - hbar w (|M| + 1)
///   V-_{|M|} = V+_{|M|+1} + 2 hbar w
struct PlanarPartnerPair {
    int abs_m = 0;
    OscillatorUnits units;
    RadialPotential plus;
    RadialPotential minus;
};

PlanarPartnerPair planar_susy_partner(int abs_m, const OscillatorUnits& units);
PlanarPartnerPair paul_susy_partner(int abs_m, const OscillatorUnits& units);

/// hbar w (N - |M|), N = |M|, |M|+2, ...
double planar_plus_spectrum(int abs_m, int N, const OscillatorUnits& units);
/// hbar w (Ns - |M|), Ns = |M|+2, |M|+4, ...
double planar_partner_spectrum(int abs_m, int Ns, const OscillatorUnits& units);
/// X-_{Ns,|M|} = X_{Ns-1,|M|+1}.
OscillatorRadial planar_partner_wavefunction(int Ns, int abs_m, double scale);

/// Spin-1/2 states with E <= E_tilde hbar omega_p.
long long paul_shell_count(int E_tilde);
/// 1, then paul_shell_count(E) + 1 for E = 2, 3, ...
std::vector<long long> paul_related_systems(int count);

struct PenningParams {
    double voltage = 0.0;
    double size = 0.0;
    double axial_field = 0.0;
    double charge = 0.0;  // must be > 0
    double mass = 0.0;

    void validate() const;
};

struct PenningFrequencies {
    double omega_z = 0.0;
    double omega_c = 0.0;
    double Omega = 0.0;  // (omega_c^2 - 2 omega_z^2)^(1/2)
    double k = 0.0;      // Omega / omega_c
    double hbar = kHbar;
    double mass = 1.0;

    [[nodiscard]] double rho0() const;
    [[nodiscard]] double z0() const;
    /// Units of the planar radial oscillator, frequency Omega / 2.
    [[nodiscard]] OscillatorUnits radial_units() const;
};

/// Throws ValidationError unless omega_c^2 > 2 omega_z^2.
PenningFrequencies penning_frequencies(const PenningParams& p);
PenningFrequencies penning_frequencies(double omega_z, double omega_c, double hbar, double mass);

inline constexpr int kDefaultMagnetronCap = 50;

/// hbar (Omega N + 2 omega_z K - omega_c M + Omega + omega_z) / 2.
/// Rejects (N + M)/2 above magnetron_cap.
double penning_energy(int N, int K, int M, const PenningFrequencies& f, int magnetron_cap = kDefaultMagnetronCap);

/// kinetic (M^2 - 1/4)/rho^2 + m Omega^2 rho^2 / 8 + (K + 1/2) hbar omega_z - M hbar omega_c / 2.
RadialPotential penning_radial_potential(int K, int M, const PenningFrequencies& f);

class PenningState {
public:
    PenningState(int N, int K, int M, const PenningFrequencies& f);

    [[nodiscard]] std::complex<double> operator()(double rho, double phi, double z) const;
    /// C (rho/rho0)^|M| exp(-k rho^2 / 4 rho0^2) L(k rho^2 / 2 rho0^2)
    [[nodiscard]] double radial_factor(double rho) const;
    /// exp(-z^2 / 2 z0^2) H_K(z / z0)
    [[nodiscard]] double axial_factor(double z) const;
    /// Solution X of the planar radial equation, unit norm in rho.
    [[nodiscard]] const OscillatorRadial& radial() const { return radial_; }
    [[nodiscard]] double norm() const { return norm_; }
    [[nodiscard]] double energy() const { return energy_; }
    [[nodiscard]] QuantumNumbersPlanar qn() const { return qn_; }

private:
    QuantumNumbersPlanar qn_;
    PenningFrequencies f_;
    double norm_;
    double energy_;
    OscillatorRadial radial_;
};

PenningState penning_wavefunction(int N, int K, int M, const PenningFrequencies& f,
                                  int magnetron_cap = kDefaultMagnetronCap);

struct PlanarLevel {
    int N = 0;
    int M = 0;
    int K = 0;
    double energy = 0.0;
};

/// Every (N, M, K) with E <= max_energy and (N + M)/2 <= magnetron_cap, sorted by energy.
std::vector<PlanarLevel> penning_levels(const PenningFrequencies& f, double max_energy,
                                        int magnetron_cap = kDefaultMagnetronCap);
/// Spin-1/2 states (two per orbital) with E <= max_energy.
long long penning_state_count(const PenningFrequencies& f, double max_energy,
                              int magnetron_cap = kDefaultMagnetronCap);

/// All (N, M, K) with N + 2K + 2 <= max_E_tilde.
std::vector<PlanarLevel> paul_levels(const OscillatorUnits& units, int max_E_tilde);

/// Header N,M,K,E_joules.
std::string planar_spectrum_csv(const std::vector<PlanarLevel>& levels);

}  // namespace trapspec
