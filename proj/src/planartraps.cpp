#include "trapspec/planartraps.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <tuple>

#include "trapspec/errors.hpp"
#include "trapspec/io.hpp"

namespace trapspec {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ValidationError(std::string(what) + " must be positive and finite");
    }
}

}  // namespace

bool QuantumNumbersPlanar::valid() const {
    const int am = std::abs(M);
    return K >= 0 && N >= am && (N - am) % 2 == 0;
}

void QuantumNumbersPlanar::validate() const {
    if (!valid()) {
        throw DomainError("invalid planar quantum numbers (N=" + std::to_string(N) + ", M=" + std::to_string(M) +
                          ", K=" + std::to_string(K) + "): need N = |M|, |M|+2, ... and K >= 0");
    }
}

void PaulParams::validate() const {
    require_positive(size, "size");
    require_positive(drive_frequency, "drive_frequency");
    require_positive(mass, "mass");
    if (voltage == 0.0 || charge == 0.0 || !std::isfinite(voltage) || !std::isfinite(charge)) {
        throw ValidationError("Paul trap needs finite nonzero voltage and charge");
    }
}

PaulFrequencies paul_frequencies(const PaulParams& p) {
    p.validate();
    PaulFrequencies f;
    f.Omega_p = std::sqrt(std::sqrt(2.0) * std::abs(p.charge * p.voltage) / (p.mass * p.size * p.size));
    f.omega_p = f.Omega_p * f.Omega_p / (4.0 * p.drive_frequency);
    f.rho_p = std::sqrt(kHbar / (p.mass * f.omega_p));
    f.drive_ratio = p.drive_frequency / f.Omega_p;
    return f;
}

OscillatorUnits paul_units(const PaulParams& p) {
    const auto f = paul_frequencies(p);
    return {kHbar, p.mass, f.omega_p, 0.0};
}

double paul_electrode_potential(const PaulParams& p, double rho, double z) {
    return p.voltage / (2.0 * p.size * p.size) * (z * z - 0.5 * rho * rho);
}

double paul_effective_potential(const PaulParams& p, double rho, double z) {
    const auto f = paul_frequencies(p);
    return 0.5 * p.mass * f.omega_p * f.omega_p * (rho * rho + 4.0 * z * z);
}

double paul_energy(int N, int K, const OscillatorUnits& units) {
    if (N < 0 || K < 0) {
        throw DomainError("paul_energy: N and K must be nonnegative");
    }
    return units.quantum() * (N + 2.0 * K + 2.0);
}

RadialPotential paul_radial_potential(int K, int abs_m, const OscillatorUnits& units) {
    if (K < 0 || abs_m < 0) {
        throw DomainError("paul_radial_potential: K and |M| must be nonnegative");
    }
    const double spring = units.spring();
    const double axial = units.quantum() * (2.0 * K + 1.0);
    return {units.kinetic(), abs_m * static_cast<double>(abs_m) - 0.25,
            [spring, axial](double rho) { return spring * rho * rho + axial; }};
}

PaulAxial::PaulAxial(int K, int M, double rho_p)
    : K_(K), M_(M), rho_p_(rho_p), norm_(hermite_function_norm(K, rho_p / std::sqrt(2.0))) {}

double PaulAxial::operator()(double z) const {
    const double s = std::sqrt(2.0) * z / rho_p_;
    return norm_ * std::exp(-0.5 * s * s) * hermite(K_, s);
}

std::complex<double> PaulAxial::value(double phi, double z) const {
    return std::polar(1.0, M_ * phi) * (*this)(z);
}

OscillatorRadial planar_radial(int N, int abs_m, double scale) {
    QuantumNumbersPlanar qn{N, abs_m, 0};
    if (abs_m < 0) {
        throw DomainError("planar_radial: |M| must be nonnegative");
    }
    qn.validate();
    return OscillatorRadial((N - abs_m) / 2, abs_m - 0.5, scale);
}

PaulState paul_wavefunctions(int N, int M, int K, const OscillatorUnits& units) {
    QuantumNumbersPlanar qn{N, M, K};
    qn.validate();
    const double rho_p = units.length();
    return {qn, paul_energy(N, K, units), PaulAxial(K, M, rho_p), planar_radial(N, std::abs(M), rho_p)};
}

PlanarPartnerPair planar_susy_partner(int abs_m, const OscillatorUnits& units) {
    if (abs_m < 0) {
        throw DomainError("planar_susy_partner: |M| must be nonnegative");
    }
    const double spring = units.spring();
    const double q = units.quantum();
    auto tower = [&](int m) {
        return RadialPotential{units.kinetic(), m * static_cast<double>(m) - 0.25,
                               [spring, shift = q * (m + 1.0)](double rho) { return spring * rho * rho - shift; }};
    };
    RadialPotential plus = tower(abs_m);
    RadialPotential minus = tower(abs_m + 1);
    minus.smooth = [base = minus.smooth, q](double rho) { return base(rho) + 2.0 * q; };
    return {abs_m, units, std::move(plus), std::move(minus)};
}

PlanarPartnerPair paul_susy_partner(int abs_m, const OscillatorUnits& units) {
    return planar_susy_partner(abs_m, units);
}

double planar_plus_spectrum(int abs_m, int N, const OscillatorUnits& units) {
    QuantumNumbersPlanar{N, abs_m, 0}.validate();
    return units.quantum() * (N - abs_m);
}

double planar_partner_spectrum(int abs_m, int Ns, const OscillatorUnits& units) {
    if (Ns == abs_m) {
        throw DomainError("planar_partner_spectrum: Ns = |M| is the removed ground level");
    }
    QuantumNumbersPlanar{Ns, abs_m, 0}.validate();
    return units.quantum() * (Ns - abs_m);
}

OscillatorRadial planar_partner_wavefunction(int Ns, int abs_m, double scale) {
    if (abs_m < 0 || Ns < abs_m + 2 || (Ns - abs_m) % 2 != 0) {
        throw DomainError("planar_partner_wavefunction: Ns must be |M|+2, |M|+4, ...");
    }
    return planar_radial(Ns - 1, abs_m + 1, scale);
}

long long paul_shell_count(int E_tilde) {
    if (E_tilde < 2) {
        throw DomainError("paul_shell_count: E_tilde must be at least 2 (the ground level)");
    }
    const long long e = E_tilde;
    return e % 2 == 0 ? e * (e + 2) * (2 * e - 1) / 12 : (e * e - 1) * (2 * e + 3) / 12;
}

std::vector<long long> paul_related_systems(int count) {
    if (count < 1) {
        throw DomainError("paul_related_systems: count must be positive");
    }
    std::vector<long long> out{1};
    for (int e = 2; static_cast<int>(out.size()) < count; ++e) out.push_back(paul_shell_count(e) + 1);
    return out;
}

void PenningParams::validate() const {
    require_positive(size, "size");
    require_positive(mass, "mass");
    require_positive(charge, "charge");
    if (voltage == 0.0 || !std::isfinite(voltage)) {
        throw ValidationError("Penning trap needs a finite nonzero voltage");
    }
    if (axial_field == 0.0 || !std::isfinite(axial_field)) {
        throw ValidationError("Penning trap needs a finite nonzero axial field");
    }
}

double PenningFrequencies::rho0() const { return std::sqrt(hbar / (mass * omega_c)); }

double PenningFrequencies::z0() const { return std::sqrt(hbar / (mass * omega_z)); }

OscillatorUnits PenningFrequencies::radial_units() const { return {hbar, mass, 0.5 * Omega, 0.0}; }

PenningFrequencies penning_frequencies(double omega_z, double omega_c, double hbar, double mass) {
    require_positive(omega_z, "omega_z");
    require_positive(omega_c, "omega_c");
    const double disc = omega_c * omega_c - 2.0 * omega_z * omega_z;
    if (!(disc > 0.0)) {
        throw ValidationError("Penning trap unstable: omega_c^2 <= 2 omega_z^2 leaves Omega non-positive");
    }
    PenningFrequencies f;
    f.omega_z = omega_z;
    f.omega_c = omega_c;
    f.Omega = std::sqrt(disc);
    f.k = f.Omega / omega_c;
    f.hbar = hbar;
    f.mass = mass;
    return f;
}

PenningFrequencies penning_frequencies(const PenningParams& p) {
    p.validate();
    const double omega_z = std::sqrt(std::abs(p.charge * p.voltage) / (p.mass * p.size * p.size));
    const double omega_c = std::abs(p.charge * p.axial_field) / p.mass;
    return penning_frequencies(omega_z, omega_c, kHbar, p.mass);
}

namespace {

void check_magnetron(int N, int M, int cap) {
    if ((N + M) / 2 > cap) {
        throw DomainError("magnetron number (N+M)/2 = " + std::to_string((N + M) / 2) + " exceeds the cap " +
                          std::to_string(cap));
    }
}

}  // namespace

double penning_energy(int N, int K, int M, const PenningFrequencies& f, int magnetron_cap) {
    QuantumNumbersPlanar{N, M, K}.validate();
    check_magnetron(N, M, magnetron_cap);
    return 0.5 * f.hbar * (f.Omega * N + 2.0 * f.omega_z * K - f.omega_c * M + f.Omega + f.omega_z);
}

RadialPotential penning_radial_potential(int K, int M, const PenningFrequencies& f) {
    if (K < 0) {
        throw DomainError("penning_radial_potential: K must be nonnegative");
    }
    const double spring = f.mass * f.Omega * f.Omega / 8.0;
    const double constant = (K + 0.5) * f.hbar * f.omega_z - 0.5 * M * f.hbar * f.omega_c;
    return {f.hbar * f.hbar / (2.0 * f.mass), M * static_cast<double>(M) - 0.25,
            [spring, constant](double rho) { return spring * rho * rho + constant; }};
}

PenningState::PenningState(int N, int K, int M, const PenningFrequencies& f)
    : qn_{N, M, K},
      f_(f),
      norm_(0.0),
      energy_(0.0),
      radial_(planar_radial(N, std::abs(M), f.rho0() * std::sqrt(2.0 / f.k))) {
    qn_.validate();
    const int am = std::abs(M);
    const int n = (N - am) / 2;
    const double rho0 = f.rho0();
    // |Psi|^2 rho d rho d phi dz = 2 pi (2/k)^|M| (rho0^2/k) Gamma(n+|M|+1)/n! * z0 sqrt(pi) 2^K K!
    const double log_int = std::log(2.0 * std::numbers::pi) + am * std::log(2.0 / f.k) + std::log(rho0 * rho0 / f.k) +
                           log_gamma(n + am + 1.0) - log_gamma(n + 1.0) + std::log(f.z0()) +
                           0.5 * std::log(std::numbers::pi) + K * std::log(2.0) + log_gamma(K + 1.0);
    norm_ = std::exp(-0.5 * log_int);
    energy_ = 0.5 * f.hbar * (f.Omega * N + 2.0 * f.omega_z * K - f.omega_c * M + f.Omega + f.omega_z);
}

double PenningState::radial_factor(double rho) const {
    const int am = std::abs(qn_.M);
    const double u = rho / f_.rho0();
    const double x = 0.5 * f_.k * u * u;
    const double power = am == 0 ? 1.0 : std::pow(u, am);
    return norm_ * power * std::exp(-0.5 * x) * laguerre_gen((qn_.N - am) / 2, am, x);
}

double PenningState::axial_factor(double z) const {
    const double s = z / f_.z0();
    return std::exp(-0.5 * s * s) * hermite(qn_.K, s);
}

std::complex<double> PenningState::operator()(double rho, double phi, double z) const {
    return std::polar(1.0, qn_.M * phi) * (radial_factor(rho) * axial_factor(z));
}

PenningState penning_wavefunction(int N, int K, int M, const PenningFrequencies& f, int magnetron_cap) {
    QuantumNumbersPlanar{N, M, K}.validate();
    check_magnetron(N, M, magnetron_cap);
    return PenningState(N, K, M, f);
}

std::vector<PlanarLevel> penning_levels(const PenningFrequencies& f, double max_energy, int magnetron_cap) {
    // E = hbar/2 [(Omega + w_c) n_c + (Omega - w_c) p + Omega + w_z (2K + 1)],
    // n_c = (N - M)/2 cyclotron, p = (N + M)/2 magnetron.
    std::vector<PlanarLevel> out;
    for (int p = 0; p <= magnetron_cap; ++p) {
        for (int nc = 0;; ++nc) {
            const int N = p + nc;
            const int M = p - nc;
            const double base = penning_energy(N, 0, M, f, magnetron_cap);
            if (base > max_energy) break;
            for (int K = 0;; ++K) {
                const double e = base + f.hbar * f.omega_z * K;
                if (e > max_energy) break;
                out.push_back({N, M, K, e});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const PlanarLevel& a, const PlanarLevel& b) {
        return a.energy != b.energy ? a.energy < b.energy : std::tie(a.N, a.M, a.K) < std::tie(b.N, b.M, b.K);
    });
    return out;
}

long long penning_state_count(const PenningFrequencies& f, double max_energy, int magnetron_cap) {
    return 2LL * static_cast<long long>(penning_levels(f, max_energy, magnetron_cap).size());
}

std::vector<PlanarLevel> paul_levels(const OscillatorUnits& units, int max_E_tilde) {
    std::vector<PlanarLevel> out;
    for (int K = 0; 2 * K + 2 <= max_E_tilde; ++K) {
        for (int N = 0; N + 2 * K + 2 <= max_E_tilde; ++N) {
            for (int M = -N; M <= N; M += 2) out.push_back({N, M, K, paul_energy(N, K, units)});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const PlanarLevel& a, const PlanarLevel& b) { return a.energy < b.energy; });
    return out;
}

std::string planar_spectrum_csv(const std::vector<PlanarLevel>& levels) {
    std::string out = "N,M,K,E_joules\n";
    for (const auto& l : levels) {
        out += std::to_string(l.N) + ',' + std::to_string(l.M) + ',' + std::to_string(l.K) + ',' +
               format_real(l.energy) + '\n';
    }
    return out;
}

}  // namespace trapspec
