#include "trapspec/susyladder.hpp"

#include <cmath>
#include <string>

#include "trapspec/defectmodel.hpp"
#include "trapspec/errors.hpp"

namespace trapspec {

Superpotential::Superpotential(int L, double r0) : L_(L), r0_(r0) {
    if (L < 0) {
        throw DomainError("superpotential: L must be nonnegative");
    }
    if (!(r0 > 0.0)) {
        throw DomainError("superpotential: r0 must be positive");
    }
}

void Superpotential::check(double r) const {
    if (!(r > 0.0)) {
        throw DomainError("superpotential evaluated at r <= 0");
    }
}

double Superpotential::value(double r) const {
    check(r);
    const double u = r / r0_;
    return 0.5 * u * u - (L_ + 1.0) * std::log(u);
}

double Superpotential::first(double r) const {
    check(r);
    return r / (r0_ * r0_) - (L_ + 1.0) / r;
}

double Superpotential::second(double r) const {
    check(r);
    return 1.0 / (r0_ * r0_) + (L_ + 1.0) / (r * r);
}

double Superpotential::stationary_point() const { return r0_ * std::sqrt(L_ + 1.0); }

double PartnerPair::plus_from_superpotential(double r) const {
    const double d1 = superpotential.first(r);
    return units.kinetic() * (d1 * d1 - superpotential.second(r));
}

double PartnerPair::minus_from_superpotential(double r) const {
    const double d1 = superpotential.first(r);
    return units.kinetic() * (d1 * d1 + superpotential.second(r));
}

RadialPotential input_potential(int L, const OscillatorUnits& units) {
    if (L < 0) {
        throw DomainError("input_potential: L must be nonnegative");
    }
    const double spring = units.spring();
    const double shift = 0.5 * units.quantum() * (2.0 * L + 3.0);
    return {units.kinetic(), static_cast<double>(L) * (L + 1), [spring, shift](double r) { return spring * r * r - shift; }};
}

Superpotential superpotential(int L, double r0) { return Superpotential(L, r0); }

PartnerPair partner_pair(const Superpotential& U, const OscillatorUnits& units) {
    const double r0 = U.r0();
    if (std::abs(r0 - units.length()) > 1e-12 * r0) {
        throw DomainError("partner_pair: superpotential length differs from the oscillator length");
    }
    // U'^2 -/+ U'' = [(L+1)^2 -/+ (L+1)] / r^2 + r^2 / r0^4 - (2(L+1) +/- 1) / r0^2
    const double k = units.kinetic();
    const double lp1 = U.L() + 1.0;
    const double inv_r04 = 1.0 / (r0 * r0 * r0 * r0);
    const double inv_r02 = 1.0 / (r0 * r0);
    RadialPotential plus{k, lp1 * lp1 - lp1, [=](double r) { return k * (r * r * inv_r04 - (2.0 * lp1 + 1.0) * inv_r02); }};
    RadialPotential minus{k, lp1 * lp1 + lp1, [=](double r) { return k * (r * r * inv_r04 - (2.0 * lp1 - 1.0) * inv_r02); }};
    return {U.L(), units, U, std::move(plus), std::move(minus)};
}

double plus_spectrum(int L, int N, const OscillatorUnits& units) {
    if (!on_ladder(N, L)) {
        throw DomainError("plus_spectrum: N must be L, L+2, ...");
    }
    return units.quantum() * (N - L);
}

double partner_spectrum(int L, int Ns, const OscillatorUnits& units) {
    if (L < 0) {
        throw DomainError("partner_spectrum: L must be nonnegative");
    }
    if (Ns == L) {
        throw DomainError("partner_spectrum: Ns = L is the ground level removed by the partner construction");
    }
    if (!on_ladder(Ns, L) || Ns < L + 2) {
        throw DomainError("partner_spectrum: Ns must be L+2, L+4, ...");
    }
    return units.quantum() * (Ns - L);
}

RadialEigenstate3D partner_wavefunction(int Ns, int L, const OscillatorUnits& units) {
    if (L < 0 || !on_ladder(Ns, L) || Ns < L + 2) {
        throw DomainError("partner_wavefunction: Ns must be L+2, L+4, ... (got Ns=" + std::to_string(Ns) +
                          ", L=" + std::to_string(L) + ")");
    }
    auto state = radial_wavefunction_3d(Ns - 1, L + 1, units);
    // Same function as W_{Ns-1,L+1}; the energy is the H- level.
    state.energy = partner_spectrum(L, Ns, units);
    return state;
}

std::vector<long long> related_systems_3d(int L, int count) {
    if (L < 0 || L > 1) {
        throw DomainError("related_systems_3d: only the L = 0 and L = 1 sequences are defined");
    }
    if (count < 1) {
        throw DomainError("related_systems_3d: count must be positive");
    }
    std::vector<long long> out;
    out.reserve(count);
    for (int j = 0; j < count; ++j) {
        const int N = (L == 0 ? -1 : 0) + 2 * j;
        out.push_back(1 + shell_capacity(N));
    }
    return out;
}

RadialPotential iterated_partner(int L, int iteration, const OscillatorUnits& units, double* accumulated_offset) {
    if (iteration < 0) {
        throw DomainError("iterated_partner: iteration must be nonnegative");
    }
    auto recovered = recover_partner(0, iteration, L, units);
    if (accumulated_offset) {
        // ground of the iterated tower is the original level N = L + 2*iteration
        *accumulated_offset = units.offset + units.quantum() * (L + 2.0 * iteration + 1.5);
    }
    return recovered.potential;
}

nlohmann::json partner_report(int L, int sequence_index, const OscillatorUnits& units, int levels,
                              const std::vector<double>& sample_radii) {
    double offset = 0.0;
    const auto plus = iterated_partner(L, sequence_index, units, &offset);
    const auto minus = recover_partner(1, sequence_index, L, units);
    nlohmann::json samples = nlohmann::json::array();
    for (double r : sample_radii) {
        samples.push_back({{"r", r}, {"V_plus", plus(r)}, {"V_minus", minus.potential(r)}});
    }
    nlohmann::json spectrum = nlohmann::json::array();
    const int base = L + 2 * sequence_index;
    for (int k = 1; k <= levels; ++k) {
        const double rel = minus.level(k - 1);
        spectrum.push_back({{"Ns", base + 2 * k}, {"E_relative", rel}, {"E_absolute", rel + offset}});
    }
    nlohmann::json report = {
        {"L", L},
        {"sequence_index", sequence_index},
        {"removed_level", {{"N", base}, {"E_absolute", offset}}},
        {"potential_samples", samples},
        {"spectrum", spectrum},
    };
    if (L <= 1) {
        report["trapped_fermions"] = related_systems_3d(L, sequence_index + 2).back();
    }
    return report;
}

}  // namespace trapspec
