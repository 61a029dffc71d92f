#include "trapspec/defectmodel.hpp"

#include <cmath>
#include <string>

#include "trapspec/errors.hpp"

namespace trapspec {

void EffectiveModel::validate() const {
    if (L < 0 || I < 0) {
        throw DomainError("EffectiveModel: L and I must be nonnegative");
    }
    if (S != 0 && S != 1) {
        throw DomainError("EffectiveModel: S must be 0 or 1");
    }
    if (!std::isfinite(delta)) {
        throw DomainError("EffectiveModel: delta must be finite");
    }
    if (!normalizable()) {
        throw DomainError("EffectiveModel: delta = " + std::to_string(delta) + " must stay below L + I + 3/2 = " +
                          std::to_string(L + I + 1.5) + " for normalizable eigenfunctions");
    }
}

double EffectiveModel::N_star(int Ns) const {
    if (Ns < first_Ns() || (Ns - first_Ns()) % 2 != 0) {
        throw DomainError("Ns = " + std::to_string(Ns) + " is not in the tower L + 2I, L + 2I + 2, ...");
    }
    return Ns - I - delta;
}

RadialPotential effective_potential(const EffectiveModel& m) {
    m.validate();
    const double ls = m.L_star();
    const double constant = m.units.quantum() * (m.delta - m.I);
    return {m.units.kinetic(), ls * (ls + 1.0) - m.L * (m.L + 1.0), [constant](double) { return constant; }};
}

RadialPotential defect_radial_potential(const EffectiveModel& m) {
    m.validate();
    const double ls = m.L_star();
    const double spring = m.units.spring();
    const double offset = m.units.offset;
    return {m.units.kinetic(), ls * (ls + 1.0), [spring, offset](double r) { return offset + spring * r * r; }};
}

double defect_energy(const EffectiveModel& m, int Ns) {
    m.validate();
    return m.units.offset + m.units.quantum() * (m.N_star(Ns) + 1.5);
}

OscillatorRadial defect_wavefunction(const EffectiveModel& m, int Ns) {
    m.validate();
    const int degree = laguerre_degree(m.N_star(Ns), m.L_star());
    return OscillatorRadial(degree, m.L_star(), m.units.length());
}

double RecoveredPartner::level(int k) const {
    if (k < 0) {
        throw DomainError("RecoveredPartner::level: index must be nonnegative");
    }
    return model.units.quantum() * (2.0 * k + 2.0 * model.S);
}

std::vector<double> RecoveredPartner::spectrum(int count) const {
    std::vector<double> out;
    for (int k = 0; k < count; ++k) out.push_back(level(k));
    return out;
}

RecoveredPartner recover_partner(int S, int I0, int L, const OscillatorUnits& units) {
    if (S != 0 && S != 1) {
        throw DomainError("recover_partner: S must be 0 or 1");
    }
    if (I0 < 0) {
        throw DomainError("recover_partner: I0 must be nonnegative");
    }
    EffectiveModel model{L, I0 + S, S, 0.0, units};
    model.validate();
    const double shift = units.quantum() * (model.L_star() + 1.5 - 2.0 * S);
    const double ls = model.L_star();
    // the offset cancels exactly; keep it out of the arithmetic
    auto smooth = [spring = units.spring(), shift](double r) { return spring * r * r - shift; };
    return {model, units.offset + shift, {units.kinetic(), ls * (ls + 1.0), smooth}};
}

nlohmann::json model_to_json(const EffectiveModel& m) {
    return {
        {"trap_scales",
         {{"hbar_J_s", m.units.hbar}, {"mass_kg", m.units.mass}, {"omega0_rad_per_s", m.units.omega},
          {"offset_J", m.units.offset}}},
        {"L", m.L},
        {"I", m.I},
        {"S", m.S},
        {"delta", m.delta},
    };
}

EffectiveModel model_from_json(const nlohmann::json& j) {
    try {
        EffectiveModel m;
        const auto& s = j.at("trap_scales");
        m.units.hbar = s.at("hbar_J_s").get<double>();
        m.units.mass = s.at("mass_kg").get<double>();
        m.units.omega = s.at("omega0_rad_per_s").get<double>();
        m.units.offset = s.value("offset_J", 0.0);
        m.L = j.at("L").get<int>();
        m.I = j.at("I").get<int>();
        m.S = j.at("S").get<int>();
        m.delta = j.at("delta").get<double>();
        m.validate();
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("defect model: ") + e.what());
    } catch (const DomainError& e) {
        throw ConfigError(std::string("defect model: ") + e.what());
    }
}

}  // namespace trapspec
