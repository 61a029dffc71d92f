// trapspec: trap design, spectra, wavefunctions, partner/defect reports,
// shell tables, field maps and verification suites from the command line.
//
// Exit status: 0 ok, 1 usage, 2 config error, 3 validation failure,
// 4 oracle non-convergence.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "trapspec/config.hpp"
#include "trapspec/defectmodel.hpp"
#include "trapspec/errors.hpp"
#include "trapspec/fieldlab.hpp"
#include "trapspec/io.hpp"
#include "trapspec/isospec3d.hpp"
#include "trapspec/planartraps.hpp"
#include "trapspec/susyladder.hpp"
#include "trapspec/verify.hpp"

using namespace trapspec;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kConfig = 2, kValidation = 3, kOracle = 4 };

struct Common {
    std::string config;
    std::string trap;
    std::string output;
    bool natural = false;
};

struct Context {
    std::optional<RunConfig> cfg;
    std::optional<TrapKind> trap;
    bool natural = false;
    std::string output;

    [[nodiscard]] TrapKind require_trap() const {
        if (!trap) throw ConfigError("no trap selected: pass --trap or --config");
        return *trap;
    }
    [[nodiscard]] const RunConfig& require_config() const {
        if (!cfg) throw ConfigError("this command needs --config for the selected trap");
        return *cfg;
    }
};

Context make_context(const Common& c) {
    Context ctx;
    if (!c.config.empty()) {
        ctx.cfg = load_config(c.config);
        ctx.cfg->validate();
        ctx.trap = ctx.cfg->trap;
        ctx.output = ctx.cfg->output;
    }
    if (!c.trap.empty()) {
        const auto kind = trap_kind_from_string(c.trap);
        if (ctx.cfg && ctx.cfg->trap != kind) {
            throw ConfigError("--trap " + c.trap + " disagrees with the config's trap " + to_string(ctx.cfg->trap));
        }
        ctx.trap = kind;
    }
    if (ctx.cfg && ctx.cfg->units_explicit && ctx.cfg->units == UnitMode::SI && c.natural) {
        throw ConfigError("config fixes SI units but --natural-units was given");
    }
    ctx.natural = c.natural || (ctx.cfg && ctx.cfg->units == UnitMode::Natural);
    if (!c.output.empty()) ctx.output = c.output;
    return ctx;
}

void emit(const Context& ctx, const std::string& text) {
    if (ctx.output.empty()) {
        std::cout << text;
        std::cout.flush();
    } else {
        write_atomic(ctx.output, text);
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Fills `value` from the config's parameters block when the flag was not given.
template <class T>
void param(const Context& ctx, const CLI::Option* opt, const char* key, T& value) {
    if (opt->count() > 0 || !ctx.cfg) return;
    const auto& p = ctx.cfg->parameters;
    auto it = p.find(key);
    if (it == p.end()) return;
    try {
        value = it->get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("parameters.") + key + " has the wrong type");
    }
}

template <class T>
void param(const Context& ctx, const CLI::Option* opt, const char* key, std::optional<T>& value) {
    if (opt->count() > 0 || !ctx.cfg) return;
    auto it = ctx.cfg->parameters.find(key);
    if (it == ctx.cfg->parameters.end()) return;
    try {
        value = it->get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("parameters.") + key + " has the wrong type");
    }
}

bool is_magnetic(TrapKind k) { return k == TrapKind::IoffePritchard || k == TrapKind::Top; }

double isotropy_tolerance() { return 1e-12 * tolerance_scale_from_env(); }

struct MagneticTrapView {
    DerivedScales scales;
    double residual = 0.0;
    double tuned_current = 0.0;
    const char* current_key = "";
};

MagneticTrapView magnetic_view(const RunConfig& cfg, bool tune) {
    MagneticTrapView v;
    if (cfg.trap == TrapKind::IoffePritchard) {
        auto g = *cfg.ioffe_pritchard;
        v.tuned_current = solve_bar_current(g);
        if (tune) g.bar_current = v.tuned_current;
        v.scales = ip_scales(g);
        v.residual = ip_isotropy_residual(v.scales);
        v.current_key = "bar_current_A";
    } else {
        auto g = *cfg.top;
        v.tuned_current = solve_quad_current(g);
        if (tune) g.quad_current = v.tuned_current;
        v.scales = top_scales(g);
        v.residual = top_isotropy_residual(v.scales);
        v.current_key = "quad_current_A";
    }
    return v;
}

// Oscillator units of a magnetic trap; natural units when no config is given.
OscillatorUnits magnetic_units(const Context& ctx, bool tune) {
    if (!ctx.cfg) {
        if (!ctx.natural) throw ConfigError("SI output needs --config; pass --natural-units for dimensionless tables");
        return OscillatorUnits::natural();
    }
    const auto v = magnetic_view(*ctx.cfg, tune);
    if (std::abs(v.residual) > isotropy_tolerance()) {
        throw ValidationError("trap is not isotropic (residual " + format_real(v.residual) +
                              "); pass --tune or set " + v.current_key + " = " + format_real(v.tuned_current));
    }
    auto u = trap_units(*ctx.cfg->particle, v.scales);
    if (ctx.natural) u = {1.0, 1.0, 1.0, u.offset / u.quantum()};
    return u;
}

// --- commands ---------------------------------------------------------------

int cmd_scales(const Context& ctx, bool tune) {
    const auto& cfg = ctx.require_config();
    json out{{"trap", to_string(cfg.trap)}, {"units", ctx.natural ? "natural" : "SI"}};
    if (is_magnetic(cfg.trap)) {
        const auto v = magnetic_view(cfg, tune);
        const auto& s = v.scales;
        const double rs = s.isotropic_radius();
        const auto osc = oscillator_scales(*cfg.particle, s.field, rs);
        const double len = ctx.natural ? osc.r0 : 1.0;
        out["length_m"] = s.length / len;
        out["area_m2"] = s.area / (len * len);
        out["field_T"] = ctx.natural ? 1.0 : s.field;
        out["gradient_T_per_m"] = ctx.natural ? s.gradient * len / s.field : s.gradient;
        out["isotropy_residual"] = v.residual;
        out["isotropic_radius_m"] = rs / len;
        out[v.current_key] = tune ? v.tuned_current : (cfg.trap == TrapKind::IoffePritchard ? cfg.ioffe_pritchard->bar_current
                                                                                             : cfg.top->quad_current);
        out[std::string("tuned_") + v.current_key] = v.tuned_current;
        out["omega0_rad_per_s"] = ctx.natural ? 1.0 : osc.omega0;
        out["r0_m"] = ctx.natural ? 1.0 : osc.r0;
        if (ctx.natural) out["length_unit"] = "r0";
    } else if (cfg.trap == TrapKind::Paul) {
        const auto f = paul_frequencies(*cfg.paul);
        const double w = ctx.natural ? f.omega_p : 1.0;
        out["Omega_p_rad_per_s"] = f.Omega_p / w;
        out["omega_p_rad_per_s"] = f.omega_p / w;
        out["rho_p_m"] = ctx.natural ? 1.0 : f.rho_p;
        out["drive_ratio"] = f.drive_ratio;
        out["adiabatic"] = f.adiabatic();
        if (!f.adiabatic()) {
            std::cerr << "warning: drive/Omega_p = " << f.drive_ratio << " is below "
                      << PaulFrequencies::kDriveRatioWarning << "; the ponderomotive picture is unreliable\n";
        }
    } else {
        const auto f = penning_frequencies(*cfg.penning);
        const double w = ctx.natural ? f.omega_z : 1.0;
        out["omega_z_rad_per_s"] = f.omega_z / w;
        out["omega_c_rad_per_s"] = f.omega_c / w;
        out["Omega_rad_per_s"] = f.Omega / w;
        out["k"] = f.k;
        out["rho0_m"] = ctx.natural ? f.rho0() / f.z0() : f.rho0();
        out["z0_m"] = ctx.natural ? 1.0 : f.z0();
    }
    emit(ctx, dump(out));
    return kOk;
}

struct FieldMapArgs {
    std::string axis = "x";
    int points = 21;
    double extent = 0.1;
    double time = 0.0;
    std::string source = "series";
};

int cmd_field_map(const Context& ctx, const FieldMapArgs& a) {
    const auto& cfg = ctx.require_config();
    if (!is_magnetic(cfg.trap)) throw ConfigError("field-map needs an ioffe_pritchard or top config");
    if (a.points < 2) throw ConfigError("--points must be at least 2");
    if (!(a.extent > 0.0)) throw ConfigError("--extent must be positive");
    if (a.source != "series" && a.source != "biot-savart") throw ConfigError("--source must be series or biot-savart");
    Vec3 dir;
    if (a.axis == "x") {
        dir = {1, 0, 0};
    } else if (a.axis == "y") {
        dir = {0, 1, 0};
    } else if (a.axis == "z") {
        dir = {0, 0, 1};
    } else if (a.axis == "diag") {
        dir = {1 / std::sqrt(3.0), 1 / std::sqrt(3.0), 1 / std::sqrt(3.0)};
    } else {
        throw ConfigError("--axis must be x, y, z or diag");
    }
    const bool ip = cfg.trap == TrapKind::IoffePritchard;
    const auto s = ip ? ip_scales(*cfg.ioffe_pritchard) : top_scales(*cfg.top);
    const auto assembly = ip ? ip_assembly(*cfg.ioffe_pritchard) : top_assembly(*cfg.top, a.time);
    std::vector<FieldSample> samples;
    for (int i = 0; i < a.points; ++i) {
        const double u = -a.extent + 2.0 * a.extent * i / (a.points - 1);
        const Vec3 p = (u * s.length) * dir;
        Vec3 b;
        if (a.source == "biot-savart") {
            b = biot_savart_field(assembly, p);
        } else if (ip) {
            const auto cp = CylindricalPoint::from(p);
            b = ip_field_series(s, cp).cartesian(cp.phi);
        } else {
            b = top_field_series(*cfg.top, s, p, a.time);
        }
        samples.push_back({p, a.time, b});
    }
    if (!ctx.natural) {
        emit(ctx, field_map_csv(samples));
        return kOk;
    }
    const auto osc = oscillator_scales(*cfg.particle, s.field, s.isotropic_radius());
    const double b0 = std::abs(s.field);
    std::string out = "x_r0,y_r0,z_r0,t_omega0,Bx_B0,By_B0,Bz_B0\n";
    for (const auto& f : samples) {
        for (double v : {f.point.x / osc.r0, f.point.y / osc.r0, f.point.z / osc.r0, f.t * osc.omega0, f.field.x / b0,
                         f.field.y / b0}) {
            out += format_real(v) + ',';
        }
        out += format_real(f.field.z / b0) + '\n';
    }
    emit(ctx, out);
    return kOk;
}

int cmd_isotropy(const Context& ctx, bool require_tuned) {
    const auto& cfg = ctx.require_config();
    if (!is_magnetic(cfg.trap)) throw ConfigError("isotropy applies to ioffe_pritchard and top traps");
    const auto v = magnetic_view(cfg, false);
    const auto c = cfg.trap == TrapKind::IoffePritchard ? ip_potential_coefficients(v.scales)
                                                         : top_potential_coefficients(v.scales);
    const auto tuned = magnetic_view(cfg, true);
    const bool ok = std::abs(v.residual) <= isotropy_tolerance();
    const double rs = tuned.scales.isotropic_radius();
    double len = 1.0;
    if (ctx.natural) len = oscillator_scales(*cfg.particle, tuned.scales.field, rs).r0;
    json out{{"trap", to_string(cfg.trap)},
             {"rho2_coefficient_per_m2", c.rho2 * len * len},
             {"z2_coefficient_per_m2", c.z2 * len * len},
             {"isotropy_residual", v.residual},
             {"isotropic", ok},
             {std::string("tuned_") + v.current_key, tuned.tuned_current},
             {"tuned_isotropic_radius_m", rs / len}};
    if (ctx.natural) out["length_unit"] = "r0";
    emit(ctx, dump(out));
    if (require_tuned && !ok) {
        std::cerr << "trap is not isotropic: residual " << v.residual << "\n";
        return kValidation;
    }
    return kOk;
}

struct SpectrumArgs {
    int max_N = 6;
    int max_E_tilde = 6;
    std::optional<double> max_energy;
    int magnetron_cap = kDefaultMagnetronCap;
    bool tune = false;
};

int cmd_spectrum(const Context& ctx, const SpectrumArgs& a) {
    const auto trap = ctx.require_trap();
    if (is_magnetic(trap)) {
        if (a.max_N < 0) throw ConfigError("--max-N must be nonnegative");
        const auto u = magnetic_units(ctx, a.tune);
        const auto rows = spectrum_table_3d(a.max_N, u);
        if (!ctx.natural) {
            emit(ctx, spectrum_csv_3d(rows));
        } else {
            std::string out = "N,L,degeneracy,E_over_hbar_omega0,E_above_offset_over_hbar_omega0\n";
            for (const auto& r : rows) {
                out += std::to_string(r.N) + ',' + std::to_string(r.L) + ',' + std::to_string(r.degeneracy) + ',' +
                       format_real(r.energy) + ',' + format_real(r.energy_in_quanta) + '\n';
            }
            emit(ctx, out);
        }
        return kOk;
    }
    if (trap == TrapKind::Paul) {
        if (a.max_E_tilde < 2) throw ConfigError("--max-E-tilde must be at least 2");
        const OscillatorUnits u = ctx.cfg && !ctx.natural ? paul_units(*ctx.cfg->paul) : OscillatorUnits::natural();
        if (!ctx.cfg && !ctx.natural) throw ConfigError("SI output needs --config; pass --natural-units");
        const auto levels = paul_levels(u, a.max_E_tilde);
        if (!ctx.natural) {
            emit(ctx, planar_spectrum_csv(levels));
        } else {
            std::string out = "N,M,K,E_over_hbar_omega_p\n";
            for (const auto& l : levels) {
                out += std::to_string(l.N) + ',' + std::to_string(l.M) + ',' + std::to_string(l.K) + ',' +
                       format_real(l.energy) + '\n';
            }
            emit(ctx, out);
        }
        return kOk;
    }
    const auto& cfg = ctx.require_config();
    const auto f = penning_frequencies(*cfg.penning);
    const double unit = ctx.natural ? f.hbar * f.omega_z : 1.0;
    const double ground = penning_energy(0, 0, 0, f);
    const double max_e = a.max_energy ? *a.max_energy * unit : ground + 5.0 * f.hbar * f.omega_z;
    const auto levels = penning_levels(f, max_e, a.magnetron_cap);
    std::string out = ctx.natural ? "N,M,K,E_over_hbar_omega_z\n" : "N,M,K,E_joules\n";
    for (const auto& l : levels) {
        out += std::to_string(l.N) + ',' + std::to_string(l.M) + ',' + std::to_string(l.K) + ',' +
               format_real(l.energy / unit) + '\n';
    }
    emit(ctx, out);
    return kOk;
}

struct WavefunctionArgs {
    int N = 0;
    int L = 0;
    int M = 0;
    int K = 0;
    int points = 201;
    std::optional<double> r_max;
    bool partner = false;
    bool tune = false;
};

std::string two_column(const char* header, const std::vector<double>& x, const std::vector<double>& y) {
    std::string out = std::string(header) + '\n';
    for (std::size_t i = 0; i < x.size(); ++i) out += format_real(x[i]) + ',' + format_real(y[i]) + '\n';
    return out;
}

int cmd_wavefunction(const Context& ctx, const WavefunctionArgs& a) {
    const auto trap = ctx.require_trap();
    if (a.points < 2) throw ConfigError("--points must be at least 2");
    if (is_magnetic(trap)) {
        const auto u = magnetic_units(ctx, a.tune);
        const auto w = a.partner ? partner_wavefunction(a.N, a.L, u) : radial_wavefunction_3d(a.N, a.L, u);
        const double extent = (a.r_max ? *a.r_max : std::sqrt(2.0 * a.N + 3.0) + 4.0) * u.length();
        std::vector<double> r;
        std::vector<double> v;
        for (int i = 0; i < a.points; ++i) {
            r.push_back(extent * i / (a.points - 1));
            v.push_back(w(r.back()));
        }
        emit(ctx, two_column(ctx.natural ? "r_r0,W" : "r_m,W_per_sqrt_m", r, v));
        return kOk;
    }
    // planar traps: radial factor over rho and axial factor over z, row by row
    std::vector<double> rho;
    std::vector<double> radial;
    std::vector<double> z;
    std::vector<double> axial;
    std::string header;
    if (trap == TrapKind::Paul) {
        if (!ctx.cfg && !ctx.natural) throw ConfigError("SI output needs --config; pass --natural-units");
        OscillatorUnits u = ctx.cfg ? paul_units(*ctx.cfg->paul) : OscillatorUnits::natural();
        const double len = u.length();
        const double out_len = ctx.natural ? len : 1.0;
        const double amp = ctx.natural ? std::sqrt(len) : 1.0;
        const auto st = paul_wavefunctions(a.partner ? a.N - 1 : a.N, a.partner ? std::abs(a.M) + 1 : a.M, a.K, u);
        const auto x = a.partner ? planar_partner_wavefunction(a.N, std::abs(a.M), len) : st.radial;
        const double extent = (a.r_max ? *a.r_max : std::sqrt(2.0 * a.N + 2.0) + 4.0) * len;
        for (int i = 0; i < a.points; ++i) {
            const double t = static_cast<double>(i) / (a.points - 1);
            rho.push_back(t * extent);
            radial.push_back(x(rho.back()) * amp);
            z.push_back((2.0 * t - 1.0) * extent);
            axial.push_back(st.axial(z.back()) * amp);
            rho.back() /= out_len;
            z.back() /= out_len;
        }
        header = ctx.natural ? "rho_rho_p,X,z_rho_p,Upsilon" : "rho_m,X_per_sqrt_m,z_m,Upsilon_per_sqrt_m";
    } else {
        const auto& cfg = ctx.require_config();
        const auto f = penning_frequencies(*cfg.penning);
        const auto st = penning_wavefunction(a.N, a.K, a.M, f);
        const double len = ctx.natural ? f.rho0() : 1.0;
        const double amp = ctx.natural ? std::pow(f.rho0(), 1.5) : 1.0;
        const double extent = (a.r_max ? *a.r_max : std::sqrt(2.0 * a.N + 2.0) + 4.0) * st.radial().scale();
        for (int i = 0; i < a.points; ++i) {
            const double t = static_cast<double>(i) / (a.points - 1);
            rho.push_back(t * extent);
            radial.push_back(st.radial_factor(rho.back()) * amp);
            z.push_back((2.0 * t - 1.0) * extent);
            axial.push_back(st.axial_factor(z.back()));
            rho.back() /= len;
            z.back() /= len;
        }
        header = ctx.natural ? "rho_rho0,R,z_rho0,Z" : "rho_m,R_per_m_3_2,z_m,Z";
    }
    std::string out = header + '\n';
    for (std::size_t i = 0; i < rho.size(); ++i) {
        out += format_real(rho[i]) + ',' + format_real(radial[i]) + ',' + format_real(z[i]) + ',' +
               format_real(axial[i]) + '\n';
    }
    emit(ctx, out);
    return kOk;
}

struct SusyArgs {
    int L = 0;
    int sequence_index = 0;
    int levels = 5;
    int samples = 16;
    bool tune = false;
};

int cmd_susy(const Context& ctx, const SusyArgs& a) {
    const auto trap = ctx.trap.value_or(TrapKind::IoffePritchard);
    if (a.levels < 1 || a.samples < 1) throw ConfigError("--levels and --samples must be positive");
    if (is_magnetic(trap)) {
        const auto u = magnetic_units(ctx, a.tune);
        std::vector<double> radii;
        for (int i = 0; i < a.samples; ++i) {
            radii.push_back(u.length() * std::pow(10.0, -1.0 + 1.5 * i / std::max(1, a.samples - 1)));
        }
        emit(ctx, dump(partner_report(a.L, a.sequence_index, u, a.levels, radii)));
        return kOk;
    }
    OscillatorUnits u = OscillatorUnits::natural();
    if (ctx.cfg && !ctx.natural) {
        u = trap == TrapKind::Paul ? paul_units(*ctx.cfg->paul) : penning_frequencies(*ctx.cfg->penning).radial_units();
    } else if (!ctx.natural) {
        throw ConfigError("SI output needs --config; pass --natural-units");
    }
    const int am = std::abs(a.L);
    const auto pair = trap == TrapKind::Paul ? paul_susy_partner(am, u) : planar_susy_partner(am, u);
    json samples = json::array();
    for (int i = 0; i < a.samples; ++i) {
        const double r = u.length() * std::pow(10.0, -1.0 + 1.5 * i / std::max(1, a.samples - 1));
        samples.push_back({{"rho", r}, {"V_plus", pair.plus(r)}, {"V_minus", pair.minus(r)}});
    }
    json spectrum = json::array();
    for (int k = 1; k <= a.levels; ++k) {
        const int ns = am + 2 * k;
        spectrum.push_back({{"Ns", ns}, {"E_plus", planar_plus_spectrum(am, ns, u)},
                            {"E_minus", planar_partner_spectrum(am, ns, u)}});
    }
    json out{{"trap", to_string(trap)},
             {"abs_M", am},
             {"removed_level", {{"N", am}, {"E_relative", 0.0}}},
             {"potential_samples", samples},
             {"spectrum", spectrum}};
    emit(ctx, dump(out));
    return kOk;
}

struct DefectArgs {
    int L = 0;
    int I = 0;
    int S = 0;
    double delta = 0.0;
    int levels = 5;
    std::string model;
    bool tune = false;
};

int cmd_defect(const Context& ctx, const DefectArgs& a) {
    EffectiveModel m;
    if (!a.model.empty()) {
        std::ifstream in(a.model);
        if (!in) throw ConfigError("cannot read model file '" + a.model + "'");
        json j;
        try {
            in >> j;
        } catch (const json::parse_error& e) {
            throw ConfigError(a.model + ": " + e.what());
        }
        m = model_from_json(j);
    } else {
        m = {a.L, a.I, a.S, a.delta, magnetic_units(ctx, a.tune)};
    }
    m.validate();
    if (a.levels < 1) throw ConfigError("--levels must be positive");
    json levels = json::array();
    for (int k = 0; k < a.levels; ++k) {
        const int ns = m.first_Ns() + 2 * k;
        levels.push_back({{"Ns", ns}, {"N_star", m.N_star(ns)}, {"E", defect_energy(m, ns)}});
    }
    const auto veff = effective_potential(m);
    json out = model_to_json(m);
    out["L_star"] = m.L_star();
    out["normalizable"] = m.normalizable();
    out["V_EFF"] = {{"centrifugal_coefficient", veff.centrifugal}, {"constant", veff.smooth(1.0)}};
    out["levels"] = levels;
    emit(ctx, dump(out));
    return kOk;
}

struct ShellArgs {
    int max_N = 5;
    int max_E_tilde = 8;
    std::optional<double> max_energy;
};

int cmd_shells(const Context& ctx, const ShellArgs& a) {
    const auto trap = ctx.require_trap();
    std::string out;
    if (is_magnetic(trap)) {
        if (a.max_N < 0) throw ConfigError("--max-N must be nonnegative");
        out = "N,degeneracy,cumulative_capacity\n";
        for (int n = 0; n <= a.max_N; ++n) {
            out += std::to_string(n) + ',' + std::to_string(degeneracy(n)) + ',' + std::to_string(shell_capacity(n)) +
                   '\n';
        }
    } else if (trap == TrapKind::Paul) {
        if (a.max_E_tilde < 2) throw ConfigError("--max-E-tilde must be at least 2");
        out = "E_tilde,closed_shell_states,related_system\n";
        for (int e = 2; e <= a.max_E_tilde; ++e) {
            out += std::to_string(e) + ',' + std::to_string(paul_shell_count(e)) + ',' +
                   std::to_string(paul_shell_count(e) + 1) + '\n';
        }
    } else {
        const auto& cfg = ctx.require_config();
        const auto f = penning_frequencies(*cfg.penning);
        const double unit = ctx.natural ? f.hbar * f.omega_z : 1.0;
        const double max_e = a.max_energy ? *a.max_energy * unit : penning_energy(0, 0, 0, f) + 5.0 * f.hbar * f.omega_z;
        // one row per distinct level energy, with cumulative spin-1/2 counts
        const auto levels = penning_levels(f, max_e);
        out = ctx.natural ? "E_over_hbar_omega_z,cumulative_states\n" : "E_joules,cumulative_states\n";
        for (std::size_t i = 0; i < levels.size(); ++i) {
            if (i + 1 < levels.size() && levels[i + 1].energy == levels[i].energy) continue;
            out += format_real(levels[i].energy / unit) + ',' + std::to_string(2 * (i + 1)) + '\n';
        }
    }
    emit(ctx, out);
    return kOk;
}

struct VerifyArgs {
    std::string suite = "all";
    std::optional<int> L;
    bool json_out = false;
};

int cmd_verify(const Context& ctx, const VerifyArgs& a) {
    VerifyOptions o;
    o.tol_scale = tolerance_scale_from_env();
    o.L = a.L;
    std::vector<CriterionResult> results;
    if (a.suite == "all") {
        results = run_all(o);
    } else {
        results.push_back(run_suite(a.suite, o));
    }
    bool failed = false;
    bool oracle = false;
    json report = json::array();
    std::string text;
    for (const auto& r : results) {
        text += r.summary() + '\n';
        report.push_back(to_json(r));
        failed = failed || !r.passed();
        oracle = oracle || r.oracle_failure;
    }
    if (a.json_out || !ctx.output.empty()) {
        emit(ctx, dump(json{{"tol_scale", o.tol_scale}, {"results", report}}));
        if (!ctx.output.empty()) std::cout << text;
    } else {
        std::cout << text;
    }
    if (oracle) return kOracle;
    return failed ? kValidation : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"trapspec: quantum spectra of magnetic, Paul and Penning traps"};
    app.require_subcommand(1);
    Common common;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", common.config, "JSON run configuration");
        sub->add_option("--trap", common.trap, "ioffe_pritchard | top | paul | penning");
        sub->add_option("--output", common.output, "write here (atomically) instead of stdout");
        sub->add_flag("--natural-units", common.natural, "dimensionless output (oscillator units)");
    };

    bool tune = false;
    auto* scales = app.add_subcommand("scales", "derived trap scales and frequencies");
    add_common(scales);
    scales->add_flag("--tune", tune, "use the isotropy-tuned bar/quadrupole current");

    FieldMapArgs fm;
    auto* field_map = app.add_subcommand("field-map", "field along a line through the trap centre (CSV)");
    add_common(field_map);
    auto* o_axis = field_map->add_option("--axis", fm.axis, "x | y | z | diag");
    auto* o_fpoints = field_map->add_option("--points", fm.points, "samples");
    auto* o_extent = field_map->add_option("--extent", fm.extent, "half-length in units of the coil length scale");
    auto* o_time = field_map->add_option("--time", fm.time, "time in seconds (TOP bias phase)");
    auto* o_source = field_map->add_option("--source", fm.source, "series | biot-savart");

    bool require_tuned = false;
    auto* isotropy = app.add_subcommand("isotropy", "isotropy residual and tuned current");
    add_common(isotropy);
    isotropy->add_flag("--require-tuned", require_tuned, "exit 3 unless the trap is already isotropic");

    SpectrumArgs sa;
    auto* spectrum = app.add_subcommand("spectrum", "energy levels (CSV)");
    add_common(spectrum);
    auto* o_smaxn = spectrum->add_option("--max-N", sa.max_N, "3D traps: highest principal number");
    auto* o_smaxe = spectrum->add_option("--max-E-tilde", sa.max_E_tilde, "Paul: highest N + 2K + 2");
    auto* o_smaxen = spectrum->add_option("--max-energy", sa.max_energy, "Penning: energy ceiling (J, or hbar w_z)");
    auto* o_cap = spectrum->add_option("--magnetron-cap", sa.magnetron_cap, "Penning: largest (N+M)/2");
    spectrum->add_flag("--tune", sa.tune, "tune the trap to isotropy first");

    WavefunctionArgs wa;
    auto* wave = app.add_subcommand("wavefunction", "tabulated eigenfunction (CSV)");
    add_common(wave);
    auto* o_wn = wave->add_option("--N", wa.N, "principal number (Ns with --partner)");
    auto* o_wl = wave->add_option("--L", wa.L, "angular number (3D)");
    auto* o_wm = wave->add_option("--M", wa.M, "azimuthal number (planar)");
    auto* o_wk = wave->add_option("--K", wa.K, "axial number (planar)");
    auto* o_wp = wave->add_option("--points", wa.points, "samples");
    auto* o_wr = wave->add_option("--r-max", wa.r_max, "extent in oscillator lengths");
    wave->add_flag("--partner", wa.partner, "SUSY partner state instead");
    wave->add_flag("--tune", wa.tune, "tune the trap to isotropy first");

    SusyArgs su;
    auto* susy = app.add_subcommand("susy", "partner potential report (JSON)");
    add_common(susy);
    auto* o_sl = susy->add_option("--L", su.L, "angular number (|M| for planar traps)");
    auto* o_si = susy->add_option("--sequence-index", su.sequence_index, "number of prior partner constructions");
    auto* o_sv = susy->add_option("--levels", su.levels, "partner levels to list");
    auto* o_ss = susy->add_option("--samples", su.samples, "potential sample radii");
    susy->add_flag("--tune", su.tune, "tune the trap to isotropy first");

    DefectArgs da;
    auto* defect = app.add_subcommand("defect", "quantum-defect model report (JSON)");
    add_common(defect);
    auto* o_dl = defect->add_option("--L", da.L, "angular number");
    auto* o_di = defect->add_option("--I", da.I, "iteration integer");
    auto* o_ds = defect->add_option("--S", da.S, "partner selector 0 or 1");
    auto* o_dd = defect->add_option("--delta", da.delta, "level shift Delta");
    auto* o_dv = defect->add_option("--levels", da.levels, "tower levels to list");
    defect->add_option("--model", da.model, "model JSON instead of the flags");
    defect->add_flag("--tune", da.tune, "tune the trap to isotropy first");

    ShellArgs sh;
    auto* shells = app.add_subcommand("shells", "shell degeneracies and capacities (CSV)");
    add_common(shells);
    auto* o_hn = shells->add_option("--max-N", sh.max_N, "3D traps: highest shell");
    auto* o_he = shells->add_option("--max-E-tilde", sh.max_E_tilde, "Paul: highest E_tilde");
    auto* o_hen = shells->add_option("--max-energy", sh.max_energy, "Penning: energy ceiling (J, or hbar w_z)");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "run acceptance suites against the numerical oracles");
    add_common(verify);
    verify->add_option("--suite", va.suite, "all | " + [] {
        std::string s;
        for (const auto& n : suite_names()) s += (s.empty() ? "" : " | ") + n;
        return s;
    }());
    verify->add_option("--L", va.L, "restrict the spectrum, susy and nodes suites to one L");
    verify->add_flag("--json", va.json_out, "JSON report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        const Context ctx = make_context(common);
        if (*scales) return cmd_scales(ctx, tune);
        if (*field_map) {
            param(ctx, o_axis, "axis", fm.axis);
            param(ctx, o_fpoints, "points", fm.points);
            param(ctx, o_extent, "extent", fm.extent);
            param(ctx, o_time, "time", fm.time);
            param(ctx, o_source, "source", fm.source);
            return cmd_field_map(ctx, fm);
        }
        if (*isotropy) return cmd_isotropy(ctx, require_tuned);
        if (*spectrum) {
            param(ctx, o_smaxn, "max_N", sa.max_N);
            param(ctx, o_smaxe, "max_E_tilde", sa.max_E_tilde);
            param(ctx, o_smaxen, "max_energy", sa.max_energy);
            param(ctx, o_cap, "magnetron_cap", sa.magnetron_cap);
            return cmd_spectrum(ctx, sa);
        }
        if (*wave) {
            param(ctx, o_wn, "N", wa.N);
            param(ctx, o_wl, "L", wa.L);
            param(ctx, o_wm, "M", wa.M);
            param(ctx, o_wk, "K", wa.K);
            param(ctx, o_wp, "points", wa.points);
            param(ctx, o_wr, "r_max", wa.r_max);
            return cmd_wavefunction(ctx, wa);
        }
        if (*susy) {
            param(ctx, o_sl, "L", su.L);
            param(ctx, o_si, "sequence_index", su.sequence_index);
            param(ctx, o_sv, "levels", su.levels);
            param(ctx, o_ss, "samples", su.samples);
            return cmd_susy(ctx, su);
        }
        if (*defect) {
            param(ctx, o_dl, "L", da.L);
            param(ctx, o_di, "I", da.I);
            param(ctx, o_ds, "S", da.S);
            param(ctx, o_dd, "delta", da.delta);
            param(ctx, o_dv, "levels", da.levels);
            return cmd_defect(ctx, da);
        }
        if (*shells) {
            param(ctx, o_hn, "max_N", sh.max_N);
            param(ctx, o_he, "max_E_tilde", sh.max_E_tilde);
            param(ctx, o_hen, "max_energy", sh.max_energy);
            return cmd_shells(ctx, sh);
        }
        if (*verify) return cmd_verify(ctx, va);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const DomainError& e) {
        std::cerr << "invalid parameters: " << e.what() << "\n";
        return kConfig;
    } catch (const OracleError& e) {
        std::cerr << "oracle failure: " << e.what() << "\n";
        return kOracle;
    } catch (const ValidationError& e) {
        std::cerr << "validation failure: " << e.what() << "\n";
        return kValidation;
    } catch (const SingularityError& e) {
        std::cerr << "validation failure: " << e.what() << "\n";
        return kValidation;
    }
    return kUsage;
}
