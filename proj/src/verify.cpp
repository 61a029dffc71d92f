#include "trapspec/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>

#include "trapspec/defectmodel.hpp"
#include "trapspec/errors.hpp"
#include "trapspec/fieldlab.hpp"
#include "trapspec/isospec3d.hpp"
#include "trapspec/planartraps.hpp"
#include "trapspec/polybasis.hpp"
#include "trapspec/radialoracle.hpp"
#include "trapspec/susyladder.hpp"

namespace trapspec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Gaussian tails of every tested state are below 1e-80 beyond this many length scales.
constexpr double kExtent = 20.0;
constexpr double kRb87Mass = 86.909180527 * kAtomicMassUnit;

DipoleParticle rb87() { return {kBohrMagneton, kRb87Mass}; }

IoffePritchardGeometry reference_ip() {
    IoffePritchardGeometry g{0.02, 0.03, 100.0, 0.01, 50.0};
    g.bar_current = solve_bar_current(g);
    return g;
}

TopGeometry reference_top() {
    TopGeometry g{0.03, 0.02, 200.0, 0.02, 0.03, 5.0, 2.0 * std::numbers::pi * 7000.0};
    g.quad_current = solve_quad_current(g);
    return g;
}

// Oscillator units of the tuned reference IP trap (offset mu B0).
OscillatorUnits reference_units() {
    const auto s = ip_scales(reference_ip());
    return trap_units(rb87(), s);
}

struct Recorder {
    CriterionResult& r;
    double scale;

    void upper(std::string label, double measured, double tol) {
        r.checks.push_back({std::move(label), measured, tol * scale, false});
    }
    void exact(std::string label, double mismatches) { r.checks.push_back({std::move(label), mismatches, 0.0, false}); }
    void lower(std::string label, double measured, double bound) {
        r.checks.push_back({std::move(label), measured, bound, true});
    }
};

CriterionResult run(int id, const char* suite, const char* title, const VerifyOptions& o,
                    const std::function<void(Recorder&)>& body) {
    CriterionResult r;
    r.id = id;
    r.suite = suite;
    r.title = title;
    Recorder rec{r, o.tol_scale};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(rec);
    } catch (const OracleError& e) {
        r.error = e.what();
        r.oracle_failure = true;
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

OracleTolerances oracle_tol(const VerifyOptions& o) { return OracleTolerances{}.scaled(o.tol_scale); }

double rel_err(double value, double reference) { return std::abs(value - reference) / std::abs(reference); }

EigenResult solve_level(const RadialPotential& v, double length, double quantum, double ceiling, int nodes,
                        const OracleTolerances& tol, int grid = 40000) {
    return solve_eigen(make_problem(v, length, quantum, ceiling, grid), nodes, tol);
}

std::vector<int> l_range(const VerifyOptions& o, int max_l) {
    std::vector<int> out;
    if (o.L) {
        if (*o.L < 0 || *o.L > max_l) {
            throw ConfigError("--L must lie in [0, " + std::to_string(max_l) + "] for this suite");
        }
        out.push_back(*o.L);
    } else {
        for (int l = 0; l <= max_l; ++l) out.push_back(l);
    }
    return out;
}

int sampled_nodes(const RealFunction& f, double extent) {
    constexpr int n = 20000;
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = f(extent * (i + 1) / n);
    return count_nodes(w);
}

// Least-squares slope of log(dev) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& dev) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(dev[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Max |<f_i|f_j> - delta_ij| over a family on [a, b].
double family_error(const std::vector<RealFunction>& fam, double a, double b, const RealFunction& weight = {}) {
    double worst = 0.0;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        for (std::size_t j = i; j < fam.size(); ++j) {
            const double v = overlap(fam[i], fam[j], a, b, weight);
            worst = std::max(worst, std::abs(v - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

RealFunction as_function(const OscillatorRadial& f) {
    return [f](double r) { return f(r); };
}

}  // namespace

bool SubCheck::passed() const {
    if (!std::isfinite(measured)) return false;
    return at_least ? measured >= threshold : measured <= threshold;
}

bool CriterionResult::passed() const {
    if (!error.empty() || checks.empty()) return false;
    return std::all_of(checks.begin(), checks.end(), [](const SubCheck& c) { return c.passed(); });
}

const SubCheck* CriterionResult::worst() const {
    const SubCheck* out = nullptr;
    double closest = -kInf;
    for (const auto& c : checks) {
        if (!c.passed()) return &c;
        // fraction of the allowance used; exact checks that pass use none
        double used = 0.0;
        if (c.at_least) {
            used = c.measured > 0.0 ? c.threshold / c.measured : 0.0;
        } else if (c.threshold > 0.0) {
            used = c.measured / c.threshold;
        }
        if (used > closest) {
            closest = used;
            out = &c;
        }
    }
    return out;
}

std::string CriterionResult::summary() const {
    char head[160];
    std::snprintf(head, sizeof head, "[%s] %2d %-15s", passed() ? "PASS" : "FAIL", id, suite.c_str());
    std::string out = head;
    if (!error.empty()) {
        return out + " error: " + error;
    }
    if (const auto* w = worst()) {
        char body[320];
        std::snprintf(body, sizeof body, " %s = %.3e (%s %.3e)", w->label.c_str(), w->measured,
                      w->at_least ? ">=" : "<=", w->threshold);
        out += body;
    }
    char tail[64];
    std::snprintf(tail, sizeof tail, "  [%zu checks, %.2f s]", checks.size(), seconds);
    return out + tail;
}

double tolerance_scale_from_env() {
    const char* raw = std::getenv("TRAPSPEC_TOL_SCALE");
    if (raw == nullptr || *raw == '\0') return 1.0;
    char* end = nullptr;
    const double v = std::strtod(raw, &end);
    if (end == raw || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
        throw ConfigError(std::string("TRAPSPEC_TOL_SCALE must be a positive number, got '") + raw + "'");
    }
    return v;
}

CriterionResult verify_spectrum(const VerifyOptions& o) {
    return run(1, "spectrum", "3D spectrum vs shooting solver, N <= 16, L <= 6", o, [&](Recorder& rec) {
        const auto tol = oracle_tol(o);
        const auto t0 = std::chrono::steady_clock::now();
        const auto ls = l_range(o, 6);
        // natural units: E itself is the oscillator energy
        const auto nat = OscillatorUnits::natural();
        // tuned Rb-87 Ioffe-Pritchard trap in SI: E carries the mu B0 offset
        const auto si = reference_units();
        double worst_nat = 0.0;
        double worst_si = 0.0;
        double worst_excess = 0.0;
        for (const auto& [u, worst] : {std::pair{nat, &worst_nat}, std::pair{si, &worst_si}}) {
            const double ceiling = energy_3d(16, u);
            for (int L : ls) {
                const double spring = u.spring();
                const double offset = u.offset;
                const RadialPotential v{u.kinetic(), L * (L + 1.0),
                                        [spring, offset](double r) { return offset + spring * r * r; }};
                for (int N = L; N <= 16; N += 2) {
                    const auto res = solve_level(v, u.length(), u.quantum(), ceiling, (N - L) / 2, tol);
                    const double exact = energy_3d(N, u);
                    *worst = std::max(*worst, rel_err(res.energy, exact));
                    if (u.offset != 0.0) {
                        worst_excess = std::max(worst_excess, rel_err(res.energy - u.offset, exact - u.offset));
                    }
                }
            }
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        rec.upper("max rel |E_N - E_oracle| (natural units)", worst_nat, 1e-6);
        rec.upper("max rel |E_N - E_oracle| (SI, Rb-87 IP trap)", worst_si, 1e-6);
        rec.upper("max rel error of E_N - mu B0 (SI)", worst_excess, 1e-6);
        rec.upper("runtime [s]", secs, 60.0);
    });
}

CriterionResult verify_susy(const VerifyOptions& o) {
    return run(2, "susy", "V-_L spectrum equals excited V+_L spectrum, L <= 4", o, [&](Recorder& rec) {
        const auto tol = oracle_tol(o);
        const auto u = OscillatorUnits::natural();
        double worst = 0.0;
        double worst_ground = 0.0;
        int extra_mismatch = 0;
        for (int L : l_range(o, 4)) {
            const auto pp = partner_pair(superpotential(L, u.length()), u);
            const double ceiling = 14.0 * u.quantum();
            std::vector<double> plus;
            std::vector<double> minus;
            for (int k = 0; k <= 6; ++k) plus.push_back(solve_level(pp.plus, u.length(), u.quantum(), ceiling, k, tol).energy);
            for (int k = 0; k < 6; ++k) minus.push_back(solve_level(pp.minus, u.length(), u.quantum(), ceiling, k, tol).energy);
            for (int k = 0; k < 6; ++k) worst = std::max(worst, rel_err(minus[k], plus[k + 1]));
            worst_ground = std::max(worst_ground, std::abs(plus[0]) / u.quantum());
            const auto below = std::count_if(plus.begin(), plus.end(), [&](double e) { return e < minus[0] - 0.5 * u.quantum(); });
            extra_mismatch += std::abs(static_cast<int>(below) - 1);
        }
        rec.upper("max rel |E-_k - E+_{k+1}|, first 6 levels", worst, 1e-6);
        rec.upper("|E+_0| / hbar w", worst_ground, 1e-8);
        rec.exact("L values where V+ does not have exactly one extra level", extra_mismatch);
    });
}

CriterionResult verify_pauli_gap(const VerifyOptions& o) {
    return run(3, "pauli-gap", "V0- - V0+ = hbar^2/m r^2 + hbar w at 100 random radii", o, [&](Recorder& rec) {
        const auto u = reference_units();
        const auto pp = partner_pair(superpotential(0, u.length()), u);
        std::mt19937_64 rng(20240617);
        std::uniform_real_distribution<double> logr(std::log(1e-2), std::log(10.0));
        double worst = 0.0;
        double worst_u = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double r = u.length() * std::exp(logr(rng));
            const double gap = u.hbar * u.hbar / (u.mass * r * r) + u.quantum();
            worst = std::max(worst, std::abs(pp.minus(r) - pp.plus(r) - gap) / gap);
            worst_u = std::max(worst_u,
                               std::abs(pp.minus_from_superpotential(r) - pp.plus_from_superpotential(r) - gap) / gap);
        }
        rec.upper("max rel residual, closed-form partner potentials", worst, 1e-12);
        rec.upper("max rel residual, kinetic (U'^2 +/- U'') evaluation", worst_u, 1e-12);
    });
}

CriterionResult verify_nodes(const VerifyOptions& o) {
    return run(4, "nodes", "W-_{L+2,L} nodeless for L <= 4; W_{N,L} has (N-L)/2 nodes, N <= 12", o, [&](Recorder& rec) {
        const auto tol = oracle_tol(o);
        const auto u = OscillatorUnits::natural();
        int partner_bad = 0;
        double worst_shape = 0.0;
        for (int L : l_range(o, 4)) {
            const auto w = partner_wavefunction(L + 2, L, u);
            if (sampled_nodes(as_function(w.radial), 14.0 * u.length()) != 0) ++partner_bad;
            // the solver's ground state of V- must be this same nodeless function
            const auto pp = partner_pair(superpotential(L, u.length()), u);
            const auto res = solve_level(pp.minus, u.length(), u.quantum(), 8.0 * u.quantum(), 0, tol);
            if (count_nodes(res.w) != 0) ++partner_bad;
            double peak = 0.0;
            double diff = 0.0;
            for (std::size_t i = 0; i < res.r.size(); ++i) {
                const double a = w(res.r[i]);
                peak = std::max(peak, std::abs(a));
                diff = std::max(diff, std::abs(a - res.w[i]));
            }
            worst_shape = std::max(worst_shape, diff / peak);
        }
        int tower_bad = 0;
        for (int N = 0; N <= 12; ++N) {
            for (int L = N % 2; L <= N; L += 2) {
                if (o.L && L != *o.L) continue;
                const auto w = radial_wavefunction_3d(N, L, u);
                const double extent = (std::sqrt(2.0 * N + 3.0) + 8.0) * u.length();
                if (sampled_nodes(as_function(w.radial), extent) != (N - L) / 2) ++tower_bad;
            }
        }
        rec.exact("partner ground states with nonzero node count", partner_bad);
        rec.exact("W_{N,L} with node count != (N-L)/2", tower_bad);
        rec.upper("max |W-_{L+2,L} - solver ground of V-| / max|W|", worst_shape, 1e-6);
    });
}

CriterionResult verify_combinatorics(const VerifyOptions& o) {
    return run(5, "combinatorics", "degeneracies, capacities and magic sequences by enumeration", o, [&](Recorder& rec) {
        int bad_deg = 0;
        int bad_cap = 0;
        long long running = 0;
        for (int N = 0; N <= 30; ++N) {
            long long count = 0;
            for (int nx = 0; nx <= N; ++nx) {
                for (int ny = 0; nx + ny <= N; ++ny) ++count;  // nz fixed by N
            }
            running += count;
            if (degeneracy(N) != count) ++bad_deg;
            if (shell_capacity(N) != running) ++bad_cap;
        }
        const std::vector<long long> s0{1, 5, 21, 57};
        const std::vector<long long> s1{2, 11, 36, 85};
        const std::vector<long long> sp{1, 3, 7, 15, 27, 45, 69};
        int bad_seq = 0;
        bad_seq += related_systems_3d(0, 4) != s0;
        bad_seq += related_systems_3d(1, 4) != s1;
        bad_seq += paul_related_systems(7) != sp;
        int bad_paul = 0;
        for (int e = 2; e <= 30; ++e) {
            long long orbitals = 0;
            for (int K = 0; 2 * K + 2 <= e; ++K) {
                for (int N = 0; N + 2 * K + 2 <= e; ++N) {
                    for (int M = -N; M <= N; ++M) {
                        if ((N - std::abs(M)) % 2 == 0) ++orbitals;
                    }
                }
            }
            if (paul_shell_count(e) != 2 * orbitals) ++bad_paul;
        }
        rec.exact("degeneracy(N) != Cartesian count, N <= 30", bad_deg);
        rec.exact("shell_capacity(N) != cumulative count, N <= 30", bad_cap);
        rec.exact("sequences differing from 1,5,21,57 / 2,11,36,85 / 1,3,7,15,27,45,69", bad_seq);
        rec.exact("paul_shell_count(E) != 2 x (N,M,K) count, E <= 30", bad_paul);
    });
}

CriterionResult verify_isotropy(const VerifyOptions& o) {
    return run(6, "isotropy", "tuned IP and TOP traps are isotropic with the stated radii", o, [&](Recorder& rec) {
        const auto particle = rb87();
        {
            const auto s = ip_scales(reference_ip());
            const auto c = ip_potential_coefficients(s);
            rec.upper("IP rel |c_rho2 - c_z2|", std::abs(c.rho2 - c.z2) / c.z2, 1e-12);
            const double rc2 = std::pow(s.length, 4) / s.area;
            rec.upper("IP rel |1/c_rho2 - l^4/a|", rel_err(1.0 / c.rho2, rc2), 1e-12);
            rec.upper("IP rel |isotropic_radius^2 - l^4/a|", rel_err(std::pow(s.isotropic_radius(), 2), rc2), 1e-12);
            // curvature of |B_series| at the centre by extrapolated finite differences
            const double b0 = std::abs(s.field);
            auto along = [&](double rho, double z) {
                const auto b = ip_field_series(s, {rho, 0.7, z}).cartesian(0.7);
                return b.norm() / b0;
            };
            const double h = 1e-2 * s.length;
            const std::vector<double> at{0.0};
            const double fd_rho =
                fd_check([&](double x) { return along(std::abs(x), 0.0); }, {}, [&](double) { return 2.0 * c.rho2; }, at, h);
            const double fd_z = fd_check([&](double x) { return along(0.0, x); }, {}, [&](double) { return 2.0 * c.z2; }, at, h);
            rec.upper("IP curvature of |B_series| vs coefficients (FD)", std::max(fd_rho, fd_z), 1e-6);
            (void)particle;
        }
        {
            const auto g = reference_top();
            const auto s = top_scales(g);
            const auto c = top_potential_coefficients(s);
            rec.upper("TOP rel |c_rho2 - c_z2|", std::abs(c.rho2 - c.z2) / c.z2, 1e-12);
            const double rb2 = 14.0 * std::pow(s.length, 4) / (5.0 * s.area);
            rec.upper("TOP rel |1/c_rho2 - 14 l^4/5a|", rel_err(1.0 / c.rho2, rb2), 1e-12);
            rec.upper("TOP rel |isotropic_radius^2 - 14 l^4/5a|", rel_err(std::pow(s.isotropic_radius(), 2), rb2), 1e-12);
            const double u0 = particle.magnetic_moment * std::abs(s.field);
            auto avg = [&](Vec3 p) { return top_time_average_numeric(particle, g, s, p) / u0; };
            const double h = 1e-2 * s.length;
            const std::vector<double> at{0.0};
            const double fd_rho = fd_check([&](double x) { return avg({x * 0.6, x * 0.8, 0.0}); }, {},
                                           [&](double) { return 2.0 * c.rho2; }, at, h);
            const double fd_z =
                fd_check([&](double x) { return avg({0.0, 0.0, x}); }, {}, [&](double) { return 2.0 * c.z2; }, at, h);
            rec.upper("TOP curvature of time-averaged |B| vs coefficients (FD)", std::max(fd_rho, fd_z), 1e-6);
        }
    });
}

CriterionResult verify_field_oracle(const VerifyOptions& o) {
    return run(7, "field-oracle", "series fields vs Biot-Savart and explicit time average", o, [&](Recorder& rec) {
        const Vec3 dir{0.48, 0.36, 0.8};
        std::vector<double> x;
        for (int i = 0; i <= 8; ++i) x.push_back(std::pow(10.0, -3.0 + 0.25 * i));
        {
            const auto g = reference_ip();
            const auto s = ip_scales(g);
            const auto assembly = ip_assembly(g);
            std::vector<double> dev;
            for (double t : x) {
                const Vec3 p = (t * s.length) * dir;
                const auto cp = CylindricalPoint::from(p);
                const Vec3 series = ip_field_series(s, cp).cartesian(cp.phi);
                dev.push_back((series - biot_savart_field(assembly, p)).norm());
            }
            rec.lower("IP log-log slope of |B_series - B_BiotSavart|, r/l_c in [1e-3, 1e-1]", loglog_slope(x, dev), 3.5);
        }
        {
            const auto g = reference_top();
            const auto s = top_scales(g);
            const auto particle = rb87();
            std::vector<double> dev;
            for (double t : x) {
                const Vec3 p = (t * s.length) * dir;
                const double numeric = top_time_average_numeric(particle, g, s, p);
                const double series = top_time_avg_potential(particle, s, std::hypot(p.x, p.y), p.z);
                dev.push_back(std::abs(numeric - series));
            }
            rec.lower("TOP log-log slope of |<mu|B|>_t - quadratic form|, r/l_b in [1e-3, 1e-1]", loglog_slope(x, dev),
                      3.5);
        }
    });
}

CriterionResult verify_defect(const VerifyOptions& o) {
    return run(8, "defect", "quantum-defect model: recovery, shifted spectrum, orthonormality", o, [&](Recorder& rec) {
        const auto tol = oracle_tol(o);
        {
            const auto u = reference_units();
            double worst_closed = 0.0;
            double worst_u = 0.0;
            for (int L = 0; L <= 4; ++L) {
                const auto pp = partner_pair(superpotential(L, u.length()), u);
                const auto plus = recover_partner(0, 0, L, u);
                const auto minus = recover_partner(1, 0, L, u);
                for (int i = 0; i < 50; ++i) {
                    const double r = u.length() * std::pow(10.0, -2.0 + 3.0 * i / 49.0);
                    auto rel = [&](double got, double want, double size) {
                        return std::abs(got - want) / std::max({std::abs(want), u.quantum(), size});
                    };
                    worst_closed = std::max({worst_closed, rel(plus.potential(r), pp.plus(r), 0.0),
                                             rel(minus.potential(r), pp.minus(r), 0.0)});
                    // kinetic U'^2 cancels against kinetic U'' near the origin; measure against that size
                    const double cancel = u.kinetic() * (L + 1.0) * (L + 2.0) / (r * r);
                    worst_u = std::max({worst_u, rel(plus.potential(r), pp.plus_from_superpotential(r), cancel),
                                        rel(minus.potential(r), pp.minus_from_superpotential(r), cancel)});
                }
            }
            rec.upper("Delta=0 recovery vs closed-form V+_L, V-_L, pointwise rel", worst_closed, 1e-12);
            rec.upper("Delta=0 recovery vs kinetic (U'^2 -/+ U''), pointwise rel", worst_u, 1e-12);
        }
        const auto u = OscillatorUnits::natural();
        const EffectiveModel m{0, 0, 0, 0.3, u};
        const auto v = defect_radial_potential(m);
        double worst_e = 0.0;
        std::vector<RealFunction> family;
        for (int k = 0; k < 5; ++k) {
            const int ns = m.first_Ns() + 2 * k;
            const auto res = solve_level(v, u.length(), u.quantum(), defect_energy(m, ns) + u.quantum(), k, tol);
            worst_e = std::max(worst_e, rel_err(res.energy, defect_energy(m, ns)));
        }
        for (int k = 0; k <= 6; ++k) family.push_back(as_function(defect_wavefunction(m, m.first_Ns() + 2 * k)));
        rec.upper("Delta=0.3 rel |E_N* - E_oracle|, first 5 levels", worst_e, 1e-6);
        rec.upper("max |<W_N*,L*|W_N*',L*> - delta|", family_error(family, 0.0, kExtent), 1e-10);
        // an N-dependent Delta gives each level its own L*, which breaks orthogonality
        std::vector<RealFunction> broken;
        for (int k = 0; k < 5; ++k) {
            broken.push_back(as_function(OscillatorRadial(k, 0.0 - (0.3 + 0.1 * k), u.length())));
        }
        double worst_cross = 0.0;
        for (std::size_t i = 0; i < broken.size(); ++i) {
            for (std::size_t j = i + 1; j < broken.size(); ++j) {
                worst_cross = std::max(worst_cross, std::abs(overlap(broken[i], broken[j], 0.0, kExtent)));
            }
        }
        rec.lower("max off-diagonal overlap under N-dependent Delta", worst_cross, 1e-3);
    });
}

CriterionResult verify_planar(const VerifyOptions& o) {
    return run(9, "planar", "Paul and Penning energies vs 2D solver; planar partner map", o, [&](Recorder& rec) {
        const auto tol = oracle_tol(o);
        const auto u = OscillatorUnits::natural();
        double worst_paul = 0.0;
        for (int K = 0; K <= 4; ++K) {
            for (int am = 0; am <= 3; ++am) {
                const auto v = paul_radial_potential(K, am, u);
                for (int N = am; N <= 4; N += 2) {
                    const double exact = paul_energy(N, K, u);
                    const auto res = solve_level(v, u.length(), u.quantum(), exact + 2.0 * u.quantum(), (N - am) / 2, tol);
                    worst_paul = std::max(worst_paul, rel_err(res.energy, exact));
                }
            }
        }
        rec.upper("Paul max rel |E_NK - E_oracle|", worst_paul, 1e-6);

        const auto f = penning_frequencies(1.0, 3.0, 1.0, 1.0);
        const auto ru = f.radial_units();
        double worst_pen = 0.0;
        for (int K = 0; K <= 4; ++K) {
            for (int M = -3; M <= 3; ++M) {
                const auto v = penning_radial_potential(K, M, f);
                const int am = std::abs(M);
                for (int N = am; N <= 4; N += 2) {
                    const double exact = penning_energy(N, K, M, f);
                    const auto res = solve_level(v, ru.length(), ru.quantum(), exact + 2.0 * ru.quantum(), (N - am) / 2, tol);
                    worst_pen = std::max(worst_pen, rel_err(res.energy, exact));
                }
            }
        }
        rec.upper("Penning max rel |E_NKM - E_oracle|", worst_pen, 1e-6);

        // numeric eigenfunctions of V-_|M| against X_{Ns-1,|M|+1}
        double worst_map = 0.0;
        for (const auto& units : {u, ru}) {
            for (int am = 0; am <= 3; ++am) {
                const auto pair = planar_susy_partner(am, units);
                for (int k = 0; k < 3; ++k) {
                    const int ns = am + 2 + 2 * k;
                    const auto res = solve_level(pair.minus, units.length(), units.quantum(),
                                                 planar_partner_spectrum(am, ns, units) + 2.0 * units.quantum(), k, tol);
                    const auto x = planar_partner_wavefunction(ns, am, units.length());
                    double peak = 0.0;
                    double diff = 0.0;
                    for (std::size_t i = 0; i < res.r.size(); ++i) {
                        const double a = x(res.r[i]);
                        peak = std::max(peak, std::abs(a));
                        diff = std::max(diff, std::abs(a - res.w[i]));
                    }
                    worst_map = std::max(worst_map, diff / peak);
                }
            }
        }
        rec.upper("max |X-_{Ns,|M|} (solver) - X_{Ns-1,|M|+1}| / max|X|", worst_map, 1e-10);
    });
}

CriterionResult verify_orthonormality(const VerifyOptions& o) {
    return run(10, "orthonormality", "analytic eigenfunction families by quadrature, N <= 12", o, [&](Recorder& rec) {
        const auto u = OscillatorUnits::natural();
        double w3d = 0.0;
        for (int L = 0; L <= 12; ++L) {
            std::vector<RealFunction> fam;
            for (int N = L; N <= 12; N += 2) fam.push_back(as_function(radial_wavefunction_3d(N, L, u).radial));
            w3d = std::max(w3d, family_error(fam, 0.0, kExtent));
        }
        rec.upper("3D W_{N,L}", w3d, 1e-10);

        double wpartner = 0.0;
        for (int L = 0; L <= 4; ++L) {
            std::vector<RealFunction> fam;
            for (int ns = L + 2; ns <= 12; ns += 2) fam.push_back(as_function(partner_wavefunction(ns, L, u).radial));
            wpartner = std::max(wpartner, family_error(fam, 0.0, kExtent));
        }
        rec.upper("partner W-_{Ns,L}", wpartner, 1e-10);

        double wdefect = 0.0;
        for (int L = 0; L <= 2; ++L) {
            const EffectiveModel m{L, 0, 0, 0.3, u};
            std::vector<RealFunction> fam;
            for (int ns = m.first_Ns(); ns <= 12; ns += 2) fam.push_back(as_function(defect_wavefunction(m, ns)));
            wdefect = std::max(wdefect, family_error(fam, 0.0, kExtent));
        }
        rec.upper("defect W_{N*,L*} (Delta = 0.3)", wdefect, 1e-10);

        double wplanar = 0.0;
        for (int am = 0; am <= 12; ++am) {
            std::vector<RealFunction> fam;
            for (int N = am; N <= 12; N += 2) fam.push_back(as_function(planar_radial(N, am, u.length())));
            wplanar = std::max(wplanar, family_error(fam, 0.0, kExtent));
        }
        rec.upper("Paul radial X_{N,|M|}", wplanar, 1e-10);

        std::vector<RealFunction> axial;
        for (int K = 0; K <= 12; ++K) {
            PaulAxial a(K, 0, u.length());
            axial.push_back([a](double z) { return a(z); });
        }
        rec.upper("Paul axial Upsilon_K", family_error(axial, -kExtent, kExtent), 1e-10);

        const auto f = penning_frequencies(1.0, 3.0, 1.0, 1.0);
        double wpen = 0.0;
        double wfull = 0.0;
        for (int M = -3; M <= 3; ++M) {
            std::vector<RealFunction> fam;
            for (int N = std::abs(M); N <= 12; N += 2) {
                const PenningState st(N, 0, M, f);
                fam.push_back(as_function(st.radial()));
            }
            wpen = std::max(wpen, family_error(fam, 0.0, kExtent));
            for (int K = 0; K <= 4; ++K) {
                const PenningState st(std::abs(M) + 2, K, M, f);
                auto rf = [&st](double rho) { return st.radial_factor(rho); };
                auto zf = [&st](double z) { return st.axial_factor(z); };
                const double radial = overlap(rf, rf, 0.0, kExtent, [](double rho) { return rho; });
                const double axial_int = overlap(zf, zf, -kExtent, kExtent);
                wfull = std::max(wfull, std::abs(2.0 * std::numbers::pi * radial * axial_int - 1.0));
            }
        }
        rec.upper("Penning radial X_{N,M}", wpen, 1e-10);
        rec.upper("Penning full |Psi|^2 rho drho dphi dz - 1", wfull, 1e-10);
    });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"spectrum",  "susy",   "pauli-gap", "nodes",  "combinatorics",
                                                "isotropy",  "field-oracle", "defect", "planar", "orthonormality"};
    return names;
}

CriterionResult run_suite(const std::string& name, const VerifyOptions& o) {
    using Fn = CriterionResult (*)(const VerifyOptions&);
    static const Fn fns[] = {verify_spectrum,   verify_susy,         verify_pauli_gap, verify_nodes,
                             verify_combinatorics, verify_isotropy,   verify_field_oracle, verify_defect,
                             verify_planar,     verify_orthonormality};
    const auto& names = suite_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return fns[i](o);
    }
    throw ConfigError("unknown verify suite '" + name + "'");
}

std::vector<CriterionResult> run_all(const VerifyOptions& o) {
    std::vector<CriterionResult> out;
    for (const auto& n : suite_names()) out.push_back(run_suite(n, o));
    return out;
}

nlohmann::json to_json(const CriterionResult& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"label", c.label},
                          {"measured", c.measured},
                          {"threshold", c.threshold},
                          {"comparison", c.at_least ? ">=" : "<="},
                          {"passed", c.passed()}});
    }
    nlohmann::json j{{"criterion", r.id}, {"suite", r.suite}, {"title", r.title},
                     {"passed", r.passed()}, {"seconds", r.seconds}, {"checks", checks}};
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

}  // namespace trapspec
