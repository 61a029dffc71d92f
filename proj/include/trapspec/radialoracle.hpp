#pragma once

// Numerical oracles used to check every analytic formula in the library:
// a radial Schroedinger eigen-solver, node counting, adaptive quadrature and
// Richardson-extrapolated finite differences. Nothing here consults an
// analytic eigenvalue.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "trapspec/units.hpp"

namespace trapspec {

/// Every oracle tolerance in one place; acceptance tests pin these.
struct OracleTolerances {
    double eigen_rel = 1e-12;     // eigenvalue refinement stops below this relative change
    double eigen_abs = 1e-13;     // absolute floor, in units of the problem's energy scale
    double bracket_rel = 1e-7;    // node bisection hands over to shooting at this width
    double tail = 1e-8;           // node counting ignores |W| below tail * max|W|
    double quad_abs = 1e-12;      // overlap() absolute tolerance
    double tail_margin = 10.0;    // V(r_max) - E must exceed this many energy quanta
    int window_widenings = 5;
    int max_iterations = 400;

    /// Loosen (factor > 1) or tighten every accuracy threshold together.
    [[nodiscard]] OracleTolerances scaled(double factor) const;
};

/// -kinetic W'' + [kinetic c / r^2 + smooth(r)] W = E W on [r_min, r_max], W(r_max) = 0.
struct RadialProblem {
    RadialPotential potential;
    double energy_scale = 1.0;  // hbar*omega of the problem; sets absolute tolerances
    double r_min = 1e-6;
    double r_max = 12.0;
    int grid_points = 40000;

    /// Throws DomainError when the domain or grid violates the solver's requirements.
    void validate() const;
};

/// Domain for an oscillator-like problem: r_min = 1e-6 * length_scale and r_max
/// pushed out until V(r_max) sits well above energy_ceiling.
RadialProblem make_problem(RadialPotential potential, double length_scale, double energy_scale,
                           double energy_ceiling, int grid_points = 40000);

struct EigenDiagnostics {
    int bisection_steps = 0;
    int shooting_steps = 0;
    int widenings = 0;
    double window_low = 0.0;
    double window_high = 0.0;
    std::vector<std::pair<double, double>> brackets;
    std::string refinement;  // "shooting" or "bisection"
    double turning_point = 0.0;
};

struct EigenResult {
    double energy = 0.0;
    std::vector<double> r;
    std::vector<double> w;  // unit discrete norm, positive near the origin
    int node_count = 0;
    double residual = 0.0;  // log-derivative mismatch at the matching point, times r
    EigenDiagnostics diagnostics;
};

/// Eigenvalue with exactly node_target interior nodes: node-count bisection
/// followed by Numerov shooting matched at the outer classical turning point.
EigenResult solve_eigen(const RadialProblem& problem, int node_target, const OracleTolerances& tol = {});

/// Strict sign changes, ignoring samples with |w| <= tail * max|w|.
int count_nodes(std::span<const double> w, double tail = 1e-8);

/// integral of weight(x) f(x) g(x) over [a, b] by adaptive Gauss-Kronrod.
/// b may be +infinity. An empty weight means 1. Throws AccuracyError when
/// the error estimate stays above abs_tol.
double overlap(const RealFunction& f, const RealFunction& g, double a, double b, const RealFunction& weight = {},
               double abs_tol = 1e-12);

/// Max relative error of claimed first and second derivatives against
/// Richardson-extrapolated central differences. Either claim may be empty.
/// base_step defaults to 5% of |x| at each point.
double fd_check(const RealFunction& f, const RealFunction& first, const RealFunction& second,
                std::span<const double> points, double base_step = 0.0);

nlohmann::json diagnostics_json(const EigenResult& result);

}  // namespace trapspec
