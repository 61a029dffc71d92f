#include "trapspec/radialoracle.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "trapspec/errors.hpp"

namespace trapspec {

OracleTolerances OracleTolerances::scaled(double factor) const {
    OracleTolerances out = *this;
    out.eigen_rel *= factor;
    out.eigen_abs *= factor;
    out.quad_abs *= factor;
    return out;
}

void RadialProblem::validate() const {
    if (!potential.smooth) {
        throw DomainError("RadialProblem: potential has no smooth part");
    }
    if (!(r_min > 0.0) || !(r_max > r_min)) {
        throw DomainError("RadialProblem: need 0 < r_min < r_max");
    }
    if (grid_points < 2000) {
        throw DomainError("RadialProblem: grid needs at least 2000 points");
    }
    if (!(potential.kinetic > 0.0) || !(energy_scale > 0.0)) {
        throw DomainError("RadialProblem: kinetic prefactor and energy scale must be positive");
    }
    if (potential.centrifugal < -0.25) {
        throw DomainError("RadialProblem: centrifugal coefficient below -1/4 has no regular solution");
    }
}

RadialProblem make_problem(RadialPotential potential, double length_scale, double energy_scale,
                           double energy_ceiling, int grid_points) {
    RadialProblem p;
    p.energy_scale = energy_scale;
    p.grid_points = grid_points;
    p.r_min = 1e-6 * length_scale;
    double r = 4.0 * length_scale;
    // 40 quanta of headroom keeps the Dirichlet wall far into the evanescent tail.
    const double target = energy_ceiling + 40.0 * energy_scale;
    while (potential(r) < target) {
        r += 0.25 * length_scale;
        if (r > 1000.0 * length_scale) {
            throw DomainError("make_problem: potential never rises above the energy ceiling");
        }
    }
    p.r_max = r;
    p.potential = std::move(potential);
    return p;
}

namespace {

constexpr double kRescale = 1e150;

// phi(x) = W(r) / sqrt(r), x = ln r:  phi'' = Q(x) phi,
// Q = (c + 1/4) + r^2 (V_smooth(r) - E) / kinetic.
class LogGrid {
public:
    explicit LogGrid(const RadialProblem& p) : n_(p.grid_points) {
        x0_ = std::log(p.r_min);
        h_ = (std::log(p.r_max) - x0_) / (n_ - 1);
        g_ = p.potential.centrifugal + 0.25;
        r_.resize(n_);
        a_.resize(n_);
        b_.resize(n_);
        const double k = h_ * h_ / 12.0;
        for (int i = 0; i < n_; ++i) {
            const double r = std::exp(x0_ + i * h_);
            r_[i] = r;
            a_[i] = k * r * r / p.potential.kinetic;
            b_[i] = k * (g_ + r * r * p.potential.smooth(r) / p.potential.kinetic);
        }
    }

    [[nodiscard]] int size() const { return n_; }
    [[nodiscard]] double step() const { return h_; }
    [[nodiscard]] double radius(int i) const { return r_[i]; }
    [[nodiscard]] double factor(int i, double e) const { return 1.0 - (b_[i] - e * a_[i]); }
    [[nodiscard]] bool allowed(int i, double e) const { return b_[i] - e * a_[i] < 0.0; }

    // Lowest energy at which any point of the grid is classically allowed
    // (in the log variable); no eigenvalue lies below it.
    [[nodiscard]] double floor_energy() const {
        double lo = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n_; ++i) lo = std::min(lo, b_[i] / a_[i]);
        return lo;
    }

    [[nodiscard]] std::pair<double, double> start() const {
        const double s = std::sqrt(g_);
        return {1.0, std::exp(s * h_)};
    }

    // Sign changes of the outward solution over (x_0, x_{n-1}]; equals the
    // number of Dirichlet eigenvalues below e.
    [[nodiscard]] int count_below(double e) const {
        auto [prev, curr] = start();
        double f_prev = factor(0, e);
        double f_curr = factor(1, e);
        int nodes = 0;
        for (int i = 1; i < n_ - 1; ++i) {
            const double f_next = factor(i + 1, e);
            const double next = ((12.0 - 10.0 * f_curr) * curr - f_prev * prev) / f_next;
            if ((next < 0.0 && curr > 0.0) || (next > 0.0 && curr < 0.0)) ++nodes;
            prev = curr;
            curr = next;
            f_prev = f_curr;
            f_curr = f_next;
            if (std::abs(curr) > kRescale) {
                prev /= kRescale;
                curr /= kRescale;
            }
        }
        return nodes;
    }

    [[nodiscard]] int turning_index(double e) const {
        for (int i = n_ - 1; i >= 0; --i) {
            if (allowed(i, e)) return i;
        }
        return -1;
    }

    // Outward solution on [0, last], stored.
    void outward(double e, int last, std::vector<double>& phi) const {
        phi.assign(last + 1, 0.0);
        auto [p0, p1] = start();
        phi[0] = p0;
        phi[1] = p1;
        for (int i = 1; i < last; ++i) {
            phi[i + 1] = ((12.0 - 10.0 * factor(i, e)) * phi[i] - factor(i - 1, e) * phi[i - 1]) / factor(i + 1, e);
            if (std::abs(phi[i + 1]) > kRescale) {
                for (int j = 0; j <= i + 1; ++j) phi[j] /= kRescale;
            }
        }
    }

    // Inward solution on [first, n-1] with phi(n-1) = 0, stored at full length.
    void inward(double e, int first, std::vector<double>& phi) const {
        phi.assign(n_, 0.0);
        phi[n_ - 1] = 0.0;
        phi[n_ - 2] = 1.0;
        for (int i = n_ - 2; i > first; --i) {
            phi[i - 1] = ((12.0 - 10.0 * factor(i, e)) * phi[i] - factor(i + 1, e) * phi[i + 1]) / factor(i - 1, e);
            if (std::abs(phi[i - 1]) > kRescale) {
                for (int j = i - 1; j < n_; ++j) phi[j] /= kRescale;
            }
        }
    }

    // Difference of discrete log-derivatives at the matching index m.
    [[nodiscard]] double mismatch(double e, int m) const {
        std::vector<double> out;
        std::vector<double> in;
        outward(e, m + 1, out);
        inward(e, m - 1, in);
        return (out[m + 1] - out[m - 1]) / out[m] - (in[m + 1] - in[m - 1]) / in[m];
    }

private:
    int n_;
    double x0_ = 0.0;
    double h_ = 0.0;
    double g_ = 0.0;
    std::vector<double> r_;
    std::vector<double> a_;  // h^2/12 * r^2 / kinetic
    std::vector<double> b_;  // h^2/12 * (g + r^2 V / kinetic)
};

std::string describe(const RadialProblem& p, int node_target, const EigenDiagnostics& d) {
    std::ostringstream os;
    os << "node_target=" << node_target << " window=[" << d.window_low << ", " << d.window_high
       << "] widenings=" << d.widenings << " bisections=" << d.bisection_steps << " r=[" << p.r_min << ", "
       << p.r_max << "] grid=" << p.grid_points;
    return os.str();
}

}  // namespace

EigenResult solve_eigen(const RadialProblem& problem, int node_target, const OracleTolerances& tol) {
    problem.validate();
    if (node_target < 0) {
        throw DomainError("solve_eigen: node target must be nonnegative");
    }
    const LogGrid grid(problem);
    const int n = grid.size();
    EigenDiagnostics diag;

    double lo = grid.floor_energy();
    double hi = problem.potential(problem.r_max);
    if (!(hi > lo)) hi = lo + problem.energy_scale;
    diag.window_low = lo;
    diag.window_high = hi;
    while (grid.count_below(hi) < node_target + 1) {
        if (diag.widenings == tol.window_widenings) {
            throw SearchFailure("solve_eigen: no bracket in energy window; " + describe(problem, node_target, diag));
        }
        hi = lo + 2.0 * (hi - lo);
        ++diag.widenings;
        diag.window_high = hi;
    }

    // relative to the height above the potential floor, so a large constant offset cannot mask digits
    const double floor0 = grid.floor_energy();
    auto width_ok = [&](double a, double b, double rel) {
        const double mag = std::max({std::abs(a - floor0), std::abs(b - floor0)});
        // nor can it resolve E below the rounding of E itself
        const double round = 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));
        return std::abs(b - a) <= std::max({rel * mag, tol.eigen_abs * problem.energy_scale, round});
    };

    int count_lo = grid.count_below(lo);
    int count_hi = grid.count_below(hi);
    while (!(count_lo == node_target && count_hi == node_target + 1 && width_ok(lo, hi, tol.bracket_rel))) {
        if (++diag.bisection_steps > tol.max_iterations) {
            throw IterationLimit("solve_eigen: bisection did not isolate the level; " +
                                 describe(problem, node_target, diag));
        }
        const double mid = 0.5 * (lo + hi);
        const int c = grid.count_below(mid);
        if (c <= node_target) {
            lo = mid;
            count_lo = c;
        } else {
            hi = mid;
            count_hi = c;
        }
        diag.brackets.emplace_back(lo, hi);
        if (width_ok(lo, hi, 4.0 * std::numeric_limits<double>::epsilon()) && count_hi > node_target + 1) {
            throw SearchFailure("solve_eigen: levels not separable on this grid; " +
                                describe(problem, node_target, diag));
        }
    }

    int m = grid.turning_index(0.5 * (lo + hi));
    if (m < 2 || m > n - 4) {
        throw SearchFailure("solve_eigen: classical turning point too close to the domain edge; " +
                            describe(problem, node_target, diag));
    }
    diag.turning_point = grid.radius(m);

    double energy = 0.5 * (lo + hi);
    const double g_lo = grid.mismatch(lo, m);
    const double g_hi = grid.mismatch(hi, m);
    if (std::isfinite(g_lo) && std::isfinite(g_hi) && g_lo * g_hi < 0.0) {
        diag.refinement = "shooting";
        std::uintmax_t iters = static_cast<std::uintmax_t>(tol.max_iterations);
        auto stop = [&](double a, double b) { return width_ok(a, b, tol.eigen_rel); };
        const auto root = boost::math::tools::toms748_solve([&](double e) { return grid.mismatch(e, m); }, lo, hi,
                                                            g_lo, g_hi, stop, iters);
        diag.shooting_steps = static_cast<int>(iters);
        if (static_cast<int>(iters) >= tol.max_iterations) {
            throw IterationLimit("solve_eigen: shooting refinement hit the iteration limit; " +
                                 describe(problem, node_target, diag));
        }
        energy = 0.5 * (root.first + root.second);
    } else {
        diag.refinement = "bisection";
        while (!width_ok(lo, hi, tol.eigen_rel)) {
            if (++diag.bisection_steps > 4 * tol.max_iterations) {
                throw IterationLimit("solve_eigen: bisection refinement hit the iteration limit; " +
                                     describe(problem, node_target, diag));
            }
            const double mid = 0.5 * (lo + hi);
            if (grid.count_below(mid) <= node_target) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        energy = 0.5 * (lo + hi);
    }

    if (problem.potential(problem.r_max) - energy < tol.tail_margin * problem.energy_scale) {
        throw SearchFailure("solve_eigen: r_max too small for the located level; " +
                            describe(problem, node_target, diag));
    }

    std::vector<double> out;
    std::vector<double> in;
    grid.outward(energy, m, out);
    grid.inward(energy, m - 1, in);
    const double scale = out[m] / in[m];
    EigenResult result;
    result.energy = energy;
    result.r.resize(n);
    result.w.resize(n);
    double norm2 = 0.0;
    const double h = grid.step();
    for (int i = 0; i < n; ++i) {
        const double r = grid.radius(i);
        const double phi = i <= m ? out[i] : scale * in[i];
        result.r[i] = r;
        result.w[i] = std::sqrt(r) * phi;
        // dr = r dx, so W^2 dr = r^2 phi^2 dx; trapezoid on the uniform x grid
        const double weight = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        norm2 += weight * r * r * phi * phi * h;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    double peak = 0.0;
    for (double v : result.w) peak = std::max(peak, std::abs(v));
    double sign = 1.0;
    for (double v : result.w) {
        if (std::abs(v) > tol.tail * peak) {
            sign = v > 0.0 ? 1.0 : -1.0;
            break;
        }
    }
    for (double& v : result.w) v *= sign * inv;

    result.node_count = count_nodes(result.w, tol.tail);
    result.residual = std::abs(grid.mismatch(energy, m)) / (2.0 * h);
    result.diagnostics = std::move(diag);
    if (result.node_count != node_target) {
        throw SearchFailure("solve_eigen: eigenfunction has " + std::to_string(result.node_count) +
                            " nodes; " + describe(problem, node_target, result.diagnostics));
    }
    return result;
}

int count_nodes(std::span<const double> w, double tail) {
    double peak = 0.0;
    for (double v : w) peak = std::max(peak, std::abs(v));
    const double floor = tail * peak;
    int nodes = 0;
    int last_sign = 0;
    for (double v : w) {
        if (std::abs(v) <= floor) continue;
        const int s = v > 0.0 ? 1 : -1;
        if (last_sign != 0 && s != last_sign) ++nodes;
        last_sign = s;
    }
    return nodes;
}

double overlap(const RealFunction& f, const RealFunction& g, double a, double b, const RealFunction& weight,
               double abs_tol) {
    auto integrand = [&](double x) {
        const double w = weight ? weight(x) : 1.0;
        return w * f(x) * g(x);
    };
    double error = 0.0;
    double l1 = 0.0;
    double value =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, a, b, 15, 1e-14, &error, &l1);
    if (!(error <= abs_tol) && std::isfinite(a) && std::isfinite(b)) {
        // fractional powers at an endpoint (non-integer L*) stall Gauss-Kronrod
        boost::math::quadrature::tanh_sinh<double> ts(15);
        double ts_error = 0.0;
        const std::function<double(double)> fn = integrand;
        std::size_t levels = 0;
        const double ts_value = ts.integrate(fn, a, b, 1e-14, &ts_error, &l1, &levels);
        if (ts_error < error) {
            value = ts_value;
            error = ts_error;
        }
    }
    if (!(error <= abs_tol) || !std::isfinite(value)) {
        std::ostringstream os;
        os << "overlap: quadrature error estimate " << error << " exceeds " << abs_tol;
        throw AccuracyError(os.str());
    }
    return value;
}

namespace {

constexpr int kRichardsonLevels = 5;

template <class Stencil>
double richardson(Stencil&& stencil, double h0) {
    double table[kRichardsonLevels][kRichardsonLevels];
    double h = h0;
    for (int i = 0; i < kRichardsonLevels; ++i, h *= 0.5) {
        table[i][0] = stencil(h);
        double factor = 4.0;
        for (int j = 1; j <= i; ++j, factor *= 4.0) {
            table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
        }
    }
    return table[kRichardsonLevels - 1][kRichardsonLevels - 1];
}

}  // namespace

double fd_check(const RealFunction& f, const RealFunction& first, const RealFunction& second,
                std::span<const double> points, double base_step) {
    double worst = 0.0;
    for (double x : points) {
        const double h0 = base_step > 0.0 ? base_step : 0.05 * (x != 0.0 ? std::abs(x) : 1.0);
        const double fx = f(x);
        const double scale0 = std::abs(f(x + h0)) + std::abs(f(x - h0)) + std::abs(fx);
        if (first) {
            const double numeric = richardson([&](double h) { return (f(x + h) - f(x - h)) / (2.0 * h); }, h0);
            const double claimed = first(x);
            const double denom = std::max({std::abs(claimed), 1e-6 * scale0 / (2.0 * h0), 1e-300});
            worst = std::max(worst, std::abs(numeric - claimed) / denom);
        }
        if (second) {
            const double numeric =
                richardson([&](double h) { return (f(x + h) - 2.0 * fx + f(x - h)) / (h * h); }, h0);
            const double claimed = second(x);
            const double denom = std::max({std::abs(claimed), 1e-6 * scale0 / (h0 * h0), 1e-300});
            worst = std::max(worst, std::abs(numeric - claimed) / denom);
        }
    }
    return worst;
}

nlohmann::json diagnostics_json(const EigenResult& result) {
    const auto& d = result.diagnostics;
    nlohmann::json brackets = nlohmann::json::array();
    for (const auto& [a, b] : d.brackets) brackets.push_back({a, b});
    return {
        {"energy", result.energy},
        {"node_count", result.node_count},
        {"residual", result.residual},
        {"iterations", {{"bisection", d.bisection_steps}, {"shooting", d.shooting_steps}}},
        {"window", {d.window_low, d.window_high}},
        {"widenings", d.widenings},
        {"refinement", d.refinement},
        {"turning_point", d.turning_point},
        {"bracket_history", brackets},
    };
}

}  // namespace trapspec
