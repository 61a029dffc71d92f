#include "trapspec/fieldlab.hpp"

#include <boost/math/quadrature/trapezoidal.hpp>
#include <cmath>
#include <numbers>

#include "trapspec/errors.hpp"
#include "trapspec/io.hpp"

namespace trapspec {

namespace {

constexpr double kPi = std::numbers::pi;

double pow4(double v) { return v * v * v * v; }

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ValidationError(std::string(what) + " must be positive and finite");
    }
}

void require_nonzero(double v, const char* what) {
    if (v == 0.0 || !std::isfinite(v)) {
        throw ValidationError(std::string(what) + " must be finite and nonzero");
    }
}

}  // namespace

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

Vec3 CylindricalPoint::cartesian() const { return {rho * std::cos(phi), rho * std::sin(phi), z}; }

CylindricalPoint CylindricalPoint::from(Vec3 p) { return {std::hypot(p.x, p.y), std::atan2(p.y, p.x), p.z}; }

Vec3 CylindricalVector::cartesian(double azimuth) const {
    const double c = std::cos(azimuth);
    const double s = std::sin(azimuth);
    return {rho * c - phi * s, rho * s + phi * c, z};
}

void IoffePritchardGeometry::validate() const {
    require_positive(coil_radius, "coil_radius");
    require_positive(coil_halfspacing, "coil_halfspacing");
    require_positive(bar_distance, "bar_distance");
    require_nonzero(coil_current, "coil_current");
    require_nonzero(bar_current, "bar_current");
}

void TopGeometry::validate() const {
    require_positive(quad_radius, "quad_radius");
    require_positive(quad_halfspacing, "quad_halfspacing");
    require_positive(bias_radius, "bias_radius");
    require_positive(bias_halfspacing, "bias_halfspacing");
    require_positive(bias_frequency, "bias_frequency");
    require_nonzero(quad_current, "quad_current");
    require_nonzero(bias_current, "bias_current");
}

void DipoleParticle::validate() const {
    if (!(magnetic_moment > 0.0)) {
        throw ValidationError("dipole aligned with the field (moment <= 0) is not trapped");
    }
    require_positive(mass, "mass");
}

double DerivedScales::isotropic_radius() const {
    if (!confining()) {
        throw ValidationError("characteristic area a <= 0: no confinement along the coil axis");
    }
    const double l4 = pow4(length);
    return std::sqrt(trap == MagneticTrap::IoffePritchard ? l4 / area : 14.0 * l4 / (5.0 * area));
}

DerivedScales ip_scales(const IoffePritchardGeometry& g) {
    g.validate();
    DerivedScales s;
    s.trap = MagneticTrap::IoffePritchard;
    const double a2 = g.coil_halfspacing * g.coil_halfspacing;
    const double r2 = g.coil_radius * g.coil_radius;
    s.length = std::sqrt(a2 + r2);
    s.area = 1.5 * (4.0 * a2 - r2);
    s.field = kMu0 * g.coil_current * r2 / (s.length * s.length * s.length);
    s.gradient = 2.0 * kMu0 * g.bar_current / (kPi * g.bar_distance * g.bar_distance);
    return s;
}

CylindricalVector ip_field_series(const DerivedScales& s, CylindricalPoint p) {
    const double k = s.field * s.area / pow4(s.length);
    const double c2 = std::cos(2.0 * p.phi);
    const double s2 = std::sin(2.0 * p.phi);
    return {
        s.gradient * p.rho * c2 - k * p.z * p.rho,
        -s.gradient * p.rho * s2,
        s.field + k * (p.z * p.z - 0.5 * p.rho * p.rho),
    };
}

QuadraticCoefficients ip_potential_coefficients(const DerivedScales& s) {
    const double curvature = s.area / pow4(s.length);
    const double ratio = (s.gradient * s.gradient) / (s.field * s.field);
    return {0.5 * (ratio - curvature), curvature};
}

double ip_potential(const DipoleParticle& particle, const DerivedScales& s, CylindricalPoint p) {
    particle.validate();
    const auto c = ip_potential_coefficients(s);
    return particle.magnetic_moment * std::abs(s.field) * (1.0 + c.z2 * p.z * p.z + c.rho2 * p.rho * p.rho);
}

double ip_isotropy_residual(const DerivedScales& s) {
    if (!s.confining()) {
        throw ValidationError("ip_isotropy_residual: a_c <= 0, trap does not confine along z");
    }
    const double target = 3.0 * s.area / pow4(s.length);
    return ((s.gradient * s.gradient) / (s.field * s.field) - target) / target;
}

double solve_bar_current(const IoffePritchardGeometry& g) {
    const auto s = ip_scales(g);
    if (!s.confining()) {
        throw ValidationError("solve_bar_current: a_c <= 0, no isotropic tuning exists");
    }
    const double gradient = std::abs(s.field) * std::sqrt(3.0 * s.area) / (s.length * s.length);
    const double magnitude = kPi * g.bar_distance * g.bar_distance * gradient / (2.0 * kMu0);
    return g.bar_current < 0.0 ? -magnitude : magnitude;
}

DerivedScales top_scales(const TopGeometry& g) {
    g.validate();
    DerivedScales s;
    s.trap = MagneticTrap::Top;
    const double a2 = g.bias_halfspacing * g.bias_halfspacing;
    const double r2 = g.bias_radius * g.bias_radius;
    s.length = std::sqrt(a2 + r2);
    s.area = 1.5 * (4.0 * a2 - r2);
    s.field = kMu0 * g.bias_current * r2 / (s.length * s.length * s.length);
    const double lq2 = g.quad_halfspacing * g.quad_halfspacing + g.quad_radius * g.quad_radius;
    s.gradient = 3.0 * kMu0 * g.quad_current * g.quad_radius * g.quad_radius * g.quad_halfspacing /
                 (2.0 * std::pow(lq2, 2.5));
    return s;
}

Vec3 top_field_series(const TopGeometry& g, const DerivedScales& s, Vec3 p, double t) {
    const double c = std::cos(g.bias_frequency * t);
    const double sn = std::sin(g.bias_frequency * t);
    const double r2 = p.dot(p);
    const double k = s.field * s.area / pow4(s.length);
    return {
        s.field * c + s.gradient * p.x + 0.5 * k * ((3.0 * p.x * p.x - r2) * c - 2.0 * p.x * p.y * sn),
        s.field * sn + s.gradient * p.y + 0.5 * k * ((3.0 * p.y * p.y - r2) * sn - 2.0 * p.x * p.y * c),
        -(2.0 * s.gradient * p.z + k * (p.x * c + p.y * sn) * p.z),
    };
}

QuadraticCoefficients top_potential_coefficients(const DerivedScales& s) {
    const double curvature = s.area / pow4(s.length);
    const double ratio = (s.gradient * s.gradient) / (s.field * s.field);
    return {0.25 * (ratio + curvature), 2.0 * ratio - 0.5 * curvature};
}

double top_time_avg_potential(const DipoleParticle& particle, const DerivedScales& s, double rho, double z) {
    particle.validate();
    const auto c = top_potential_coefficients(s);
    return particle.magnetic_moment * std::abs(s.field) * (1.0 + c.rho2 * rho * rho + c.z2 * z * z);
}

double top_isotropy_residual(const DerivedScales& s) {
    if (!s.confining()) {
        throw ValidationError("top_isotropy_residual: a_b <= 0, trap does not confine");
    }
    const double target = 3.0 * s.area / (7.0 * pow4(s.length));
    return ((s.gradient * s.gradient) / (s.field * s.field) - target) / target;
}

double solve_quad_current(const TopGeometry& g) {
    const auto s = top_scales(g);
    if (!s.confining()) {
        throw ValidationError("solve_quad_current: a_b <= 0, no isotropic tuning exists");
    }
    const double gradient = std::abs(s.field) * std::sqrt(3.0 * s.area / 7.0) / (s.length * s.length);
    const double lq2 = g.quad_halfspacing * g.quad_halfspacing + g.quad_radius * g.quad_radius;
    const double magnitude =
        gradient * 2.0 * std::pow(lq2, 2.5) / (3.0 * kMu0 * g.quad_radius * g.quad_radius * g.quad_halfspacing);
    return g.quad_current < 0.0 ? -magnitude : magnitude;
}

double time_average(const RealFunction& f, double period, double rel_tol) {
    if (!(period > 0.0)) {
        throw DomainError("time_average: period must be positive");
    }
    auto simpson = [&](int panels) {
        const double h = period / panels;
        double sum = f(0.0) + f(period);
        for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(i * h);
        return sum * h / 3.0 / period;
    };
    int panels = 256;
    double prev = simpson(panels);
    for (int k = 0; k < 12; ++k) {
        panels *= 2;
        const double next = simpson(panels);
        if (std::abs(next - prev) <= rel_tol * std::abs(next)) return next;
        prev = next;
    }
    throw AccuracyError("time_average: Simpson sums did not converge");
}

double top_time_average_numeric(const DipoleParticle& particle, const TopGeometry& g, const DerivedScales& s,
                                Vec3 p) {
    particle.validate();
    const double period = 2.0 * kPi / g.bias_frequency;
    return time_average(
        [&](double t) { return particle.magnetic_moment * top_field_series(g, s, p, t).norm(); }, period);
}

CurrentAssembly ip_assembly(const IoffePritchardGeometry& g) {
    g.validate();
    CurrentAssembly a;
    const Vec3 zhat{0.0, 0.0, 1.0};
    a.loops.push_back({{0.0, 0.0, g.coil_halfspacing}, zhat, g.coil_radius, g.coil_current});
    a.loops.push_back({{0.0, 0.0, -g.coil_halfspacing}, zhat, g.coil_radius, g.coil_current});
    for (int k = 0; k < 4; ++k) {
        const double phi = kPi / 4.0 + k * kPi / 2.0;
        const double sign = k % 2 == 0 ? 1.0 : -1.0;
        a.wires.push_back(
            {{g.bar_distance * std::cos(phi), g.bar_distance * std::sin(phi), 0.0}, zhat, sign * g.bar_current});
    }
    return a;
}

CurrentAssembly top_assembly(const TopGeometry& g, double t) {
    g.validate();
    CurrentAssembly a;
    const Vec3 xhat{1.0, 0.0, 0.0};
    const Vec3 yhat{0.0, 1.0, 0.0};
    const Vec3 zhat{0.0, 0.0, 1.0};
    a.loops.push_back({{0.0, 0.0, g.quad_halfspacing}, zhat, g.quad_radius, -g.quad_current});
    a.loops.push_back({{0.0, 0.0, -g.quad_halfspacing}, zhat, g.quad_radius, g.quad_current});
    const double ix = g.bias_current * std::cos(g.bias_frequency * t);
    const double iy = g.bias_current * std::sin(g.bias_frequency * t);
    a.loops.push_back({{g.bias_halfspacing, 0.0, 0.0}, xhat, g.bias_radius, ix});
    a.loops.push_back({{-g.bias_halfspacing, 0.0, 0.0}, xhat, g.bias_radius, ix});
    a.loops.push_back({{0.0, g.bias_halfspacing, 0.0}, yhat, g.bias_radius, iy});
    a.loops.push_back({{0.0, -g.bias_halfspacing, 0.0}, yhat, g.bias_radius, iy});
    return a;
}

namespace {

Vec3 loop_field(const CurrentLoop& loop, Vec3 p, double rel_tol, double singular_fraction) {
    const Vec3 axis = (1.0 / loop.axis.norm()) * loop.axis;
    const Vec3 d = p - loop.center;
    const double axial = d.dot(axis);
    const double radial = (d - axial * axis).norm();
    if (std::hypot(radial - loop.radius, axial) < singular_fraction * loop.radius) {
        throw SingularityError("biot_savart_field: point lies on a current loop");
    }
    // (e1, e2, axis) right-handed
    const Vec3 trial = std::abs(axis.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
    const Vec3 e1 = [&] {
        const Vec3 v = trial - trial.dot(axis) * axis;
        return (1.0 / v.norm()) * v;
    }();
    const Vec3 e2 = axis.cross(e1);
    const double R = loop.radius;
    auto integrand = [&](double theta) {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const Vec3 x = loop.center + R * (c * e1 + s * e2);
        const Vec3 dl = R * (-s * e1 + c * e2);
        const Vec3 sep = p - x;
        const double dist = sep.norm();
        return (1.0 / (dist * dist * dist)) * dl.cross(sep);
    };
    const double pref = kMu0 * loop.current / (4.0 * kPi);
    Vec3 out;
    // Periodic analytic integrand: the trapezoidal rule converges geometrically.
    using boost::math::quadrature::trapezoidal;
    out.x = trapezoidal([&](double t) { return integrand(t).x; }, 0.0, 2.0 * kPi, rel_tol, 20);
    out.y = trapezoidal([&](double t) { return integrand(t).y; }, 0.0, 2.0 * kPi, rel_tol, 20);
    out.z = trapezoidal([&](double t) { return integrand(t).z; }, 0.0, 2.0 * kPi, rel_tol, 20);
    return pref * out;
}

Vec3 wire_field(const StraightWire& wire, Vec3 p, double singular_fraction) {
    const Vec3 dir = (1.0 / wire.direction.norm()) * wire.direction;
    const Vec3 d = p - wire.point;
    const Vec3 perp = d - d.dot(dir) * dir;
    const double dist = perp.norm();
    const double ref = wire.point.norm() > 0.0 ? wire.point.norm() : 1.0;
    if (dist < singular_fraction * ref) {
        throw SingularityError("biot_savart_field: point lies on a straight conductor");
    }
    return (kMu0 * wire.current / (2.0 * kPi * dist * dist)) * dir.cross(perp);
}

}  // namespace

Vec3 biot_savart_field(const CurrentAssembly& assembly, Vec3 p, double rel_tol, double singular_fraction) {
    Vec3 b;
    for (const auto& loop : assembly.loops) b = b + loop_field(loop, p, rel_tol, singular_fraction);
    for (const auto& wire : assembly.wires) b = b + wire_field(wire, p, singular_fraction);
    return b;
}

OscillatorScales oscillator_scales(const DipoleParticle& particle, double field, double r_s) {
    particle.validate();
    require_positive(field, "field");
    require_positive(r_s, "r_s");
    const double omega0 = std::sqrt(2.0 * particle.magnetic_moment * field / (particle.mass * r_s * r_s));
    return {omega0, std::sqrt(kHbar / (particle.mass * omega0))};
}

OscillatorUnits trap_units(const DipoleParticle& particle, const DerivedScales& s) {
    const double b0 = std::abs(s.field);
    const auto osc = oscillator_scales(particle, b0, s.isotropic_radius());
    return {kHbar, particle.mass, osc.omega0, particle.magnetic_moment * b0};
}

std::string field_map_csv(const std::vector<FieldSample>& samples) {
    std::string out = "x_m,y_m,z_m,t_s,Bx_T,By_T,Bz_T\n";
    for (const auto& s : samples) {
        out += format_real(s.point.x) + ',' + format_real(s.point.y) + ',' + format_real(s.point.z) + ',' +
               format_real(s.t) + ',' + format_real(s.field.x) + ',' + format_real(s.field.y) + ',' +
               format_real(s.field.z) + '\n';
    }
    return out;
}

}  // namespace trapspec
