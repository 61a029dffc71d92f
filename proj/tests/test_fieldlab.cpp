#include <cmath>
#include <numbers>

#include "doctest.h"
#include "trapspec/errors.hpp"
#include "trapspec/fieldlab.hpp"

using namespace trapspec;

namespace {

constexpr double kPi = std::numbers::pi;

IoffePritchardGeometry ip_geometry() {
    IoffePritchardGeometry g{0.02, 0.03, 100.0, 0.01, 1.0};
    g.bar_current = solve_bar_current(g);
    return g;
}

TopGeometry top_geometry() {
    TopGeometry g{0.03, 0.02, 1.0, 0.02, 0.03, 5.0, 2 * kPi * 7000.0};
    g.quad_current = solve_quad_current(g);
    return g;
}

DipoleParticle rb87() { return {kBohrMagneton, 86.909180527 * kAtomicMassUnit}; }

}  // namespace

TEST_CASE("ip_scales arithmetic") {
    IoffePritchardGeometry g{0.05, 0.05, 10.0, 0.01, 1.0};
    auto s = ip_scales(g);
    CHECK(s.area == doctest::Approx(0.01125).epsilon(1e-14));
    CHECK(s.length == doctest::Approx(std::sqrt(0.005)).epsilon(1e-14));
    g.coil_halfspacing = 0.02;  // 2A < R
    CHECK(ip_scales(g).area < 0.0);
    CHECK_THROWS_AS((void)ip_isotropy_residual(ip_scales(g)), ValidationError);
}

TEST_CASE("B_c equals the two-loop field at the centre") {
    IoffePritchardGeometry g{0.02, 0.03, 100.0, 0.01, 1.0};
    auto s = ip_scales(g);
    CurrentAssembly coils;
    coils.loops.push_back({{0, 0, g.coil_halfspacing}, {0, 0, 1}, g.coil_radius, g.coil_current});
    coils.loops.push_back({{0, 0, -g.coil_halfspacing}, {0, 0, 1}, g.coil_radius, g.coil_current});
    const Vec3 b = biot_savart_field(coils, {0, 0, 0});
    CHECK(b.z == doctest::Approx(s.field).epsilon(1e-12));
    CHECK(std::abs(b.x) < 1e-12 * s.field);
}

TEST_CASE("single loop on axis") {
    CurrentAssembly a;
    a.loops.push_back({{0, 0, 0}, {0, 0, 1}, 0.1, 3.0});
    for (double z : {0.0, 0.05, -0.2}) {
        const double ref = kMu0 * 3.0 * 0.01 / (2.0 * std::pow(z * z + 0.01, 1.5));
        CHECK(biot_savart_field(a, {0, 0, z}).z == doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("bar quadrupole gradient") {
    IoffePritchardGeometry g{0.02, 0.03, 1.0, 0.01, 7.0};
    auto s = ip_scales(g);
    CurrentAssembly a = ip_assembly(g);
    a.loops.clear();
    const double h = 1e-5;
    // along x the quadrupole field points along +/- x
    const double grad = (biot_savart_field(a, {h, 0, 0}).x - biot_savart_field(a, {-h, 0, 0}).x) / (2 * h);
    CHECK(std::abs(grad) == doctest::Approx(std::abs(s.gradient)).epsilon(1e-8));
}

TEST_CASE("biot_savart singularity") {
    CurrentAssembly a;
    a.loops.push_back({{0, 0, 0}, {0, 0, 1}, 0.1, 1.0});
    CHECK_THROWS_AS((void)biot_savart_field(a, {0.1, 0, 0}), SingularityError);
    CurrentAssembly w;
    w.wires.push_back({{0.01, 0, 0}, {0, 0, 1}, 1.0});
    CHECK_THROWS_AS((void)biot_savart_field(w, {0.01, 0, 0.3}), SingularityError);
}

TEST_CASE("ip_field_series") {
    auto g = ip_geometry();
    auto s = ip_scales(g);
    auto o = ip_field_series(s, {0, 0, 0});
    CHECK(o.z == doctest::Approx(s.field));
    CHECK(o.rho == 0.0);
    const double z = 0.003;
    auto b = ip_field_series(s, {0, 0.4, z});
    CHECK(b.z == doctest::Approx(s.field + s.field * s.area * z * z / std::pow(s.length, 4)).epsilon(1e-14));
}

TEST_CASE("ip isotropy") {
    auto g = ip_geometry();
    auto s = ip_scales(g);
    CHECK(std::abs(ip_isotropy_residual(s)) < 1e-12);
    auto c = ip_potential_coefficients(s);
    CHECK(c.rho2 == doctest::Approx(c.z2).epsilon(1e-12));
    auto g2 = g;
    g2.bar_current *= 2.0;
    CHECK(ip_isotropy_residual(ip_scales(g2)) == doctest::Approx(3.0).epsilon(1e-12));
    const auto p = rb87();
    CHECK(ip_potential(p, s, {0, 0, 0}) == doctest::Approx(p.magnetic_moment * s.field));
}

TEST_CASE("untuned ip anisotropy matches direct expansion") {
    IoffePritchardGeometry g{0.02, 0.03, 100.0, 0.01, 3.0};
    auto s = ip_scales(g);
    auto c = ip_potential_coefficients(s);
    // mu|B| to second order: rho^2 (B_l'^2/2B_c - B_c a/2 l^4), z^2 B_c a / l^4, divided by mu B_c
    const double l4 = std::pow(s.length, 4);
    const double rho2 = s.gradient * s.gradient / (2 * s.field * s.field) - s.area / (2 * l4);
    const double z2 = s.area / l4;
    CHECK(c.rho2 - c.z2 == doctest::Approx(rho2 - z2).epsilon(1e-12));
    // and a finite-difference of the potential itself
    const auto p = rb87();
    const double h = 1e-5;
    const double u0 = ip_potential(p, s, {0, 0, 0});
    const double cr = (ip_potential(p, s, {h, 0.3, 0}) - u0) / (h * h) / u0;
    const double cz = (ip_potential(p, s, {0, 0, h}) - u0) / (h * h) / u0;
    CHECK(cr == doctest::Approx(rho2).epsilon(1e-5));
    CHECK(cz == doctest::Approx(z2).epsilon(1e-5));
}

TEST_CASE("top_scales and series field") {
    TopGeometry g{0.03, 0.02, 4.0, 0.02, 0.02, 5.0, 1000.0};
    auto s = top_scales(g);
    CHECK(s.area == doctest::Approx(4.5 * 0.0004).epsilon(1e-14));
    CHECK(s.length == doctest::Approx(std::sqrt(0.0008)).epsilon(1e-14));
    auto b0 = top_field_series(g, s, {0, 0, 0}, 0.0);
    CHECK(b0.x == doctest::Approx(s.field));
    CHECK(std::abs(b0.y) < 1e-15);
    auto b1 = top_field_series(g, s, {0, 0, 0}, kPi / (2 * g.bias_frequency));
    CHECK(b1.y == doctest::Approx(s.field).epsilon(1e-12));
    CHECK(std::abs(b1.x) < 1e-12 * s.field);
    for (double t : {0.0, 1e-4, 3.3e-3}) {
        CHECK(top_field_series(g, s, {0, 0, 0.001}, t).z == doctest::Approx(-2 * s.gradient * 0.001).epsilon(1e-12));
    }
}

TEST_CASE("quadrupole gradient against Biot-Savart") {
    // bias pairs on x and y give no B_z on the coil axis
    TopGeometry g{0.03, 0.02, 4.0, 0.02, 0.03, 1.0, 1000.0};
    auto s = top_scales(g);
    CurrentAssembly a = top_assembly(g, 0.0);
    const double h = 1e-5;
    const double dbz = (biot_savart_field(a, {0, 0, h}).z - biot_savart_field(a, {0, 0, -h}).z) / (2 * h);
    CHECK(std::abs(dbz) == doctest::Approx(2 * std::abs(s.gradient)).epsilon(1e-8));
}

TEST_CASE("top isotropy and time average") {
    auto g = top_geometry();
    auto s = top_scales(g);
    CHECK(std::abs(top_isotropy_residual(s)) < 1e-12);
    auto c = top_potential_coefficients(s);
    CHECK(c.rho2 == doctest::Approx(c.z2).epsilon(1e-12));
    auto g2 = g;
    g2.quad_current *= 2.0;
    CHECK(top_isotropy_residual(top_scales(g2)) == doctest::Approx(3.0).epsilon(1e-12));

    const auto p = rb87();
    CHECK(top_time_avg_potential(p, s, 0, 0) == doctest::Approx(p.magnetic_moment * s.field));
    // the series average drops quartic terms: the residual must shrink at least as r^3.5
    const double r = 0.02 * s.isotropic_radius();
    auto residual = [&](double x) {
        return std::abs(top_time_average_numeric(p, g, s, {x, 0, 0}) - top_time_avg_potential(p, s, x, 0));
    };
    const double slope = std::log(residual(2 * r) / residual(r)) / std::log(2.0);
    CHECK(slope >= 3.5);
}

TEST_CASE("time_average of a known integrand") {
    const double avg = time_average([](double t) { return std::cos(t) * std::cos(t); }, 2 * kPi);
    CHECK(avg == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("oscillator_scales") {
    const auto p = rb87();
    auto a = oscillator_scales(p, 1e-4, 0.01);
    auto b = oscillator_scales(p, 2e-4, 0.01);
    CHECK(b.omega0 == doctest::Approx(std::sqrt(2.0) * a.omega0).epsilon(1e-14));
    CHECK(a.r0 * a.r0 * a.omega0 == doctest::Approx(kHbar / p.mass).epsilon(1e-13));
    auto s = ip_scales(ip_geometry());
    auto u = trap_units(p, s);
    CHECK(u.omega > 10.0);
    CHECK(u.omega < 1000.0);
    CHECK(u.offset == doctest::Approx(p.magnetic_moment * s.field));
}

TEST_CASE("geometry validation") {
    CHECK_THROWS((IoffePritchardGeometry{-1, 0.03, 1, 0.01, 1}.validate()));
    CHECK_THROWS((DipoleParticle{-1.0, 1.0}.validate()));
}

TEST_CASE("field_map_csv header") {
    std::string csv = field_map_csv({{{0, 0, 0}, 0.0, {1, 2, 3}}});
    CHECK(csv.rfind("x_m,y_m,z_m,t_s,Bx_T,By_T,Bz_T\n", 0) == 0);
}
