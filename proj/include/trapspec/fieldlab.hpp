#pragma once

// Magnetic trap fields built from coil/bar geometry: truncated series fields
// for the Ioffe-Pritchard and TOP traps, the dipole potentials mu|B| they
// produce, isotropy tuning, and two numerical oracles (Biot-Savart
// integration of the actual conductors, and explicit time averaging).

#include <string>
#include <vector>

#include "trapspec/units.hpp"

namespace trapspec {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
    [[nodiscard]] double dot(Vec3 b) const { return x * b.x + y * b.y + z * b.z; }
    [[nodiscard]] Vec3 cross(Vec3 b) const { return {y * b.z - z * b.y, z * b.x - x * b.z, x * b.y - y * b.x}; }
    [[nodiscard]] double norm() const;
};

struct CylindricalPoint {
    double rho = 0.0;
    double phi = 0.0;
    double z = 0.0;

    [[nodiscard]] Vec3 cartesian() const;
    static CylindricalPoint from(Vec3 p);
};

/// Field components along (rho-hat, phi-hat, z-hat) at some point.
struct CylindricalVector {
    double rho = 0.0;
    double phi = 0.0;
    double z = 0.0;

    [[nodiscard]] Vec3 cartesian(double azimuth) const;
};

/// Two coaxial coils at z = +/-A_c carrying I_c (phi-hat) and four bars at
/// rho = S_l, phi = pi/4 + k pi/2 with currents +I_l, -I_l, +I_l, -I_l along z.
struct IoffePritchardGeometry {
    double coil_radius = 0.0;
    double coil_halfspacing = 0.0;
    double coil_current = 0.0;
    double bar_distance = 0.0;
    double bar_current = 0.0;

    void validate() const;
};

/// Anti-aligned quadrupole coils at z = +/-A_q (currents -/+ I_q) and bias
/// pairs on the x and y axes driven by I_b cos(w t), I_b sin(w t).
struct TopGeometry {
    double quad_radius = 0.0;
    double quad_halfspacing = 0.0;
    double quad_current = 0.0;
    double bias_radius = 0.0;
    double bias_halfspacing = 0.0;
    double bias_current = 0.0;
    double bias_frequency = 0.0;

    void validate() const;
};

enum class MagneticTrap { IoffePritchard, Top };

/// Characteristic length, area, field and gradient of a magnetic trap.
struct DerivedScales {
    MagneticTrap trap = MagneticTrap::IoffePritchard;
    double length = 0.0;    // l_c or l_b
    double area = 0.0;      // a_c or a_b; negative means no axial confinement
    double field = 0.0;     // B_c or B_b
    double gradient = 0.0;  // B_l' or B_q'
    double mu0 = kMu0;

    [[nodiscard]] bool confining() const { return area > 0.0; }
    /// r_c^2 = l^4/a (IP) or r_b^2 = 14 l^4 / 5a (TOP). Throws ValidationError when a <= 0.
    [[nodiscard]] double isotropic_radius() const;
};

struct DipoleParticle {
    double magnetic_moment = 0.0;  // J/T; must be > 0 (anti-aligned with the field)
    double mass = 0.0;

    void validate() const;
};

/// Coefficients of rho^2 and z^2 in U / (mu B0).
struct QuadraticCoefficients {
    double rho2 = 0.0;
    double z2 = 0.0;
};

DerivedScales ip_scales(const IoffePritchardGeometry& g);
CylindricalVector ip_field_series(const DerivedScales& s, CylindricalPoint p);
double ip_potential(const DipoleParticle& particle, const DerivedScales& s, CylindricalPoint p);
QuadraticCoefficients ip_potential_coefficients(const DerivedScales& s);
/// (B_l'^2/B_c^2 - 3a_c/l_c^4) / (3a_c/l_c^4).
double ip_isotropy_residual(const DerivedScales& s);
/// Bar current that zeroes ip_isotropy_residual, same sign as the current one (or positive).
double solve_bar_current(const IoffePritchardGeometry& g);

DerivedScales top_scales(const TopGeometry& g);
Vec3 top_field_series(const TopGeometry& g, const DerivedScales& s, Vec3 p, double t);
double top_time_avg_potential(const DipoleParticle& particle, const DerivedScales& s, double rho, double z);
QuadraticCoefficients top_potential_coefficients(const DerivedScales& s);
/// (B_q'^2/B_b^2 - 3a_b/7l_b^4) / (3a_b/7l_b^4).
double top_isotropy_residual(const DerivedScales& s);
double solve_quad_current(const TopGeometry& g);

/// Mean of f over [0, period] by composite Simpson: 256 panels, doubled until
/// successive results agree to rel_tol.
double time_average(const RealFunction& f, double period, double rel_tol = 1e-11);

/// mu |B_TOP| of the series field, averaged over one bias period.
double top_time_average_numeric(const DipoleParticle& particle, const TopGeometry& g, const DerivedScales& s, Vec3 p);

struct CurrentLoop {
    Vec3 center;
    Vec3 axis;  // unit; positive current circulates counterclockwise about it
    double radius = 0.0;
    double current = 0.0;
};

struct StraightWire {
    Vec3 point;
    Vec3 direction;  // unit; current flows along it
    double current = 0.0;
};

struct CurrentAssembly {
    std::vector<CurrentLoop> loops;
    std::vector<StraightWire> wires;
};

CurrentAssembly ip_assembly(const IoffePritchardGeometry& g);
/// Conductors with the bias currents frozen at time t.
CurrentAssembly top_assembly(const TopGeometry& g, double t);

/// Loops by adaptive quadrature of the Biot-Savart integral over the loop
/// angle; wires as infinite straight conductors. Throws SingularityError
/// within `singular_fraction` (of the loop radius / wire offset) of a conductor.
Vec3 biot_savart_field(const CurrentAssembly& assembly, Vec3 p, double rel_tol = 1e-13,
                       double singular_fraction = 1e-9);

struct OscillatorScales {
    double omega0 = 0.0;
    double r0 = 0.0;
};

/// omega0 = sqrt(2 mu B0 / m r_s^2), r0 = sqrt(hbar / m omega0).
OscillatorScales oscillator_scales(const DipoleParticle& particle, double field, double r_s);

/// Oscillator units of the isotropic trap: omega0 from mu|B0| and r_s, offset mu|B0|.
OscillatorUnits trap_units(const DipoleParticle& particle, const DerivedScales& s);

struct FieldSample {
    Vec3 point;
    double t = 0.0;
    Vec3 field;
};

/// Header x_m,y_m,z_m,t_s,Bx_T,By_T,Bz_T.
std::string field_map_csv(const std::vector<FieldSample>& samples);

}  // namespace trapspec
