#pragma once

#include <cmath>
#include <functional>
#include <numbers>

namespace trapspec {

inline constexpr double kHbar = 1.054571817e-34;          // J s
inline constexpr double kMu0 = 4.0e-7 * std::numbers::pi;  // T m / A, fixed
inline constexpr double kElementaryCharge = 1.602176634e-19;
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;
inline constexpr double kBohrMagneton = 9.2740100783e-24;

using RealFunction = std::function<double(double)>;

/// Energy, length and kinetic scales of one oscillator tower.
///
/// `offset` is the constant energy floor (mu*B0 for the magnetic traps).
/// natural() sets hbar = m = omega = 1 and offset = 0, which is what the
/// numerical checks use for conditioning.
struct OscillatorUnits {
    double hbar = kHbar;
    double mass = 1.0;
    double omega = 1.0;
    double offset = 0.0;

    [[nodiscard]] double length() const { return std::sqrt(hbar / (mass * omega)); }
    [[nodiscard]] double quantum() const { return hbar * omega; }
    [[nodiscard]] double kinetic() const { return hbar * hbar / (2.0 * mass); }
    [[nodiscard]] double spring() const { return 0.5 * mass * omega * omega; }

    static OscillatorUnits natural() { return {1.0, 1.0, 1.0, 0.0}; }
};

/// kinetic * centrifugal / r^2 + smooth(r).
///
/// Keeping the inverse-square coefficient separate lets the radial solver
/// impose the regular r^s behaviour at the origin.
struct RadialPotential {
    double kinetic = 0.5;
    double centrifugal = 0.0;
    RealFunction smooth;

    [[nodiscard]] double operator()(double r) const {
        return kinetic * centrifugal / (r * r) + smooth(r);
    }
};

}  // namespace trapspec
