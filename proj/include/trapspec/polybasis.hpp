#pragma once

// Generalized Laguerre and Hermite polynomials plus the closed-form
// normalization constants of the oscillator radial functions built on them.

namespace trapspec {

/// L_n^alpha(x) by the three-term recurrence in n. Requires alpha > -1, n >= 0.
double laguerre_gen(int n, double alpha, double x);

/// Physicists' Hermite polynomial H_k(x) (weight exp(-x^2)).
double hermite(int k, double x);

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// C such that W(r) = C u^{L*+1} exp(-u^2/2) L_n^{L*+1/2}(u^2), u = r/r0,
/// n = (N - L*)/2, has unit norm on [0, inf).
///
/// N and L* may be non-integer (quantum-defect towers) as long as their
/// difference is a nonnegative even integer; L* > -3/2.
double radial_norm_3d(double principal, double angular, double r0);

/// C such that X(rho) = C v^{|M|+1/2} exp(-v^2/2) L_n^{|M|}(v^2), v = rho/rho_p,
/// n = (N - |M|)/2, has unit norm on [0, inf).
double radial_norm_2d(double principal, double abs_m, double rho_scale);

/// A such that A exp(-s^2/2) H_k(s), s = z/scale, has unit norm on the real line.
double hermite_function_norm(int k, double scale);

/// Nonnegative integer (principal - angular)/2, or DomainError.
int laguerre_degree(double principal, double angular);

/// Oscillator-type radial function
///   f(r) = C u^{lambda+1} exp(-u^2/2) L_n^{lambda+1/2}(u^2),  u = r/scale.
///
/// lambda = L (or L*) gives the 3D functions W_{N,L}; lambda = |M| - 1/2
/// gives the planar functions X_{N,|M|}. Evaluation works in u and in log
/// space for the power/Gaussian factor, so large N does not overflow.
class OscillatorRadial {
public:
    OscillatorRadial(int degree, double lambda, double scale);

    [[nodiscard]] double operator()(double r) const;
    [[nodiscard]] double derivative(double r) const;

    [[nodiscard]] int degree() const { return degree_; }
    [[nodiscard]] double lambda() const { return lambda_; }
    [[nodiscard]] double scale() const { return scale_; }
    [[nodiscard]] double norm() const { return norm_; }
    /// Interior zeros on (0, inf); equals degree().
    [[nodiscard]] int nodes() const { return degree_; }

private:
    int degree_;
    double lambda_;
    double scale_;
    double norm_;
};

}  // namespace trapspec
