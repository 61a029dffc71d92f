#include "trapspec/polybasis.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <numbers>
#include <string>

#include "trapspec/errors.hpp"

namespace trapspec {

double laguerre_gen(int n, double alpha, double x) {
    if (n < 0) {
        throw DomainError("laguerre_gen: negative degree " + std::to_string(n));
    }
    if (!(alpha > -1.0)) {
        throw DomainError("laguerre_gen: order alpha must exceed -1");
    }
    double prev = 1.0;
    if (n == 0) {
        return prev;
    }
    double curr = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * curr - (k + alpha) * prev) / (k + 1.0);
        prev = curr;
        curr = next;
    }
    return curr;
}

double hermite(int k, double x) {
    if (k < 0) {
        throw DomainError("hermite: negative degree " + std::to_string(k));
    }
    double prev = 1.0;
    if (k == 0) {
        return prev;
    }
    double curr = 2.0 * x;
    for (int j = 1; j < k; ++j) {
        const double next = 2.0 * x * curr - 2.0 * j * prev;
        prev = curr;
        curr = next;
    }
    return curr;
}

double log_gamma(double x) {
    if (!(x > 0.0)) {
        throw DomainError("log_gamma: argument must be positive");
    }
    return std::lgamma(x);
}

int laguerre_degree(double principal, double angular) {
    const double twice = principal - angular;
    const double rounded = std::round(twice);
    if (std::abs(twice - rounded) > 1e-9 * std::max(1.0, std::abs(principal)) || rounded < 0.0 ||
        static_cast<long long>(rounded) % 2 != 0) {
        throw DomainError("principal minus angular quantum number must be a nonnegative even integer");
    }
    return static_cast<int>(rounded) / 2;
}

double radial_norm_3d(double principal, double angular, double r0) {
    if (!(angular > -1.5)) {
        throw DomainError("radial_norm_3d: angular index must exceed -3/2");
    }
    if (!(r0 > 0.0)) {
        throw DomainError("radial_norm_3d: length scale must be positive");
    }
    const int n = laguerre_degree(principal, angular);
    // integral of W^2 = C^2 r0 Gamma(n + L* + 3/2) / (2 n!)
    const double log_c2 = std::log(2.0) + log_gamma(n + 1.0) - log_gamma(n + angular + 1.5) - std::log(r0);
    return std::exp(0.5 * log_c2);
}

double radial_norm_2d(double principal, double abs_m, double rho_scale) {
    if (!(abs_m >= 0.0)) {
        throw DomainError("radial_norm_2d: |M| must be nonnegative");
    }
    if (!(rho_scale > 0.0)) {
        throw DomainError("radial_norm_2d: length scale must be positive");
    }
    const int n = laguerre_degree(principal, abs_m);
    // integral of X^2 = C^2 rho_p Gamma(n + |M| + 1) / (2 n!)
    const double log_c2 = std::log(2.0) + log_gamma(n + 1.0) - log_gamma(n + abs_m + 1.0) - std::log(rho_scale);
    return std::exp(0.5 * log_c2);
}

double hermite_function_norm(int k, double scale) {
    if (k < 0) {
        throw DomainError("hermite_function_norm: negative degree");
    }
    if (!(scale > 0.0)) {
        throw DomainError("hermite_function_norm: length scale must be positive");
    }
    // integral of exp(-s^2) H_k(s)^2 ds = sqrt(pi) 2^k k!
    const double log_int = 0.5 * std::log(std::numbers::pi) + k * std::log(2.0) + log_gamma(k + 1.0) + std::log(scale);
    return std::exp(-0.5 * log_int);
}

OscillatorRadial::OscillatorRadial(int degree, double lambda, double scale)
    : degree_(degree), lambda_(lambda), scale_(scale), norm_(radial_norm_3d(lambda + 2.0 * degree, lambda, scale)) {
    if (degree < 0) {
        throw DomainError("OscillatorRadial: negative degree");
    }
}

double OscillatorRadial::operator()(double r) const {
    if (r < 0.0) {
        throw DomainError("OscillatorRadial: negative radius");
    }
    const double u = r / scale_;
    const double power = lambda_ + 1.0;
    if (u == 0.0) {
        return power > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    const double envelope = std::exp(power * std::log(u) - 0.5 * u * u);
    return norm_ * envelope * laguerre_gen(degree_, lambda_ + 0.5, u * u);
}

double OscillatorRadial::derivative(double r) const {
    if (!(r > 0.0)) {
        throw DomainError("OscillatorRadial::derivative: radius must be positive");
    }
    const double u = r / scale_;
    const double x = u * u;
    const double power = lambda_ + 1.0;
    const double poly = laguerre_gen(degree_, lambda_ + 0.5, x);
    // d/dx L_n^a(x) = -L_{n-1}^{a+1}(x)
    const double poly_prime = degree_ > 0 ? -laguerre_gen(degree_ - 1, lambda_ + 1.5, x) : 0.0;
    const double envelope = std::exp((power - 1.0) * std::log(u) - 0.5 * x);
    const double du = norm_ * envelope * ((power - x) * poly + 2.0 * x * poly_prime);
    return du / scale_;
}

}  // namespace trapspec
