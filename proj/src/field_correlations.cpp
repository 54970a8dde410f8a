#include "unruh/field_correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "unruh/errors.hpp"

namespace unruh {

void SystemParams::validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(omega) || omega <= 0.0) throw DomainError("omega must be positive, got " + std::to_string(omega));
    if (!finite(accel) || accel < 0.0) throw DomainError("accel must be non-negative, got " + std::to_string(accel));
    if (!finite(z) || z <= 0.0) throw DomainError("z must be positive, got " + std::to_string(z));
    if (!finite(l) || l <= 0.0) throw DomainError("l must be positive, got " + std::to_string(l));
    if (!finite(gamma0) || gamma0 <= 0.0) throw DomainError("gamma0 must be positive, got " + std::to_string(gamma0));
}

SystemParams SystemParams::from_dimensionless(double z_omega, double a_over_omega, double l_omega, double omega,
                                              double gamma0) {
    SystemParams p;
    p.omega = omega;
    p.accel = a_over_omega * omega;
    p.z = z_omega / omega;
    p.l = l_omega / omega;
    p.gamma0 = gamma0;
    return p;
}

double safe_coth(double x) {
    if (x < 0.0) return -safe_coth(-x);
    if (std::isinf(x)) return 1.0;
    if (x > 20.0) {
        const double e = std::exp(-2.0 * x);
        return 1.0 + 2.0 * e / (1.0 - e);
    }
    return 1.0 / std::tanh(x);
}

double coth_plus_one(double x) {
    if (x == -std::numeric_limits<double>::infinity()) return 0.0;
    return 2.0 / (-std::expm1(-2.0 * x));
}

namespace {

struct KernelParts {
    double phase;
    double denom;
};

KernelParts kernel_parts(double omega, double accel, double d) {
    if (!std::isfinite(omega) || omega == 0.0) throw DomainError("kernel requires omega != 0");
    if (!std::isfinite(accel) || accel < 0.0) throw DomainError("kernel requires accel >= 0");
    if (!std::isfinite(d) || d <= 0.0) throw DomainError("kernel requires d > 0, got " + std::to_string(d));

    // f and h are even in omega; work with |omega| so evenness is exact.
    const double w = std::abs(omega);
    const double ad = accel * d;
    if (accel == 0.0 || ad < kInertialThreshold) {
        return {2.0 * w * d, 2.0 * w * d};
    }
    return {(2.0 * w / accel) * std::asinh(ad), 2.0 * w * d * std::hypot(ad, 1.0)};
}

}  // namespace

double kernel_f(double omega, double accel, double d) {
    const auto [phase, denom] = kernel_parts(omega, accel, d);
    return std::sin(phase) / denom;
}

double kernel_h(double omega, double accel, double d) {
    const auto [phase, denom] = kernel_parts(omega, accel, d);
    return std::cos(phase) / denom;
}

bool uses_inertial_branch(const SystemParams& params) {
    const double scale = std::max({params.z, params.l, 1.0 / params.omega});
    return params.accel == 0.0 || params.accel * scale < kInertialThreshold;
}

namespace {

double effective_accel(const SystemParams& params) {
    return uses_inertial_branch(params) ? 0.0 : params.accel;
}

double thermal_argument(double lambda, double accel) {
    // pi * lambda / a, with a = 0 mapped to the zero-temperature limit.
    if (accel == 0.0) return std::copysign(std::numeric_limits<double>::infinity(), lambda);
    return std::numbers::pi * lambda / accel;
}

}  // namespace

SpectralPair spectral_density(double lambda, const SystemParams& params) {
    params.validate();
    if (lambda == 0.0 || !std::isfinite(lambda)) throw DomainError("spectral_density is undefined at lambda = 0");

    const double a = effective_accel(params);
    const double r = std::hypot(0.5 * params.l, params.z);
    const double prefactor = lambda / (4.0 * std::numbers::pi) * coth_plus_one(thermal_argument(lambda, a));

    SpectralPair out;
    out.g11 = prefactor * (1.0 - kernel_f(lambda, a, params.z));
    out.g12 = prefactor * (kernel_f(lambda, a, 0.5 * params.l) - kernel_f(lambda, a, r));
    return out;
}

CoefficientSet compute_coefficients(const SystemParams& params) {
    params.validate();

    const double a = effective_accel(params);
    const double w = params.omega;
    const double r = std::hypot(0.5 * params.l, params.z);
    const double coth = safe_coth(thermal_argument(w, a));
    const double q = 0.25 * params.gamma0;

    const double single = 1.0 - kernel_f(w, a, params.z);
    const double cross = kernel_f(w, a, 0.5 * params.l) - kernel_f(w, a, r);
    const double shift = kernel_h(w, a, 0.5 * params.l) - kernel_h(w, a, r);

    CoefficientSet c;
    c.a1 = q * coth * single;
    c.a2 = q * coth * cross;
    c.b1 = q * single;
    c.b2 = q * cross;
    c.d = q * shift;
    for (double v : {c.a1, c.a2, c.b1, c.b2, c.d}) {
        if (!std::isfinite(v)) throw DomainError("coefficients overflow (separation too small?)");
    }
    return c;
}

}  // namespace unruh
