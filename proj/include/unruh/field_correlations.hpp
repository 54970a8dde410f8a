#pragma once

#include "unruh/params.hpp"

namespace unruh {

// Below this value of a*d (or a*max(z, L, 1/omega) for the whole coefficient
// set) the accelerated kernels are replaced by their a -> 0 closed forms.
inline constexpr double kInertialThreshold = 1e-6;

// coth(x) for x > 0, switching to 1 + 2e^{-2x}/(1 - e^{-2x}) above x = 20.
// Returns 1 for x = +inf.
double safe_coth(double x);

// coth(x) + 1 = 2 / (1 - e^{-2x}), valid for either sign of x without
// cancellation. Returns 2 for x = +inf and 0 for x = -inf.
double coth_plus_one(double x);

/// Boundary kernel sin[(2w/a) asinh(a d)] / (2 w d sqrt(a^2 d^2 + 1)).
///
/// Even in omega. Uses sin(2wd)/(2wd) when a*d is below kInertialThreshold.
/// Throws DomainError for d <= 0, omega == 0, accel < 0 or non-finite input.
double kernel_f(double omega, double accel, double d);

/// Companion kernel with cos in place of sin. Diverges like 1/(2wd) as
/// d -> 0, so d must stay bounded away from zero.
double kernel_h(double omega, double accel, double d);

/// Fourier transforms of the single-atom and cross correlation functions at
/// frequency lambda. Satisfies g(-lambda) = exp(-2 pi lambda / a) g(lambda).
SpectralPair spectral_density(double lambda, const SystemParams& params);

/// Closed-form master-equation coefficients for the given configuration.
CoefficientSet compute_coefficients(const SystemParams& params);

/// True when the coefficient set is evaluated on the a -> 0 branch.
bool uses_inertial_branch(const SystemParams& params);

}  // namespace unruh
