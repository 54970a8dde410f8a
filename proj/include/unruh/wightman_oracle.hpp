#pragma once

#include <vector>

#include "unruh/params.hpp"

namespace unruh {

// Knobs for the numerical Fourier transform of the image part of the
// boundary Wightman function. The regulators are given in units of 1/a.
struct ImageOracleOptions {
    std::vector<double> epsilon_schedule{0.1, 0.05, 0.025, 0.0125};
    double window_cutoff{1e-10};  // integrand tail e^{-a T} relative to its peak
    double quadrature_tol{1e-11};
    // Convergence test on successive extrapolants, relative to the natural
    // spectral scale |lambda|/(4 pi) (coth(pi lambda/a) + 1).
    double tol{1e-3};
};

struct ImageOracleResult {
    double value{0.0};               // extrapolated real part
    double imag{0.0};                // extrapolated imaginary part, ~0
    double last_change{0.0};         // |last extrapolant - previous extrapolant|
    double window{0.0};              // half-width T of the integration window
    std::vector<double> raw_values;  // real part per regulator
};

/// Transforms W_image(dtau - i eps) e^{i lambda dtau} over [-T, T] on the
/// accelerated trajectory for each regulator and extrapolates eps -> 0.
///
/// The result is the boundary contribution to the single-atom spectrum,
/// which in closed form is -(lambda/4pi)(coth(pi lambda/a) + 1) f(lambda, z).
/// Requires accel > 0 and z > 0; throws ConvergenceError when the last two
/// extrapolants differ by more than options.tol times the spectral scale.
ImageOracleResult image_wightman_ft_oracle(double lambda, const SystemParams& params,
                                           const ImageOracleOptions& options = {});

}  // namespace unruh
