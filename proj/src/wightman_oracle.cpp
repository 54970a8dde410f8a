#include "unruh/wightman_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "unruh/errors.hpp"
#include "unruh/field_correlations.hpp"

namespace unruh {

namespace {

using cplx = std::complex<double>;

// Polynomial extrapolation of values(eps) to eps = 0 (Neville tableau).
// Returns the diagonal, i.e. the extrapolant using the first k+1 points.
std::vector<cplx> extrapolate_to_zero(const std::vector<double>& eps, const std::vector<cplx>& values) {
    const std::size_t n = eps.size();
    std::vector<cplx> table = values;
    std::vector<cplx> diagonal{table[0]};
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t i = n - 1; i >= k; --i) {
            table[i] = (eps[i - k] * table[i] - eps[i] * table[i - 1]) / (eps[i - k] - eps[i]);
        }
        diagonal.push_back(table[k]);
    }
    return diagonal;
}

double integrate_piece(const auto& f, double lo, double hi, double tol) {
    double err = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 40, tol, &err);
}

}  // namespace

ImageOracleResult image_wightman_ft_oracle(double lambda, const SystemParams& params,
                                           const ImageOracleOptions& options) {
    params.validate();
    if (params.accel <= 0.0) throw DomainError("image oracle requires accel > 0");
    if (lambda == 0.0 || !std::isfinite(lambda)) throw DomainError("image oracle requires lambda != 0");

    const auto& schedule = options.epsilon_schedule;
    if (schedule.empty()) throw ConfigError("epsilon schedule is empty");
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        if (!(schedule[i] > 0.0) || (i > 0 && !(schedule[i] < schedule[i - 1]))) {
            throw ConfigError("epsilon schedule must be positive and strictly decreasing");
        }
    }

    const double a = params.accel;
    const double z = params.z;
    // Light-cone poles of the image term sit at dtau = +/- pole on the real axis.
    const double pole = 2.0 / a * std::asinh(a * z);
    const double window = pole + std::log(1.0 / options.window_cutoff) / a;
    const double norm = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);

    std::vector<double> eps_abs;
    std::vector<cplx> values;
    ImageOracleResult result;
    result.window = window;

    for (double eps_scaled : schedule) {
        const double eps = eps_scaled / a;
        auto integrand = [&](double s) {
            const cplx sh = std::sinh(0.5 * a * cplx(s, -eps));
            const cplx interval = 4.0 / (a * a) * sh * sh;
            return norm / (interval - 4.0 * z * z) * std::exp(cplx(0.0, lambda * s));
        };
        auto re = [&](double s) { return integrand(s).real(); };
        auto im = [&](double s) { return integrand(s).imag(); };

        const double breaks[] = {-window, -pole, 0.0, pole, window};
        cplx total{0.0, 0.0};
        for (int k = 0; k < 4; ++k) {
            if (breaks[k + 1] <= breaks[k]) continue;
            total += cplx(integrate_piece(re, breaks[k], breaks[k + 1], options.quadrature_tol),
                          integrate_piece(im, breaks[k], breaks[k + 1], options.quadrature_tol));
        }
        eps_abs.push_back(eps);
        values.push_back(total);
        result.raw_values.push_back(total.real());
    }

    const auto diagonal = extrapolate_to_zero(eps_abs, values);
    const cplx best = diagonal.back();
    result.value = best.real();
    result.imag = best.imag();
    result.last_change = diagonal.size() > 1 ? std::abs(diagonal.back() - diagonal[diagonal.size() - 2]) : 0.0;

    const double scale =
        std::abs(lambda * coth_plus_one(std::numbers::pi * lambda / a)) / (4.0 * std::numbers::pi);
    if (diagonal.size() > 1 && result.last_change > options.tol * std::max(scale, 1e-300)) {
        throw ConvergenceError("image oracle did not converge: last extrapolation step changed by " +
                               std::to_string(result.last_change));
    }
    return result;
}

}  // namespace unruh
