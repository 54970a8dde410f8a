#include "unruh/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "unruh/errors.hpp"
#include "unruh/field_correlations.hpp"
#include "unruh/master_equation.hpp"

namespace unruh {

namespace {

constexpr double kRadicandTol = 1e-12;

double checked_sqrt(double radicand, const char* what) {
    if (radicand < -kRadicandTol) {
        throw InvariantError(std::string("negative radicand in ") + what + ": " + std::to_string(radicand));
    }
    return std::sqrt(std::max(radicand, 0.0));
}

}  // namespace

ConcurrenceReport concurrence_x(const XState& s) {
    const double re = s.c_as.real();
    const double im = s.c_as.imag();
    const double diff = s.p_aa - s.p_ss;
    const double sum = s.p_aa + s.p_ss;

    ConcurrenceReport r;
    r.k1 = std::sqrt(diff * diff + 4.0 * im * im) - 2.0 * checked_sqrt(s.p_gg * s.p_ee, "K1");
    r.k2 = 2.0 * std::abs(s.c_ge) - checked_sqrt(sum * sum - 4.0 * re * re, "K2");
    r.value = std::clamp(std::max({0.0, r.k1, r.k2}), 0.0, 1.0);
    return r;
}

Eigen::Matrix4cd to_product_matrix(const XState& s) {
    using cd = std::complex<double>;
    Eigen::Matrix4cd coupled = Eigen::Matrix4cd::Zero();
    coupled(0, 0) = s.p_gg;
    coupled(1, 1) = s.p_aa;
    coupled(2, 2) = s.p_ss;
    coupled(3, 3) = s.p_ee;
    coupled(1, 2) = s.c_as;
    coupled(2, 1) = std::conj(s.c_as);
    coupled(0, 3) = s.c_ge;
    coupled(3, 0) = std::conj(s.c_ge);

    // Columns are |G>, |A>, |S>, |E> expanded in |00>, |01>, |10>, |11>.
    const double r = std::numbers::sqrt2 / 2.0;
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
    u(0, 0) = 1.0;
    u(1, 1) = cd(-r);
    u(2, 1) = cd(r);
    u(1, 2) = cd(r);
    u(2, 2) = cd(r);
    u(3, 3) = 1.0;
    return u * coupled * u.adjoint();
}

double concurrence_general(const Eigen::Matrix4cd& rho) {
    constexpr double kPsdTol = 1e-10;
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kPsdTol) throw InvariantError("density matrix is not Hermitian");

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(rho);
    const Eigen::Vector4d w = eig.eigenvalues();
    if (w.minCoeff() < -kPsdTol) {
        throw InvariantError("density matrix is not positive semidefinite (eigenvalue " + std::to_string(w.minCoeff()) +
                             ")");
    }

    // Roundoff-level eigenvalues are zeroed so their square roots do not leak
    // ~1e-8 noise into sqrt(rho).
    const double floor = 1e-14 * std::max(1.0, w.cwiseAbs().maxCoeff());
    Eigen::Vector4d root;
    for (int i = 0; i < 4; ++i) root[i] = w[i] > floor ? std::sqrt(w[i]) : 0.0;
    const Eigen::Matrix4cd sqrt_rho = eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().adjoint();

    Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();  // sigma_y (x) sigma_y
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;

    // Singular values of sqrt(rho) Y sqrt(rho)^* are the square roots of the
    // eigenvalues of rho Y rho^* Y.
    const Eigen::Matrix4cd m = sqrt_rho * flip * sqrt_rho.conjugate();
    const Eigen::Vector4d lam = Eigen::JacobiSVD<Eigen::Matrix4cd>(m).singularValues();  // descending
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

GenerationReport generation_rate(const CoefficientSet& c) {
    const double radicand = c.a1 * c.a1 - c.b1 * c.b1;
    if (radicand < -kRadicandTol * std::max(1.0, c.a1 * c.a1)) {
        throw DomainError("generation rate requires a1^2 >= b1^2");
    }
    GenerationReport r;
    r.rate = 4.0 * std::hypot(c.a2, c.d) - 4.0 * std::sqrt(std::max(radicand, 0.0));
    r.generates = r.rate > 0.0;
    return r;
}

double k1_closed(double tau, const PopulationSnapshot& p, const CoefficientSet& c) {
    const double diff = p.p_aa - p.p_ss;
    const double osc = std::sin(4.0 * c.d * tau);
    const double extra = osc * osc * std::exp(-8.0 * c.a1 * tau);
    return std::sqrt(diff * diff + extra) - 2.0 * std::sqrt(std::max(p.p_gg * p.p_ee, 0.0));
}

namespace {

// Maximizes f on [lo, hi] until the bracket is narrower than tol.
template <typename F>
std::pair<double, double> golden_section_max(F&& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    while (hi - lo > tol) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    const double x = 0.5 * (lo + hi);
    return {x, f(x)};
}

}  // namespace

MaxConcurrenceResult max_concurrence(const CoefficientSet& coeffs, const MaxConcurrenceOptions& options) {
    if (!(options.tol >= 1e-10 && options.tol <= 1e-4)) throw ConfigError("cmax tolerance must lie in [1e-10, 1e-4]");
    if (!(options.points_per_scale >= 1.0)) throw ConfigError("points_per_scale must be >= 1");
    if (options.horizon < 0.0) throw ConfigError("horizon must be positive");
    if (!(coeffs.a1 > 0.0)) throw DomainError("max_concurrence requires a1 > 0");

    const ClosedFormPropagator prop(options.initial, coeffs);
    const double horizon = options.horizon > 0.0 ? options.horizon : default_horizon(options.initial, coeffs);

    double scale = 1.0 / (4.0 * coeffs.a1);
    if (coeffs.d != 0.0) scale = std::min(scale, std::numbers::pi / (2.0 * std::abs(coeffs.d)));
    constexpr double kMaxPoints = 4e6;
    const double wanted = std::max(400.0, std::ceil(horizon / scale * options.points_per_scale));
    const auto count = static_cast<std::size_t>(std::min(wanted, kMaxPoints)) + 1;
    const double dt = horizon / static_cast<double>(count - 1);

    const std::vector<XState> states = prop.uniform(dt, count);
    std::vector<double> c(count);
    for (std::size_t i = 0; i < count; ++i) c[i] = concurrence_x(states[i]).value;

    MaxConcurrenceResult best;
    best.horizon = horizon;
    best.grid_points = count;
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (c[i] > best.c_max) {
            best.c_max = c[i];
            best.tau_star = static_cast<double>(i) * dt;
            best_index = i;
        }
    }
    if (best.c_max == 0.0) return best;

    const double grid_best = best.c_max;
    auto concurrence_at = [&](double tau) { return concurrence_x(prop.state_at(tau)).value; };

    for (std::size_t i = 0; i < count; ++i) {
        const double left = i > 0 ? c[i - 1] : -1.0;
        const double right = i + 1 < count ? c[i + 1] : -1.0;
        if (c[i] <= 0.0 || c[i] < left || c[i] < right) continue;
        // Skip brackets that cannot plausibly beat the best grid sample.
        const double margin = 2.0 * std::max(i > 0 ? std::abs(c[i] - left) : 0.0, right >= 0 ? std::abs(c[i] - right) : 0.0);
        if (c[i] + margin < grid_best) continue;

        const double lo = i > 0 ? static_cast<double>(i - 1) * dt : 0.0;
        const double hi = std::min(horizon, static_cast<double>(i + 1) * dt);
        auto [tau, value] = golden_section_max(concurrence_at, lo, hi, options.tol);
        // The bracket ends are excluded by golden section; keep the grid value if it is larger.
        const double grid_tau = static_cast<double>(i) * dt;
        if (c[i] >= value) {
            tau = grid_tau;
            value = c[i];
        }
        if (value > best.c_max || (value == best.c_max && tau < best.tau_star)) {
            best.c_max = value;
            best.tau_star = tau;
            best_index = i;
        }
    }
    best.at_horizon = best_index + 1 == count;
    return best;
}

MaxConcurrenceResult max_concurrence(const SystemParams& params, const MaxConcurrenceOptions& options) {
    return max_concurrence(compute_coefficients(params), options);
}

}  // namespace unruh
