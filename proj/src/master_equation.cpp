#include "unruh/master_equation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "unruh/entanglement.hpp"
#include "unruh/errors.hpp"

namespace unruh {

namespace {

constexpr double kPositivityTol = 1e-9;

void check_times(std::span<const double> times) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!std::isfinite(times[i]) || times[i] < 0.0) throw ConfigError("evolution times must be non-negative");
        if (i > 0 && !(times[i] > times[i - 1])) throw ConfigError("evolution times must be strictly increasing");
    }
}

PopulationVector populations_of(const XState& s) { return {s.p_gg, s.p_ee, s.p_aa, s.p_ss}; }

double clamp_population(double p) { return (p < 0.0 && p >= -kPositivityTol) ? 0.0 : p; }

}  // namespace

Eigen::Matrix4d population_generator(const CoefficientSet& c) {
    const double a1 = c.a1, a2 = c.a2, b1 = c.b1, b2 = c.b2;
    Eigen::Matrix4d m;
    // clang-format off
    m << -4 * (a1 - b1), 0.0,            2 * (a1 + b1 - a2 - b2), 2 * (a1 + b1 + a2 + b2),
         0.0,            -4 * (a1 + b1), 2 * (a1 - b1 - a2 + b2), 2 * (a1 - b1 + a2 - b2),
         2 * (a1 - b1 - a2 + b2), 2 * (a1 + b1 - a2 - b2), -4 * (a1 - a2), 0.0,
         2 * (a1 - b1 + a2 - b2), 2 * (a1 + b1 + a2 + b2), 0.0,            -4 * (a1 + a2);
    // clang-format on
    return m;
}

XStateRate rhs(const XState& s, const CoefficientSet& c) {
    const double a1 = c.a1, a2 = c.a2, b1 = c.b1, b2 = c.b2;
    XStateRate r;
    r.p_gg = -4 * (a1 - b1) * s.p_gg + 2 * (a1 + b1 - a2 - b2) * s.p_aa + 2 * (a1 + b1 + a2 + b2) * s.p_ss;
    r.p_ee = -4 * (a1 + b1) * s.p_ee + 2 * (a1 - b1 - a2 + b2) * s.p_aa + 2 * (a1 - b1 + a2 - b2) * s.p_ss;
    r.p_aa = -4 * (a1 - a2) * s.p_aa + 2 * (a1 - b1 - a2 + b2) * s.p_gg + 2 * (a1 + b1 - a2 - b2) * s.p_ee;
    r.p_ss = -4 * (a1 + a2) * s.p_ss + 2 * (a1 - b1 + a2 - b2) * s.p_gg + 2 * (a1 + b1 + a2 + b2) * s.p_ee;
    r.c_as = -4.0 * std::complex<double>(a1, c.d) * s.c_as;
    r.c_ge = -4.0 * a1 * s.c_ge;
    return r;
}

ClosedFormPropagator::ClosedFormPropagator(const XState& initial, const CoefficientSet& coeffs)
    : coeffs_(coeffs),
      generator_(population_generator(coeffs)),
      initial_pops_(populations_of(initial)),
      c_as0_(initial.c_as),
      c_ge0_(initial.c_ge) {
    initial.validate();
}

XState ClosedFormPropagator::assemble(const PopulationVector& pops, double tau) const {
    XState s;
    s.p_gg = clamp_population(pops[0]);
    s.p_ee = clamp_population(pops[1]);
    s.p_aa = clamp_population(pops[2]);
    s.p_ss = clamp_population(pops[3]);
    s.c_as = c_as0_ * std::exp(-4.0 * std::complex<double>(coeffs_.a1, coeffs_.d) * tau);
    s.c_ge = c_ge0_ * std::exp(-4.0 * coeffs_.a1 * tau);
    const double breach = s.invariant_breach();
    if (!(breach <= kPositivityTol)) {
        throw InvariantError("closed-form evolution left the physical state space at tau = " + std::to_string(tau) +
                             " (breach " + std::to_string(breach) + "); inconsistent coefficients?");
    }
    return s;
}

XState ClosedFormPropagator::state_at(double tau) const {
    if (tau == 0.0) return assemble(initial_pops_, 0.0);
    const Eigen::Matrix4d step = (generator_ * tau).exp();
    return assemble(step * initial_pops_, tau);
}

std::vector<XState> ClosedFormPropagator::uniform(double dt, std::size_t count) const {
    std::vector<XState> out;
    out.reserve(count);
    const Eigen::Matrix4d step = (generator_ * dt).exp();
    PopulationVector pops = initial_pops_;
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back(assemble(pops, static_cast<double>(k) * dt));
        pops = step * pops;
    }
    return out;
}

EvolutionResult evolve_closed(const XState& initial, const CoefficientSet& coeffs, std::span<const double> times) {
    check_times(times);
    const ClosedFormPropagator prop(initial, coeffs);
    EvolutionResult out;
    out.times.assign(times.begin(), times.end());
    out.states.reserve(times.size());
    out.concurrence.reserve(times.size());
    for (double t : times) {
        out.states.push_back(prop.state_at(t));
        out.concurrence.push_back(concurrence_x(out.states.back()).value);
    }
    return out;
}

namespace {

XState advance(const XState& s, const XStateRate& r, double h) {
    XState out;
    out.p_gg = s.p_gg + h * r.p_gg;
    out.p_ee = s.p_ee + h * r.p_ee;
    out.p_aa = s.p_aa + h * r.p_aa;
    out.p_ss = s.p_ss + h * r.p_ss;
    out.c_as = s.c_as + h * r.c_as;
    out.c_ge = s.c_ge + h * r.c_ge;
    return out;
}

XState rk4_step(const XState& s, const CoefficientSet& c, double h) {
    const XStateRate k1 = rhs(s, c);
    const XStateRate k2 = rhs(advance(s, k1, 0.5 * h), c);
    const XStateRate k3 = rhs(advance(s, k2, 0.5 * h), c);
    const XStateRate k4 = rhs(advance(s, k3, h), c);
    XState out;
    auto combine = [h](auto y, auto d1, auto d2, auto d3, auto d4) { return y + h / 6.0 * (d1 + 2.0 * d2 + 2.0 * d3 + d4); };
    out.p_gg = combine(s.p_gg, k1.p_gg, k2.p_gg, k3.p_gg, k4.p_gg);
    out.p_ee = combine(s.p_ee, k1.p_ee, k2.p_ee, k3.p_ee, k4.p_ee);
    out.p_aa = combine(s.p_aa, k1.p_aa, k2.p_aa, k3.p_aa, k4.p_aa);
    out.p_ss = combine(s.p_ss, k1.p_ss, k2.p_ss, k3.p_ss, k4.p_ss);
    out.c_as = combine(s.c_as, k1.c_as, k2.c_as, k3.c_as, k4.c_as);
    out.c_ge = combine(s.c_ge, k1.c_ge, k2.c_ge, k3.c_ge, k4.c_ge);
    return out;
}

double max_distance(const XState& x, const XState& y) {
    return std::max({std::abs(x.p_gg - y.p_gg), std::abs(x.p_ee - y.p_ee), std::abs(x.p_aa - y.p_aa),
                     std::abs(x.p_ss - y.p_ss), std::abs(x.c_as - y.c_as), std::abs(x.c_ge - y.c_ge)});
}

// Integrates through every requested time with steps no longer than h.
std::vector<XState> rk4_pass(const XState& initial, const CoefficientSet& c, std::span<const double> times, double h,
                             std::size_t& steps) {
    std::vector<XState> out;
    out.reserve(times.size());
    XState s = initial;
    double t = 0.0;
    for (double target : times) {
        const double span = target - t;
        if (span > 0.0) {
            const auto n = static_cast<std::size_t>(std::ceil(span / h));
            const double dt = span / static_cast<double>(n);
            for (std::size_t k = 0; k < n; ++k) s = rk4_step(s, c, dt);
            steps += n;
        }
        t = target;
        out.push_back(s);
    }
    return out;
}

}  // namespace

EvolutionResult evolve_numeric(const XState& initial, const CoefficientSet& coeffs, std::span<const double> times,
                               const NumericOptions& options) {
    check_times(times);
    if (!(options.tol >= 1e-12 && options.tol <= 1e-4)) throw ConfigError("numeric tolerance must lie in [1e-12, 1e-4]");
    initial.validate();

    EvolutionResult out;
    out.times.assign(times.begin(), times.end());
    if (times.empty()) return out;

    const double rate_scale = 4.0 * (std::abs(coeffs.a1) + std::abs(coeffs.a2) + std::abs(coeffs.b1) +
                                     std::abs(coeffs.b2) + std::abs(coeffs.d));
    const double t_end = times.back();
    double h = t_end > 0.0 ? t_end / 8.0 : 1.0;
    if (rate_scale > 0.0) h = std::min(h, 0.5 / rate_scale);

    std::size_t steps = 0;
    std::vector<XState> coarse = rk4_pass(initial, coeffs, times, h, steps);
    while (true) {
        h *= 0.5;
        std::vector<XState> fine = rk4_pass(initial, coeffs, times, h, steps);
        double diff = 0.0;
        for (std::size_t i = 0; i < fine.size(); ++i) diff = std::max(diff, max_distance(fine[i], coarse[i]));
        coarse = std::move(fine);
        if (diff < options.tol) break;
        if (steps > options.max_steps) {
            throw ConvergenceError("RK4 step budget exceeded before reaching tolerance (last change " +
                                   std::to_string(diff) + ")");
        }
    }

    out.states = std::move(coarse);
    out.concurrence.reserve(out.states.size());
    for (const auto& s : out.states) out.concurrence.push_back(concurrence_x(s).value);
    return out;
}

EvolutionResult evolve_numeric(const XState& initial, const CoefficientSet& coeffs, double t_end, double tol,
                               std::size_t samples) {
    if (!(t_end > 0.0) || samples < 2) throw ConfigError("need t_end > 0 and at least two samples");
    std::vector<double> times(samples);
    for (std::size_t i = 0; i < samples; ++i) times[i] = t_end * static_cast<double>(i) / static_cast<double>(samples - 1);
    NumericOptions opts;
    opts.tol = tol;
    return evolve_numeric(initial, coeffs, times, opts);
}

XState steady_state(const CoefficientSet& coeffs) {
    if (!(coeffs.a1 > 0.0)) throw DomainError("steady state requires a1 > 0");
    const Eigen::Matrix4d m = population_generator(coeffs);
    Eigen::FullPivLU<Eigen::Matrix4d> lu(m);
    lu.setThreshold(1e-12);
    if (lu.rank() != 3) {
        throw DegenerateKernelError("population generator has a " + std::to_string(4 - lu.rank()) +
                                    "-dimensional null space (a1 = |a2|?)");
    }
    PopulationVector v = lu.kernel().col(0);
    v /= v.sum();

    XState s;
    s.p_gg = clamp_population(v[0]);
    s.p_ee = clamp_population(v[1]);
    s.p_aa = clamp_population(v[2]);
    s.p_ss = clamp_population(v[3]);
    s.validate(kPositivityTol);
    return s;
}

double default_horizon(const XState& initial, const CoefficientSet& coeffs) {
    if (!(coeffs.a1 > 0.0)) throw DomainError("default horizon requires a1 > 0");
    double horizon = 1.0 / (4.0 * coeffs.a1);

    const double coherence = std::max(std::abs(initial.c_as), std::abs(initial.c_ge));
    if (coherence > 1e-6) horizon = std::max(horizon, std::log(coherence / 1e-6) / (4.0 * coeffs.a1));

    const Eigen::Matrix4d m = population_generator(coeffs);
    const Eigen::Vector4cd eig = m.eigenvalues();
    const double scale = m.cwiseAbs().maxCoeff();
    double slowest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) {
        const double rate = -eig[i].real();
        if (rate > 1e-12 * scale) slowest = std::min(slowest, rate);
    }
    double distance = 1.0;
    try {
        const XState ss = steady_state(coeffs);
        distance = (populations_of(initial) - populations_of(ss)).cwiseAbs().sum();
    } catch (const DegenerateKernelError&) {
    }
    if (std::isfinite(slowest) && distance > 1e-8) {
        horizon = std::max(horizon, std::log(distance / 1e-8) / slowest);
    }
    return std::min(horizon, kMaxHorizon);
}

std::vector<double> default_time_grid(const CoefficientSet& coeffs, double horizon) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ConfigError("time grid needs a positive horizon");
    constexpr std::size_t kMaxPoints = 2'000'000;

    double dt = horizon / 400.0;
    if (coeffs.d != 0.0) dt = std::min(dt, std::numbers::pi / (2.0 * std::abs(coeffs.d)) / 40.0);
    if (coeffs.a1 > 0.0) dt = std::min(dt, 1.0 / (4.0 * coeffs.a1) / 40.0);
    dt = std::max(dt, horizon / static_cast<double>(kMaxPoints));

    std::vector<double> grid;
    const auto n = static_cast<std::size_t>(std::ceil(horizon / dt));
    grid.reserve(n + 32);
    // Geometric lead-in below the first linear step.
    constexpr int kLeadIn = 20;
    const double first = std::min(dt, horizon) * 1e-6;
    for (int k = 0; k < kLeadIn; ++k) grid.push_back(first * std::pow(1e6, static_cast<double>(k) / kLeadIn));
    grid.push_back(0.0);
    for (std::size_t k = 1; k <= n; ++k) grid.push_back(std::min(horizon, static_cast<double>(k) * dt));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

}  // namespace unruh
