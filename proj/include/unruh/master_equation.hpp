#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "unruh/params.hpp"
#include "unruh/xstate.hpp"

namespace unruh {

struct EvolutionResult {
    std::vector<double> times;  // strictly increasing, units of 1/gamma0
    std::vector<XState> states;
    std::vector<double> concurrence;
};

// Populations are ordered (GG, EE, AA, SS) wherever they appear as a vector.
using PopulationVector = Eigen::Vector4d;

/// Constant generator of the population equations: dp/dtau = M p.
/// Every column sums to zero.
Eigen::Matrix4d population_generator(const CoefficientSet& coeffs);

/// Right-hand side of the X-state evolution equations.
XStateRate rhs(const XState& state, const CoefficientSet& coeffs);

// Exact solution for one initial state: matrix exponential for the
// populations, analytic exponentials for the two coherences.
class ClosedFormPropagator {
public:
    ClosedFormPropagator(const XState& initial, const CoefficientSet& coeffs);

    /// State at proper time tau >= 0. Throws InvariantError if positivity
    /// drifts beyond 1e-9; tiny negative populations are clamped to zero.
    [[nodiscard]] XState state_at(double tau) const;

    /// States at 0, dt, 2dt, ..., (count-1)dt using one step propagator.
    [[nodiscard]] std::vector<XState> uniform(double dt, std::size_t count) const;

    [[nodiscard]] const Eigen::Matrix4d& generator() const { return generator_; }
    [[nodiscard]] const CoefficientSet& coefficients() const { return coeffs_; }

private:
    [[nodiscard]] XState assemble(const PopulationVector& pops, double tau) const;

    CoefficientSet coeffs_;
    Eigen::Matrix4d generator_;
    PopulationVector initial_pops_;
    std::complex<double> c_as0_;
    std::complex<double> c_ge0_;
};

/// Authoritative solver. times must be non-negative and strictly increasing.
EvolutionResult evolve_closed(const XState& initial, const CoefficientSet& coeffs, std::span<const double> times);

struct NumericOptions {
    double tol{1e-10};                      // in [1e-12, 1e-4]
    std::size_t max_steps{200'000'000};     // summed over all refinement passes
};

/// Fixed-step RK4 with step halving until two successive refinements agree
/// to options.tol in max norm at every requested time. Throws
/// ConvergenceError when the step budget runs out.
EvolutionResult evolve_numeric(const XState& initial, const CoefficientSet& coeffs, std::span<const double> times,
                               const NumericOptions& options = {});

/// Convenience overload sampling `samples` uniformly spaced times on [0, t_end].
EvolutionResult evolve_numeric(const XState& initial, const CoefficientSet& coeffs, double t_end, double tol,
                               std::size_t samples = 101);

/// Unique trace-one stationary state (zero coherences). Throws
/// DegenerateKernelError if the generator's null space is not one-dimensional.
XState steady_state(const CoefficientSet& coeffs);

/// Time after which |rho_AS|, |rho_GE| < 1e-6 and the populations are within
/// 1e-8 of stationarity, capped at kMaxHorizon.
double default_horizon(const XState& initial, const CoefficientSet& coeffs);

inline constexpr double kMaxHorizon = 1e6;

/// Hybrid grid on [0, horizon]: geometric near zero, then linear with at least
/// 40 samples per pi/(2|D|) and per 1/(4 A1).
std::vector<double> default_time_grid(const CoefficientSet& coeffs, double horizon);

}  // namespace unruh
