#pragma once

#include <Eigen/Dense>

#include "unruh/params.hpp"
#include "unruh/xstate.hpp"

namespace unruh {

struct ConcurrenceReport {
    double k1{0.0};
    double k2{0.0};
    double value{0.0};  // max{0, k1, k2}, clamped to [0, 1]
};

/// Closed-form concurrence of an X state in the coupled basis.
///
/// rho_AS - rho_SA = 2i Im(rho_AS), so the K1 radicand is
/// (p_aa - p_ss)^2 + 4 Im(rho_AS)^2. Throws InvariantError if the K2
/// radicand or p_gg * p_ee is more negative than -1e-12.
ConcurrenceReport concurrence_x(const XState& state);

/// Density matrix in the product basis (|00>, |01>, |10>, |11>), first digit
/// for atom 1, |0> ground.
Eigen::Matrix4cd to_product_matrix(const XState& state);

/// Wootters concurrence of an arbitrary two-qubit density matrix.
/// Throws InvariantError if rho is not Hermitian or has an eigenvalue
/// below -1e-10.
double concurrence_general(const Eigen::Matrix4cd& rho);

struct GenerationReport {
    double rate{0.0};      // K1'(0) for the |10> initial state, units of gamma0
    bool generates{false};  // A2^2 + D^2 > A1^2 - B1^2
};

/// Initial entanglement generation rate 4 sqrt(A2^2 + D^2) - 4 sqrt(A1^2 - B1^2).
GenerationReport generation_rate(const CoefficientSet& coeffs);

struct PopulationSnapshot {
    double p_aa{0.0};
    double p_ss{0.0};
    double p_gg{0.0};
    double p_ee{0.0};
};

/// K1(tau) for the |10> initial state, where |rho_AS(tau)| = e^{-4 A1 tau}/2:
/// sqrt((p_aa - p_ss)^2 + sin^2(4 D tau) e^{-8 A1 tau}) - 2 sqrt(p_gg p_ee).
double k1_closed(double tau, const PopulationSnapshot& populations, const CoefficientSet& coeffs);

struct MaxConcurrenceOptions {
    double horizon{0.0};        // 0 selects default_horizon()
    double tol{1e-8};           // golden-section bracket width in tau, [1e-10, 1e-4]
    double points_per_scale{40.0};
    XState initial{0.0, 0.0, 0.5, 0.5, {0.5, 0.0}, {0.0, 0.0}};  // |10>
};

struct MaxConcurrenceResult {
    double tau_star{0.0};
    double c_max{0.0};
    double horizon{0.0};
    std::size_t grid_points{0};
    bool at_horizon{false};  // maximum sits on the right edge; horizon may be too short
};

/// Global maximum of C(tau) on [0, horizon]: dense grid scan, then
/// golden-section refinement of every local bracket that can still beat the
/// best grid value. Ties go to the smallest tau.
MaxConcurrenceResult max_concurrence(const CoefficientSet& coeffs, const MaxConcurrenceOptions& options = {});

MaxConcurrenceResult max_concurrence(const SystemParams& params, const MaxConcurrenceOptions& options = {});

}  // namespace unruh
