#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "unruh/entanglement.hpp"
#include "unruh/errors.hpp"
#include "unruh/field_correlations.hpp"
#include "unruh/master_equation.hpp"

using namespace unruh;
using doctest::Approx;

namespace {

const CoefficientSet kAnchor = compute_coefficients(SystemParams::from_dimensionless(0.4, 1.0, 0.3));
const CoefficientSet kFig5 = compute_coefficients(SystemParams::from_dimensionless(0.4, 0.1, 0.5));

double distance(const XState& x, const XState& y) {
    return std::max({std::abs(x.p_gg - y.p_gg), std::abs(x.p_ee - y.p_ee), std::abs(x.p_aa - y.p_aa),
                     std::abs(x.p_ss - y.p_ss), std::abs(x.c_as - y.c_as), std::abs(x.c_ge - y.c_ge)});
}

CoefficientSet random_coefficients(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double z = std::pow(10.0, -1.0 + 2.0 * u(rng));
    const double l = std::pow(10.0, -0.5 + 1.5 * u(rng));
    const double a = std::pow(10.0, -1.0 + 1.3 * u(rng));
    return compute_coefficients(SystemParams::from_dimensionless(z, a, l));
}

}  // namespace

TEST_CASE("initial states") {
    const XState ten = prepare_initial(InitialLabel::ten);
    CHECK(ten.p_aa == 0.5);
    CHECK(ten.p_ss == 0.5);
    CHECK(ten.c_as == std::complex<double>(0.5, 0.0));
    CHECK(ten.p_gg == 0.0);
    CHECK(ten.p_ee == 0.0);
    CHECK(ten.c_ge == std::complex<double>(0.0, 0.0));

    const XState bell_a = prepare_initial(InitialLabel::bell_a);
    CHECK(bell_a.trace() == 1.0);
    CHECK(concurrence_x(bell_a).value == 1.0);
    CHECK(prepare_initial(InitialLabel::bell_s).p_ss == 1.0);

    CHECK(parse_initial_label("bell_A") == InitialLabel::bell_a);
    CHECK_THROWS_AS(parse_initial_label("psi"), ConfigError);

    XState bad;
    bad.p_gg = 0.5;
    CHECK_THROWS_AS(prepare_initial(bad), InvariantError);
    XState incoherent{0.0, 0.0, 0.5, 0.5, {0.6, 0.0}, {}};
    CHECK_THROWS_AS(prepare_initial(incoherent), InvariantError);
}

TEST_CASE("rhs at |10>") {
    const XStateRate r = rhs(prepare_initial(InitialLabel::ten), kAnchor);
    CHECK(r.p_gg == Approx(2.0 * (kAnchor.a1 + kAnchor.b1)).epsilon(1e-14));
    CHECK(r.p_ee == Approx(2.0 * (kAnchor.a1 - kAnchor.b1)).epsilon(1e-12));
    CHECK(r.c_ge == std::complex<double>(0.0, 0.0));
    CHECK(r.c_as.real() == Approx(-2.0 * kAnchor.a1).epsilon(1e-14));
    CHECK(r.c_as.imag() == Approx(-2.0 * kAnchor.d).epsilon(1e-14));
}

TEST_CASE("rhs conserves trace and matches the population generator") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const XState s = oracle::random_x_state(rng);
        const CoefficientSet c = random_coefficients(rng);
        const XStateRate r = rhs(s, c);
        CHECK(std::abs(r.p_gg + r.p_ee + r.p_aa + r.p_ss) < 1e-15);
        CHECK(r.c_ge == -4.0 * c.a1 * s.c_ge);

        const Eigen::Vector4d m = population_generator(c) * Eigen::Vector4d(s.p_gg, s.p_ee, s.p_aa, s.p_ss);
        CHECK(m[0] == Approx(r.p_gg).epsilon(1e-12));
        CHECK(m[1] == Approx(r.p_ee).epsilon(1e-12));
        CHECK(m[2] == Approx(r.p_aa).epsilon(1e-12));
        CHECK(m[3] == Approx(r.p_ss).epsilon(1e-12));
    }
    const Eigen::Matrix4d m = population_generator(kAnchor);
    CHECK(m.colwise().sum().cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("ground state is stationary without acceleration") {
    const CoefficientSet c = compute_coefficients(SystemParams::from_dimensionless(0.4, 0.0, 0.3));
    XState ground;
    ground.p_gg = 1.0;
    const XStateRate r = rhs(ground, c);
    CHECK(r.p_gg == 0.0);
    CHECK(r.p_ee == 0.0);
    CHECK(r.p_aa == 0.0);
    CHECK(r.p_ss == 0.0);
    const std::vector<double> times{0.0, 1.0, 100.0};
    for (const XState& s : evolve_closed(ground, c, times).states) CHECK(s.p_gg == Approx(1.0).epsilon(1e-14));
}

TEST_CASE("closed-form evolution") {
    const XState ten = prepare_initial(InitialLabel::ten);

    SUBCASE("identity at zero time") {
        const std::vector<double> t0{0.0};
        CHECK(distance(evolve_closed(ten, kAnchor, t0).states[0], ten) == 0.0);
    }
    SUBCASE("coherence law") {
        std::vector<double> times;
        for (int k = 0; k < 100; ++k) times.push_back(0.05 * k);
        const EvolutionResult r = evolve_closed(ten, kAnchor, times);
        for (std::size_t k = 0; k < times.size(); ++k) {
            const std::complex<double> expected = 0.5 * std::exp(-4.0 * std::complex<double>(kAnchor.a1, kAnchor.d) * times[k]);
            CHECK(std::abs(r.states[k].c_as - expected) < 1e-14);
            CHECK(std::abs(std::abs(r.states[k].c_as) - 0.5 * std::exp(-4.0 * kAnchor.a1 * times[k])) < 1e-14);
            CHECK(r.states[k].c_ge == std::complex<double>(0.0, 0.0));
        }
    }
    SUBCASE("relaxes to the Unruh-thermal product state") {
        const std::vector<double> times{5000.0};
        const XState s = evolve_closed(ten, kAnchor, times).states[0];
        CHECK(s.p_gg == Approx(0.996276).epsilon(1e-5));
        CHECK(s.p_aa == Approx(0.0018604).epsilon(1e-5 / 0.0018604));
        CHECK(s.p_ss == Approx(0.0018604).epsilon(1e-5 / 0.0018604));
        CHECK(std::abs(s.p_ee - 3.47e-6) < 1e-8);
        const auto gibbs = oracle::unruh_gibbs(1.0, 1.0);
        CHECK(s.p_gg == Approx(gibbs[0]).epsilon(1e-12));
        CHECK(s.p_ee == Approx(gibbs[1]).epsilon(1e-9));
    }
    SUBCASE("invalid time grids") {
        const std::vector<double> unsorted{1.0, 0.5};
        const std::vector<double> negative{-1.0};
        CHECK_THROWS_AS(evolve_closed(ten, kAnchor, unsorted), ConfigError);
        CHECK_THROWS_AS(evolve_closed(ten, kAnchor, negative), ConfigError);
    }
    SUBCASE("inconsistent coefficients trip the positivity guard") {
        const CoefficientSet broken{0.1, 0.5, 0.0, 0.0, 0.0};
        const std::vector<double> times{0.0, 1.0, 5.0};
        CHECK_THROWS_AS(evolve_closed(ten, broken, times), InvariantError);
    }
}

TEST_CASE("uniform propagation matches pointwise evaluation") {
    const ClosedFormPropagator prop(prepare_initial(InitialLabel::ten), kFig5);
    const auto states = prop.uniform(0.37, 200);
    for (std::size_t k = 0; k < states.size(); k += 17) {
        CHECK(distance(states[k], prop.state_at(0.37 * static_cast<double>(k))) < 1e-12);
    }
}

TEST_CASE("numeric integrator agrees with the closed form") {
    const XState ten = prepare_initial(InitialLabel::ten);
    const std::vector<double> times{0.1, 1.0, 10.0};
    NumericOptions opts;
    opts.tol = 1e-10;
    const EvolutionResult numeric = evolve_numeric(ten, kFig5, times, opts);
    const EvolutionResult closed = evolve_closed(ten, kFig5, times);
    for (std::size_t k = 0; k < times.size(); ++k) CHECK(distance(numeric.states[k], closed.states[k]) < 1e-8);
    for (std::size_t k = 0; k < times.size(); ++k) {
        CHECK(numeric.concurrence[k] == Approx(closed.concurrence[k]).epsilon(1e-7));
    }
}

TEST_CASE("numeric integrator conserves trace") {
    const EvolutionResult r = evolve_numeric(prepare_initial(InitialLabel::ten), kAnchor, 20.0, 1e-10, 201);
    for (const XState& s : r.states) CHECK(std::abs(s.trace() - 1.0) < 1e-10);
}

TEST_CASE("D only enters the coherence equation") {
    const XState ten = prepare_initial(InitialLabel::ten);
    std::vector<double> times;
    for (int k = 1; k <= 40; ++k) times.push_back(0.5 * k);
    const EvolutionResult with_d = evolve_closed(ten, kAnchor, times);
    const EvolutionResult without_d = evolve_closed(ten, kAnchor.without_interaction(), times);
    const EvolutionResult numeric = evolve_numeric(ten, kAnchor.without_interaction(), times);
    for (std::size_t k = 0; k < times.size(); ++k) {
        CHECK(with_d.states[k].p_gg == without_d.states[k].p_gg);
        CHECK(with_d.states[k].p_aa == without_d.states[k].p_aa);
        CHECK(with_d.states[k].p_ss == without_d.states[k].p_ss);
        CHECK(with_d.states[k].p_ee == without_d.states[k].p_ee);
        CHECK(std::abs(numeric.states[k].p_aa - with_d.states[k].p_aa) < 1e-9);
    }
}

TEST_CASE("numeric integrator options") {
    const XState ten = prepare_initial(InitialLabel::ten);
    const std::vector<double> times{1.0};
    NumericOptions loose;
    loose.tol = 1e-3;
    CHECK_THROWS_AS(evolve_numeric(ten, kAnchor, times, loose), ConfigError);
    NumericOptions starved;
    starved.tol = 1e-12;
    starved.max_steps = 100;
    CHECK_THROWS_AS(evolve_numeric(ten, kAnchor, times, starved), ConvergenceError);
    CHECK(evolve_numeric(ten, kAnchor, std::vector<double>{}).states.empty());
}

TEST_CASE("steady state") {
    SUBCASE("zero temperature") {
        const XState s = steady_state(compute_coefficients(SystemParams::from_dimensionless(0.4, 0.0, 0.3)));
        CHECK(s.p_gg == Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("anchor") {
        const XState s = steady_state(kAnchor);
        CHECK(s.p_gg == Approx(0.996276).epsilon(1e-5));
        const auto gibbs = oracle::unruh_gibbs(1.0, 1.0);
        CHECK(std::abs(s.p_gg - gibbs[0]) < 1e-12);
        CHECK(std::abs(s.p_ee - gibbs[1]) < 1e-12);
        CHECK(std::abs(s.p_aa - gibbs[2]) < 1e-12);
        CHECK(std::abs(s.p_ss - gibbs[3]) < 1e-12);
    }
    SUBCASE("independent of the boundary distance") {
        const XState near = steady_state(compute_coefficients(SystemParams::from_dimensionless(0.4, 1.0, 0.3)));
        const XState far = steady_state(compute_coefficients(SystemParams::from_dimensionless(20.0, 1.0, 0.3)));
        CHECK(distance(near, far) < 1e-10);
    }
    SUBCASE("stationary under the rhs") {
        std::mt19937_64 rng(5);
        for (int i = 0; i < 50; ++i) {
            const CoefficientSet c = random_coefficients(rng);
            const XStateRate r = rhs(steady_state(c), c);
            CHECK(std::max({std::abs(r.p_gg), std::abs(r.p_ee), std::abs(r.p_aa), std::abs(r.p_ss)}) < 1e-12);
        }
    }
    SUBCASE("degenerate generator is reported") {
        CHECK_THROWS_AS(steady_state(CoefficientSet{0.3, 0.3, 0.2, 0.2, 0.1}), DegenerateKernelError);
        CHECK_THROWS_AS(steady_state(CoefficientSet{0.3, -0.3, 0.2, -0.2, 0.1}), DegenerateKernelError);
        CHECK_THROWS_AS(steady_state(CoefficientSet{0.0, 0.0, 0.0, 0.0, 0.0}), DomainError);
    }
}

TEST_CASE("coherence decays monotonically") {
    std::vector<double> times;
    for (int k = 0; k < 500; ++k) times.push_back(0.1 * k);
    const EvolutionResult r = evolve_closed(prepare_initial(InitialLabel::ten), kFig5, times);
    for (std::size_t k = 1; k < times.size(); ++k) CHECK(std::abs(r.states[k].c_as) < std::abs(r.states[k - 1].c_as));
}

TEST_CASE("evolution stays in X form") {
    const std::vector<double> times{0.0, 0.3, 3.0, 30.0};
    for (const XState& s : evolve_closed(prepare_initial(InitialLabel::ten), kAnchor, times).states) {
        const Eigen::Matrix4cd rho = to_product_matrix(s);
        for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 3}, {2, 3}}) {
            CHECK(std::abs(rho(i, j)) == 0.0);
            CHECK(std::abs(rho(j, i)) == 0.0);
        }
    }
}

TEST_CASE("default horizon and time grid") {
    const XState ten = prepare_initial(InitialLabel::ten);
    const double horizon = default_horizon(ten, kFig5);
    const XState end = ClosedFormPropagator(ten, kFig5).state_at(horizon);
    CHECK(std::abs(end.c_as) < 1e-6);
    CHECK(distance(end, steady_state(kFig5)) < 1e-8);

    const std::vector<double> grid = default_time_grid(kFig5, 60.0);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == Approx(60.0).epsilon(1e-15));
    for (std::size_t k = 1; k < grid.size(); ++k) CHECK(grid[k] > grid[k - 1]);
    // at least 40 samples per oscillation period pi / (2 D)
    const double period = std::numbers::pi / (2.0 * kFig5.d);
    for (std::size_t k = 1; k < grid.size(); ++k) CHECK(grid[k] - grid[k - 1] <= period / 40.0 * (1 + 1e-12));
    CHECK(grid[1] < 1e-4);

    CHECK_THROWS_AS(default_time_grid(kFig5, 0.0), ConfigError);
}
