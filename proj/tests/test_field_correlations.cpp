#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "unruh/errors.hpp"
#include "unruh/field_correlations.hpp"

using namespace unruh;
using doctest::Approx;

namespace {

// 50-digit reference values at (omega, a, z, L) = (1, 1, 0.4, 0.3), frozen from
// an independent multiprecision evaluation.
constexpr double kF04 = 0.81628146635390049714;
constexpr double kH015 = 3.1503063142722516222;
constexpr double kH04 = 0.82502565190896680737;
constexpr double kG11 = 0.029294418416122224990;

const SystemParams kAnchor = SystemParams::from_dimensionless(0.4, 1.0, 0.3);

}  // namespace

TEST_CASE("kernel_f reference values") {
    CHECK(kernel_f(1.0, 1.0, 1e-9) == Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(kernel_f(1.0, 0.0, std::numbers::pi / 2.0)) < 1e-15);
    CHECK(kernel_f(1.0, 1.0, 0.4) == Approx(0.8163).epsilon(1e-3));
    CHECK(kernel_f(1.0, 1.0, 0.4) == Approx(kF04).epsilon(1e-13));
}

TEST_CASE("kernel_h reference values") {
    CHECK(kernel_h(1.0, 1.0, 0.15) == Approx(3.1503).epsilon(1e-3));
    CHECK(kernel_h(1.0, 1.0, 0.15) == Approx(kH015).epsilon(1e-13));
    CHECK(kernel_h(1.0, 1.0, 0.4) == Approx(kH04).epsilon(1e-13));
    CHECK(std::abs(kernel_h(1.0, 1.0, 1e8)) < 1e-8);
    CHECK(std::abs(kernel_h(1.0, 0.0, 1e8)) < 1e-8);
}

TEST_CASE("kernels reject coincidence and zero frequency") {
    CHECK_THROWS_AS(kernel_f(1.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(kernel_h(1.0, 1.0, -0.1), DomainError);
    CHECK_THROWS_AS(kernel_f(0.0, 1.0, 0.4), DomainError);
    CHECK_THROWS_AS(kernel_h(1.0, -1.0, 0.4), DomainError);
    CHECK_THROWS_AS(kernel_f(1.0, 1.0, std::nan("")), DomainError);
}

TEST_CASE("kernels agree with the multiprecision oracle on a grid") {
    for (double a : {0.05, 0.3, 1.0, 2.7, 10.0}) {
        for (double d : {0.01, 0.2, 1.0, 7.5, 300.0}) {
            const auto w = oracle::hp(1.3);
            const double f_ref = static_cast<double>(oracle::kernel_f(w, oracle::hp(a), oracle::hp(d)));
            const double h_ref = static_cast<double>(oracle::kernel_h(w, oracle::hp(a), oracle::hp(d)));
            CHECK(kernel_f(1.3, a, d) == Approx(f_ref).epsilon(1e-12));
            CHECK(kernel_h(1.3, a, d) == Approx(h_ref).epsilon(1e-12));
        }
    }
}

TEST_CASE("kernel properties") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> logu(-3.0, 2.0);
    for (int i = 0; i < 500; ++i) {
        const double w = std::pow(10.0, logu(rng));
        const double a = std::pow(10.0, logu(rng));
        const double d = std::pow(10.0, logu(rng));
        const double f = kernel_f(w, a, d);
        const double h = kernel_h(w, a, d);
        // even in omega
        CHECK(kernel_f(-w, a, d) == f);
        CHECK(kernel_h(-w, a, d) == h);
        // sin^2 + cos^2 = 1
        const double denom = 2.0 * w * d * std::sqrt(a * a * d * d + 1.0);
        CHECK((f * f + h * h) * denom * denom == Approx(1.0).epsilon(1e-12));
        // |f| <= 1
        CHECK(1.0 - f >= 0.0);
        CHECK(1.0 - f <= 2.0);
    }
}

TEST_CASE("safe_coth and coth_plus_one") {
    CHECK(safe_coth(20.0 + 1e-12) == Approx(1.0 / std::tanh(20.0)).epsilon(1e-15));
    CHECK(safe_coth(0.5) == Approx(1.0 / std::tanh(0.5)).epsilon(1e-15));
    CHECK(safe_coth(1e6) == 1.0);
    CHECK(safe_coth(std::numeric_limits<double>::infinity()) == 1.0);
    CHECK(coth_plus_one(std::numbers::pi) == Approx(1.0 / std::tanh(std::numbers::pi) + 1.0).epsilon(1e-15));
    CHECK(coth_plus_one(-std::numeric_limits<double>::infinity()) == 0.0);
    CHECK(coth_plus_one(std::numeric_limits<double>::infinity()) == 2.0);
    // (coth x - 1)/(coth x + 1) = e^{-2x}
    for (double x : {0.01, 0.5, 3.0, 30.0, 300.0}) {
        CHECK(coth_plus_one(-x) / coth_plus_one(x) == Approx(-std::exp(-2.0 * x)).epsilon(1e-12));
    }
}

TEST_CASE("spectral density") {
    SUBCASE("anchor") {
        const SpectralPair g = spectral_density(1.0, kAnchor);
        CHECK(g.g11 == Approx(0.02930).epsilon(1e-4 / 0.0293));
        CHECK(g.g11 == Approx(kG11).epsilon(1e-12));
    }
    SUBCASE("KMS detailed balance") {
        for (double a : {0.1, 0.5, 1.0, 3.0}) {
            for (double lam : {0.2, 1.0, 2.5}) {
                SystemParams p = kAnchor;
                p.accel = a;
                const SpectralPair up = spectral_density(lam, p);
                const SpectralPair down = spectral_density(-lam, p);
                const double boltzmann = std::exp(-2.0 * std::numbers::pi * lam / a);
                CHECK(down.g11 == Approx(boltzmann * up.g11).epsilon(1e-12));
                CHECK(down.g12 == Approx(boltzmann * up.g12).epsilon(1e-12));
            }
        }
    }
    SUBCASE("positive above zero frequency") {
        for (double z : {0.01, 0.4, 3.0, 50.0}) {
            SystemParams p = kAnchor;
            p.z = z;
            CHECK(spectral_density(0.7, p).g11 >= 0.0);
        }
    }
    SUBCASE("far boundary recovers the free Unruh spectrum") {
        SystemParams p = kAnchor;
        p.z = 1e9;
        const double free = 1.0 / (4.0 * std::numbers::pi) * (1.0 / std::tanh(std::numbers::pi) + 1.0);
        CHECK(spectral_density(1.0, p).g11 == Approx(free).epsilon(1e-8));
    }
    SUBCASE("inertial limit has no upward transitions") {
        SystemParams p = kAnchor;
        p.accel = 0.0;
        CHECK(spectral_density(-1.0, p).g11 == 0.0);
        CHECK(spectral_density(1.0, p).g11 > 0.0);
    }
    CHECK_THROWS_AS(spectral_density(0.0, kAnchor), DomainError);
}

TEST_CASE("coefficients at the anchor point") {
    const CoefficientSet c = compute_coefficients(kAnchor);
    CHECK(c.a1 == Approx(0.04610).epsilon(1e-3));
    CHECK(c.b1 == Approx(0.04593).epsilon(1e-3));
    CHECK(c.a2 == Approx(0.04421).epsilon(1e-3));
    CHECK(c.b2 == Approx(0.04404).epsilon(1e-3));
    CHECK(c.d == Approx(0.6061).epsilon(1e-3));

    const oracle::Coeffs ref = oracle::coefficients(1.0, 1.0, 0.4, 0.3);
    CHECK(c.a1 == Approx(ref.a1).epsilon(1e-12));
    CHECK(c.a2 == Approx(ref.a2).epsilon(1e-12));
    CHECK(c.b1 == Approx(ref.b1).epsilon(1e-12));
    CHECK(c.b2 == Approx(ref.b2).epsilon(1e-12));
    CHECK(c.d == Approx(ref.d).epsilon(1e-12));
}

TEST_CASE("coefficients follow gamma0 linearly") {
    SystemParams p = kAnchor;
    p.gamma0 = 2.5;
    const CoefficientSet one = compute_coefficients(kAnchor);
    const CoefficientSet scaled = compute_coefficients(p);
    CHECK(scaled.a1 == Approx(2.5 * one.a1).epsilon(1e-14));
    CHECK(scaled.d == Approx(2.5 * one.d).epsilon(1e-14));
}

TEST_CASE("coefficient limits") {
    SUBCASE("large separation kills the cross terms") {
        const CoefficientSet c = compute_coefficients(SystemParams::from_dimensionless(0.4, 1.0, 1e9));
        CHECK(std::abs(c.a2) < 1e-9);
        CHECK(std::abs(c.b2) < 1e-9);
        CHECK(std::abs(c.d) < 1e-9);
    }
    SUBCASE("far boundary gives free-space accelerated rates") {
        const CoefficientSet c = compute_coefficients(SystemParams::from_dimensionless(1e9, 1.0, 0.3));
        CHECK(c.a1 == Approx(0.25 / std::tanh(std::numbers::pi)).epsilon(1e-8));
        CHECK(c.b1 == Approx(0.25).epsilon(1e-8));
    }
    SUBCASE("tiny separation overflows into a domain error") {
        CHECK_THROWS_AS(compute_coefficients(SystemParams::from_dimensionless(0.4, 1.0, 1e-320)), DomainError);
    }
}

TEST_CASE("coefficient invariants on a random grid") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        const double z = std::pow(10.0, -2.0 + 5.0 * u(rng));
        const double l = std::pow(10.0, -1.0 + 3.0 * u(rng));
        const double a = std::pow(10.0, -1.5 + 2.5 * u(rng));
        const CoefficientSet c = compute_coefficients(SystemParams::from_dimensionless(z, a, l));
        CHECK(c.a1 > 0.0);
        CHECK(c.a1 * c.a1 - c.b1 * c.b1 >= 0.0);
        const double t = std::tanh(std::numbers::pi / a);
        CHECK(c.b1 / c.a1 == Approx(t).epsilon(1e-12));
        if (c.a2 != 0.0) CHECK(c.b2 / c.a2 == Approx(t).epsilon(1e-12));
    }
}

TEST_CASE("inertial branch is continuous with the accelerated formula") {
    for (double z : {0.4, 3.0}) {
        for (double l : {0.3, 2.0}) {
            const double a = 1e-4 / std::max(z, l);
            const CoefficientSet acc = compute_coefficients(SystemParams::from_dimensionless(z, a, l));
            const CoefficientSet inertial = compute_coefficients(SystemParams::from_dimensionless(z, 0.0, l));
            CHECK_FALSE(uses_inertial_branch(SystemParams::from_dimensionless(z, a, l)));
            CHECK(uses_inertial_branch(SystemParams::from_dimensionless(z, 0.0, l)));
            CHECK(std::abs(acc.a1 - inertial.a1) < 1e-8);
            CHECK(std::abs(acc.a2 - inertial.a2) < 1e-8);
            CHECK(std::abs(acc.b1 - inertial.b1) < 1e-8);
            CHECK(std::abs(acc.b2 - inertial.b2) < 1e-8);
            CHECK(std::abs(acc.d - inertial.d) < 1e-8);
        }
    }
    const CoefficientSet zero = compute_coefficients(SystemParams::from_dimensionless(0.4, 0.0, 0.3));
    CHECK(zero.a1 == zero.b1);
    CHECK(zero.a2 == zero.b2);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(compute_coefficients(SystemParams{1.0, 1.0, 0.0, 0.3, 1.0}), DomainError);
    CHECK_THROWS_AS(compute_coefficients(SystemParams{1.0, -1.0, 0.4, 0.3, 1.0}), DomainError);
    CHECK_THROWS_AS(compute_coefficients(SystemParams{0.0, 1.0, 0.4, 0.3, 1.0}), DomainError);
    CHECK_THROWS_AS(compute_coefficients(SystemParams{1.0, 1.0, 0.4, 0.3, 0.0}), DomainError);
    CHECK_THROWS_AS(compute_coefficients(SystemParams{1.0, 1.0, 0.4, -0.3, 1.0}), DomainError);
}
