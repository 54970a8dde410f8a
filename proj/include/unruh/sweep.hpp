#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "unruh/params.hpp"

namespace unruh {

enum class Axis { z_omega, a_over_omega, l_omega, tau };
enum class Quantity { rate, cmax, concurrence_t, coefficients };
enum class Variant { with_d, without_d };

std::string_view to_string(Axis axis);
std::string_view to_string(Quantity quantity);
std::string_view to_string(Variant variant);
Axis parse_axis(std::string_view text);
Quantity parse_quantity(std::string_view text);
Variant parse_variant(std::string_view text);

// Parameters held fixed along a sweep, as dimensionless combinations with
// omega as the unit. The entry matching the sweep axis is ignored.
struct FixedParams {
    double z_omega{1.0};
    double a_over_omega{1.0};
    double l_omega{1.0};
    double omega{1.0};
    double gamma0{1.0};

    bool operator==(const FixedParams&) const = default;
};

struct SweepSpec {
    std::string label;
    Axis axis{Axis::z_omega};
    std::vector<double> grid;
    FixedParams fixed;
    Quantity quantity{Quantity::rate};
    std::vector<Variant> variants{Variant::with_d, Variant::without_d};
    double tol{1e-8};       // golden-section tolerance for cmax
    double horizon{0.0};    // cmax horizon, 0 = default
    std::string initial{"ten"};

    /// Throws ConfigError on an empty or non-increasing grid, non-positive
    /// fixed parameters, an axis/quantity mismatch or an empty variant set.
    void validate() const;

    /// Variants in canonical order (with_D first), duplicates removed.
    [[nodiscard]] std::vector<Variant> ordered_variants() const;

    /// Physical parameters at one grid point (tau axes use the fixed values).
    [[nodiscard]] SystemParams params_at(double axis_value) const;

    bool operator==(const SweepSpec&) const = default;
};

struct SweepRow {
    double axis_value{0.0};
    Variant variant{Variant::with_d};
    double value{0.0};  // NaN for the coefficients quantity and for failed rows
    CoefficientSet coeffs;
    std::string error;  // empty on success
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows;  // grid-major, variant-minor
};

/// Evaluates one row. Exposed so single-point sweeps can be checked against
/// the direct call.
SweepRow evaluate_row(const SweepSpec& spec, double axis_value, Variant variant);

/// Runs every (grid point, variant) pair on `parallelism` workers. Domain
/// failures are recorded per row; output is independent of parallelism.
SweepResult run_sweep(const SweepSpec& spec, std::size_t parallelism = 1);

/// Parameter grids for figures 2..10. Throws ConfigError otherwise.
std::vector<SweepSpec> preset(int figure);

std::vector<double> linear_grid(double start, double stop, std::size_t count);
std::vector<double> log_grid(double start, double stop, std::size_t count);

}  // namespace unruh
