#include "unruh/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "unruh/entanglement.hpp"
#include "unruh/errors.hpp"
#include "unruh/field_correlations.hpp"
#include "unruh/master_equation.hpp"

namespace unruh {

std::string_view to_string(Axis axis) {
    switch (axis) {
        case Axis::z_omega: return "z_omega";
        case Axis::a_over_omega: return "a_over_omega";
        case Axis::l_omega: return "l_omega";
        case Axis::tau: return "tau";
    }
    return "?";
}

std::string_view to_string(Quantity quantity) {
    switch (quantity) {
        case Quantity::rate: return "rate";
        case Quantity::cmax: return "cmax";
        case Quantity::concurrence_t: return "concurrence_t";
        case Quantity::coefficients: return "coefficients";
    }
    return "?";
}

std::string_view to_string(Variant variant) { return variant == Variant::with_d ? "with_D" : "without_D"; }

Axis parse_axis(std::string_view text) {
    for (Axis a : {Axis::z_omega, Axis::a_over_omega, Axis::l_omega, Axis::tau}) {
        if (text == to_string(a)) return a;
    }
    throw ConfigError("unknown axis '" + std::string(text) + "'");
}

Quantity parse_quantity(std::string_view text) {
    for (Quantity q : {Quantity::rate, Quantity::cmax, Quantity::concurrence_t, Quantity::coefficients}) {
        if (text == to_string(q)) return q;
    }
    throw ConfigError("unknown quantity '" + std::string(text) + "'");
}

Variant parse_variant(std::string_view text) {
    if (text == "with_D" || text == "with_d") return Variant::with_d;
    if (text == "without_D" || text == "without_d") return Variant::without_d;
    throw ConfigError("unknown variant '" + std::string(text) + "'");
}

void SweepSpec::validate() const {
    if (grid.empty()) throw ConfigError("sweep grid is empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) throw ConfigError("sweep grid contains a non-finite value");
        if (i > 0 && !(grid[i] > grid[i - 1])) throw ConfigError("sweep grid must be strictly increasing");
    }
    const bool tau_axis = axis == Axis::tau;
    if (tau_axis != (quantity == Quantity::concurrence_t)) {
        throw ConfigError("the tau axis goes with quantity concurrence_t and vice versa");
    }
    if (tau_axis && grid.front() < 0.0) throw ConfigError("tau grid must be non-negative");
    if (!tau_axis && !(grid.front() > 0.0) && axis != Axis::a_over_omega) {
        throw ConfigError("length axes must be positive");
    }
    if (axis == Axis::a_over_omega && grid.front() < 0.0) throw ConfigError("acceleration axis must be non-negative");
    if (!(fixed.omega > 0.0) || !(fixed.gamma0 > 0.0)) throw ConfigError("omega and gamma0 must be positive");
    if (axis != Axis::z_omega && !(fixed.z_omega > 0.0)) throw ConfigError("fixed z_omega must be positive");
    if (axis != Axis::l_omega && !(fixed.l_omega > 0.0)) throw ConfigError("fixed l_omega must be positive");
    if (axis != Axis::a_over_omega && !(fixed.a_over_omega >= 0.0)) throw ConfigError("fixed a_over_omega must be >= 0");
    if (variants.empty()) throw ConfigError("sweep needs at least one variant");
    if (!(tol >= 1e-10 && tol <= 1e-4)) throw ConfigError("sweep tol must lie in [1e-10, 1e-4]");
    if (horizon < 0.0) throw ConfigError("horizon must be non-negative");
    parse_initial_label(initial);
}

std::vector<Variant> SweepSpec::ordered_variants() const {
    std::vector<Variant> out;
    for (Variant v : {Variant::with_d, Variant::without_d}) {
        if (std::find(variants.begin(), variants.end(), v) != variants.end()) out.push_back(v);
    }
    return out;
}

SystemParams SweepSpec::params_at(double axis_value) const {
    FixedParams f = fixed;
    switch (axis) {
        case Axis::z_omega: f.z_omega = axis_value; break;
        case Axis::a_over_omega: f.a_over_omega = axis_value; break;
        case Axis::l_omega: f.l_omega = axis_value; break;
        case Axis::tau: break;
    }
    return SystemParams::from_dimensionless(f.z_omega, f.a_over_omega, f.l_omega, f.omega, f.gamma0);
}

SweepRow evaluate_row(const SweepSpec& spec, double axis_value, Variant variant) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    SweepRow row;
    row.axis_value = axis_value;
    row.variant = variant;
    row.value = nan;
    row.coeffs = {nan, nan, nan, nan, nan};
    try {
        CoefficientSet coeffs = compute_coefficients(spec.params_at(axis_value));
        if (variant == Variant::without_d) coeffs = coeffs.without_interaction();
        row.coeffs = coeffs;

        const XState initial = prepare_initial(parse_initial_label(spec.initial));
        switch (spec.quantity) {
            case Quantity::rate:
                row.value = generation_rate(coeffs).rate;
                break;
            case Quantity::cmax: {
                MaxConcurrenceOptions opts;
                opts.horizon = spec.horizon;
                opts.tol = spec.tol;
                opts.initial = initial;
                row.value = max_concurrence(coeffs, opts).c_max;
                break;
            }
            case Quantity::concurrence_t:
                row.value = concurrence_x(ClosedFormPropagator(initial, coeffs).state_at(axis_value)).value;
                break;
            case Quantity::coefficients:
                break;
        }
    } catch (const DomainError& e) {
        row.error = std::string("domain_error: ") + e.what();
    } catch (const InvariantError& e) {
        row.error = std::string("invariant_error: ") + e.what();
    } catch (const DegenerateKernelError& e) {
        row.error = std::string("degenerate_kernel: ") + e.what();
    } catch (const ConvergenceError& e) {
        row.error = std::string("convergence_error: ") + e.what();
    }
    if (!row.error.empty()) row.value = nan;
    return row;
}

SweepResult run_sweep(const SweepSpec& spec, std::size_t parallelism) {
    spec.validate();
    if (parallelism == 0) throw ConfigError("parallelism must be positive");

    const std::vector<Variant> variants = spec.ordered_variants();
    const std::size_t tasks = spec.grid.size() * variants.size();

    SweepResult result;
    result.spec = spec;
    result.rows.resize(tasks);

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < tasks; k = next++) {
            result.rows[k] = evaluate_row(spec, spec.grid[k / variants.size()], variants[k % variants.size()]);
        }
    };

    const std::size_t workers = std::min(parallelism, tasks);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(work);
    }
    return result;
}

std::vector<double> linear_grid(double start, double stop, std::size_t count) {
    if (count == 0) return {};
    if (count == 1) return {start};
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i) {
        g[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    g.back() = stop;
    return g;
}

std::vector<double> log_grid(double start, double stop, std::size_t count) {
    if (!(start > 0.0) || !(stop > 0.0)) throw ConfigError("log grid bounds must be positive");
    std::vector<double> g = linear_grid(std::log(start), std::log(stop), count);
    for (double& v : g) v = std::exp(v);
    if (!g.empty()) {
        g.front() = start;
        g.back() = stop;
    }
    return g;
}

}  // namespace unruh
