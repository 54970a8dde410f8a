#include <cstdio>
#include <string>

#include "unruh/errors.hpp"
#include "unruh/sweep.hpp"

namespace unruh {

namespace {

// Axis ranges are not given numerically by the figures; these are the
// project defaults, 400 points per axis.
constexpr std::size_t kAxisPoints = 400;

std::vector<double> axis_grid(Axis axis) {
    switch (axis) {
        case Axis::z_omega: return linear_grid(0.02, 15.0, kAxisPoints);
        case Axis::a_over_omega: return linear_grid(0.02, 10.0, kAxisPoints);
        case Axis::l_omega: return linear_grid(0.1, 15.0, kAxisPoints);
        case Axis::tau: return linear_grid(0.0, 100.0, 4001);
    }
    return {};
}

std::string tag(const char* name, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%g", name, value);
    return buf;
}

SweepSpec make(int figure, Axis axis, Quantity quantity, FixedParams fixed, std::string label) {
    SweepSpec s;
    s.label = "fig" + std::to_string(figure) + "_" + label;
    s.axis = axis;
    s.grid = axis_grid(axis);
    s.fixed = fixed;
    s.quantity = quantity;
    return s;
}

FixedParams fixed_of(double z_omega, double a_over_omega, double l_omega) {
    FixedParams f;
    f.z_omega = z_omega;
    f.a_over_omega = a_over_omega;
    f.l_omega = l_omega;
    return f;
}

}  // namespace

std::vector<SweepSpec> preset(int figure) {
    std::vector<SweepSpec> out;
    switch (figure) {
        case 2:  // rate vs z, L = 0.3
            for (double a : {0.1, 1.0}) {
                out.push_back(make(2, Axis::z_omega, Quantity::rate, fixed_of(0, a, 0.3), tag("a", a)));
            }
            break;
        case 3:  // rate vs a
        case 9:  // cmax vs a
            for (double z : {0.4, 20.0, 4000.0}) {
                for (double l : {0.3, 3.0, 30.0}) {
                    out.push_back(make(figure, Axis::a_over_omega, figure == 3 ? Quantity::rate : Quantity::cmax,
                                       fixed_of(z, 0, l), tag("z", z) + "_" + tag("L", l)));
                }
            }
            break;
        case 4:   // rate vs L
        case 10:  // cmax vs L
            for (double a : {0.1, 1.0}) {
                for (double z : {0.5, 10.0, 1000.0}) {
                    out.push_back(make(figure, Axis::l_omega, figure == 4 ? Quantity::rate : Quantity::cmax,
                                       fixed_of(z, a, 0), tag("a", a) + "_" + tag("z", z)));
                }
            }
            break;
        case 5:  // C(tau), L = 0.5
            for (double z : {0.4, 20.0}) {
                for (double a : {0.1, 2.7}) {
                    out.push_back(make(5, Axis::tau, Quantity::concurrence_t, fixed_of(z, a, 0.5),
                                       tag("z", z) + "_" + tag("a", a)));
                }
            }
            break;
        case 6:  // C(tau), L = 1.9
            for (double z : {0.4, 2.0, 20.0}) {
                for (double a : {0.5, 1.3}) {
                    out.push_back(make(6, Axis::tau, Quantity::concurrence_t, fixed_of(z, a, 1.9),
                                       tag("z", z) + "_" + tag("a", a)));
                }
            }
            break;
        case 7:  // cmax vs z, L = 0.4
            for (double a : {0.1, 1.0}) {
                out.push_back(make(7, Axis::z_omega, Quantity::cmax, fixed_of(0, a, 0.4), tag("a", a)));
            }
            break;
        case 8:  // cmax vs z, L in {4, 9}
            for (double l : {4.0, 9.0}) {
                for (double a : {0.1, 0.5}) {
                    out.push_back(make(8, Axis::z_omega, Quantity::cmax, fixed_of(0, a, l),
                                       tag("L", l) + "_" + tag("a", a)));
                }
            }
            break;
        default:
            throw ConfigError("figure presets exist for 2..10, got " + std::to_string(figure));
    }
    return out;
}

}  // namespace unruh
