#include "unruh/xstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "unruh/errors.hpp"

namespace unruh {

double XState::invariant_breach() const {
    double breach = std::abs(trace() - 1.0);
    for (double p : {p_gg, p_ee, p_aa, p_ss}) {
        breach = std::max(breach, -p);
        if (!std::isfinite(p)) return std::numeric_limits<double>::infinity();
    }
    breach = std::max(breach, std::norm(c_as) - p_aa * p_ss);
    breach = std::max(breach, std::norm(c_ge) - p_gg * p_ee);
    return breach;
}

void XState::validate(double tol) const {
    const double breach = invariant_breach();
    if (!(breach <= tol)) {
        throw InvariantError("X state violates trace/positivity invariants by " + std::to_string(breach));
    }
}

XState prepare_initial(InitialLabel label) {
    XState s;
    switch (label) {
        case InitialLabel::ten:
            s.p_aa = 0.5;
            s.p_ss = 0.5;
            s.c_as = 0.5;
            break;
        case InitialLabel::bell_a:
            s.p_aa = 1.0;
            break;
        case InitialLabel::bell_s:
            s.p_ss = 1.0;
            break;
    }
    return s;
}

XState prepare_initial(const XState& custom) {
    custom.validate();
    return custom;
}

InitialLabel parse_initial_label(std::string_view text) {
    if (text == "ten" || text == "10") return InitialLabel::ten;
    if (text == "bell_A" || text == "bell_a") return InitialLabel::bell_a;
    if (text == "bell_S" || text == "bell_s") return InitialLabel::bell_s;
    throw ConfigError("unknown initial state '" + std::string(text) + "'");
}

}  // namespace unruh
