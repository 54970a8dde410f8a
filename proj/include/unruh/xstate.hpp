#pragma once

#include <complex>
#include <string_view>

namespace unruh {

// Two-atom density matrix of X form in the coupled basis
// {|G> = |00>, |A> = (|10> - |01>)/sqrt2, |S> = (|10> + |01>)/sqrt2, |E> = |11>}.
// Only the upper coherences are stored; rho_SA and rho_EG are their conjugates,
// so the represented matrix is Hermitian and never leaves the X pattern.
struct XState {
    double p_gg{0.0};
    double p_ee{0.0};
    double p_aa{0.0};
    double p_ss{0.0};
    std::complex<double> c_as{0.0, 0.0};
    std::complex<double> c_ge{0.0, 0.0};

    [[nodiscard]] double trace() const { return p_gg + p_ee + p_aa + p_ss; }

    // Largest violation of trace-one, population >= 0 and the two 2x2
    // positivity conditions. Zero for a valid state.
    [[nodiscard]] double invariant_breach() const;

    /// Throws InvariantError if invariant_breach() exceeds tol.
    void validate(double tol = 1e-12) const;
};

// Time derivative of an XState; same layout, no invariants.
struct XStateRate {
    double p_gg{0.0};
    double p_ee{0.0};
    double p_aa{0.0};
    double p_ss{0.0};
    std::complex<double> c_as{0.0, 0.0};
    std::complex<double> c_ge{0.0, 0.0};
};

enum class InitialLabel { ten, bell_a, bell_s };

/// |10> (separable, rho_AS = 1/2), |A> or |S>.
XState prepare_initial(InitialLabel label);

/// Validates a caller-supplied state and returns it.
XState prepare_initial(const XState& custom);

/// Parses "ten", "bell_A"/"bell_a", "bell_S"/"bell_s".
InitialLabel parse_initial_label(std::string_view text);

}  // namespace unruh
