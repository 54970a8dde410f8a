#pragma once

namespace unruh {

// Physical configuration of the two accelerated atoms. omega is the natural
// energy unit; rates come out in units of gamma0.
struct SystemParams {
    double omega{1.0};   // transition frequency
    double accel{1.0};   // proper acceleration, 0 selects the inertial limit
    double z{1.0};       // atom-boundary distance
    double l{1.0};       // interatomic separation
    double gamma0{1.0};  // inertial spontaneous emission rate

    /// Throws DomainError unless omega, z, l, gamma0 > 0 and accel >= 0.
    void validate() const;

    /// Builds parameters from the dimensionless combinations z*omega,
    /// a/omega and L*omega.
    static SystemParams from_dimensionless(double z_omega, double a_over_omega, double l_omega,
                                           double omega = 1.0, double gamma0 = 1.0);
};

// Reduced master-equation rates A1, A2, B1, B2 and the environment-induced
// coupling D, all in the same units as gamma0.
struct CoefficientSet {
    double a1{0.0};
    double a2{0.0};
    double b1{0.0};
    double b2{0.0};
    double d{0.0};

    /// Same dissipative rates with the coherent interatomic coupling switched off.
    [[nodiscard]] CoefficientSet without_interaction() const {
        CoefficientSet c = *this;
        c.d = 0.0;
        return c;
    }

    bool operator==(const CoefficientSet&) const = default;
};

struct SpectralPair {
    double g11{0.0};
    double g12{0.0};
};

}  // namespace unruh
