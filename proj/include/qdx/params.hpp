#pragma once

#include <complex>
#include <optional>

namespace qdx {

/// Physical constants of one run. All frequencies/rates are angular and share
/// the same unit; time grids are expressed in the scaled variable omega*t.
struct SystemParams {
    int n_total = 10;            // N, number of molecules
    int n_excited = 5;           // n, excited count of the upper branch |n,m>
    double omega_disp = 1.0;     // omega = g^2/delta, the dispersive scale
    std::optional<double> g_coupling;     // bare g, only for the validity check
    std::optional<double> delta_detuning; // delta = omega_eg - omega_0, ditto
    double omega_0 = 10.0;       // cavity frequency (phase factors of X_1a)
    double omega_eg = 110.0;     // molecular splitting (phase factors of sigma_y)
    double k_field = 0.0;        // cavity dissipation constant k
    double k_mol = 0.0;          // molecular dissipation constant k'
    std::complex<double> alpha{1.0, 0.0}; // initial coherent amplitude

    int m_ground() const { return n_total - n_excited; }

    /// Throws ConfigError on any invariant violation.
    void validate() const;
};

/// q, A_{m,n} and B_{n,m} derived from (N, n).
struct DerivedCoefficients {
    double q_param;   // q = 1 - 2/N
    double a_coeff;   // A = n(m+1), integer-valued
    double b_coeff;   // B = sqrt(A/N)

    double b_sq() const { return b_coeff * b_coeff; }
};

DerivedCoefficients derive_coefficients(const SystemParams& params);

/// Outcome of the dispersive-limit check |delta|/g >> sqrt(n_ph + 1).
/// ">>" is operationalized as a factor of 10; the result is reported,
/// never enforced.
struct ValidityReport {
    enum class Status { valid, violated, unchecked };
    Status status = Status::unchecked;
    double ratio = 0.0;  // |delta|/g
    double bound = 0.0;  // sqrt(|alpha|^2 + 1)
};

ValidityReport check_dispersive_validity(const SystemParams& params);

} // namespace qdx
