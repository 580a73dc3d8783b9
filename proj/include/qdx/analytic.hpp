#pragma once

#include "qdx/fock.hpp"
#include "qdx/params.hpp"

namespace qdx {

/// The four field-space blocks of the density operator in the molecular basis
/// {|n,m>, |n-1,m+1>}, at one instant. Time is stored in scaled units omega*t
/// nowhere; `time` is absolute (units 1/omega_disp when omega_disp = 1).
struct DensityBlock {
    FieldOperator ee;  // rho_{n,n}
    FieldOperator eg;  // rho_{n,n-1}
    FieldOperator ge;  // rho_{n-1,n}
    FieldOperator gg;  // rho_{n-1,n-1}
    double time = 0.0;

    int dim() const { return static_cast<int>(ee.rows()); }
};

/// Damping function Gamma(t) of the off-diagonal blocks; Gamma(0) = 0, <= 0.
double gamma_of_t(const SystemParams& params, const DerivedCoefficients& coeffs,
                  double t);

/// Phase function Theta(t); Theta(0) = 0, and Theta = -A w t when k = 0.
double theta_of_t(const SystemParams& params, const DerivedCoefficients& coeffs,
                  double t);

/// Closed-form density blocks at time t, evaluated in the Fock basis via
/// coherent-state outer products. The |n-1,n-1> block carries the dissipative
/// feeding term (double photon sum); its degenerate diagonal factor is handled
/// by an explicit branch (1 - e^{-2B^2 k' t}, and 0 when k' = 0).
DensityBlock analytic_block(const SystemParams& params,
                            const DerivedCoefficients& coeffs,
                            const FockSpace& space, double t);

/// [[ee, eg], [ge, gg]] on H_M(2) x H_F(dim), molecular index outermost.
Eigen::MatrixXcd total_density(const DensityBlock& block);

/// Partial trace over the molecular index: ee + gg.
FieldOperator reduced_field(const DensityBlock& block);

/// 2x2 matrix of block traces.
Eigen::Matrix2cd reduced_molecular(const DensityBlock& block);

/// Same as reduced_molecular(analytic_block(...)) but via closed-form traces
/// and the coherent-state overlap, with no Fock-space matrices. Cheap enough
/// for very fine time grids.
Eigen::Matrix2cd analytic_reduced_molecular(const SystemParams& params,
                                            const DerivedCoefficients& coeffs,
                                            double t);

} // namespace qdx
