#pragma once

#include <vector>

#include "qdx/analytic.hpp"

namespace qdx {

struct IntegratorConfig {
    double step = 1e-3;      // target RK4 step, scaled units (omega*dt)
    double t_max = 3.0;      // scaled end time
    int fock_dim = 25;
    int n_emit = 300;        // emitted points after t=0, uniform grid
    bool certificate = true; // re-run at half step and compare
    bool warnings = true;

    /// Recommended accuracy bound for the scaled step: omega*dt <= 0.005/A.
    static double recommended_step(double a_coeff);
};

struct ConvergenceCertificate {
    double step = 0.0;           // actually used scaled step
    double half_step_dev = 0.0;  // max element-wise block deviation vs h/2 run
    bool computed = false;
};

struct IntegrationResult {
    std::vector<DensityBlock> blocks;  // at the emission grid, including t=0
    ConvergenceCertificate certificate;
};

/// Right-hand side of the block master equation: the four coupled field-space
/// ODEs (free rotation at +/- A omega, field dissipator at rate k on every
/// block, molecular decay 2B^2k' from ee into gg, B^2k' damping of eg/ge).
DensityBlock block_derivative(const DensityBlock& block,
                              const SystemParams& params,
                              const DerivedCoefficients& coeffs);

/// Fixed-step classical RK4 over a uniform emission grid. Emitted blocks are
/// checked for trace (1e-8) and Hermiticity (1e-8); throws TruncationLeak when
/// the top two Fock populations of the reduced field exceed 1e-8, StepTooLarge
/// when the half-step certificate deviation exceeds 1e-6.
IntegrationResult integrate(const DensityBlock& initial,
                            const SystemParams& params,
                            const DerivedCoefficients& coeffs,
                            const IntegratorConfig& cfg);

/// Default initial state (|e> + |g>)/sqrt(2) (x) |alpha>,
/// i.e. every block equal to |alpha><alpha| / 2.
DensityBlock initial_block(const SystemParams& params, const FockSpace& space);

} // namespace qdx
