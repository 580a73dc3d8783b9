#include "qdx/analytic.hpp"

#include <cmath>

namespace qdx {

namespace {
constexpr Complex kI{0.0, 1.0};
}

double gamma_of_t(const SystemParams& params, const DerivedCoefficients& coeffs,
                  double t) {
    const double k = params.k_field;
    const double aw = coeffs.a_coeff * params.omega_disp;
    const double n0 = std::norm(params.alpha);
    double g = -n0 * (1.0 - std::exp(-2.0 * k * t));
    g -= n0 * k / (k * k + aw * aw) *
         (std::exp(-2.0 * k * t) *
              (k * std::cos(2.0 * aw * t) - aw * std::sin(2.0 * aw * t)) -
          k);
    return g;
}

double theta_of_t(const SystemParams& params, const DerivedCoefficients& coeffs,
                  double t) {
    const double k = params.k_field;
    const double aw = coeffs.a_coeff * params.omega_disp;
    const double n0 = std::norm(params.alpha);
    double th = -aw * t;
    th += n0 * k / (k * k + aw * aw) *
          (std::exp(-2.0 * k * t) *
               (k * std::sin(2.0 * aw * t) + aw * std::cos(2.0 * aw * t)) -
           aw);
    return th;
}

DensityBlock analytic_block(const SystemParams& params,
                            const DerivedCoefficients& coeffs,
                            const FockSpace& space, double t) {
    const double k = params.k_field;
    const double kp = params.k_mol;
    const double aw = coeffs.a_coeff * params.omega_disp;
    const double b2 = coeffs.b_sq();
    const Complex alpha_t = params.alpha * std::exp(-k * t);

    // branch amplitudes: upper rotates as e^{-iAwt}, lower as e^{+iAwt}
    const Complex a_minus = alpha_t * std::exp(-kI * aw * t);
    const Complex a_plus = alpha_t * std::exp(kI * aw * t);
    const FieldVector cm = coherent_vector(a_minus, space);
    const FieldVector cp = coherent_vector(a_plus, space);

    const double gm = gamma_of_t(params, coeffs, t);
    const double th = theta_of_t(params, coeffs, t);

    DensityBlock b;
    b.time = t;
    b.ee = 0.5 * std::exp(-2.0 * b2 * kp * t) * cm * cm.adjoint();
    b.eg = 0.5 * std::exp(-b2 * kp * t) * std::exp(kI * th + gm) * cm *
           cp.adjoint();
    b.ge = b.eg.adjoint();
    b.gg = 0.5 * cp * cp.adjoint();

    // feeding term of the lower block; photon indices j, j' (never n)
    const double nbar_t = std::norm(alpha_t);
    const double pref = 0.5 * std::exp(-nbar_t);
    FieldVector fa(space.dim), fb(space.dim);
    fa(0) = 1.0;
    fb(0) = 1.0;
    const Complex za = alpha_t * std::exp(kI * aw * t);
    const Complex zb = std::conj(alpha_t) * std::exp(-kI * aw * t);
    for (int j = 1; j < space.dim; ++j) {
        const double rj = std::sqrt(static_cast<double>(j));
        fa(j) = fa(j - 1) * za / rj;
        fb(j) = fb(j - 1) * zb / rj;
    }
    const double decay = std::exp(-2.0 * b2 * kp * t);
    for (int j = 0; j < space.dim; ++j) {
        for (int jp = 0; jp < space.dim; ++jp) {
            Complex factor;
            if (j == jp) {
                // degenerate denominator: limit is 1 - e^{-2B^2k't},
                // identically 0 when k' = 0
                factor = (kp == 0.0) ? 0.0 : (1.0 - decay);
            } else {
                const double d = static_cast<double>(jp - j);
                factor = 2.0 * b2 * kp /
                         (-2.0 * b2 * kp + 2.0 * kI * aw * d) *
                         (decay * std::exp(2.0 * kI * aw * d * t) - 1.0);
            }
            b.gg(j, jp) += pref * fa(j) * fb(jp) * factor;
        }
    }
    return b;
}

Eigen::MatrixXcd total_density(const DensityBlock& block) {
    const int d = block.dim();
    Eigen::MatrixXcd total(2 * d, 2 * d);
    total.topLeftCorner(d, d) = block.ee;
    total.topRightCorner(d, d) = block.eg;
    total.bottomLeftCorner(d, d) = block.ge;
    total.bottomRightCorner(d, d) = block.gg;
    return total;
}

FieldOperator reduced_field(const DensityBlock& block) {
    return block.ee + block.gg;
}

Eigen::Matrix2cd reduced_molecular(const DensityBlock& block) {
    Eigen::Matrix2cd m;
    m << block.ee.trace(), block.eg.trace(), block.ge.trace(),
        block.gg.trace();
    return m;
}

Eigen::Matrix2cd analytic_reduced_molecular(const SystemParams& params,
                                            const DerivedCoefficients& coeffs,
                                            double t) {
    const double k = params.k_field;
    const double kp = params.k_mol;
    const double aw = coeffs.a_coeff * params.omega_disp;
    const double b2 = coeffs.b_sq();
    const double nbar_t = std::norm(params.alpha) * std::exp(-2.0 * k * t);

    const double gm = gamma_of_t(params, coeffs, t);
    const double th = theta_of_t(params, coeffs, t);
    // <a_plus | a_minus> = exp(nbar_t (e^{-2iAwt} - 1))
    const Complex overlap =
        std::exp(nbar_t * (std::exp(-2.0 * kI * aw * t) - 1.0));

    const double tr_ee = 0.5 * std::exp(-2.0 * b2 * kp * t);
    const Complex tr_eg =
        0.5 * std::exp(-b2 * kp * t) * std::exp(kI * th + gm) * overlap;

    Eigen::Matrix2cd m;
    m << tr_ee, tr_eg, std::conj(tr_eg), 1.0 - tr_ee;
    return m;
}

} // namespace qdx
