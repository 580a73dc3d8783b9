#include "qdx/lindblad.hpp"

#include <cmath>
#include <iostream>
#include <limits>

#include "qdx/errors.hpp"

namespace qdx {

namespace {

constexpr Complex kI{0.0, 1.0};

struct Rhs {
    const FieldOperator a;
    const FieldOperator ad;
    const FieldOperator num;
    double aw;   // A * omega
    double b2k;  // B^2 * k'
    double k;

    Rhs(const FockSpace& space, const SystemParams& params,
        const DerivedCoefficients& coeffs)
        : a(annihilation_operator(space)),
          ad(annihilation_operator(space).adjoint()),
          num(annihilation_operator(space).adjoint() *
              annihilation_operator(space)),
          aw(coeffs.a_coeff * params.omega_disp),
          b2k(coeffs.b_sq() * params.k_mol),
          k(params.k_field) {}

    FieldOperator field_dissipator(const FieldOperator& r) const {
        return k * (2.0 * a * r * ad - num * r - r * num);
    }

    void operator()(const DensityBlock& s, DensityBlock& d) const {
        d.ee = -kI * aw * (num * s.ee - s.ee * num) - 2.0 * b2k * s.ee +
               field_dissipator(s.ee);
        d.eg = -kI * aw * (num * s.eg + s.eg * num + s.eg) - b2k * s.eg +
               field_dissipator(s.eg);
        d.ge = kI * aw * (num * s.ge + s.ge * num + s.ge) - b2k * s.ge +
               field_dissipator(s.ge);
        d.gg = kI * aw * (num * s.gg - s.gg * num) + field_dissipator(s.gg) +
               2.0 * b2k * s.ee;
        d.time = 1.0;
    }
};

void axpy(DensityBlock& y, double c, const DensityBlock& x) {
    y.ee += c * x.ee;
    y.eg += c * x.eg;
    y.ge += c * x.ge;
    y.gg += c * x.gg;
    y.time += c * x.time;
}

void rk4_step(const Rhs& rhs, DensityBlock& s, double h, DensityBlock& k1,
              DensityBlock& k2, DensityBlock& k3, DensityBlock& k4,
              DensityBlock& tmp) {
    rhs(s, k1);
    tmp = s;
    axpy(tmp, 0.5 * h, k1);
    rhs(tmp, k2);
    tmp = s;
    axpy(tmp, 0.5 * h, k2);
    rhs(tmp, k3);
    tmp = s;
    axpy(tmp, h, k3);
    rhs(tmp, k4);
    axpy(s, h / 6.0, k1);
    axpy(s, h / 3.0, k2);
    axpy(s, h / 3.0, k3);
    axpy(s, h / 6.0, k4);
}

double block_dev(const DensityBlock& x, const DensityBlock& y) {
    auto dev = [](const FieldOperator& a, const FieldOperator& b) {
        const double v = (a - b).cwiseAbs().maxCoeff();
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };
    return std::max({dev(x.ee, y.ee), dev(x.eg, y.eg), dev(x.ge, y.ge),
                     dev(x.gg, y.gg)});
}

std::vector<DensityBlock> integrate_grid(const DensityBlock& initial,
                                         const Rhs& rhs, double t_max,
                                         int n_emit, double h_target) {
    const double emit_dt = t_max / n_emit;
    const int sub = std::max(1, static_cast<int>(std::ceil(emit_dt / h_target)));
    const double h = emit_dt / sub;

    std::vector<DensityBlock> out;
    out.reserve(n_emit + 1);
    DensityBlock s = initial;
    out.push_back(s);
    DensityBlock k1 = s, k2 = s, k3 = s, k4 = s, tmp = s;
    for (int i = 0; i < n_emit; ++i) {
        for (int j = 0; j < sub; ++j)
            rk4_step(rhs, s, h, k1, k2, k3, k4, tmp);
        s.time = (i + 1) * emit_dt;  // avoid accumulated roundoff in the stamp
        out.push_back(s);
    }
    return out;
}

void check_block(const DensityBlock& b) {
    const int d = b.dim();
    const double top = std::abs(b.ee(d - 1, d - 1)) + std::abs(b.gg(d - 1, d - 1)) +
                       std::abs(b.ee(d - 2, d - 2)) + std::abs(b.gg(d - 2, d - 2));
    if (top > 1e-8)
        throw TruncationLeak("top Fock-level population " + std::to_string(top) +
                             " exceeds 1e-8; raise fock_dim");
    const Complex tr = b.ee.trace() + b.gg.trace();
    if (!(std::abs(tr - 1.0) <= 1e-8))
        throw NumericalError("oracle trace drift " +
                             std::to_string(std::abs(tr - 1.0)));
    const double herm = std::max((b.ee - b.ee.adjoint().eval()).cwiseAbs().maxCoeff(),
                                 (b.ge - b.eg.adjoint().eval()).cwiseAbs().maxCoeff());
    if (!(herm <= 1e-8))
        throw NumericalError("oracle Hermiticity drift " + std::to_string(herm));
}

} // namespace

double IntegratorConfig::recommended_step(double a_coeff) {
    return 0.005 / std::max(1.0, a_coeff);
}

DensityBlock block_derivative(const DensityBlock& block,
                              const SystemParams& params,
                              const DerivedCoefficients& coeffs) {
    if (block.eg.rows() != block.ee.rows() ||
        block.ge.rows() != block.ee.rows() ||
        block.gg.rows() != block.ee.rows())
        throw DimensionMismatch("density blocks must share one dimension");
    const FockSpace space(block.dim());
    const Rhs rhs(space, params, coeffs);
    DensityBlock d = block;
    rhs(block, d);
    d.time = block.time;
    return d;
}

DensityBlock initial_block(const SystemParams& params, const FockSpace& space) {
    const FieldVector c = coherent_vector(params.alpha, space);
    const FieldOperator half = 0.5 * c * c.adjoint();
    DensityBlock b;
    b.ee = half;
    b.eg = half;
    b.ge = half;
    b.gg = half;
    b.time = 0.0;
    return b;
}

IntegrationResult integrate(const DensityBlock& initial,
                            const SystemParams& params,
                            const DerivedCoefficients& coeffs,
                            const IntegratorConfig& cfg) {
    if (initial.dim() != cfg.fock_dim)
        throw DimensionMismatch("initial block dimension != cfg.fock_dim");
    const FockSpace space(cfg.fock_dim);
    const Rhs rhs(space, params, coeffs);

    const double rec = IntegratorConfig::recommended_step(coeffs.a_coeff);
    if (cfg.warnings && cfg.step > rec)
        std::cerr << "warning: RK4 step " << cfg.step
                  << " exceeds recommended bound " << rec << "\n";

    // scaled step -> absolute time step
    const double h_abs = cfg.step / params.omega_disp;
    const double t_abs = cfg.t_max / params.omega_disp;

    IntegrationResult res;
    res.blocks = integrate_grid(initial, rhs, t_abs, cfg.n_emit, h_abs);

    // step certificate first: an unstable step should be diagnosed as such,
    // not as a trace or truncation failure of garbage data
    if (cfg.certificate) {
        auto half = integrate_grid(initial, rhs, t_abs, cfg.n_emit, h_abs / 2.0);
        double dev = 0.0;
        for (size_t i = 0; i < res.blocks.size(); ++i)
            dev = std::max(dev, block_dev(res.blocks[i], half[i]));
        res.certificate.step = cfg.step;
        res.certificate.half_step_dev = dev;
        res.certificate.computed = true;
        if (!(dev <= 1e-6))
            throw StepTooLarge("half-step deviation " + std::to_string(dev) +
                               " exceeds 1e-6; reduce step");
    }
    for (const auto& b : res.blocks)
        check_block(b);
    return res;
}

} // namespace qdx
