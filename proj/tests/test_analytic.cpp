#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qdx/analytic.hpp"
#include "qdx/params.hpp"

using namespace qdx;

namespace {

SystemParams fig1a_params() {
    SystemParams p;
    p.n_total = 10;
    p.n_excited = 5;
    p.k_field = 0.05;
    p.k_mol = 0.05;
    p.alpha = {1.0, 0.0};
    return p;
}

} // namespace

TEST_CASE("phase functions vanish at t = 0") {
    auto p = fig1a_params();
    auto c = derive_coefficients(p);
    CHECK(gamma_of_t(p, c, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(theta_of_t(p, c, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("undamped field gives Gamma = 0 and Theta = -A w t") {
    auto p = fig1a_params();
    p.k_field = 0.0;
    auto c = derive_coefficients(p);
    for (double t : {0.1, 0.7, 2.3}) {
        CHECK(gamma_of_t(p, c, t) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(theta_of_t(p, c, t) ==
              doctest::Approx(-c.a_coeff * t).epsilon(1e-14));
    }
}

TEST_CASE("initial block is the pure superposition state") {
    auto p = fig1a_params();
    auto c = derive_coefficients(p);
    const FockSpace space(25);
    auto b = analytic_block(p, c, space, 0.0);
    auto alpha_vec = coherent_vector(p.alpha, space);
    const FieldOperator half = 0.5 * alpha_vec * alpha_vec.adjoint();
    CHECK((b.ee - half).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((b.eg - half).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((b.ge - half).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((b.gg - half).cwiseAbs().maxCoeff() < 1e-14);

    auto total = total_density(b);
    CHECK(std::abs(total.trace() - 1.0) < 1e-10);
    CHECK(std::abs((total * total).trace().real() - 1.0) < 1e-10);
}

TEST_CASE("block traces follow the closed-form branch decay") {
    auto p = fig1a_params();
    auto c = derive_coefficients(p);
    const FockSpace space(25);
    double prev = 0.51;
    for (double t : {0.0, 0.2, 0.5, 1.0, 2.0, 3.0}) {
        auto b = analytic_block(p, c, space, t);
        const double tr_ee = b.ee.trace().real();
        const double expect = 0.5 * std::exp(-2.0 * c.b_sq() * p.k_mol * t);
        CHECK(tr_ee == doctest::Approx(expect).epsilon(1e-12));
        CHECK(std::abs(b.ee.trace() + b.gg.trace() - 1.0) < 1e-10);
        CHECK(tr_ee < prev);  // strictly decreasing for k' > 0
        prev = tr_ee;
    }
}

TEST_CASE("blocks are Hermitian and mutually adjoint") {
    auto p = fig1a_params();
    auto c = derive_coefficients(p);
    const FockSpace space(25);
    for (double t : {0.3, 1.1, 2.7}) {
        auto b = analytic_block(p, c, space, t);
        CHECK((b.ee - b.ee.adjoint().eval()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((b.gg - b.gg.adjoint().eval()).cwiseAbs().maxCoeff() < 1e-12);
        CHECK((b.ge - b.eg.adjoint().eval()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("total density is positive semidefinite") {
    auto p = fig1a_params();
    auto c = derive_coefficients(p);
    const FockSpace space(25);
    for (double t : {0.5, 1.0, 2.0}) {
        auto total = total_density(analytic_block(p, c, space, t));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            0.5 * (total + total.adjoint().eval()), Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() >= -1e-9);
    }
}

TEST_CASE("reductions at t = 0") {
    auto p = fig1a_params();
    auto c = derive_coefficients(p);
    const FockSpace space(25);
    auto b = analytic_block(p, c, space, 0.0);

    auto alpha_vec = coherent_vector(p.alpha, space);
    const FieldOperator proj = alpha_vec * alpha_vec.adjoint();
    CHECK((reduced_field(b) - proj).cwiseAbs().maxCoeff() < 1e-13);

    auto m = reduced_molecular(b);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            CHECK(std::abs(m(i, j) - 0.5) < 1e-12);
}

TEST_CASE("reductions keep unit trace") {
    auto p = fig1a_params();
    auto c = derive_coefficients(p);
    const FockSpace space(25);
    for (double t : {0.4, 1.3, 2.9}) {
        auto b = analytic_block(p, c, space, t);
        CHECK(std::abs(reduced_field(b).trace() - 1.0) < 1e-10);
        CHECK(std::abs(reduced_molecular(b).trace() - 1.0) < 1e-10);
    }
}

TEST_CASE("branch revival leaves the field pure when k' = 0") {
    auto p = fig1a_params();
    p.k_mol = 0.0;
    auto c = derive_coefficients(p);
    const FockSpace space(25);
    for (int j = 1; j <= 3; ++j) {
        const double t = std::numbers::pi * j / c.a_coeff;
        auto rf = reduced_field(analytic_block(p, c, space, t));
        const double purity = (rf * rf).trace().real();
        CHECK(std::abs(purity - 1.0) < 1e-8);
    }
}

TEST_CASE("closed-form molecular reduction matches the block path") {
    auto p = fig1a_params();
    auto c = derive_coefficients(p);
    const FockSpace space(25);
    for (double t : {0.0, 0.17, 0.9, 2.5}) {
        auto from_blocks = reduced_molecular(analytic_block(p, c, space, t));
        auto direct = analytic_reduced_molecular(p, c, t);
        CHECK((from_blocks - direct).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("feed term vanishes identically without molecular damping") {
    auto p = fig1a_params();
    p.k_mol = 0.0;
    auto c = derive_coefficients(p);
    const FockSpace space(25);
    const double t = 0.8;
    auto b = analytic_block(p, c, space, t);
    // gg must be exactly the lower-branch coherent projector
    const Complex rot = std::exp(Complex{0.0, 1.0} * c.a_coeff * t);
    auto cp = coherent_vector(p.alpha * std::exp(-p.k_field * t) * rot, space);
    CHECK((b.gg - 0.5 * cp * cp.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
}
