#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qdx/errors.hpp"
#include "qdx/observables.hpp"

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

TEST_CASE("linear entropy basics") {
    Eigen::MatrixXcd pure = Eigen::MatrixXcd::Zero(3, 3);
    pure(1, 1) = 1.0;
    CHECK(linear_entropy(pure) == doctest::Approx(0.0).epsilon(1e-14));

    Eigen::MatrixXcd mixed = 0.5 * Eigen::MatrixXcd::Identity(2, 2);
    CHECK(linear_entropy(mixed) == doctest::Approx(0.5).epsilon(1e-14));

    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
    CHECK_THROWS_AS(linear_entropy(bad), NotAState);
    Eigen::MatrixXcd skew = Eigen::MatrixXcd::Zero(2, 2);
    skew(0, 0) = 1.0;
    skew(0, 1) = Complex{0.0, 0.5};
    skew(1, 0) = Complex{0.0, 0.5};
    CHECK_THROWS_AS(linear_entropy(skew), NotAState);
}

TEST_CASE("generic entropies on the analytic state") {
    auto p = fig1a_params();
    auto c = derive_coefficients(p);
    const FockSpace space(25);

    auto e0 = entropies_generic(analytic_block(p, c, space, 0.0));
    CHECK(std::abs(e0.s_total) < 1e-10);
    CHECK(std::abs(e0.s_field) < 1e-10);
    CHECK(std::abs(e0.s_mol) < 1e-10);

    // entanglement grows away from t = 0
    auto e1 = entropies_generic(analytic_block(p, c, space, 0.3));
    CHECK(e1.s_total > 1e-3);
    CHECK(e1.s_field > 1e-3);
    CHECK(e1.s_mol > 1e-3);
}

TEST_CASE("transcribed total and molecular entropies match the generic path") {
    auto p = fig1a_params();
    auto c = derive_coefficients(p);
    const FockSpace space(25);
    for (double t : {0.0, 0.2, 0.7, 1.5, 2.8}) {
        auto gen = entropies_generic(analytic_block(p, c, space, t));
        auto closed = entropy_closed_forms(p, c, t);
        CHECK(std::abs(gen.s_total - closed.s_total) < 1e-6);
        CHECK(std::abs(gen.s_mol - closed.s_mol) < 1e-6);
    }
}

TEST_CASE("transcribed field entropy diverges and is recorded") {
    auto p = fig1a_params();
    auto c = derive_coefficients(p);
    const FockSpace space(25);
    ClosedFormAudit audit;
    for (double t : {0.0, 0.3, 1.0}) {
        auto gen = entropies_generic(analytic_block(p, c, space, t));
        auto closed = entropy_closed_forms(p, c, t);
        audit.observe("eq23", t, gen.s_field, closed.s_field);
    }
    REQUIRE(audit.records().size() == 1);
    CHECK(audit.records()[0].equation == "eq23");
    CHECK(audit.records()[0].first_time == 0.0);
    CHECK(audit.records()[0].max_delta > 1.0);
}

TEST_CASE("entropies with k' = 0 hold at the branch revivals") {
    auto p = fig1a_params();
    p.k_mol = 0.0;
    auto c = derive_coefficients(p);
    const FockSpace space(25);
    for (int j = 1; j <= 4; ++j) {
        const double t = std::numbers::pi * j / c.a_coeff;
        auto e = entropies_generic(analytic_block(p, c, space, t));
        CHECK(e.s_field < 1e-6);
    }
}

TEST_CASE("quadrature variance of coherent states is at the vacuum level") {
    const FockSpace space(25);
    auto vac = coherent_vector(0.0, space);
    FieldOperator rho = vac * vac.adjoint();
    CHECK(std::abs(quadrature_s1_generic(rho, 0.0, 10.0)) < 1e-10);

    for (Complex alpha : {Complex{1.0, 0.0}, Complex{0.3, -0.8}}) {
        auto cv = coherent_vector(alpha, space);
        rho = cv * cv.adjoint();
        CHECK(std::abs(quadrature_s1_generic(rho, 0.0, 10.0)) < 1e-10);
        CHECK(std::abs(quadrature_s1_generic(rho, 0.4, 10.0)) < 1e-10);
    }
}

TEST_CASE("transcribed s1 diverges at t = 0 and is recorded") {
    auto p = fig1a_params();
    p.k_field = 0.0;
    p.k_mol = 0.0;
    auto c = derive_coefficients(p);
    ClosedFormAudit audit;
    // coherent state at t=0: the generic value is exactly 0
    audit.observe("eq28", 0.0, 0.0, quadrature_s1_closed_form(p, c, 0.0));
    REQUIRE(audit.records().size() == 1);
    CHECK(audit.records()[0].equation == "eq28");
}

TEST_CASE("transcribed s1 decays to the vacuum level at large t") {
    auto p = fig1a_params();
    auto c = derive_coefficients(p);
    CHECK(std::abs(quadrature_s1_closed_form(p, c, 200.0)) < 1e-6);
}

TEST_CASE("dipole squeezing indicator basics") {
    Eigen::Matrix2cd balanced;
    balanced << 0.5, 0.5, 0.5, 0.5;
    CHECK(dipole_fy_generic(balanced, 0.0, 110.0, std::sqrt(3.0), true) ==
          doctest::Approx(1.0).epsilon(1e-12));

    Eigen::Matrix2cd ground = Eigen::Matrix2cd::Zero();
    ground(1, 1) = 1.0;
    CHECK(dipole_fy_generic(ground, 0.0, 110.0, 1.0, true) ==
          doctest::Approx(0.0).epsilon(1e-12));
    // without the |<sigma_z>| term the ground state sits at 1
    CHECK(dipole_fy_generic(ground, 0.0, 110.0, 1.0, false) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("closed-form F_y starts at one") {
    auto p = fig1a_params();
    auto c = derive_coefficients(p);
    CHECK(dipole_fy_closed_form(p, c, 0.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("closed-form F_y diverges from the generic value and is recorded") {
    auto p = fig1a_params();
    auto c = derive_coefficients(p);
    ClosedFormAudit audit;
    for (double t : {0.0, 0.5, 1.0}) {
        auto rm = analytic_reduced_molecular(p, c, t);
        const double gen = dipole_fy_generic(rm, t, p.omega_eg, c.b_coeff,
                                             false);
        audit.observe("eq31", t, gen, dipole_fy_closed_form(p, c, t));
    }
    REQUIRE(audit.records().size() == 1);
    CHECK(audit.records()[0].equation == "eq31");
}

TEST_CASE("dipole squeezing occurs for B > 1") {
    auto p = fig1a_params();  // B^2 = 3
    auto c = derive_coefficients(p);
    double min_fy = 1.0;
    for (int i = 0; i <= 20000; ++i) {
        const double t = i * 5.0 / 20000;
        auto rm = analytic_reduced_molecular(p, c, t);
        min_fy = std::min(min_fy,
                          dipole_fy_generic(rm, t, p.omega_eg, c.b_coeff, true));
    }
    CHECK(min_fy < 0.0);
}

TEST_CASE("mean photon number") {
    const FockSpace space(25);
    auto vac = coherent_vector(0.0, space);
    CHECK(mean_photon_number(vac * vac.adjoint()) ==
          doctest::Approx(0.0).epsilon(1e-14));
    auto cv = coherent_vector(1.0, space);
    CHECK(mean_photon_number(cv * cv.adjoint()) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mean photon number follows |alpha|^2 e^{-2kt}") {
    auto p = fig1a_params();
    auto c = derive_coefficients(p);
    const FockSpace space(25);
    for (double t : {0.0, 0.5, 1.2, 2.9}) {
        const double n = mean_photon_number(
            reduced_field(analytic_block(p, c, space, t)));
        CHECK(std::abs(n - std::exp(-2.0 * p.k_field * t)) < 1e-8);
    }
}

TEST_CASE("audit keeps one record per equation") {
    ClosedFormAudit audit;
    audit.observe("eq22", 0.1, 1.0, 1.0 + 1e-9);  // within threshold
    CHECK(audit.records().empty());
    audit.observe("eq22", 0.2, 1.0, 2.0);
    audit.observe("eq22", 0.3, 1.0, 5.0);
    REQUIRE(audit.records().size() == 1);
    CHECK(audit.records()[0].first_time == 0.2);
    CHECK(audit.records()[0].max_delta == doctest::Approx(4.0));
    CHECK(audit.records()[0].count == 2);
}
