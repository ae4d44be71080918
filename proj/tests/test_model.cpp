#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kinklab/errors.hpp"
#include "kinklab/model.hpp"

#include <cmath>

using namespace kinklab;

TEST_CASE("phi4 potential: coefficients, zero, mass") {
    const PotentialModel m = make_phi_family(0.0);
    // 1/4 (u^2-1)^2 = 1/4 - 1/2 u^2 + 1/4 u^4
    const auto& c = m.coeffs();
    REQUIRE(c.size() == 5);
    CHECK(c[0] == 0.25);
    CHECK(c[1] == 0.0);
    CHECK(c[2] == -0.5);
    CHECK(c[3] == 0.0);
    CHECK(c[4] == 0.25);
    CHECK(m.zeta() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(m.omega2() == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("phi family: double zero and exact mass formula") {
    for (double eps : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
        const PotentialModel m = make_phi_family(eps);
        CHECK(std::abs(m(m.zeta())) <= 1e-12);
        CHECK(std::abs(m.derivative(1, m.zeta())) <= 1e-12);
        const double expect = 2.0 * (1.0 - eps * eps) * (1.0 - eps * eps);
        CHECK(m.omega2() == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(make_phi_family(0.3).omega2() == doctest::Approx(1.6562).epsilon(1e-12));
}

TEST_CASE("phi family input validation") {
    CHECK_THROWS_AS(make_phi_family(-0.1), invalid_input);
    CHECK_THROWS_AS(make_phi_family(1.0), invalid_input);
}

TEST_CASE("derivatives are exact polynomials") {
    const PotentialModel m = make_phi_family(0.0);
    // W'' = 3u^2 - 1, W''' = 6u
    CHECK(m.derivative(2, 1.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(m.derivative(3, 0.0) == doctest::Approx(0.0));
    CHECK(m.derivative(0, 0.7) == doctest::Approx(m(0.7)));
    CHECK_THROWS_AS(m.derivative(m.max_order() + 1, 0.0), capability_error);
}

TEST_CASE("derivative agrees with central differences") {
    const PotentialModel m = make_phi_family(0.35);
    const double h = 1e-4;
    for (int k = 1; k <= 4; ++k) {
        double scale = 1.0;
        for (double u : {-0.9, -0.3, 0.0, 0.5, 1.2}) scale = std::max(scale, std::abs(m.derivative(k, u)));
        for (double u : {-0.9, -0.3, 0.0, 0.5, 1.2}) {
            const double fd = (m.derivative(k - 1, u + h) - m.derivative(k - 1, u - h)) / (2.0 * h);
            const double ex = m.derivative(k, u);
            CHECK(std::abs(fd - ex) / scale <= 1e-6);
        }
    }
}

TEST_CASE("validate: canonical model passes, shifted model fails the double zero") {
    CHECK(validate(make_phi_family(0.0)).all_pass);

    // 1/4 (u^2-1)^2 - 0.1 has no double zero.
    const PotentialModel bad = PotentialModel::from_even_coeffs({0.25 - 0.1, -0.5, 0.25});
    const ValidationReport rep = validate(bad);
    CHECK_FALSE(rep.all_pass);
    CHECK_FALSE(rep.checks.front().pass);  // W(zeta) = W'(zeta) = 0 fails
}

TEST_CASE("validate: eps = 0.9 passes with the inner pair of zeros") {
    const PotentialModel m = make_phi_family(0.9);
    CHECK(m.zeta() == doctest::Approx(1.0).epsilon(1e-12));  // 1 < 1/sqrt(0.9)
    CHECK(validate(m).all_pass);
}

TEST_CASE("complex evaluation matches real axis") {
    const PotentialModel m = make_phi_family(0.25);
    const cplx v = m.derivative(1, cplx(0.4, 0.0));
    CHECK(v.real() == doctest::Approx(m.derivative(1, 0.4)).epsilon(1e-15));
    CHECK(v.imag() == 0.0);
}
