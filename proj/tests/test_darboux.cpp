#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kinklab/darboux.hpp"
#include "kinklab/errors.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace kinklab;

namespace {

const Grid grid_default(30.0, 6001);

struct Setup {
    PotentialModel model;
    KinkData kink;
    GridFunction V1;
    Setup(double eps, const Grid& g) : model(make_phi_family(eps)), kink(compute_kink(model, g)), V1(g) {
        for (int i = 0; i < g.n; ++i) V1[i] = model.derivative(2, kink.H[i]);
    }
};

} // namespace

TEST_CASE("phi4 cascade: two stages ending at the flat potential 2") {
    const Setup s(0.0, grid_default);
    const DarbouxCascade cas = run_cascade(s.model, s.kink, grid_default);
    CHECK(cas.N_tilde == 2);
    CHECK(std::abs(cas.stages[0].lambda_tilde_sq) <= 1e-6);
    CHECK(cas.stages[1].lambda_tilde_sq == doctest::Approx(1.5).epsilon(1e-6));
    double sup = 0.0;
    for (int i = 0; i < grid_default.n; ++i) {
        if (std::abs(grid_default.x(i)) > 15.0) continue;
        sup = std::max(sup, std::abs(cas.V_D[i] - 2.0));
    }
    CHECK(sup <= 1e-4);
    CHECK(cas.vd_flat);
}

TEST_CASE("phi4 first step matches -W''(H) + W'(H)^2/W(H)") {
    const Setup s(0.0, grid_default);
    const DarbouxCascade cas = run_cascade(s.model, s.kink, grid_default);
    REQUIRE(cas.N_tilde == 2);
    const GridFunction& V2 = cas.stages[1].V;
    double sup = 0.0;
    for (int i = 0; i < grid_default.n; ++i) {
        const double x = grid_default.x(i);
        if (std::abs(x) > 15.0) continue;
        // Closed form along the kink: V2 = 2 - sech^2(x/sqrt2).
        const double c = std::cosh(x / std::sqrt(2.0));
        sup = std::max(sup, std::abs(V2[i] - (2.0 - 1.0 / (c * c))));
    }
    CHECK(sup <= 5e-5);
}

TEST_CASE("darboux_step rejects a non-eigenfunction and a sign-changing psi") {
    GridFunction V(grid_default, [](double) { return 2.0; });
    GridFunction gauss(grid_default, [](double x) { return std::exp(-x * x); });
    CHECK_THROWS_AS(darboux_step(V, gauss, 2.0), invalid_input);

    GridFunction odd(grid_default, [](double x) { return x * std::exp(-x * x); });
    CHECK_THROWS_AS(darboux_step(V, odd, 2.0), invalid_input);
}

TEST_CASE("stage potentials: asymptotic invariance and evenness") {
    const Setup s(0.05, grid_default);
    const DarbouxCascade cas = run_cascade(s.model, s.kink, grid_default);
    REQUIRE(cas.N_tilde == 2);
    for (size_t st = 0; st < cas.stages.size(); ++st) {
        const GridFunction& Vk = cas.stages[st].V;
        CHECK(std::abs(Vk.values.front() - Vk.values.back()) <= 1e-8);
        double parity = 0.0;
        for (int i = 0; i < grid_default.n; ++i)
            parity = std::max(parity, std::abs(Vk[i] - Vk[grid_default.n - 1 - i]));
        CHECK(parity <= 1e-8);
    }
    // Darboux preserves the potential at infinity.
    CHECK(std::abs(cas.V_D.values.back() - cas.stages[0].V.values.back()) <= 1e-6);
    CHECK(std::abs(cas.V_D.values.front() - cas.stages[0].V.values.front()) <= 1e-6);
}

TEST_CASE("repulsivity verdicts: phi4 flat, phi8 small-eps repulsive, bump repulsive") {
    const Setup s4(0.0, grid_default);
    const DarbouxCascade c4 = run_cascade(s4.model, s4.kink, grid_default);
    const RepulsivityReport r4 = check_repulsivity(c4.V_D, 2.0);
    CHECK(r4.verdict == RepulsivityVerdict::flat_degenerate);

    const Setup s8(0.05, grid_default);
    const DarbouxCascade c8 = run_cascade(s8.model, s8.kink, grid_default);
    const RepulsivityReport r8 = check_repulsivity(c8.V_D, s8.model.omega2());
    CHECK(r8.verdict == RepulsivityVerdict::repulsive);
    CHECK(r8.min_xVp < -1e-3);

    GridFunction bump(grid_default, [](double x) { return 2.0 + 1.0 / (std::cosh(x) * std::cosh(x)); });
    const RepulsivityReport rb = check_repulsivity(bump, 2.0);
    CHECK(rb.verdict == RepulsivityVerdict::repulsive);

    // A well displaced off the origin pulls x V' positive somewhere: fails.
    GridFunction wrong(grid_default,
                       [](double x) { return 2.0 - 1.0 / (std::cosh(x - 3.0) * std::cosh(x - 3.0)) -
                                             1.0 / (std::cosh(x + 3.0) * std::cosh(x + 3.0)); });
    const RepulsivityReport rw = check_repulsivity(wrong, 2.0);
    CHECK(rw.verdict == RepulsivityVerdict::fails);
}

TEST_CASE("km22 relaxed criterion: repulsive V_D has no negative eigenvalue") {
    const Setup s8(0.05, grid_default);
    const DarbouxCascade c8 = run_cascade(s8.model, s8.kink, grid_default);
    const RepulsivityReport rep = check_repulsivity(c8.V_D, s8.model.omega2(), -1.0, 1e-3, 0.5);
    CHECK(rep.km22_negative_eigencount == 0);
}

TEST_CASE("free potential has no bound states to peel") {
    GridFunction V(grid_default, [](double) { return 2.0; });
    SpectralData spec = eigen_decompose(SchrodingerOperator(V, 2.0, Sector::full_line));
    CHECK(spec.count() == 0);
}

TEST_CASE("phi8 eps = 0.1: cascade endpoint agrees with the field-space route") {
    // Independent assembly of the twice-transformed potential:
    // V_3 = V2tilde(H) - 2 (phi'/phi)' with V2tilde(u) = -W''(u) + W'(u)^2/W(u)
    // and phi = A_1* psi, psi the internal-mode eigenfunction.
    const Setup s(0.1, grid_default);
    const DarbouxCascade cas = run_cascade(s.model, s.kink, grid_default);
    REQUIRE(cas.N_tilde == 2);

    const SpectralData odd =
        eigen_decompose(SchrodingerOperator(s.V1, s.model.omega2(), Sector::odd));
    REQUIRE(odd.count() == 1);
    const GridFunction& psi = odd.modes[0].phi;
    const double lam = odd.modes[0].lambda_sq;
    const KinkSolver solver(s.model);

    // phi = -psi' + r psi with r = H''/H'. Using r' = V_1 - r^2 and
    // psi'' = (V_1 - lambda) psi, the derivatives of phi reduce to psi and
    // psi' alone:
    //   phi'  = (lambda - r^2) psi + r psi'
    //   phi'' = (lambda + V_1 - 2 r^2) psi' + r (2 r^2 - 2 V_1 + V_1 - lambda) psi.
    const GridFunction dpsi = derivative_5pt(psi);
    double sup = 0.0;
    for (int i = 0; i < grid_default.n; ++i) {
        const double x = grid_default.x(i);
        if (std::abs(x) > 10.0) continue;
        const double H = s.kink.H[i];
        const double r = solver.log_derivative_of(H);
        const double V1 = s.V1[i];
        const double phi = -dpsi[i] + r * psi[i];
        const double phip = (lam - r * r) * psi[i] + r * dpsi[i];
        const double phipp =
            (lam + V1 - 2.0 * r * r) * dpsi[i] + r * (2.0 * r * r - V1 - lam) * psi[i];
        const double v2tilde = -s.model.derivative(2, H) + 2.0 * r * r;  // W'^2/W = 2 (H''/H')^2
        const double v3_alt = v2tilde - 2.0 * (phipp * phi - phip * phip) / (phi * phi);
        sup = std::max(sup, std::abs(v3_alt - cas.V_D[i]));
    }
    CHECK(sup <= 1e-4);
}

TEST_CASE("first-transformed potential is repulsive at eps = 0.8") {
    // V_2 along the kink from the closed expression -W''(H) + W'(H)^2/W(H).
    const PotentialModel m = make_phi_family(0.8);
    const Grid g(40.0, 8001);
    const KinkData k = compute_kink(m, g);
    const KinkSolver solver(m);
    GridFunction V2(g);
    for (int i = 0; i < g.n; ++i) {
        const double r = solver.log_derivative_of(k.H[i]);
        V2[i] = -m.derivative(2, k.H[i]) + 2.0 * r * r;
    }
    const RepulsivityReport rep = check_repulsivity(V2, m.omega2());
    CHECK(rep.verdict == RepulsivityVerdict::repulsive);
}

TEST_CASE("intertwining residual: Gaussian bump, scaling under refinement") {
    const Setup fine(0.0, grid_default);
    const DarbouxCascade cfine = run_cascade(fine.model, fine.kink, grid_default);
    const SchrodingerOperator L1f(fine.V1, 2.0, Sector::full_line);
    GridFunction g1(grid_default, [](double x) { return std::exp(-0.5 * x * x); });
    const double rf = intertwine_residual(cfine, L1f, g1);
    CHECK(rf <= 1e-3);

    const Grid coarse_grid(30.0, 3001);
    const Setup coarse(0.0, coarse_grid);
    const DarbouxCascade ccoarse = run_cascade(coarse.model, coarse.kink, coarse_grid);
    const SchrodingerOperator L1c(coarse.V1, 2.0, Sector::full_line);
    GridFunction g2(coarse_grid, [](double x) { return std::exp(-0.5 * x * x); });
    const double rc = intertwine_residual(ccoarse, L1c, g2);
    CHECK(rc >= 3.0 * rf);  // second-order stencils: halving h gains >= 3x

    GridFunction zero(grid_default);
    CHECK(intertwine_residual(cfine, L1f, zero) == 0.0);
}
