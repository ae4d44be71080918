#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kinklab/errors.hpp"
#include "kinklab/profile.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace kinklab;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Phi4Setup {
    Grid grid{30.0, 6001};
    PotentialModel model = make_phi_family(0.0);
    KinkData kink;
    GridFunction V1;
    SpectralData odd;
    ResonanceStructure structure;

    Phi4Setup() {
        kink = compute_kink(model, grid);
        V1 = GridFunction(grid);
        for (int i = 0; i < grid.n; ++i) V1[i] = model.derivative(2, kink.H[i]);
        odd = eigen_decompose(SchrodingerOperator(V1, model.omega2(), Sector::odd));
        std::vector<double> ls;
        for (const auto& m : odd.modes)
            if (m.lambda_sq > 1e-6) ls.push_back(std::sqrt(m.lambda_sq));
        structure = enumerate_sets(ls, model.omega());
    }
};

const Phi4Setup& phi4() {
    static Phi4Setup s;
    return s;
}

} // namespace

TEST_CASE("phi4 order-2 profile: base cases, phi_(1|1), residuals") {
    const auto& s = phi4();
    const RefinedProfile p = build_refined_profile(s.model, s.kink, s.odd, s.structure, 2);

    // phi at e^1 is the stored Phi_1, untouched.
    const VectorField& base = p.phi_at(MultiIndex::unit(1, 0));
    const GridFunction phi1 = normalize_internal_mode(s.odd.modes[0].phi, p.lambda[0]);
    double sup = 0.0;
    for (int i = 0; i < s.grid.n; ++i) {
        sup = std::max(sup, std::abs(base.c1[i] - phi1[i]));
        sup = std::max(sup, std::abs(base.c2[i] - cplx(0.0, -p.lambda[0]) * phi1[i]));
    }
    CHECK(sup <= 1e-14);

    // phi_0 = (H, 0).
    const VectorField& zero = p.phi_at(MultiIndex::zero(1));
    CHECK(std::abs(zero.c1[1234].real() - s.kink.H[1234]) <= 1e-15);
    CHECK(std::abs(zero.c2[1234]) == 0.0);

    // (1|1) is built, self-conjugate (hence real), with no lambda correction.
    const VectorField& m11 = p.phi_at(MultiIndex({1}, {1}));
    double imag_sup = 0.0;
    for (int i = 0; i < s.grid.n; ++i)
        imag_sup = std::max({imag_sup, std::abs(m11.c1[i].imag()), std::abs(m11.c2[i].imag())});
    CHECK(imag_sup <= 1e-8);
    CHECK(p.lambda_jm.size() == 1);  // only the base lambda_1 e^1 entry

    // Defining residuals and the scalar-reduction identity.
    for (const auto& kv : p.residual_rel) CHECK(kv.second <= 1e-4);
    for (const auto& kv : p.scalar_reduction_defect) CHECK(kv.second <= 1e-9);
    CHECK(p.residual_rel.count(MultiIndex({1}, {1})) == 1);
}

TEST_CASE("phi4 sources: R_(2|0) = (0, -3 H phi_1^2) and conjugation") {
    const auto& s = phi4();
    const RefinedProfile p = build_refined_profile(s.model, s.kink, s.odd, s.structure, 2);
    const auto sources = compute_rmin_sources(p);
    REQUIRE(sources.size() == 2);

    const VectorField& R20 = sources.at(MultiIndex({2}, {0}));
    const VectorField& R02 = sources.at(MultiIndex({0}, {2}));

    // Independent symbolic assembly from closed forms.
    const double scale = 1.0 / std::sqrt(2.0 * std::sqrt(1.5));
    double sup1 = 0.0, sup2 = 0.0, supc = 0.0;
    for (int i = 0; i < s.grid.n; ++i) {
        const double x = s.grid.x(i);
        const double phi1 = scale * oracles::phi4_mode(x);
        const double expect = -3.0 * oracles::phi4_kink(x) * phi1 * phi1;
        sup1 = std::max(sup1, std::abs(R20.c1[i]));
        sup2 = std::max(sup2, std::abs(R20.c2[i] - expect));
        supc = std::max({supc, std::abs(R02.c1[i] - std::conj(R20.c1[i])),
                         std::abs(R02.c2[i] - std::conj(R20.c2[i]))});
    }
    CHECK(sup1 <= 1e-12);   // first component vanishes identically
    CHECK(sup2 <= 1e-4);    // eigenvector carries its O(h^2) profile error
    CHECK(supc <= 1e-12);

    // Sigma^infty membership: the exponentially weighted sup is attained in
    // the bulk, not at the boundary.
    const double a1 = 0.5 * std::sqrt(s.model.omega2() - s.odd.modes[0].lambda_sq);
    double interior = 0.0, edge = 0.0;
    for (int i = 0; i < s.grid.n; ++i) {
        const double x = s.grid.x(i);
        const double w = std::exp(0.5 * a1 * std::sqrt(1.0 + x * x)) * std::abs(R20.c2[i]);
        if (std::abs(x) < 20.0) interior = std::max(interior, w);
        else edge = std::max(edge, w);
    }
    CHECK(edge <= 1e-6 * interior);
}

TEST_CASE("phi4 FGR: wavenumber sqrt(2), positive gamma, oracle agreement") {
    const auto& s = phi4();
    const RefinedProfile p = build_refined_profile(s.model, s.kink, s.odd, s.structure, 2);
    const auto sources = compute_rmin_sources(p);
    const std::vector<double> ks =
        make_k_grid(s.model.omega(), 80, 1e-3, -1.0, {std::sqrt(2.0)});
    const JostData jost = compute_jost(s.V1, s.model.omega2(), ks);
    const FgrReport rep = fgr_coefficient(p, sources, jost, s.model.omega());

    REQUIRE(rep.entries.size() == 2);
    for (const auto& e : rep.entries) {
        CHECK(e.r_m == doctest::Approx(2.0).epsilon(1e-5));
        CHECK(e.k_eval == doctest::Approx(std::sqrt(2.0)).epsilon(1e-5));
        CHECK(e.gamma_raw > 0.0);
        CHECK(e.nondegenerate);
        CHECK(std::abs(e.gamma_raw - e.gamma_pc) <= 1e-3 * e.gamma_raw);
    }
    // Conjugate pair carries the same magnitude.
    CHECK(rep.entries[0].gamma_pc == doctest::Approx(rep.entries[1].gamma_pc).epsilon(1e-10));

    // Closed-form oracle on an independent fine grid: H = tanh(x/sqrt2),
    // phi_1 the renormalized mode, m_+ and T from the s = 2 reflectionless
    // closed forms, transform by plain trapezoid quadrature.
    const double k = std::sqrt(2.0);
    const double alpha = 1.0 / std::sqrt(2.0);
    const double scale = 1.0 / std::sqrt(2.0 * std::sqrt(1.5));
    const int N = 60001;
    const double L = 30.0, h = 2.0 * L / (N - 1);
    cplx vplus = 0.0, vminus = 0.0;
    for (int i = 0; i < N; ++i) {
        const double x = -L + i * h;
        const double phi1 = scale * oracles::phi4_mode(x);
        const double R2 = -3.0 * oracles::phi4_kink(x) * phi1 * phi1;
        const cplx T = oracles::pt_transmission(2, alpha, k);
        const cplx ep = T * std::polar(1.0, k * x) * oracles::pt_m_plus(2, alpha, x, k);
        // e(x,-k) = T exp(-ikx) m_-(x,k); by evenness m_-(x,k) = m_+(-x,k).
        const cplx em = T * std::polar(1.0, -k * x) * oracles::pt_m_plus(2, alpha, -x, k);
        double w = (i == 0 || i == N - 1) ? 0.5 : 1.0;
        vplus += w * std::conj(ep) * R2;
        vminus += w * std::conj(em) * R2;
    }
    vplus *= h / std::sqrt(2.0 * kPi);
    vminus *= h / std::sqrt(2.0 * kPi);
    const double gamma_oracle = kPi / (2.0 * std::sqrt(2.0)) * (std::norm(vplus) + std::norm(vminus));
    CHECK(gamma_oracle > 0.0);
    CHECK(std::abs(rep.entries[0].gamma_raw - gamma_oracle) <= 1e-3 * gamma_oracle);

    // Zero source: gamma = 0, degenerate.
    std::map<MultiIndex, VectorField> zero_src;
    zero_src[s.structure.R_min[0]] = VectorField(s.grid);
    const FgrReport zrep = fgr_coefficient(p, zero_src, jost, s.model.omega());
    CHECK(zrep.entries[0].gamma_raw == 0.0);
    CHECK_FALSE(zrep.entries[0].nondegenerate);
}

TEST_CASE("phi4 orthogonality defect: zero at z = 0, cubic in |z|") {
    const auto& s = phi4();
    const RefinedProfile p = build_refined_profile(s.model, s.kink, s.odd, s.structure, 2);
    const auto sources = compute_rmin_sources(p);

    CHECK(profile_orthogonality_check(p, sources, {cplx(0.0, 0.0)}) <= 1e-12);

    const double r1 = profile_orthogonality_check(p, sources, {cplx(0.01, 0.003)});
    const double r2 = profile_orthogonality_check(p, sources, {cplx(0.005, 0.0015)});
    const double r3 = profile_orthogonality_check(p, sources, {cplx(0.0025, 0.00075)});
    CHECK(r1 > 0.0);
    const double slope1 = std::log2(r1 / r2);
    const double slope2 = std::log2(r2 / r3);
    CHECK(slope1 >= 2.6);
    CHECK(slope1 <= 3.4);
    CHECK(slope2 >= 2.5);
    CHECK(slope2 <= 3.5);

    CHECK_THROWS_AS(profile_orthogonality_check(p, sources, {cplx(0.5, 0.0)}), invalid_input);
}

TEST_CASE("two-mode stress model: conjugation, lambda_jm two-route reality, residuals") {
    // W = 1/4 (u^2-1)^2 (u^2 + 0.3): two internal modes, M = 3, a genuine
    // order-3 frequency correction in Lambda_1.
    const PotentialModel model = PotentialModel::from_even_coeffs(
        {0.25 * 0.3, 0.25 * (1.0 - 0.6), 0.25 * (0.3 - 2.0), 0.25});
    const Grid grid(40.0, 8001);
    const KinkData kink = compute_kink(model, grid);
    GridFunction V1(grid);
    for (int i = 0; i < grid.n; ++i) V1[i] = model.derivative(2, kink.H[i]);
    const SpectralData odd = eigen_decompose(SchrodingerOperator(V1, model.omega2(), Sector::odd));
    REQUIRE(odd.count() == 2);
    std::vector<double> ls;
    for (const auto& m : odd.modes) ls.push_back(std::sqrt(m.lambda_sq));
    const ResonanceStructure s = enumerate_sets(ls, model.omega());
    REQUIRE(s.M == 3);
    REQUIRE(check_genericity(s).pass);
    REQUIRE(s.Lambda_j[0].size() == 2);  // e^1 plus one order-3 index

    const RefinedProfile p = build_refined_profile(model, kink, odd, s, 3);

    // Every defining residual within tolerance.
    for (const auto& kv : p.residual_rel) CHECK(kv.second <= 1e-4);
    for (const auto& kv : p.scalar_reduction_defect) CHECK(kv.second <= 1e-9);

    // Conjugate indices were built independently; they must agree with the
    // conjugates of their partners.
    int pairs = 0;
    for (const auto& kv : p.phi) {
        const MultiIndex mbar = kv.first.conj();
        if (kv.first == mbar || !(kv.first < mbar)) continue;
        const VectorField& a = kv.second;
        const VectorField conj_b = conjugate(p.phi_at(mbar));
        double sup = 0.0;
        for (int i = 0; i < grid.n; ++i)
            sup = std::max({sup, std::abs(a.c1[i] - conj_b.c1[i]), std::abs(a.c2[i] - conj_b.c2[i])});
        CHECK(sup <= 1e-8);
        ++pairs;
    }
    CHECK(pairs >= 3);

    // The order-3 Lambda_1 coefficient: real, and the conjugate equation
    // reproduces it.
    bool found = false;
    for (const auto& kv : p.lambda_jm) {
        if (kv.first.second.order() < 2) continue;
        found = true;
        auto conj_it = p.lambda_jm_conj.find(kv.first);
        REQUIRE(conj_it != p.lambda_jm_conj.end());
        CHECK(std::abs(kv.second - conj_it->second) <= 1e-8);
    }
    CHECK(found);
}
