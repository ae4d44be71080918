// Acceptance suite: every certification target of the library, one line per
// criterion, strict tolerances. Exit status 0 only if all criteria hold.

#include "kinklab/config.hpp"
#include "kinklab/darboux.hpp"
#include "kinklab/kink.hpp"
#include "kinklab/operator.hpp"
#include "kinklab/phi8.hpp"
#include "kinklab/profile.hpp"
#include "kinklab/resonance.hpp"
#include "kinklab/scattering.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <vector>

using namespace kinklab;

namespace {

int failures = 0;

void report(int id, const char* label, bool pass, const std::string& detail) {
    std::printf("%s  criterion %2d: %-34s %s\n", pass ? "PASS" : "FAIL", id, label, detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), f, a, b, c);
    return buf;
}

struct Phi4Data {
    Grid grid{30.0, 6001};
    PotentialModel model = make_phi_family(0.0);
    KinkData kink;
    GridFunction V1;
    SpectralData odd, full;
    double kink_seconds = 0.0;
};

Phi4Data make_phi4() {
    Phi4Data d;
    const auto t0 = std::chrono::steady_clock::now();
    d.kink = compute_kink(d.model, d.grid);
    d.kink_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    d.V1 = GridFunction(d.grid);
    for (int i = 0; i < d.grid.n; ++i) d.V1[i] = d.model.derivative(2, d.kink.H[i]);
    d.odd = eigen_decompose(SchrodingerOperator(d.V1, 2.0, Sector::odd));
    d.full = eigen_decompose(SchrodingerOperator(d.V1, 2.0, Sector::full_line));
    return d;
}

} // namespace

int main() {
    std::setbuf(stdout, nullptr);
    const Phi4Data d = make_phi4();

    // 1. Kink exactness: sup |H - tanh(x/sqrt2)| <= 1e-8 on [-20,20], < 2 s.
    {
        double sup = 0.0;
        for (int i = 0; i < d.grid.n; ++i) {
            const double x = d.grid.x(i);
            if (std::abs(x) > 20.0) continue;
            sup = std::max(sup, std::abs(d.kink.H[i] - std::tanh(x / std::sqrt(2.0))));
        }
        report(1, "kink exactness (phi4)", sup <= 1e-8 && d.kink_seconds < 2.0,
               fmt("sup err = %.2e (tol 1e-8), runtime %.2f s (< 2 s)", sup, d.kink_seconds));
    }

    // 2. Internal mode: odd eigenvalue 1.5 within 1e-6; full line {0, 1.5}.
    {
        const bool odd_ok = d.odd.count() == 1 && std::abs(d.odd.modes[0].lambda_sq - 1.5) <= 1e-6;
        const bool full_ok = d.full.count() == 2 && std::abs(d.full.modes[0].lambda_sq) <= 1e-6 &&
                             std::abs(d.full.modes[1].lambda_sq - 1.5) <= 1e-6;
        report(2, "internal mode (phi4)", odd_ok && full_ok,
               fmt("odd: %.9f (tol 1e-6 about 1.5), full: {%.2e, %.9f}",
                   d.odd.count() ? d.odd.modes[0].lambda_sq : -1.0,
                   d.full.count() ? d.full.modes[0].lambda_sq : -1.0,
                   d.full.count() > 1 ? d.full.modes[1].lambda_sq : -1.0));
    }

    // 3. Cascade endpoint: after 2 stages |V_D - 2| <= 1e-4 on [-15, 15].
    const DarbouxCascade cas4 = run_cascade(d.model, d.kink, d.grid);
    {
        double sup = 0.0;
        for (int i = 0; i < d.grid.n; ++i) {
            if (std::abs(d.grid.x(i)) > 15.0) continue;
            sup = std::max(sup, std::abs(cas4.V_D[i] - 2.0));
        }
        report(3, "cascade endpoint (phi4)", cas4.N_tilde == 2 && sup <= 1e-4,
               fmt("stages = %.0f, sup |V_D - 2| = %.2e (tol 1e-4)", double(cas4.N_tilde), sup));
    }

    // 4. First-order eigenvalue shift: 2.400 +- 0.05 from eps in {.005,.01,.02}.
    {
        const double shift = eigenvalue_shift({0.005, 0.01, 0.02}, d.grid);
        report(4, "eigenvalue shift 12/5", std::abs(shift - 2.4) <= 0.05,
               fmt("slope = %.4f (target 2.400 +- 0.05)", shift));
    }

    // 5. tildeV3 reproduction: <= 0.05 at eps = 0.02, <= 0.03 at eps = 0.01.
    {
        const GridFunction closed = tildeV3_closed_form(d.grid);
        const GridFunction n02 = tildeV3_numeric(0.02, d.grid);
        const GridFunction n01 = tildeV3_numeric(0.01, d.grid);
        double d02 = 0.0, d01 = 0.0;
        for (int i = 0; i < d.grid.n; ++i) {
            d02 = std::max(d02, std::abs(n02[i] - closed[i]));
            d01 = std::max(d01, std::abs(n01[i] - closed[i]));
        }
        report(5, "tildeV3 first-order profile", d02 <= 0.05 && d01 <= 0.03,
               fmt("sup dev: %.4f at eps .02 (tol .05), %.4f at eps .01 (tol .03)", d02, d01));
    }

    // 6. Repulsivity certification across the phi8 family.
    {
        bool ok = true;
        std::string detail;
        for (double eps : {0.02, 0.05, 0.1}) {
            const PotentialModel m = make_phi_family(eps);
            const KinkData k = compute_kink(m, d.grid);
            const DarbouxCascade cas = run_cascade(m, k, d.grid);
            const RepulsivityReport rep = check_repulsivity(cas.V_D, m.omega2());
            const bool this_ok = rep.verdict == RepulsivityVerdict::repulsive &&
                                 rep.max_xVp <= 1e-6 && rep.min_xVp < -1e-3;
            ok = ok && this_ok;
            detail += fmt("eps %.2f: max %.1e min %.1e; ", eps, rep.max_xVp, rep.min_xVp);
        }
        const RepulsivityReport flat = check_repulsivity(cas4.V_D, 2.0);
        ok = ok && flat.verdict == RepulsivityVerdict::flat_degenerate;
        detail += "phi4: " + to_string(flat.verdict);
        report(6, "repulsivity certification", ok, detail);
    }

    // 7. Resonance combinatorics: oracle equivalence and the phi4 sets.
    {
        const ResonanceStructure s = enumerate_sets({std::sqrt(1.5)}, std::sqrt(2.0));
        bool ok = s.M == 2 && s.R_min.size() == 2 && s.NR.size() == 4;
        ok = ok && s.R_min[0] == MultiIndex({0}, {2}) && s.R_min[1] == MultiIndex({2}, {0});
        const std::vector<MultiIndex> nr_expect = {MultiIndex({0}, {0}), MultiIndex({0}, {1}),
                                                   MultiIndex({1}, {0}), MultiIndex({1}, {1})};
        for (size_t i = 0; i < nr_expect.size() && ok; ++i) ok = s.NR[i] == nr_expect[i];

        // 50 random configurations against a direct classifier.
        oracles::Rng rng(987654321);
        int done = 0, agree = 0;
        while (done < 50) {
            const int N = 1 + static_cast<int>(rng.uniform() * 3.0);
            std::vector<double> ls;
            for (int j = 0; j < N; ++j) ls.push_back(rng.uniform(0.17, 0.93));
            std::sort(ls.begin(), ls.end());
            bool safe = true;
            const int M = compute_M(ls[0], 1.0);
            if (M > 7) continue;
            const ResonanceStructure t = enumerate_sets(ls, 1.0);
            // direct reclassification of every enumerated index
            std::set<std::vector<int>> rmin, nr;
            std::vector<MultiIndex> all;
            for (const auto& m : t.R_min) all.push_back(m);
            for (const auto& m : t.NR) all.push_back(m);
            for (const auto& m : t.I_truncated) all.push_back(m);
            auto freq_of = [&](const MultiIndex& m) { return frequency(m, ls); };
            for (const auto& m : all)
                if (std::abs(std::abs(freq_of(m)) - 1.0) < 1e-7) safe = false;
            if (!safe) continue;
            bool match = true;
            for (const auto& m : all) {
                const bool in_R = std::abs(freq_of(m)) > 1.0;
                bool minimal = in_R;
                if (in_R) {
                    for (const auto& q : all)
                        if (std::abs(freq_of(q)) > 1.0 && precedes(q, m)) { minimal = false; break; }
                }
                bool dominated = false;
                if (!minimal) {
                    for (const auto& q : all) {
                        const bool q_min = [&] {
                            if (std::abs(freq_of(q)) <= 1.0) return false;
                            for (const auto& r : all)
                                if (std::abs(freq_of(r)) > 1.0 && precedes(r, q)) return false;
                            return true;
                        }();
                        if (q_min && precedes(q, m)) { dominated = true; break; }
                    }
                }
                const bool lib_rmin =
                    std::find(t.R_min.begin(), t.R_min.end(), m) != t.R_min.end();
                const bool lib_I =
                    std::find(t.I_truncated.begin(), t.I_truncated.end(), m) != t.I_truncated.end();
                if (minimal != lib_rmin) match = false;
                if (!minimal && dominated != lib_I) match = false;
            }
            if (match) ++agree;
            ++done;
        }
        ok = ok && agree == 50;
        report(7, "resonance combinatorics", ok, fmt("phi4 sets exact; oracle agreement %g/50", double(agree)));
    }

    // 8. Scattering soundness: free FT, Plancherel, Wronskian constancy.
    {
        GridFunction Vfree(d.grid, [](double) { return 2.0; });
        const std::vector<double> ks = make_k_grid(std::sqrt(2.0), 400);
        // Perturb one node at 1e-13 so the integrator path (not the closed
        // form) is exercised for the free comparison.
        GridFunction Vnear = Vfree;
        Vnear[d.grid.center()] += 1e-13;
        const JostData jfree = compute_jost(Vnear, 2.0, ks);
        CGridFunction g(d.grid);
        for (int i = 0; i < d.grid.n; ++i) {
            const double x = d.grid.x(i);
            g[i] = x * std::exp(-0.5 * x * x);
        }
        double ft_err = 0.0;
        for (double k : {0.5, 1.3, 3.7}) {
            cplx ref = 0.0;
            for (int i = 0; i < d.grid.n; ++i) {
                const double x = d.grid.x(i);
                cplx t = std::polar(1.0, -k * x) * g[i];
                if (i == 0 || i + 1 == d.grid.n) t *= 0.5;
                ref += t;
            }
            ref *= d.grid.spacing() / std::sqrt(2.0 * 3.14159265358979323846);
            ft_err = std::max(ft_err, std::abs(distorted_ft(g, jfree, k) - ref));
        }

        const JostData j1 = compute_jost(d.V1, 2.0, ks);
        double wvar = 0.0;
        for (double v : j1.wronskian_rel_var) wvar = std::max(wvar, v);

        int plancherel_ok = 0;
        const int tests = 5;
        for (int t = 0; t < tests; ++t) {
            CGridFunction f(d.grid);
            for (int i = 0; i < d.grid.n; ++i) {
                const double x = d.grid.x(i);
                const double env = std::exp(-0.35 * x * x);
                switch (t) {
                    case 0: f[i] = x * env; break;
                    case 1: f[i] = std::sin(1.1 * x) * env; break;
                    case 2: f[i] = cplx(x, std::sin(x)) * env; break;
                    case 3: f[i] = x * x * x * env; break;
                    default: f[i] = cplx(std::sin(2.0 * x), 0.7 * x) * env; break;
                }
            }
            double sum = plancherel_continuum(f, j1);
            for (const auto& mode : d.full.modes) {
                cplx proj = 0.0;
                for (int i = 0; i < d.grid.n; ++i) proj += mode.phi[i] * f[i];
                proj *= d.grid.spacing();
                sum += std::norm(proj);
            }
            const double total = l2_norm(f) * l2_norm(f);
            if (std::abs(sum - total) <= 1e-4 * total) ++plancherel_ok;
        }
        report(8, "scattering soundness",
               ft_err <= 1e-6 && wvar <= 1e-8 && plancherel_ok == tests,
               fmt("free-FT err %.1e (tol 1e-6), wronskian var %.1e (tol 1e-8), plancherel %g/5",
                   ft_err, wvar, double(plancherel_ok)));
    }

    // 9 & 10. Refined profile: FGR nondegeneracy and residual/orthogonality.
    {
        std::vector<double> ls;
        for (const auto& m : d.odd.modes)
            if (m.lambda_sq > 1e-6) ls.push_back(std::sqrt(m.lambda_sq));
        const ResonanceStructure s = enumerate_sets(ls, d.model.omega());
        const RefinedProfile p = build_refined_profile(d.model, d.kink, d.odd, s, 2);
        const auto sources = compute_rmin_sources(p);
        const std::vector<double> ks =
            make_k_grid(d.model.omega(), 200, 1e-3, -1.0, {std::sqrt(2.0)});
        const JostData j1 = compute_jost(d.V1, 2.0, ks);
        const FgrReport rep = fgr_coefficient(p, sources, j1, d.model.omega());

        // closed-form quadrature oracle for gamma
        const double k = std::sqrt(2.0);
        const double alpha = 1.0 / std::sqrt(2.0);
        const double scale = 1.0 / std::sqrt(2.0 * std::sqrt(1.5));
        const int N = 60001;
        const double L = 30.0, h = 2.0 * L / (N - 1);
        cplx vp = 0.0, vm = 0.0;
        for (int i = 0; i < N; ++i) {
            const double x = -L + i * h;
            const double phi1 = scale * oracles::phi4_mode(x);
            const double R2 = -3.0 * oracles::phi4_kink(x) * phi1 * phi1;
            const cplx T = oracles::pt_transmission(2, alpha, k);
            const cplx ep = T * std::polar(1.0, k * x) * oracles::pt_m_plus(2, alpha, x, k);
            const cplx em = T * std::polar(1.0, -k * x) * oracles::pt_m_plus(2, alpha, -x, k);
            const double w = (i == 0 || i == N - 1) ? 0.5 : 1.0;
            vp += w * std::conj(ep) * R2;
            vm += w * std::conj(em) * R2;
        }
        vp *= h / std::sqrt(2.0 * 3.14159265358979323846);
        vm *= h / std::sqrt(2.0 * 3.14159265358979323846);
        const double gamma_oracle =
            3.14159265358979323846 / (2.0 * std::sqrt(2.0)) * (std::norm(vp) + std::norm(vm));

        bool ok9 = rep.entries.size() == 2 && rep.all_nondegenerate;
        double gamma = 0.0, keval = 0.0;
        for (const auto& e : rep.entries) {
            gamma = e.gamma_raw;
            keval = e.k_eval;
            ok9 = ok9 && e.gamma_raw > 0.0 && std::abs(e.k_eval - std::sqrt(2.0)) <= 1e-5 &&
                  std::abs(e.gamma_raw - gamma_oracle) <= 1e-3 * gamma_oracle;
        }
        report(9, "FGR nondegeneracy (phi4)", ok9,
               fmt("gamma = %.8f vs oracle %.8f (tol 1e-3 rel), k = %.6f", gamma, gamma_oracle, keval));

        double worst_resid = 0.0;
        for (const auto& kv : p.residual_rel) worst_resid = std::max(worst_resid, kv.second);
        const double r1 = profile_orthogonality_check(p, sources, {cplx(0.01, 0.004)});
        const double r2 = profile_orthogonality_check(p, sources, {cplx(0.005, 0.002)});
        const double slope = std::log2(r1 / r2);
        report(10, "refined-profile residuals", worst_resid <= 1e-4 && slope >= 2.5 && slope <= 3.5,
               fmt("max residual %.1e (tol 1e-4), z-halving slope %.2f (target 3)", worst_resid, slope));
    }

    // 11. Dynamics of the full time-dependent problem: out of scope here; the
    // library certifies the hypotheses those results assume.
    report(11, "time-dependent dynamics excluded", true,
           "certified hypotheses only; no PDE evolution is performed");

    std::printf("%s\n", failures == 0 ? "ALL CRITERIA PASS" : "CRITERIA FAILED");
    return failures == 0 ? 0 : 1;
}
