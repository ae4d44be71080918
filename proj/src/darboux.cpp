#include "kinklab/darboux.hpp"

#include "kinklab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace kinklab {

std::string to_string(RepulsivityVerdict v) {
    switch (v) {
        case RepulsivityVerdict::repulsive: return "repulsive";
        case RepulsivityVerdict::flat_degenerate: return "flat_degenerate";
        default: return "fails";
    }
}

namespace {

// The Dirichlet wall mixes an exp(+kappa x) component into eigenvectors, so
// raw log-derivatives degrade near the boundary while the true field has
// already settled at -sign(x) kappa. Blend into the asymptote around the
// radius where the two error envelopes (potential tail vs boundary layer)
// cross, over a smooth window so no spurious slope enters x V'.
struct TailBlend {
    double x_star, band;

    TailBlend(const GridFunction& V, double kappa, double band_width = 2.0) : band(band_width) {
        const int n = V.size();
        const int c = V.grid.center();
        const double L = V.grid.L;
        const double V_edge = V.values.back();
        const double kappa2 = kappa * kappa;
        x_star = 0.75 * L;
        double best = 1e300;
        for (int i = c + 1; i + 1 < n; ++i) {
            const double x = V.grid.x(i);
            const double env = std::abs(V[i] - V_edge) +
                               std::max(kappa2, 1e-6) * std::exp(-2.0 * kappa * (L - x));
            if (env < best) {
                best = env;
                x_star = x;
            }
        }
    }

    double weight(double x) const {
        const double ax = std::abs(x);
        if (ax <= x_star - band) return 1.0;
        if (ax >= x_star + band) return 0.0;
        const double t = (ax - (x_star - band)) / (2.0 * band);
        const double s = std::cos(0.5 * 3.14159265358979323846 * t);
        return s * s;
    }
};

} // namespace

GridFunction darboux_step(const GridFunction& V_k, const GridFunction& psi_k, double omega2,
                          double* lambda_out, GridFunction* log_deriv_out, double tail_eps) {
    if (!V_k.grid.same_layout(psi_k.grid)) throw invalid_input("darboux_step: layout mismatch");
    if (V_k.grid.sector != Sector::full_line) throw invalid_input("darboux_step: full-line input expected");
    const int n = V_k.size();
    const double peak = sup_norm(psi_k);
    if (peak <= 0.0) throw invalid_input("darboux_step: zero ground state");

    // Nodeless precondition: interior sign change (above the tail noise
    // floor) means this is not the ground state.
    double last = 0.0;
    for (int i = 1; i + 1 < n; ++i) {
        const double s = psi_k[i];
        if (std::abs(s) <= 1e-9 * peak) continue;
        if (last != 0.0 && s * last < 0.0)
            throw invalid_input("darboux_step: psi changes sign; not a ground state");
        last = s;
    }

    // Eigenfunction precondition: Rayleigh quotient + relative residual.
    SchrodingerOperator op(V_k, omega2, Sector::full_line);
    const GridFunction Apsi = op.apply(psi_k);
    double num = 0.0, den = 0.0;
    for (int i = 1; i + 1 < n; ++i) {
        num += Apsi[i] * psi_k[i];
        den += psi_k[i] * psi_k[i];
    }
    const double lambda = num / den;
    double rss = 0.0;
    for (int i = 1; i + 1 < n; ++i) {
        const double r = Apsi[i] - lambda * psi_k[i];
        rss += r * r;
    }
    if (std::sqrt(rss / den) > 1e-6)
        throw invalid_input("darboux_step: psi is not an eigenfunction of this potential");
    if (lambda_out) *lambda_out = lambda;

    // Tail rate from the boundary value of the potential.
    const double kappa2 = std::max(V_k.values.back() - lambda, 0.0);
    const double kappa = std::sqrt(kappa2);
    const TailBlend blend(V_k, kappa);

    const GridFunction dpsi = derivative_5pt(psi_k);
    GridFunction ratio(V_k.grid);   // psi'/psi, blended into the asymptote
    GridFunction lpp(V_k.grid);     // psi''/psi
    const double h2 = V_k.grid.spacing() * V_k.grid.spacing();
    const int c = V_k.grid.center();
    for (int i = 0; i < n; ++i) {
        const double asym_r = (i >= c ? -kappa : kappa);
        const double w = blend.weight(V_k.grid.x(i));
        if (w == 0.0 || std::abs(psi_k[i]) <= tail_eps * peak || i == 0 || i == n - 1) {
            ratio[i] = asym_r;
            lpp[i] = kappa2;
        } else {
            ratio[i] = w * (dpsi[i] / psi_k[i]) + (1.0 - w) * asym_r;
            const double num_lpp = (psi_k[i + 1] - 2.0 * psi_k[i] + psi_k[i - 1]) / (h2 * psi_k[i]);
            lpp[i] = w * num_lpp + (1.0 - w) * kappa2;
        }
    }
    if (log_deriv_out) *log_deriv_out = ratio;

    GridFunction V_next(V_k.grid);
    for (int i = 0; i < n; ++i) V_next[i] = V_k[i] - 2.0 * (lpp[i] - ratio[i] * ratio[i]);
    return V_next;
}

DarbouxCascade run_cascade(const PotentialModel& model, const KinkData& kink, const Grid& grid,
                           double upper) {
    if (grid.sector != Sector::full_line) throw invalid_input("run_cascade: full-line grid expected");
    DarbouxCascade cas;
    cas.omega2 = model.omega2();

    GridFunction V(grid);
    for (int i = 0; i < grid.n; ++i) V[i] = model.derivative(2, kink.H[i]);

    SchrodingerOperator op(V, cas.omega2, Sector::full_line);
    SpectralData spec = eigen_decompose(op, upper);
    cas.N_tilde = spec.count();

    for (int stage = 0; stage < cas.N_tilde; ++stage) {
        const EigenPair& ground = spec.modes.front();

        CascadeStage st;
        st.V = V;
        st.lambda_tilde_sq = ground.lambda_sq;
        GridFunction V_next;

        if (stage == 0) {
            // ker L_1 = span{H'}: the zero mode must match the kink profile,
            // and the step can then use H' itself. Its log-derivative is
            // available in closed form, so V_2 = -V_1 + 2 (H''/H')^2 carries
            // no eigenvector discretization error.
            if (std::abs(ground.lambda_sq) > 1e-6)
                throw numerical_error("run_cascade: lowest eigenvalue of L_1 is not the zero mode");
            double dot_hp = 0.0, n1 = 0.0, n2 = 0.0;
            for (int i = 0; i < grid.n; ++i) {
                dot_hp += ground.phi[i] * kink.Hprime[i];
                n1 += ground.phi[i] * ground.phi[i];
                n2 += kink.Hprime[i] * kink.Hprime[i];
            }
            if (std::abs(dot_hp) / std::sqrt(n1 * n2) < 1.0 - 1e-6)
                throw numerical_error("run_cascade: zero mode does not match H'");

            const KinkSolver solver(model);
            st.psi = kink.Hprime;
            const double hp_norm = l2_norm(st.psi);
            for (double& v : st.psi.values) v /= hp_norm;
            st.log_deriv = GridFunction(grid);
            V_next = GridFunction(grid);
            for (int i = 0; i < grid.n; ++i) {
                const double r = solver.log_derivative_of(kink.H[i]);
                st.log_deriv[i] = r;
                V_next[i] = -V[i] + 2.0 * r * r;
            }
            st.lambda_tilde_sq_grid = 0.0;
        } else {
            // Two-grid step: the eigenvector's O(h^2) profile error is the
            // accuracy bottleneck of the cascade, so extrapolate the
            // log-derivative field from the h and 2h ground states before
            // forming V_{k+1} = -V_k + 2 lambda + 2 (psi'/psi)^2.
            st.psi = ground.phi;
            st.lambda_tilde_sq_grid = ground.lambda_sq_grid;
            const EigenPair coarse = coarse_eigenpair(op, 0);
            const double lam = ground.lambda_sq;  // extrapolated
            const double kappa = std::sqrt(std::max(V.values.back() - lam, 0.0));
            const TailBlend blend(V, kappa);
            const int c = grid.center();

            const GridFunction dfine = derivative_5pt(ground.phi);
            const GridFunction dcoarse = derivative_5pt(coarse.phi);
            const double peak_f = sup_norm(ground.phi);
            const double peak_c = sup_norm(coarse.phi);

            // Richardson correction on shared (even) nodes, interpolated to
            // odd nodes; the corrected ratio then blends into the asymptote.
            const int nc = coarse.phi.size();
            std::vector<double> corr(nc, 0.0);
            for (int ic = 0; ic < nc; ++ic) {
                const int if2 = 2 * ic;
                if (std::abs(coarse.phi[ic]) <= 1e-9 * peak_c ||
                    std::abs(ground.phi[if2]) <= 1e-9 * peak_f)
                    continue;
                const double rf = dfine[if2] / ground.phi[if2];
                const double rc = dcoarse[ic] / coarse.phi[ic];
                corr[ic] = (rf - rc) / 3.0;
            }
            st.log_deriv = GridFunction(grid);
            V_next = GridFunction(grid);
            for (int i = 0; i < grid.n; ++i) {
                const double x = grid.x(i);
                const double asym_r = (i >= c ? -kappa : kappa);
                const double w = blend.weight(x);
                double r = asym_r;
                if (w > 0.0 && i > 0 && i + 1 < grid.n &&
                    std::abs(ground.phi[i]) > 1e-9 * peak_f) {
                    const double raw = dfine[i] / ground.phi[i];
                    double cr;
                    if (i % 2 == 0) {
                        cr = corr[i / 2];
                    } else {
                        const int ic = i / 2;
                        cr = (ic + 1 < nc) ? 0.5 * (corr[ic] + corr[ic + 1]) : corr[ic];
                    }
                    r = w * (raw + cr) + (1.0 - w) * asym_r;
                }
                st.log_deriv[i] = r;
                V_next[i] = -V[i] + 2.0 * lam + 2.0 * r * r;
            }
        }
        cas.stages.push_back(std::move(st));

        V = std::move(V_next);
        op = SchrodingerOperator(V, cas.omega2, Sector::full_line);
        SpectralData next = eigen_decompose(op, upper);

        // Spectrum peeling: exactly one eigenvalue removed, the rest intact.
        if (next.count() != spec.count() - 1)
            throw numerical_error("run_cascade: eigenvalue count did not drop by one");
        for (int j = 0; j < next.count(); ++j)
            if (std::abs(next.modes[j].lambda_sq - spec.modes[j + 1].lambda_sq) > 1e-6)
                throw numerical_error("run_cascade: surviving eigenvalue moved beyond tolerance");
        spec = std::move(next);
    }

    cas.V_D = V;
    GridFunction dev(grid);
    for (int i = 0; i < grid.n; ++i) dev[i] = V[i] - cas.omega2;
    const double amp = sup_norm(dev);
    cas.vd_flat = amp < 1e-4;
    if (!cas.vd_flat) {
        cas.vd_decay_rate = fit_decay_rate(dev, 0.25 * grid.L, 0.75 * grid.L);
        if (cas.vd_decay_rate <= 0.0)
            throw numerical_error("run_cascade: V_D - omega^2 does not decay");
    }
    return cas;
}

RepulsivityReport check_repulsivity(const GridFunction& V_D, double omega2, double tol,
                                    double activity, double gamma) {
    (void)omega2;  // part of the reporting contract; the verdict needs only V_D
    if (V_D.grid.sector != Sector::full_line) throw invalid_input("check_repulsivity: full-line input expected");
    RepulsivityReport rep;
    rep.activity = activity;

    const GridFunction Vp = derivative_3pt(V_D);
    double vp_inf = 0.0;
    for (int i = 1; i + 1 < V_D.size(); ++i) vp_inf = std::max(vp_inf, std::abs(Vp[i]));
    rep.tol = tol >= 0.0 ? tol : 1e-6 * vp_inf * V_D.grid.L;

    rep.max_xVp = -1e300;
    rep.min_xVp = 1e300;
    for (int i = 1; i + 1 < V_D.size(); ++i) {
        const double w = V_D.grid.x(i) * Vp[i];
        rep.max_xVp = std::max(rep.max_xVp, w);
        rep.min_xVp = std::min(rep.min_xVp, w);
    }

    if (rep.max_xVp <= rep.tol && rep.min_xVp < -activity)
        rep.verdict = RepulsivityVerdict::repulsive;
    else if (std::max(std::abs(rep.max_xVp), std::abs(rep.min_xVp)) <= activity)
        rep.verdict = RepulsivityVerdict::flat_degenerate;
    else
        rep.verdict = RepulsivityVerdict::fails;

    if (gamma >= 0.0 && gamma < 1.0) {
        // Relaxed criterion: -(1-gamma) d2/dx2 - 2^{-1/2} x V_D'(x); count its
        // negative eigenvalues. Rescale by 1/(1-gamma) to reuse the stencil.
        GridFunction pot(V_D.grid);
        for (int i = 0; i < V_D.size(); ++i)
            pot[i] = -(V_D.grid.x(i) * (i > 0 && i + 1 < V_D.size() ? Vp[i] : 0.0)) /
                     (std::sqrt(2.0) * (1.0 - gamma));
        SchrodingerOperator op(pot, 0.0, Sector::full_line);
        rep.km22_negative_eigencount = sturm_count(op.matrix(), 0.0);
    }
    return rep;
}

double intertwine_residual(const DarbouxCascade& cascade, const SchrodingerOperator& L1,
                           const GridFunction& f) {
    const double fn = l2_norm(f);
    if (fn == 0.0) return 0.0;

    auto a_star = [&](const GridFunction& g) {
        // A_k* = -d/dx + psi_k'/psi_k, applied for k = 1..N in adjoint order.
        GridFunction cur = g;
        for (const auto& st : cascade.stages) {
            const GridFunction d = derivative_5pt(cur);
            GridFunction next(cur.grid);
            for (int i = 0; i < cur.size(); ++i) next[i] = -d[i] + st.log_deriv[i] * cur[i];
            cur = std::move(next);
        }
        return cur;
    };

    const SchrodingerOperator LD(cascade.V_D, cascade.omega2, Sector::full_line);
    const GridFunction lhs = a_star(L1.apply(f));
    const GridFunction rhs = LD.apply(a_star(f));
    double rss = 0.0;
    const int n = f.size();
    const int guard = 8;  // first-derivative stencils shrink the clean interior
    for (int i = guard; i + guard < n; ++i) {
        const double r = lhs[i] - rhs[i];
        rss += r * r;
    }
    return std::sqrt(rss * f.grid.spacing()) / fn;
}

} // namespace kinklab
