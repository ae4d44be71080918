#include "kinklab/profile.hpp"

#include "kinklab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace kinklab {

namespace {

VectorField operator*(cplx a, const VectorField& f) {
    VectorField out = f;
    for (auto& v : out.c1.values) v *= a;
    for (auto& v : out.c2.values) v *= a;
    return out;
}

void add_scaled(VectorField& acc, cplx a, const VectorField& f) {
    for (int i = 0; i < acc.c1.size(); ++i) {
        acc.c1[i] += a * f.c1[i];
        acc.c2[i] += a * f.c2[i];
    }
}

// Monomial z^m = prod z_j^{m+j} conj(z_j)^{m-j}.
cplx monomial(const std::vector<cplx>& z, const MultiIndex& m) {
    cplx v = 1.0;
    for (int j = 0; j < m.N(); ++j) {
        for (int p = 0; p < m.mp[j]; ++p) v *= z[j];
        for (int p = 0; p < m.mm[j]; ++p) v *= std::conj(z[j]);
    }
    return v;
}

// D_z z^m applied to the direction w (real derivative):
//   sum_j [ m+j z^{m - e_j^+} w_j + m-j z^{m - e_j^-} conj(w_j) ].
cplx monomial_derivative(const std::vector<cplx>& z, const MultiIndex& m, const std::vector<cplx>& w) {
    cplx total = 0.0;
    for (int j = 0; j < m.N(); ++j) {
        if (m.mp[j] > 0) {
            MultiIndex r = m;
            r.mp[j] -= 1;
            total += static_cast<double>(m.mp[j]) * monomial(z, r) * w[j];
        }
        if (m.mm[j] > 0) {
            MultiIndex r = m;
            r.mm[j] -= 1;
            total += static_cast<double>(m.mm[j]) * monomial(z, r) * std::conj(w[j]);
        }
    }
    return total;
}

// Dense Gaussian elimination with partial pivoting for the small frame system.
std::vector<double> solve_dense(std::vector<std::vector<double>> A, std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
        if (std::abs(A[piv][col]) < 1e-14)
            throw numerical_error("frame projection matrix is singular (degenerate frame)");
        std::swap(A[piv], A[col]);
        std::swap(b[piv], b[col]);
        for (int r = col + 1; r < n; ++r) {
            const double f = A[r][col] / A[col][col];
            for (int c2 = col; c2 < n; ++c2) A[r][c2] -= f * A[col][c2];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c2 = r + 1; c2 < n; ++c2) s -= A[r][c2] * x[c2];
        x[r] = s / A[r][r];
    }
    return x;
}

struct Assembler {
    const RefinedProfile& p;
    std::vector<GridFunction> Wder;  // W^(1+l)(H) for l = 2..order

    explicit Assembler(const RefinedProfile& prof) : p(prof) {
        Wder.resize(p.order + 2);
        for (int l = 2; l <= p.order; ++l) {
            Wder[l] = GridFunction(p.grid);
            for (int i = 0; i < p.grid.n; ++i) Wder[l][i] = p.model.derivative(1 + l, p.H[i]);
        }
    }

    // g_m second component: sum over l >= 2 of W^(1+l)(H)/l! times the sum of
    // ordered products of first components over m^1 + ... + m^l = m, each
    // m^i in NR with |m^i| >= 1. Ordered tuples are grouped into multisets
    // with weight 1/prod(counts!).
    CGridFunction source_g(const MultiIndex& m) const {
        CGridFunction total(p.grid);
        std::vector<const MultiIndex*> nr;
        for (const auto& kv : p.phi)
            if (kv.first.order() >= 1 && kv.first.order() < m.order()) nr.push_back(&kv.first);

        auto rec = [&](auto&& self, size_t s, const MultiIndex& remaining, int parts,
                       const CGridFunction& acc, double weight) -> void {
            if (remaining.order() == 0) {
                if (parts >= 2) {
                    const GridFunction& wd = Wder[parts];
                    for (int i = 0; i < p.grid.n; ++i) total[i] += weight * wd[i] * acc[i];
                }
                return;
            }
            if (s == nr.size()) return;
            // Zero copies of nr[s]:
            self(self, s + 1, remaining, parts, acc, weight);
            // One or more copies:
            const MultiIndex& part = *nr[s];
            const CGridFunction& ph = p.phi.at(part).c1;
            MultiIndex rem = remaining, rest;
            CGridFunction cur = acc;
            double fact = 1.0;
            for (int copies = 1; subtract(rem, part, rest); ++copies) {
                rem = rest;
                fact *= copies;
                for (int i = 0; i < p.grid.n; ++i) cur[i] = cur[i] * ph[i];
                self(self, s + 1, rem, parts + copies, cur, weight / fact);
            }
        };
        CGridFunction prod(p.grid);
        for (int i = 0; i < p.grid.n; ++i) prod[i] = 1.0;
        rec(rec, 0, m, 0, prod, 1.0);
        return total;
    }

    // E_m = g_m - sum_{m' + n' = m, m' in NR, n' in Lambda_0, |n'| >= 2}
    //       i (lambda_{n'} . m') phi_{m'}. Coefficients not yet present in
    //       lambda_jm (the current unknown) are skipped, which makes this the
    //       "known part" of E for resonant indices.
    VectorField source_E(const MultiIndex& m) const {
        VectorField E(p.grid);
        E.c2 = source_g(m);
        const int N = m.N();
        for (const auto& n : p.structure.Lambda_0) {
            if (n.order() < 2) continue;
            MultiIndex mprime;
            if (!subtract(m, n, mprime)) continue;
            if (mprime.order() < 1) continue;
            auto it = p.phi.find(mprime);
            if (it == p.phi.end()) continue;  // m' not in NR
            double freq = 0.0;
            bool any = false;
            for (int j = 0; j < N; ++j) {
                MultiIndex lam_idx = n;
                lam_idx.mp[j] += 1;  // e^j + n
                auto lam = p.lambda_jm.find({j, lam_idx});
                if (lam == p.lambda_jm.end()) continue;  // not in the expansion (or current unknown)
                freq += lam->second * (mprime.mp[j] - mprime.mm[j]);
                any = true;
            }
            if (any && freq != 0.0) add_scaled(E, cplx(0.0, -freq), it->second);
        }
        return E;
    }
};

} // namespace

VectorField conjugate(const VectorField& f) {
    VectorField out = f;
    for (auto& v : out.c1.values) v = std::conj(v);
    for (auto& v : out.c2.values) v = std::conj(v);
    return out;
}

cplx pairJ(const VectorField& f, const VectorField& g) {
    return inner(f.c2, g.c1) - inner(f.c1, g.c2);
}

double pairJ_real(const VectorField& f, const VectorField& g) {
    return std::real(pairJ(f, conjugate(g)));
}

double norm2(const VectorField& f) {
    const double a = l2_norm(f.c1), b = l2_norm(f.c2);
    return std::sqrt(a * a + b * b);
}

const VectorField& RefinedProfile::phi_at(const MultiIndex& m) const {
    auto it = phi.find(m);
    if (it == phi.end()) throw invalid_input("RefinedProfile: phi_" + m.to_string() + " was not built");
    return it->second;
}

RefinedProfile build_refined_profile(const PotentialModel& model, const KinkData& kink,
                                     const SpectralData& odd_spec, const ResonanceStructure& structure,
                                     int order) {
    if (order < 1) throw invalid_input("build_refined_profile: order must be >= 1");
    if (order > structure.M) throw invalid_input("build_refined_profile: order beyond M");
    const int N = static_cast<int>(structure.lambdas.size());
    if (odd_spec.count() < N) throw invalid_input("build_refined_profile: spectral data missing modes");
    if (model.max_order() < order + 1)
        throw capability_error("build_refined_profile: model derivatives below order+1");

    RefinedProfile p;
    p.grid = kink.H.grid;
    p.order = order;
    p.structure = structure;
    p.model = model;
    p.H = kink.H;

    // Grid-consistent frequencies keep the defining equations exact at the
    // discretization floor; the extrapolated values stay in odd_spec.
    p.lambda.resize(N);
    p.Phi.resize(N);
    p.odd_pairs.assign(odd_spec.modes.begin(), odd_spec.modes.begin() + N);
    for (int j = 0; j < N; ++j) {
        p.lambda[j] = std::sqrt(p.odd_pairs[j].lambda_sq_grid);
        const GridFunction phi_j = normalize_internal_mode(p.odd_pairs[j].phi, p.lambda[j]);
        VectorField Phi(p.grid);
        for (int i = 0; i < p.grid.n; ++i) {
            Phi.c1[i] = phi_j[i];
            Phi.c2[i] = cplx(0.0, -p.lambda[j]) * phi_j[i];
        }
        p.Phi[j] = Phi;
    }

    // Base cases: phi_0 = (H, 0), phi_{e^j} = Phi_j, phi_{conj e^j} = conj Phi_j.
    VectorField base(p.grid);
    for (int i = 0; i < p.grid.n; ++i) base.c1[i] = kink.H[i];
    p.phi[MultiIndex::zero(N)] = base;
    for (int j = 0; j < N; ++j) {
        p.phi[MultiIndex::unit(N, j)] = p.Phi[j];
        p.phi[MultiIndex::unit(N, j).conj()] = conjugate(p.Phi[j]);
        p.lambda_jm[{j, MultiIndex::unit(N, j)}] = p.lambda[j];
    }

    GridFunction V1(p.grid);
    for (int i = 0; i < p.grid.n; ++i) V1[i] = model.derivative(2, kink.H[i]);
    const SchrodingerOperator Lodd(V1, model.omega2(), Sector::odd);

    Assembler assemble(p);

    auto solve_vector = [&](double mu, const VectorField& E, int deflate_j) {
        // Scalar reduction: (L1 - mu^2) phi1 = i mu E1 - E2, phi2 = E1 - i mu phi1.
        CGridFunction rhs_full(p.grid);
        for (int i = 0; i < p.grid.n; ++i) rhs_full[i] = cplx(0.0, mu) * E.c1[i] - E.c2[i];
        CGridFunction rhs = odd_restrict(rhs_full);
        std::optional<EigenPair> defl;
        if (deflate_j >= 0) defl = p.odd_pairs[deflate_j];
        const CGridFunction sol_half = resolvent_solve(Lodd, mu * mu, rhs, defl);
        VectorField out(p.grid);
        out.c1 = odd_extend(sol_half);
        for (int i = 0; i < p.grid.n; ++i) out.c2[i] = E.c1[i] - cplx(0.0, mu) * out.c1[i];
        return out;
    };

    auto record_residual = [&](const MultiIndex& m, double mu, const VectorField& E,
                               const VectorField& sol) {
        // Second component of (L_1 + i mu) sol - E via the discrete operator;
        // the first component vanishes identically by the reduction.
        const SchrodingerOperator Lfull(V1, model.omega2(), Sector::full_line);
        const CGridFunction L1phi = Lfull.apply(sol.c1);
        double rss = 0.0, first = 0.0;
        for (int i = 1; i + 1 < p.grid.n; ++i) {
            const cplx r2 = -L1phi[i] + cplx(0.0, mu) * sol.c2[i] - E.c2[i];
            const cplx r1 = sol.c2[i] + cplx(0.0, mu) * sol.c1[i] - E.c1[i];
            rss += std::norm(r2);
            first = std::max(first, std::abs(r1));
        }
        const double e_norm = norm2(E);
        const double rel = std::sqrt(rss * p.grid.spacing()) / std::max(e_norm, 1e-300);
        p.residual_rel[m] = rel;
        p.scalar_reduction_defect[m] = first;
        if (rel > 1e-4)
            throw numerical_error("refined profile: defining residual " + std::to_string(rel) +
                                  " above 1e-4 at m = " + m.to_string());
    };

    for (int ord = 2; ord <= order; ++ord) {
        // Collect this order's indices; resonant Lambda_j ones first so their
        // conjugates can reuse the freshly computed coefficients.
        std::vector<MultiIndex> todo;
        for (const auto& m : structure.NR)
            if (m.order() == ord) todo.push_back(m);
        std::stable_sort(todo.begin(), todo.end(), [&](const MultiIndex& a, const MultiIndex& b) {
            return structure.lambda_class(a) > structure.lambda_class(b);
        });

        for (const auto& m : todo) {
            const double mu = frequency(m, p.lambda);
            const int jres = structure.lambda_class(m);
            const int jres_conj = structure.lambda_class(m.conj());

            VectorField E = assemble.source_E(m);

            if (jres >= 0) {
                // Solvability fixes the new coefficient:
                // lambda_{j m} = (J E_known, conj Phi_j) / (i (J Phi_j, conj Phi_j)).
                const VectorField Phibar = conjugate(p.Phi[jres]);
                const cplx denom = cplx(0.0, 1.0) * pairJ(p.Phi[jres], Phibar);
                const cplx lam = pairJ(E, Phibar) / denom;
                if (std::abs(lam.imag()) > 1e-8)
                    throw numerical_error("lambda_jm has imaginary residue beyond 1e-8");
                p.lambda_jm[{jres, m}] = lam.real();
                add_scaled(E, cplx(0.0, -lam.real()), p.Phi[jres]);
                VectorField sol = solve_vector(mu, E, jres);
                record_residual(m, mu, E, sol);
                p.phi[m] = std::move(sol);
            } else if (jres_conj >= 0) {
                // The assembled E already carries the primary coefficient
                // (its index landed in lambda_jm when the partner was
                // solved). The conjugate equation's own solvability value is
                //   lambda_conj = lambda_primary - (J E, Phi_j) / (i (J Phibar_j, Phi_j)),
                // recorded for the reality cross-check.
                auto primary = p.lambda_jm.find({jres_conj, m.conj()});
                if (primary == p.lambda_jm.end())
                    throw numerical_error("conjugate resonant index processed before its partner");
                const VectorField& Phi = p.Phi[jres_conj];
                const cplx denom = cplx(0.0, 1.0) * pairJ(conjugate(Phi), Phi);
                const cplx defect = -pairJ(E, Phi) / denom;
                const cplx lam = primary->second + defect;
                if (std::abs(lam.imag()) > 1e-8)
                    throw numerical_error("conjugate-route lambda_jm has imaginary residue beyond 1e-8");
                p.lambda_jm_conj[{jres_conj, m.conj()}] = lam.real();
                VectorField sol = solve_vector(mu, E, jres_conj);
                record_residual(m, mu, E, sol);
                p.phi[m] = std::move(sol);
            } else {
                VectorField sol = solve_vector(mu, E, -1);
                record_residual(m, mu, E, sol);
                p.phi[m] = std::move(sol);
            }
        }
    }
    return p;
}

std::map<MultiIndex, VectorField> compute_rmin_sources(const RefinedProfile& profile) {
    for (const auto& m : profile.structure.R_min)
        if (m.order() > profile.order)
            throw invalid_input("compute_rmin_sources: profile order below max |m| over R_min");
    Assembler assemble(profile);
    std::map<MultiIndex, VectorField> out;
    for (const auto& m : profile.structure.R_min) {
        VectorField E = assemble.source_E(m);
        out[m] = cplx(-1.0, 0.0) * E;
    }
    return out;
}

FgrReport fgr_coefficient(const RefinedProfile& profile,
                          const std::map<MultiIndex, VectorField>& sources, const JostData& jost_L1,
                          double omega, double threshold) {
    constexpr double kPi = 3.14159265358979323846;
    FgrReport rep;
    rep.threshold = threshold;
    rep.all_nondegenerate = true;

    auto gamma_of = [&](const VectorField& R, double r_m, double k) {
        const cplx f1p = distorted_ft(R.c1, jost_L1, k);
        const cplx f2p = distorted_ft(R.c2, jost_L1, k);
        const cplx f1m = distorted_ft(R.c1, jost_L1, -k);
        const cplx f2m = distorted_ft(R.c2, jost_L1, -k);
        const cplx vp = cplx(0.0, -r_m) * f1p + f2p;
        const cplx vm = cplx(0.0, -r_m) * f1m + f2m;
        return std::make_tuple(kPi / (2.0 * std::sqrt(r_m)) * (std::norm(vp) + std::norm(vm)), vp, vm);
    };

    for (const auto& kv : sources) {
        const MultiIndex& m = kv.first;
        const VectorField& R = kv.second;
        FgrEntry e;
        e.m = m;
        const double mu = frequency(m, profile.lambda);
        const double under = mu * mu - omega * omega;
        if (under <= 0.0) throw invalid_input("fgr_coefficient: (lambda.m)^2 <= omega^2 for an R_min index");
        e.r_m = std::sqrt(under);
        e.k_eval = std::sqrt(e.r_m);

        auto [ga, vp, vm] = gamma_of(R, e.r_m, e.k_eval);
        e.gamma_raw = ga;
        e.ft_plus = vp;
        e.ft_minus = vm;

        // Route (b): remove the discrete part explicitly through the
        // symplectic pairing, Pd f = sum_j [ i (Jf, conj Phi_j) Phi_j
        // - i (Jf, Phi_j) conj Phi_j ].
        VectorField Rc = R;
        for (size_t j = 0; j < profile.Phi.size(); ++j) {
            const VectorField& Phi = profile.Phi[j];
            const VectorField Phib = conjugate(Phi);
            const cplx a = cplx(0.0, 1.0) * pairJ(R, Phib);
            const cplx b = cplx(0.0, -1.0) * pairJ(R, Phi);
            add_scaled(Rc, -a, Phi);
            add_scaled(Rc, -b, Phib);
        }
        auto [gb, bp, bm] = gamma_of(Rc, e.r_m, e.k_eval);
        (void)bp;
        (void)bm;
        e.gamma_pc = gb;

        const double scale = std::max({e.gamma_raw, e.gamma_pc, 1e-300});
        if (std::abs(e.gamma_raw - e.gamma_pc) > 1e-2 * scale)
            throw numerical_error("fgr_coefficient: raw and projected routes disagree beyond 1e-2");
        e.nondegenerate = e.gamma_raw >= threshold && e.gamma_pc >= threshold &&
                          std::abs(e.gamma_raw - e.gamma_pc) <= 1e-3 * scale;
        rep.all_nondegenerate = rep.all_nondegenerate && e.nondegenerate;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

double profile_orthogonality_check(const RefinedProfile& profile,
                                   const std::map<MultiIndex, VectorField>& sources,
                                   const std::vector<cplx>& z) {
    const int N = static_cast<int>(profile.lambda.size());
    if (static_cast<int>(z.size()) != N) throw invalid_input("profile_orthogonality_check: z size mismatch");
    double zmag = 0.0;
    for (const cplx& v : z) zmag += std::norm(v);
    zmag = std::sqrt(zmag);
    if (zmag > 0.1) throw invalid_input("profile_orthogonality_check: |z| must be <= 0.1");
    const Grid& g = profile.grid;
    const int n = g.n;

    // phi[z] = sum over NR of z^m phi_m  (includes phi_0 = (H,0)).
    VectorField phiz(g);
    VectorField phitilde(g);  // z-dependent part only
    for (const auto& kv : profile.phi) {
        const cplx zm = monomial(z, kv.first);
        if (kv.first.order() == 0) {
            add_scaled(phiz, zm, kv.second);
        } else {
            add_scaled(phiz, zm, kv.second);
            add_scaled(phitilde, zm, kv.second);
        }
    }

    // F = J (-phi1'' + W'(phi1), phi2) with the static part cancelled
    // analytically (H'' = W'(H)), so the z = 0 defect vanishes identically:
    //   F1 = phi2[z]
    //   F2 = phitilde1'' - (W'(phi1[z]) - W'(H)).
    const CGridFunction d2 = second_derivative_3pt(phitilde.c1);
    VectorField F(g);
    for (int i = 0; i < n; ++i) {
        F.c1[i] = phiz.c2[i];
        F.c2[i] = d2[i] - (profile.model.derivative(1, phiz.c1[i]) -
                           profile.model.derivative(1, cplx(profile.H[i], 0.0)));
    }

    // z-tilde polynomial from the stored coefficients.
    std::vector<cplx> ztilde(N, 0.0);
    for (const auto& kv : profile.lambda_jm) {
        const int j = kv.first.first;
        ztilde[j] += cplx(0.0, -kv.second) * monomial(z, kv.first.second);
    }

    // D_z phi[z] applied to a direction w.
    auto frame = [&](const std::vector<cplx>& w) {
        VectorField out(g);
        for (const auto& kv : profile.phi) {
            if (kv.first.order() == 0) continue;
            const cplx c = monomial_derivative(z, kv.first, w);
            if (c != cplx(0.0)) add_scaled(out, c, kv.second);
        }
        return out;
    };

    VectorField Rhat = F;
    add_scaled(Rhat, cplx(-1.0), frame(ztilde));
    // add_scaled with -1 of the frame of ztilde: Rhat = F - Dphi[z] ztilde.

    // Modeled resonant residual S[z] = sum z^m R_m.
    VectorField S(g);
    for (const auto& kv : sources) add_scaled(S, monomial(z, kv.first), kv.second);

    // Basis directions e_j, i e_j and the 2N x 2N frame system.
    std::vector<std::vector<cplx>> basis;
    for (int j = 0; j < N; ++j) {
        std::vector<cplx> e(N, 0.0);
        e[j] = 1.0;
        basis.push_back(e);
        e[j] = cplx(0.0, 1.0);
        basis.push_back(e);
    }
    std::vector<VectorField> frames;
    for (const auto& b : basis) frames.push_back(frame(b));

    std::vector<std::vector<double>> A(2 * N, std::vector<double>(2 * N));
    std::vector<double> rhs(2 * N);
    for (int a = 0; a < 2 * N; ++a) {
        rhs[a] = pairJ_real(S, frames[a]);
        for (int b = 0; b < 2 * N; ++b) A[a][b] = pairJ_real(frames[b], frames[a]);
    }
    const std::vector<double> w = solve_dense(A, rhs);
    std::vector<cplx> zR(N);
    for (int j = 0; j < N; ++j) zR[j] = cplx(w[2 * j], w[2 * j + 1]);

    VectorField Rz = Rhat;
    add_scaled(Rz, cplx(-1.0), frame(zR));

    double residue = 0.0;
    for (int a = 0; a < 2 * N; ++a)
        residue = std::max(residue, std::abs(pairJ_real(Rz, frames[a])));
    return residue;
}

} // namespace kinklab
