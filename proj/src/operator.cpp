#include "kinklab/operator.hpp"

#include "kinklab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace kinklab {

namespace {

// Deterministic LCG; all randomness in the library is reproducible.
struct Lcg {
    uint64_t state;
    explicit Lcg(uint64_t seed) : state(seed) {}
    double next() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state >> 11) * 0x1.0p-53;
    }
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double nrm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
    for (size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

std::vector<double> mat_apply(const Tridiag& T, const std::vector<double>& v) {
    const int n = T.dim();
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        double s = T.diag[i] * v[i];
        if (i > 0) s += T.off[i - 1] * v[i - 1];
        if (i + 1 < n) s += T.off[i] * v[i + 1];
        out[i] = s;
    }
    return out;
}

// Gershgorin bounds.
void spectral_bounds(const Tridiag& T, double& lo, double& hi) {
    lo = std::numeric_limits<double>::max();
    hi = std::numeric_limits<double>::lowest();
    const int n = T.dim();
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(T.off[i - 1]);
        if (i + 1 < n) r += std::abs(T.off[i]);
        lo = std::min(lo, T.diag[i] - r);
        hi = std::max(hi, T.diag[i] + r);
    }
}

// k-th (0-based) eigenvalue by Sturm bisection within [lo, hi].
double bisect_eigenvalue(const Tridiag& T, int k, double lo, double hi) {
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(T, mid) > k) hi = mid; else lo = mid;
    }
    return 0.5 * (lo + hi);
}

// Inverse iteration at the given shift; returns unit vector and Rayleigh value.
void inverse_iteration(const Tridiag& T, double shift, std::vector<double>& v, double& rayleigh,
                       double& residual) {
    const int n = T.dim();
    Lcg rng(0x9e3779b97f4a7c15ULL);
    v.assign(n, 0.0);
    for (int i = 0; i < n; ++i) v[i] = rng.next() - 0.5;
    double s = nrm2(v);
    for (double& vi : v) vi /= s;

    std::vector<double> next;
    for (int it = 0; it < 30; ++it) {
        if (!tridiag_shifted_solve(T, shift, v, next)) {
            // Exactly singular shift: nudge once.
            shift += 1e-12 * std::max(1.0, std::abs(shift));
            if (!tridiag_shifted_solve(T, shift, v, next))
                throw numerical_error("inverse iteration: singular shifted solve");
        }
        s = nrm2(next);
        for (double& vi : next) vi /= s;
        v.swap(next);
        std::vector<double> Av = mat_apply(T, v);
        rayleigh = dot(v, Av);
        axpy(-rayleigh, v, Av);
        residual = nrm2(Av);
        if (residual <= 1e-12 * std::max(1.0, std::abs(rayleigh))) return;
        shift = rayleigh;
    }
    if (residual > 1e-8)
        throw numerical_error("inverse iteration failed to converge (residual " + std::to_string(residual) + ")");
}

} // namespace

int sturm_count(const Tridiag& T, double lambda) {
    const int n = T.dim();
    int count = 0;
    double d = 1.0;
    const double tiny = 1e-300;
    for (int i = 0; i < n; ++i) {
        const double b2 = i > 0 ? T.off[i - 1] * T.off[i - 1] : 0.0;
        d = (T.diag[i] - lambda) - (i > 0 ? b2 / d : 0.0);
        if (d == 0.0) d = -tiny;
        if (std::abs(d) < tiny) d = d < 0.0 ? -tiny : tiny;
        if (d < 0.0) ++count;
    }
    return count;
}

bool tridiag_shifted_solve(const Tridiag& T, double shift, const std::vector<double>& rhs,
                           std::vector<double>& x) {
    const int n = T.dim();
    // Rows: sub[i], d[i], sup[i], sup2[i] with partial pivoting between
    // adjacent rows (the classic gtsv elimination).
    std::vector<double> sub(n, 0.0), d(n), sup(n, 0.0), sup2(n, 0.0);
    for (int i = 0; i < n; ++i) {
        d[i] = T.diag[i] - shift;
        if (i + 1 < n) sup[i] = T.off[i];
        if (i > 0) sub[i] = T.off[i - 1];
    }
    x = rhs;
    for (int i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) < std::abs(sub[i + 1])) {
            std::swap(d[i], sub[i + 1]);
            std::swap(sup[i], d[i + 1]);
            std::swap(sup2[i], sup[i + 1]);
            std::swap(x[i], x[i + 1]);
        }
        if (d[i] == 0.0) return false;
        const double m = sub[i + 1] / d[i];
        d[i + 1] -= m * sup[i];
        sup[i + 1] -= m * sup2[i];
        x[i + 1] -= m * x[i];
    }
    if (d[n - 1] == 0.0) return false;
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        if (i + 1 < n) s -= sup[i] * x[i + 1];
        if (i + 2 < n) s -= sup2[i] * x[i + 2];
        x[i] = s / d[i];
    }
    return true;
}

SchrodingerOperator::SchrodingerOperator(const GridFunction& V, double omega2, Sector sector)
    : omega2_(omega2) {
    if (V.grid.sector == sector) {
        grid_ = V.grid;
        V_ = V;
    } else if (V.grid.sector == Sector::full_line && sector == Sector::odd) {
        V_ = GridFunction(V.grid.with_sector(Sector::odd));
        const int c = V.grid.center();
        for (int i = 0; i < V_.size(); ++i) V_[i] = V[c + i];
        grid_ = V_.grid;
    } else {
        throw invalid_input("SchrodingerOperator: cannot widen an odd-sector potential");
    }
}

double SchrodingerOperator::boundary_deviation() const {
    return std::abs(V_.values.back() - omega2_);
}

Tridiag SchrodingerOperator::matrix() const {
    const int m = matrix_dim();
    const double h2 = grid_.spacing() * grid_.spacing();
    Tridiag T;
    T.diag.resize(m);
    T.off.assign(m - 1, -1.0 / h2);
    for (int i = 0; i < m; ++i) T.diag[i] = 2.0 / h2 + V_[i + 1];
    return T;
}

bool SchrodingerOperator::can_coarsen() const { return grid_.center() % 2 == 0; }

Tridiag SchrodingerOperator::coarse_matrix() const {
    if (!can_coarsen()) throw invalid_input("coarse_matrix: (n-1)/2 must be even");
    const int nodes = (grid_.node_count() + 1) / 2;  // every other node
    const int m = nodes - 2;
    const double h2c = 4.0 * grid_.spacing() * grid_.spacing();
    Tridiag T;
    T.diag.resize(m);
    T.off.assign(m - 1, -1.0 / h2c);
    for (int i = 0; i < m; ++i) T.diag[i] = 2.0 / h2c + V_[2 * (i + 1)];
    return T;
}

GridFunction SchrodingerOperator::apply(const GridFunction& f) const {
    const int n = f.size();
    const double h2 = grid_.spacing() * grid_.spacing();
    GridFunction out(f.grid);
    for (int i = 1; i + 1 < n; ++i)
        out[i] = (-f[i + 1] + 2.0 * f[i] - f[i - 1]) / h2 + V_[i] * f[i];
    out[0] = out[1];
    out[n - 1] = out[n - 2];
    return out;
}

CGridFunction SchrodingerOperator::apply(const CGridFunction& f) const {
    const int n = f.size();
    const double h2 = grid_.spacing() * grid_.spacing();
    CGridFunction out(f.grid);
    for (int i = 1; i + 1 < n; ++i)
        out[i] = (-f[i + 1] + 2.0 * f[i] - f[i - 1]) / h2 + V_[i] * f[i];
    out[0] = out[1];
    out[n - 1] = out[n - 2];
    return out;
}

GridFunction SchrodingerOperator::embed(const std::vector<double>& interior) const {
    GridFunction out(grid_);
    for (size_t i = 0; i < interior.size(); ++i) out[static_cast<int>(i) + 1] = interior[i];
    return out;
}

std::vector<double> SchrodingerOperator::interior(const GridFunction& f) const {
    std::vector<double> v(matrix_dim());
    for (int i = 0; i < matrix_dim(); ++i) v[i] = f[i + 1];
    return v;
}

int SpectralData::n_odd_internal() const {
    int c = 0;
    for (const auto& m : modes)
        if (m.parity < 0 && m.lambda_sq > 1e-6 && m.lambda_sq < omega2) ++c;
    return c;
}

SpectralData eigen_decompose(const SchrodingerOperator& op, double upper, double margin) {
    SpectralData out;
    out.sector = op.sector();
    out.omega2 = op.omega2();
    if (upper < 0.0) upper = op.omega2() - margin;
    if (upper > op.omega2() - margin + 1e-15)
        throw invalid_input("eigen_decompose: upper must stay below omega^2 - margin");
    out.upper = upper;

    const Tridiag T = op.matrix();
    double glo, ghi;
    spectral_bounds(T, glo, ghi);
    const int k = sturm_count(T, upper);

    const bool coarse_ok = op.can_coarsen();
    Tridiag Tc;
    int kc = 0;
    if (coarse_ok) {
        Tc = op.coarse_matrix();
        kc = sturm_count(Tc, upper + 0.25 * (op.omega2() - upper));
    } else {
        out.warnings.push_back("grid not 2h-coarsenable; eigenvalues reported without extrapolation");
    }

    const Grid full = op.grid().with_sector(Sector::full_line);
    const double h = op.grid().spacing();

    for (int j = 0; j < k; ++j) {
        const double lam_bisect = bisect_eigenvalue(T, j, glo, upper);
        std::vector<double> v;
        double rayleigh = lam_bisect, resid = 0.0;
        inverse_iteration(T, lam_bisect, v, rayleigh, resid);

        EigenPair pair;
        pair.lambda_sq_grid = rayleigh;
        pair.residual = resid;
        pair.lambda_sq = rayleigh;
        if (coarse_ok && j < kc) {
            const double lam_c = bisect_eigenvalue(Tc, j, glo, upper + 0.25 * (op.omega2() - upper));
            pair.lambda_sq = rayleigh + (rayleigh - lam_c) / 3.0;
        }
        if (std::abs(pair.lambda_sq - upper) < margin)
            out.warnings.push_back("eigenvalue " + std::to_string(pair.lambda_sq) +
                                   " lies within the margin of the upper cutoff");

        // Embed in the sector, extend to the full line, unit L2 norm.
        GridFunction sector_fn = op.embed(v);
        const double peak = sup_norm(sector_fn);
        int changes = 0;
        double last = 0.0;
        for (int i = 1; i + 1 < sector_fn.size(); ++i) {
            const double s = sector_fn[i];
            if (std::abs(s) <= 1e-9 * peak) continue;  // skip tail noise
            if (last != 0.0 && s * last < 0.0) ++changes;
            last = s;
        }
        pair.sign_changes = changes;

        GridFunction fullfn = op.sector() == Sector::odd
                                  ? odd_extend(sector_fn)
                                  : sector_fn;
        const double nrm = l2_norm(fullfn);
        if (nrm == 0.0) throw numerical_error("eigen_decompose: zero eigenvector");
        for (double& x : fullfn.values) x /= nrm;

        const int c = full.center();
        if (op.sector() == Sector::odd) {
            pair.parity = -1;
        } else {
            double sym = 0.0, asym = 0.0;
            for (int i = 1; i <= c; ++i) {
                sym += std::abs(fullfn[c + i] + fullfn[c - i]);
                asym += std::abs(fullfn[c + i] - fullfn[c - i]);
            }
            pair.parity = sym <= asym ? -1 : 1;
        }

        // Canonical sign: odd modes rise through 0; even modes positive at 0.
        const double marker = pair.parity < 0 ? fullfn[c + 1] - fullfn[c - 1] : fullfn[c];
        if (marker < 0.0)
            for (double& x : fullfn.values) x = -x;

        pair.phi = std::move(fullfn);
        (void)h;
        out.modes.push_back(std::move(pair));
    }
    std::sort(out.modes.begin(), out.modes.end(),
              [](const EigenPair& a, const EigenPair& b) { return a.lambda_sq < b.lambda_sq; });
    return out;
}

EigenPair coarse_eigenpair(const SchrodingerOperator& op, int index) {
    if (op.sector() != Sector::full_line)
        throw invalid_input("coarse_eigenpair: full-line operators only");
    const Tridiag Tc = op.coarse_matrix();
    double glo, ghi;
    spectral_bounds(Tc, glo, ghi);
    if (sturm_count(Tc, ghi) <= index)
        throw numerical_error("coarse_eigenpair: index beyond the coarse spectrum");
    const double lam = bisect_eigenvalue(Tc, index, glo, ghi);
    std::vector<double> v;
    double rayleigh = lam, resid = 0.0;
    inverse_iteration(Tc, lam, v, rayleigh, resid);

    const Grid coarse(op.grid().L, (op.grid().node_count() + 1) / 2, op.grid().sector);
    EigenPair pair;
    pair.lambda_sq = rayleigh;
    pair.lambda_sq_grid = rayleigh;
    pair.residual = resid;
    GridFunction fn(coarse);
    for (size_t i = 0; i < v.size(); ++i) fn[static_cast<int>(i) + 1] = v[i];
    const double nrm = l2_norm(fn);
    for (double& x : fn.values) x /= nrm;
    pair.phi = std::move(fn);
    return pair;
}

GridFunction normalize_internal_mode(const GridFunction& phi, double lambda) {
    if (lambda <= 0.0) throw invalid_input("normalize_internal_mode: lambda must be positive");
    if (phi.grid.sector != Sector::full_line)
        throw invalid_input("normalize_internal_mode: expected a full-line function");
    const double nrm2 = inner(phi, phi);
    if (nrm2 <= 0.0) throw invalid_input("normalize_internal_mode: zero function");
    GridFunction out = phi;
    const double target = 1.0 / (2.0 * lambda);
    const double scale = std::sqrt(target / nrm2);
    for (double& x : out.values) x *= scale;
    const int c = out.grid.center();
    if (out[c + 1] - out[c - 1] < 0.0)
        for (double& x : out.values) x = -x;
    return out;
}

namespace {

GridFunction resolvent_solve_real(const SchrodingerOperator& op, double mu2, const GridFunction& f,
                                  const std::optional<EigenPair>& deflate) {
    if (mu2 >= op.omega2()) throw invalid_input("resolvent_solve: mu^2 must lie below omega^2");
    const Tridiag T = op.matrix();
    std::vector<double> rhs = op.interior(f);

    std::vector<double> vdef;
    double shift = mu2;
    if (deflate) {
        GridFunction def_sector = deflate->phi;
        if (op.sector() == Sector::odd) def_sector = odd_restrict(deflate->phi);
        vdef = op.interior(def_sector);
        const double nn = nrm2(vdef);
        for (double& x : vdef) x /= nn;
        axpy(-dot(rhs, vdef), vdef, rhs);
        if (std::abs(mu2 - deflate->lambda_sq_grid) < 1e-6) {
            shift = deflate->lambda_sq_grid;
            shift += 1e-9 * std::max(1.0, std::abs(shift));  // lift the singular direction
        }
    }

    const double fnorm = nrm2(rhs);
    std::vector<double> x(rhs.size(), 0.0), r = rhs, dx;
    for (int pass = 0; pass < 6; ++pass) {
        if (!tridiag_shifted_solve(T, shift, r, dx))
            throw numerical_error("resolvent_solve: singular tridiagonal factorization");
        axpy(1.0, dx, x);
        if (deflate) axpy(-dot(x, vdef), vdef, x);
        // true residual wrt the unshifted mu2
        std::vector<double> Ax = mat_apply(T, x);
        r = rhs;
        for (size_t i = 0; i < r.size(); ++i) r[i] -= Ax[i] - mu2 * x[i];
        if (deflate) axpy(-dot(r, vdef), vdef, r);
        if (nrm2(r) <= 1e-10 * std::max(fnorm, 1e-300)) break;
    }
    if (fnorm > 0.0 && nrm2(r) > 1e-9 * fnorm)
        throw numerical_error(deflate ? "resolvent_solve: deflated solve failed to converge"
                                      : "resolvent_solve: near-singular shift, supply a deflation eigenpair");
    return op.embed(x);
}

} // namespace

GridFunction resolvent_solve(const SchrodingerOperator& op, double mu2, const GridFunction& f,
                             const std::optional<EigenPair>& deflate) {
    return resolvent_solve_real(op, mu2, f, deflate);
}

CGridFunction resolvent_solve(const SchrodingerOperator& op, double mu2, const CGridFunction& f,
                              const std::optional<EigenPair>& deflate) {
    GridFunction re(f.grid), im(f.grid);
    for (int i = 0; i < f.size(); ++i) {
        re[i] = f[i].real();
        im[i] = f[i].imag();
    }
    const GridFunction ure = resolvent_solve_real(op, mu2, re, deflate);
    const GridFunction uim = resolvent_solve_real(op, mu2, im, deflate);
    CGridFunction out(f.grid);
    for (int i = 0; i < f.size(); ++i) out[i] = cplx(ure[i], uim[i]);
    return out;
}

} // namespace kinklab
