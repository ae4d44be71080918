#include "kinklab/scattering.hpp"

#include "kinklab/errors.hpp"
#include "kinklab/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace kinklab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Potential at an off-node point by 4-point Lagrange interpolation.
double v_interp(const GridFunction& V, double x) {
    const int n = V.size();
    const double h = V.grid.spacing();
    const double s = (x + V.grid.L) / h;
    const int i0 = std::clamp(static_cast<int>(std::floor(s)) - 1, 0, n - 4);
    const double t = s - i0;
    const double c0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
    const double c1 = t * (t - 2.0) * (t - 3.0) / 2.0;
    const double c2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
    const double c3 = t * (t - 1.0) * (t - 2.0) / 6.0;
    return c0 * V[i0] + c1 * V[i0 + 1] + c2 * V[i0 + 2] + c3 * V[i0 + 3];
}

struct PairState {
    cplx f, fp;
};

// Fourth-order Magnus propagator for f'' = q(x) f, q = V - omega2 - k^2,
// over a signed step d from x, sampling q at the two Gauss nodes:
//   Omega = [[delta, d], [d qbar, -delta]],
//   qbar = (q+ + q-)/2, delta = sqrt(3) d^2 (q+ - q-)/12.
// exp(Omega) is evaluated in closed form; Omega is traceless, so the step is
// exactly unimodular and Wronskians are preserved to roundoff.
void propagate(PairState& s, const GridFunction& V, double shift, double x, double d) {
    const double g = 0.5 * d * std::sqrt(3.0) / 3.0;
    const double qm = v_interp(V, x + 0.5 * d - g) - shift;
    const double qp = v_interp(V, x + 0.5 * d + g) - shift;
    const double qbar = 0.5 * (qm + qp);
    const double delta = std::sqrt(3.0) * d * d * (qm - qp) / 12.0;

    const double mu2 = delta * delta + d * d * qbar;
    double ch, shm;  // cosh(mu), sinh(mu)/mu
    if (std::abs(mu2) < 1e-12) {
        ch = 1.0 + 0.5 * mu2;
        shm = 1.0 + mu2 / 6.0;
    } else if (mu2 > 0.0) {
        const double mu = std::sqrt(mu2);
        ch = std::cosh(mu);
        shm = std::sinh(mu) / mu;
    } else {
        const double mu = std::sqrt(-mu2);
        ch = std::cos(mu);
        shm = std::sin(mu) / mu;
    }
    const double e11 = ch + shm * delta;
    const double e12 = shm * d;
    const double e21 = shm * d * qbar;
    const double e22 = ch - shm * delta;
    const cplx f = s.f, fp = s.fp;
    s.f = e11 * f + e12 * fp;
    s.fp = e21 * f + e22 * fp;
}

struct SingleK {
    std::vector<cplx> m_plus, m_minus;
    cplx T, R, w_mean;
    double w_rel_var;
};

SingleK solve_single_k(const GridFunction& V, double omega2, double k) {
    const int n = V.size();
    const double h = V.grid.spacing();
    SingleK out;
    out.m_plus.resize(n);
    out.m_minus.resize(n);

    double flat = 0.0;
    for (int i = 0; i < n; ++i) flat = std::max(flat, std::abs(V[i] - omega2));
    if (flat == 0.0) {
        // Exactly free: closed form, keeps the flat endpoint bitwise trivial.
        std::fill(out.m_plus.begin(), out.m_plus.end(), cplx(1.0));
        std::fill(out.m_minus.begin(), out.m_minus.end(), cplx(1.0));
        out.T = 1.0;
        out.R = 0.0;
        out.w_mean = cplx(0.0, -2.0 * k);
        out.w_rel_var = 0.0;
        return out;
    }

    // Propagators act on f'' = (V - omega2 - k^2) f.
    const double shift = omega2 + k * k;
    std::vector<PairState> fplus(n), fminus(n);
    // f_+ from the right edge, inward.
    {
        const double xl = V.grid.x(n - 1);
        PairState s{std::polar(1.0, k * xl), cplx(0.0, k) * std::polar(1.0, k * xl)};
        fplus[n - 1] = s;
        for (int i = n - 1; i > 0; --i) {
            propagate(s, V, shift, V.grid.x(i), -h);
            fplus[i - 1] = s;
        }
    }
    // f_- from the left edge, outward.
    {
        const double x0 = V.grid.x(0);
        PairState s{std::polar(1.0, -k * x0), cplx(0.0, -k) * std::polar(1.0, -k * x0)};
        fminus[0] = s;
        for (int i = 0; i + 1 < n; ++i) {
            propagate(s, V, shift, V.grid.x(i), h);
            fminus[i + 1] = s;
        }
    }

    cplx wsum = 0.0;
    double wmax = 0.0, wmin = 1e300;
    for (int i = 0; i < n; ++i) {
        const cplx w = fplus[i].f * fminus[i].fp - fplus[i].fp * fminus[i].f;
        wsum += w;
        wmax = std::max(wmax, std::abs(w));
        wmin = std::min(wmin, std::abs(w));
        const cplx ephase = std::polar(1.0, -k * V.grid.x(i));
        out.m_plus[i] = fplus[i].f * ephase;
        out.m_minus[i] = fminus[i].f / ephase;
    }
    out.w_mean = wsum / static_cast<double>(n);
    out.w_rel_var = std::abs(out.w_mean) > 0.0 ? (wmax - wmin) / std::abs(out.w_mean) : 0.0;
    out.T = cplx(0.0, -2.0 * k) / out.w_mean;

    // Reflection from W[f_+, conj(f_-)] at the center node.
    const int c = V.grid.center();
    const cplx wb = fplus[c].f * std::conj(fminus[c].fp) - fplus[c].fp * std::conj(fminus[c].f);
    const cplx a = out.w_mean / cplx(0.0, -2.0 * k);
    const cplx b = wb / cplx(0.0, 2.0 * k);
    out.R = b / a;
    return out;
}

template <class Loop>
JostData jost_impl(const GridFunction& V, double omega2, const std::vector<double>& k_grid, Loop loop) {
    if (V.grid.sector != Sector::full_line) throw invalid_input("compute_jost: full-line potential expected");
    if (k_grid.empty()) throw invalid_input("compute_jost: empty k grid");
    for (double k : k_grid)
        if (k <= 0.0) throw invalid_input("compute_jost: k values must be positive");
    const double edge = std::max(std::abs(V.values.front() - omega2), std::abs(V.values.back() - omega2));
    if (edge > 1e-10)
        throw invalid_input("compute_jost: potential has not decayed at the grid edges (domain too small)");

    JostData out;
    out.grid = V.grid;
    out.V = V;
    out.omega2 = omega2;
    out.k_grid = k_grid;
    const int nk = static_cast<int>(k_grid.size());
    out.T.resize(nk);
    out.R.resize(nk);
    out.wronskian.resize(nk);
    out.wronskian_rel_var.resize(nk);
    out.m_plus.resize(nk);
    out.m_minus.resize(nk);

    loop(nk, [&](int i) {
        SingleK s = solve_single_k(V, omega2, k_grid[i]);
        out.T[i] = s.T;
        out.R[i] = s.R;
        out.wronskian[i] = s.w_mean;
        out.wronskian_rel_var[i] = s.w_rel_var;
        out.m_plus[i] = std::move(s.m_plus);
        out.m_minus[i] = std::move(s.m_minus);
    });

    // Linear extrapolation of W(k) to k = 0 from the two smallest k.
    if (nk >= 2) {
        const double k0 = k_grid[0], k1 = k_grid[1];
        out.wronskian0 = out.wronskian[0] - k0 * (out.wronskian[1] - out.wronskian[0]) / (k1 - k0);
    } else {
        out.wronskian0 = out.wronskian[0];
    }
    return out;
}

} // namespace

std::vector<double> make_k_grid(double omega, int count, double k_min, double k_max,
                                const std::vector<double>& extra) {
    if (k_max <= 0.0) k_max = 20.0 * omega;
    if (!(k_min > 0.0 && k_min < k_max)) throw invalid_input("make_k_grid: bad bounds");
    std::vector<double> ks(count);
    const double lr = std::log(k_max / k_min);
    for (int i = 0; i < count; ++i) ks[i] = k_min * std::exp(lr * i / (count - 1));
    for (double e : extra) {
        if (e <= 0.0) throw invalid_input("make_k_grid: extra k must be positive");
        ks.push_back(e);
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-13 * std::max(a, b); }),
             ks.end());
    return ks;
}

JostData compute_jost(const GridFunction& V, double omega2, const std::vector<double>& k_grid) {
    return jost_impl(V, omega2, k_grid, [](int count, auto&& body) { parallel_for(count, body); });
}

JostData compute_jost_serial(const GridFunction& V, double omega2, const std::vector<double>& k_grid) {
    return jost_impl(V, omega2, k_grid, [](int count, auto&& body) { serial_for(count, body); });
}

bool edge_resonance_check(const JostData& jost) {
    if (jost.k_grid.front() > 1e-3 + 1e-15)
        throw invalid_input("edge_resonance_check: k grid must reach down to 1e-3");
    return std::abs(jost.wronskian0) >= 1e-3;
}

cplx distorted_ft(const CGridFunction& g, const JostData& jost, double k, bool* accuracy_warning) {
    if (k == 0.0) throw invalid_input("distorted_ft: k must be nonzero");
    if (!g.grid.same_layout(jost.grid)) throw invalid_input("distorted_ft: grid mismatch");

    if (accuracy_warning) {
        const double edge = std::max(std::abs(g.values.front()), std::abs(g.values.back()));
        *accuracy_warning = edge > 1e-6 * std::max(sup_norm(g), 1e-300);
    }

    const double ka = std::abs(k);
    const std::vector<cplx>* m = nullptr;
    cplx T;
    std::vector<cplx> scratch;
    for (size_t i = 0; i < jost.k_grid.size(); ++i) {
        if (std::abs(jost.k_grid[i] - ka) <= 1e-12 * std::max(1.0, ka)) {
            m = k > 0.0 ? &jost.m_plus[i] : &jost.m_minus[i];
            T = jost.T[i];
            break;
        }
    }
    if (!m) {
        SingleK s = solve_single_k(jost.V, jost.omega2, ka);
        scratch = k > 0.0 ? std::move(s.m_plus) : std::move(s.m_minus);
        m = &scratch;
        T = s.T;
    }

    const int n = g.size();
    const double h = g.grid.spacing();
    cplx sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const cplx e = T * std::polar(1.0, k * g.grid.x(i)) * (*m)[i];
        cplx term = std::conj(e) * g[i];
        if (i == 0 || i == n - 1) term *= 0.5;
        sum += term;
    }
    return sum * h / std::sqrt(2.0 * kPi);
}

double plancherel_continuum(const CGridFunction& g, const JostData& jost) {
    const int nk = static_cast<int>(jost.k_grid.size());
    std::vector<double> density(nk);
    for (int i = 0; i < nk; ++i) {
        const double k = jost.k_grid[i];
        density[i] = std::norm(distorted_ft(g, jost, k)) + std::norm(distorted_ft(g, jost, -k));
    }
    double total = 0.0;
    for (int i = 0; i + 1 < nk; ++i)
        total += 0.5 * (density[i] + density[i + 1]) * (jost.k_grid[i + 1] - jost.k_grid[i]);
    // Close the [0, k_min] gap with a linear ramp; odd-sector transforms
    // vanish at k = 0, so this contributes at the k_min^3 level.
    total += 0.5 * density[0] * jost.k_grid[0];
    return total;
}

} // namespace kinklab
