#include "kinklab/phi8.hpp"

#include "kinklab/errors.hpp"
#include "kinklab/kink.hpp"
#include "kinklab/model.hpp"
#include "kinklab/operator.hpp"

#include <cmath>

namespace kinklab {

namespace {

// Lowest odd-sector eigenvalue (the internal mode) of the eps model.
double internal_eigenvalue(double eps, const Grid& grid) {
    const PotentialModel model = make_phi_family(eps);
    const KinkData kink = compute_kink(model, grid);
    GridFunction V(grid);
    for (int i = 0; i < grid.n; ++i) V[i] = model.derivative(2, kink.H[i]);
    const SchrodingerOperator op(V, model.omega2(), Sector::odd);
    const SpectralData spec = eigen_decompose(op);
    if (spec.count() < 1) throw numerical_error("phi8: odd sector lost its internal mode");
    return spec.modes.front().lambda_sq;
}

// Widen the grid (same spacing) until L >= L_min, keeping n % 4 == 1.
Grid widened(const Grid& grid, double L_min) {
    if (grid.L >= L_min) return grid;
    const double h = grid.spacing();
    int extra = static_cast<int>(std::ceil((L_min - grid.L) / h));
    if (extra % 2 == 1) ++extra;
    return Grid(grid.L + extra * h, grid.n + 2 * extra, grid.sector);
}

} // namespace

double eigenvalue_shift(const std::vector<double>& eps_list, const Grid& grid, double* intercept) {
    if (eps_list.size() < 2) throw invalid_input("eigenvalue_shift: need at least two eps values");
    for (double e : eps_list)
        if (!(e > 0.0 && e <= 0.1)) throw invalid_input("eigenvalue_shift: eps values must lie in (0, 0.1]");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(eps_list.size());
    for (double e : eps_list) {
        const double lam = internal_eigenvalue(e, grid);
        sx += e; sy += lam; sxx += e * e; sxy += e * lam;
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw invalid_input("eigenvalue_shift: degenerate eps list");
    const double slope = (n * sxy - sx * sy) / denom;
    if (intercept) *intercept = (sy - slope * sx) / n;
    return slope;
}

GridFunction tildeV3_closed_form(const Grid& grid) {
    return GridFunction(grid, [](double x) {
        const double s = 1.0 / std::cosh(x / std::sqrt(2.0));
        return 1.2 * s * s + 0.6 * s * s * s * s;
    });
}

GridFunction tildeV3_numeric(double eps, const Grid& grid) {
    if (!(eps > 0.0 && eps <= 0.1)) throw invalid_input("tildeV3_numeric: eps must lie in (0, 0.1]");
    const PotentialModel model = make_phi_family(eps);
    const KinkData kink = compute_kink(model, grid);
    const DarbouxCascade cas = run_cascade(model, kink, grid);
    if (cas.N_tilde != 2)
        throw numerical_error("tildeV3_numeric: expected a two-stage cascade at eps = " + std::to_string(eps));
    GridFunction out(grid);
    for (int i = 0; i < grid.n; ++i) out[i] = (cas.V_D[i] - model.omega2()) / eps;
    return out;
}

double a0_psi_check(const Grid& grid, GridFunction* numeric, GridFunction* closed,
                    double* kernel_coeff) {
    const PotentialModel model = make_phi_family(0.0);
    const KinkData kink = compute_kink(model, grid);
    GridFunction V(grid);
    for (int i = 0; i < grid.n; ++i) V[i] = model.derivative(2, kink.H[i]);
    const SchrodingerOperator odd_op(V, model.omega2(), Sector::odd);
    const SpectralData spec = eigen_decompose(odd_op);
    if (spec.count() < 1) throw numerical_error("a0_psi_check: internal mode missing");
    const EigenPair& pair = spec.modes.front();
    const GridFunction& psi0 = pair.phi;  // unit norm, psi0'(0) > 0

    // (L_0 - 3/2) psi~ = (27/5 - 24 H^2 + 21 H^4) psi_0, psi~ orthogonal to psi_0.
    GridFunction rhs_full(grid);
    for (int i = 0; i < grid.n; ++i) {
        const double H2 = kink.H[i] * kink.H[i];
        rhs_full[i] = (27.0 / 5.0 - 24.0 * H2 + 21.0 * H2 * H2) * psi0[i];
    }
    const GridFunction rhs = odd_restrict(rhs_full);
    const GridFunction sol_half = resolvent_solve(odd_op, pair.lambda_sq_grid, rhs, pair);
    const GridFunction psi_t = odd_extend(sol_half);

    // A* = -d/dx + H''/H' with H''/H' = W'(H)/sqrt(2 W(H)).
    const KinkSolver solver(model);
    const GridFunction dpsi = derivative_5pt(psi_t);
    GridFunction num(grid);
    for (int i = 0; i < grid.n; ++i)
        num[i] = -dpsi[i] + solver.log_derivative_of(kink.H[i]) * psi_t[i];

    GridFunction clo(grid, [](double x) {
        const double y = x / std::sqrt(2.0);
        const double c = std::cosh(y);
        const double s = 1.0 / c;
        return -std::pow(9.0 / 8.0, 0.25) * std::sqrt(2.0) * s *
               (1.2 * std::log(c) - 2.7 * s * s + 3.0 * s * s * s * s);
    });

    // Gauge: both solve the same equation up to a multiple of the kernel
    // direction A* psi_0 (the transformed bound state); fit that multiple.
    const GridFunction dpsi0 = derivative_5pt(psi0);
    GridFunction kern(grid);
    for (int i = 0; i < grid.n; ++i)
        kern[i] = -dpsi0[i] + solver.log_derivative_of(kink.H[i]) * psi0[i];
    double num_c = 0.0, den_c = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        num_c += (num[i] - clo[i]) * kern[i];
        den_c += kern[i] * kern[i];
    }
    const double c_fit = num_c / den_c;
    if (kernel_coeff) *kernel_coeff = c_fit;

    double sup = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        if (std::abs(grid.x(i)) > 10.0) continue;
        sup = std::max(sup, std::abs(num[i] - clo[i] - c_fit * kern[i]));
    }
    if (numeric) *numeric = num;
    if (closed) *closed = clo;
    return sup;
}

Phi8Curves figure1_data(const std::vector<double>& eps_list, const Grid& grid) {
    Phi8Curves out;
    for (double eps : eps_list) {
        if (!(eps >= 0.0 && eps <= 0.9)) throw invalid_input("figure1_data: eps must lie in [0, 0.9]");
        const PotentialModel model = make_phi_family(eps);
        const double offset = 2.0 - 4.0 * eps * eps + 2.0 * std::pow(eps, 4);
        if (std::abs(offset - model.omega2()) > 1e-12)
            throw numerical_error("figure1_data: caption offset disagrees with omega^2");

        const Grid work = widened(grid, 10.5 / model.omega());
        const KinkData kink = compute_kink(model, work);
        // The sweep crosses the threshold where the second eigenvalue merges
        // into the continuum; a mode that close to the edge does not decay
        // inside the box, so the cascade only removes robustly bound ones.
        const double upper = model.omega2() - std::max(1e-3, 0.02 * model.omega2());
        const DarbouxCascade cas = run_cascade(model, kink, work, upper);

        GridFunction V1(work);
        for (int i = 0; i < work.n; ++i) V1[i] = model.derivative(2, kink.H[i]);
        const SpectralData full =
            eigen_decompose(SchrodingerOperator(V1, model.omega2(), Sector::full_line));
        out.eigenvalue_counts[eps] = full.count();

        GridFunction curve(grid);
        const int shift = (work.n - grid.n) / 2;
        for (int i = 0; i < grid.n; ++i) curve[i] = cas.V_D[i + shift] - offset;
        out.curves[eps] = std::move(curve);
    }
    return out;
}

} // namespace kinklab
