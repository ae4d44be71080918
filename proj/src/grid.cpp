#include "kinklab/grid.hpp"

#include "kinklab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace kinklab {

Grid::Grid(double half_length, int npoints, Sector s) : L(half_length), n(npoints), sector(s) {
    if (L <= 0.0) throw invalid_input("Grid: half length must be positive");
    if (n < 5 || n % 2 == 0) throw invalid_input("Grid: node count must be odd and >= 5");
}

double integrate(const GridFunction& f) {
    const double h = f.grid.spacing();
    double s = 0.0;
    for (double v : f.values) s += v;
    s -= 0.5 * (f.values.front() + f.values.back());
    return s * h;
}

cplx integrate(const CGridFunction& f) {
    const double h = f.grid.spacing();
    cplx s = 0.0;
    for (const cplx& v : f.values) s += v;
    s -= 0.5 * (f.values.front() + f.values.back());
    return s * h;
}

double l2_norm(const GridFunction& f) {
    const double h = f.grid.spacing();
    double s = 0.0;
    for (double v : f.values) s += v * v;
    s -= 0.5 * (f.values.front() * f.values.front() + f.values.back() * f.values.back());
    return std::sqrt(std::max(0.0, s * h));
}

double l2_norm(const CGridFunction& f) {
    const double h = f.grid.spacing();
    double s = 0.0;
    for (const cplx& v : f.values) s += std::norm(v);
    s -= 0.5 * (std::norm(f.values.front()) + std::norm(f.values.back()));
    return std::sqrt(std::max(0.0, s * h));
}

double sup_norm(const GridFunction& f) {
    double s = 0.0;
    for (double v : f.values) s = std::max(s, std::abs(v));
    return s;
}

double sup_norm(const CGridFunction& f) {
    double s = 0.0;
    for (const cplx& v : f.values) s = std::max(s, std::abs(v));
    return s;
}

double inner(const GridFunction& f, const GridFunction& g) {
    const double h = f.grid.spacing();
    double s = 0.0;
    for (int i = 0; i < f.size(); ++i) s += f[i] * g[i];
    s -= 0.5 * (f.values.front() * g.values.front() + f.values.back() * g.values.back());
    return s * h;
}

cplx inner(const CGridFunction& f, const CGridFunction& g) {
    const double h = f.grid.spacing();
    cplx s = 0.0;
    for (int i = 0; i < f.size(); ++i) s += f[i] * g[i];
    s -= 0.5 * (f.values.front() * g.values.front() + f.values.back() * g.values.back());
    return s * h;
}

GridFunction derivative_5pt(const GridFunction& f) {
    const int n = f.size();
    const double h = f.grid.spacing();
    GridFunction d(f.grid);
    for (int i = 2; i + 2 < n; ++i)
        d[i] = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * h);
    if (n >= 3) {
        d[1] = (f[2] - f[0]) / (2.0 * h);
        d[n - 2] = (f[n - 1] - f[n - 3]) / (2.0 * h);
        d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
        d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    }
    return d;
}

GridFunction derivative_3pt(const GridFunction& f) {
    const int n = f.size();
    const double h = f.grid.spacing();
    GridFunction d(f.grid);
    for (int i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    return d;
}

GridFunction second_derivative_3pt(const GridFunction& f) {
    const int n = f.size();
    const double h2 = f.grid.spacing() * f.grid.spacing();
    GridFunction d(f.grid);
    for (int i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
    d[0] = d[1];
    d[n - 1] = d[n - 2];
    return d;
}

CGridFunction second_derivative_3pt(const CGridFunction& f) {
    const int n = f.size();
    const double h2 = f.grid.spacing() * f.grid.spacing();
    CGridFunction d(f.grid);
    for (int i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / h2;
    d[0] = d[1];
    d[n - 1] = d[n - 2];
    return d;
}

GridFunction odd_extend(const GridFunction& half) {
    if (half.grid.sector != Sector::odd) throw invalid_input("odd_extend: function is not in the odd sector");
    Grid full = half.grid.with_sector(Sector::full_line);
    GridFunction out(full);
    const int c = full.center();
    for (int i = 0; i < half.size(); ++i) {
        out[c + i] = half[i];
        out[c - i] = -half[i];
    }
    return out;
}

CGridFunction odd_extend(const CGridFunction& half) {
    if (half.grid.sector != Sector::odd) throw invalid_input("odd_extend: function is not in the odd sector");
    Grid full = half.grid.with_sector(Sector::full_line);
    CGridFunction out(full);
    const int c = full.center();
    for (int i = 0; i < half.size(); ++i) {
        out[c + i] = half[i];
        out[c - i] = -half[i];
    }
    return out;
}

GridFunction odd_restrict(const GridFunction& full) {
    if (full.grid.sector != Sector::full_line) throw invalid_input("odd_restrict: expected a full-line function");
    Grid half = full.grid.with_sector(Sector::odd);
    GridFunction out(half);
    const int c = full.grid.center();
    for (int i = 0; i < out.size(); ++i) out[i] = full[c + i];
    return out;
}

CGridFunction odd_restrict(const CGridFunction& full) {
    if (full.grid.sector != Sector::full_line) throw invalid_input("odd_restrict: expected a full-line function");
    Grid half = full.grid.with_sector(Sector::odd);
    CGridFunction out(half);
    const int c = full.grid.center();
    for (int i = 0; i < out.size(); ++i) out[i] = full[c + i];
    return out;
}

double fit_decay_rate(const GridFunction& f, double x_min, double x_max) {
    // Least-squares slope of log|f| against |x| over [x_min, x_max].
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int i = 0; i < f.size(); ++i) {
        const double x = std::abs(f.grid.x(i));
        const double a = std::abs(f[i]);
        if (x < x_min || x > x_max || a <= 0.0) continue;
        const double y = std::log(a);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++cnt;
    }
    if (cnt < 3) throw numerical_error("fit_decay_rate: not enough usable samples");
    const double denom = cnt * sxx - sx * sx;
    if (denom == 0.0) throw numerical_error("fit_decay_rate: degenerate abscissae");
    return -(cnt * sxy - sx * sy) / denom;
}

} // namespace kinklab
