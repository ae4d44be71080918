#ifndef KINKLAB_GRID_HPP
#define KINKLAB_GRID_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace kinklab {

using cplx = std::complex<double>;

enum class Sector { full_line, odd };

// Uniform symmetric grid on [-L, L]. n is odd so that x = 0 is a node.
// Sector::odd functions are represented on [0, L] only, with Dirichlet
// conditions at x = 0 and x = L.
struct Grid {
    double L = 30.0;
    int n = 6001;
    Sector sector = Sector::full_line;

    Grid() = default;
    Grid(double half_length, int npoints, Sector s = Sector::full_line);

    double spacing() const { return 2.0 * L / (n - 1); }
    int center() const { return (n - 1) / 2; }
    // Number of stored samples for a function in this grid's sector.
    int node_count() const { return sector == Sector::full_line ? n : center() + 1; }
    // Coordinate of stored node i (sector-aware).
    double x(int i) const {
        return sector == Sector::full_line ? -L + i * spacing() : i * spacing();
    }
    Grid with_sector(Sector s) const { return Grid(L, n, s); }
    bool same_layout(const Grid& o) const { return L == o.L && n == o.n && sector == o.sector; }
};

struct GridFunction {
    Grid grid;
    std::vector<double> values;

    GridFunction() = default;
    explicit GridFunction(const Grid& g) : grid(g), values(g.node_count(), 0.0) {}
    template <class F>
    GridFunction(const Grid& g, F&& f) : grid(g), values(g.node_count()) {
        for (int i = 0; i < g.node_count(); ++i) values[i] = f(g.x(i));
    }
    int size() const { return static_cast<int>(values.size()); }
    double& operator[](int i) { return values[i]; }
    double operator[](int i) const { return values[i]; }
};

struct CGridFunction {
    Grid grid;
    std::vector<cplx> values;

    CGridFunction() = default;
    explicit CGridFunction(const Grid& g) : grid(g), values(g.node_count(), cplx(0.0)) {}
    explicit CGridFunction(const GridFunction& f) : grid(f.grid), values(f.values.begin(), f.values.end()) {}
    int size() const { return static_cast<int>(values.size()); }
    cplx& operator[](int i) { return values[i]; }
    cplx operator[](int i) const { return values[i]; }
};

// Trapezoid rule over the stored nodes.
double integrate(const GridFunction& f);
cplx integrate(const CGridFunction& f);
double l2_norm(const GridFunction& f);
double l2_norm(const CGridFunction& f);
double sup_norm(const GridFunction& f);
double sup_norm(const CGridFunction& f);

// Plain L2 inner products (no complex conjugation on either side: the
// bilinear pairing (f,g) = \int f g dx; conjugate explicitly when needed).
double inner(const GridFunction& f, const GridFunction& g);
cplx inner(const CGridFunction& f, const CGridFunction& g);

// Centered first derivative: 5-point interior stencil, one-sided at the ends.
GridFunction derivative_5pt(const GridFunction& f);
// Centered 3-point first and second derivatives.
GridFunction derivative_3pt(const GridFunction& f);
GridFunction second_derivative_3pt(const GridFunction& f);
CGridFunction second_derivative_3pt(const CGridFunction& f);

// Odd reflection of a Sector::odd function onto the full line, and the
// restriction back. Both require the matching layout.
GridFunction odd_extend(const GridFunction& half);
CGridFunction odd_extend(const CGridFunction& half);
GridFunction odd_restrict(const GridFunction& full);
CGridFunction odd_restrict(const CGridFunction& full);

// Fit log|f| ~ a - c|x| on nodes where |f| lies within (floor, cap); returns
// the decay rate c (positive = decaying). Used for tail-rate diagnostics.
double fit_decay_rate(const GridFunction& f, double x_min, double x_max);

} // namespace kinklab

#endif
