#ifndef KINKLAB_OPERATOR_HPP
#define KINKLAB_OPERATOR_HPP

#include "kinklab/grid.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kinklab {

// Symmetric tridiagonal matrix: diag[i] on the diagonal, off[i] coupling
// i and i+1. Plain data; the solvers below own the numerics.
struct Tridiag {
    std::vector<double> diag;
    std::vector<double> off;
    int dim() const { return static_cast<int>(diag.size()); }
};

// Number of eigenvalues strictly below lambda (Sturm sequence count).
int sturm_count(const Tridiag& T, double lambda);
// Solve (T - shift I) x = rhs by LU with partial pivoting. Returns false if a
// pivot collapses entirely (exactly singular to machine precision).
bool tridiag_shifted_solve(const Tridiag& T, double shift, const std::vector<double>& rhs,
                           std::vector<double>& x);

// Finite-difference Schrodinger operator -d2/dx2 + V on a sector:
//   full_line: Dirichlet at +-L, unknowns on the interior nodes;
//   odd:       Dirichlet at 0 and L, unknowns on (0, L).
// Dirichlet at the outer boundary is exponentially accurate for
// sub-threshold eigenfunctions; Dirichlet at 0 is exact for odd functions.
class SchrodingerOperator {
  public:
    SchrodingerOperator() = default;
    // V may be given on the full line even for the odd sector; it is
    // restricted automatically. omega2 is the expected asymptote of V.
    SchrodingerOperator(const GridFunction& V, double omega2, Sector sector);

    const Grid& grid() const { return grid_; }
    const GridFunction& potential() const { return V_; }
    double omega2() const { return omega2_; }
    Sector sector() const { return grid_.sector; }
    // |V(L) - omega^2|, reported so callers can judge truncation quality.
    double boundary_deviation() const;

    int matrix_dim() const { return grid_.node_count() - 2; }
    Tridiag matrix() const;
    // Same operator discretized on the 2h-coarsened grid (used for
    // eigenvalue extrapolation). Requires (n-1)/2 even.
    bool can_coarsen() const;
    Tridiag coarse_matrix() const;

    // Discrete application with Dirichlet ends (end rows copy neighbours;
    // callers measure norms over the interior).
    GridFunction apply(const GridFunction& f) const;
    CGridFunction apply(const CGridFunction& f) const;

    // Matrix vector <-> sector GridFunction embedding.
    GridFunction embed(const std::vector<double>& interior) const;
    std::vector<double> interior(const GridFunction& f) const;

  private:
    Grid grid_;
    GridFunction V_;
    double omega2_ = 0.0;
};

struct EigenPair {
    double lambda_sq = 0.0;       // Richardson-extrapolated eigenvalue (reported)
    double lambda_sq_grid = 0.0;  // Rayleigh value on the fine matrix (residual-consistent)
    GridFunction phi;             // full-line, unit L2 norm
    int parity = 0;               // +1 even, -1 odd, 0 undetermined
    int sign_changes = 0;         // interior sign changes in the operator's sector
    double residual = 0.0;        // ||(T - lambda_grid) v|| / ||v|| on the matrix
};

struct SpectralData {
    Sector sector = Sector::full_line;
    double omega2 = 0.0;
    double upper = 0.0;
    std::vector<EigenPair> modes;  // sorted by lambda_sq
    std::vector<std::string> warnings;

    int count() const { return static_cast<int>(modes.size()); }
    // Odd-parity eigenvalues in (0, omega2).
    int n_odd_internal() const;
};

// All discrete eigenvalues below `upper` (default omega^2 - margin) with
// unit-normalized eigenfunctions. Eigenvalues are extrapolated from the h and
// 2h discretizations; eigenvectors come from inverse iteration on the fine
// matrix. An eigenvalue within `margin` of `upper` adds a boundary-ambiguity
// warning.
SpectralData eigen_decompose(const SchrodingerOperator& op, double upper = -1.0, double margin = 1e-3);

// Rescale to the normalization ||phi||_L2^2 = 1/(2 lambda), sign fixed so
// phi'(0) > 0. Input must be a full-line odd mode.
GridFunction normalize_internal_mode(const GridFunction& phi, double lambda);

// Eigenpair of the 2h-coarsened discretization (index-th from below), with
// phi on the coarse grid. Used for two-grid extrapolation of
// eigenvector-derived fields.
EigenPair coarse_eigenpair(const SchrodingerOperator& op, int index);

// Solve (L - mu2) u = f with Dirichlet ends. If mu2 sits within 1e-6 of an
// eigenvalue the caller must pass that eigenpair; f is projected onto the
// orthogonal complement and the solution returned orthogonal to it.
GridFunction resolvent_solve(const SchrodingerOperator& op, double mu2, const GridFunction& f,
                             const std::optional<EigenPair>& deflate = std::nullopt);
CGridFunction resolvent_solve(const SchrodingerOperator& op, double mu2, const CGridFunction& f,
                              const std::optional<EigenPair>& deflate = std::nullopt);

} // namespace kinklab

#endif
