#ifndef KINKLAB_DARBOUX_HPP
#define KINKLAB_DARBOUX_HPP

#include "kinklab/grid.hpp"
#include "kinklab/kink.hpp"
#include "kinklab/model.hpp"
#include "kinklab/operator.hpp"

#include <string>
#include <vector>

namespace kinklab {

struct CascadeStage {
    GridFunction V;          // potential of this stage (full line)
    GridFunction psi;        // nodeless ground state used for the step
    GridFunction log_deriv;  // psi'/psi with the far-field asymptote spliced in
    double lambda_tilde_sq = 0.0;       // extrapolated eigenvalue removed here
    double lambda_tilde_sq_grid = 0.0;  // fine-matrix value (used in the update)
};

struct DarbouxCascade {
    std::vector<CascadeStage> stages;
    GridFunction V_D;
    double omega2 = 0.0;
    int N_tilde = 0;
    // Fitted exponential rate of |V_D - omega^2|, 0 when the endpoint is flat
    // to working precision.
    double vd_decay_rate = 0.0;
    bool vd_flat = false;
};

enum class RepulsivityVerdict { repulsive, flat_degenerate, fails };

struct RepulsivityReport {
    double max_xVp = 0.0;
    double min_xVp = 0.0;
    double tol = 0.0;
    double activity = 0.0;
    RepulsivityVerdict verdict = RepulsivityVerdict::fails;
    // Filled when the relaxed criterion is requested: negative-eigenvalue
    // count of -(1-gamma) d2/dx2 - 2^{-1/2} x V_D'(x).
    int km22_negative_eigencount = -1;
};

std::string to_string(RepulsivityVerdict v);

// One transformation step V -> V - 2 (log psi)'' with (log psi)'' evaluated as
// psi''/psi - (psi'/psi)^2 by centered differences; the tail where psi drops
// below tail_eps * max|psi| uses the exponential asymptote psi'/psi ->
// -sign(x) sqrt(V(L) - lambda). psi must be a nodeless eigenfunction of the
// current operator.
GridFunction darboux_step(const GridFunction& V_k, const GridFunction& psi_k, double omega2,
                          double* lambda_out = nullptr, GridFunction* log_deriv_out = nullptr,
                          double tail_eps = 1e-12);

// Full cascade: removes every discrete eigenvalue of L_1 = -d2 + W''(H)
// below `upper` (default omega^2 - 1e-3), lowest first, re-running the
// eigensolver each stage. The first stage's ground state is the zero mode,
// cross-checked against H'. Modes within a whisker of the continuum edge
// barely decay inside the box and poison the transformation; callers chasing
// near-threshold families lower `upper` and count the skipped modes
// separately.
DarbouxCascade run_cascade(const PotentialModel& model, const KinkData& kink, const Grid& grid,
                           double upper = -1.0);

// Repulsivity check on x V_D'(x). Defaults follow the verdict conventions:
// tol < 0 means 1e-6 * ||V'||_inf * L, activity is the minimum strength for
// an actively repulsive verdict. gamma >= 0 additionally evaluates the
// relaxed one-negative-eigenvalue criterion.
RepulsivityReport check_repulsivity(const GridFunction& V_D, double omega2, double tol = -1.0,
                                    double activity = 1e-3, double gamma = -1.0);

// || A* L_1 f - L_D A* f || / ||f|| with A* = A_N* ... A_1* composed from
// first-derivative stencils. Discretization-limited; refining h shrinks it.
double intertwine_residual(const DarbouxCascade& cascade, const SchrodingerOperator& L1,
                           const GridFunction& f);

} // namespace kinklab

#endif
