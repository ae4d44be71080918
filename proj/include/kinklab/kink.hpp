#ifndef KINKLAB_KINK_HPP
#define KINKLAB_KINK_HPP

#include "kinklab/grid.hpp"
#include "kinklab/model.hpp"

#include <vector>

namespace kinklab {

// Odd kink H with H'' = W'(H), H(0) = 0, H -> +-zeta, sampled on a full-line
// grid together with H' = sqrt(2 W(H)).
struct KinkData {
    GridFunction H;
    GridFunction Hprime;
    double zeta = 0.0;
    double omega = 0.0;
};

// Profile evaluation at a single point x >= 0 (extended by oddness for the
// grid version). Exposed for oracles and epsilon-sweeps off the grid nodes.
class KinkSolver {
  public:
    KinkSolver(const PotentialModel& model, double quad_tol = 1e-13);

    // x(H) = int_0^H dh / sqrt(2 W(h)) evaluated with the 1/(omega(zeta-h))
    // singularity removed analytically:
    //   x(H) = B(H) + (1/omega) log(zeta / (zeta - H)),
    // where B is the smooth remainder integral.
    double x_of_H(double H) const;
    // Inverse map by safeguarded Newton; residual |x(H) - x| <= 1e-10.
    // Beyond zeta - H < 1e-5 zeta the exponential asymptote
    // H = zeta - c exp(-omega x), c = zeta exp(omega B_inf), takes over.
    double H_at(double x) const;

    // sqrt(2 W(H)) = omega (zeta - |H|) sqrt(Q); stable arbitrarily close to
    // the vacuum, unlike evaluating W directly.
    double Hprime_of(double H) const;
    // H''/H' = W'(H)/sqrt(2 W(H)) along the kink, odd in H, -> -omega.
    double log_derivative_of(double H) const;

    double tail_constant() const { return tail_c_; }

  private:
    double bracket_integrand(double h) const;
    double B_integral(double H) const;

    const PotentialModel* model_;
    double quad_tol_;
    double zeta_, omega_;
    double Q_of(double habs) const;

    // omega^2 (zeta-h)^2 - 2 W(h) has a triple root at zeta; S holds the
    // cofactor polynomial so the subtracted integrand evaluates without
    // cancellation: bracket = S(h) / (omega^3 sqrt(Q) (1 + sqrt(Q))),
    // Q = 1 - (zeta-h) S(h)/omega^2 = 2W/(omega (zeta-h))^2.
    // T is the simple-root cofactor W'(h) = (h - zeta) T(h).
    std::vector<double> S_, T_;
    double B_inf_ = 0.0;     // B(zeta)
    double tail_c_ = 0.0;    // zeta * exp(omega * B_inf)
    double x_switch_ = 0.0;  // where zeta - H crosses 1e-10
};

// Quadrature-inversion kink on the grid. The per-node inversions are
// independent; the parallel version maps them across workers and is bitwise
// identical to the serial reference.
KinkData compute_kink(const PotentialModel& model, const Grid& grid);
KinkData compute_kink_serial(const PotentialModel& model, const Grid& grid);

// d/d eps of the phi^8-family kink at fixed x, by central differences
// (second-order one-sided at eps = 0).
GridFunction kink_epsilon_derivative(double eps, const Grid& grid, double step = 1e-3);

} // namespace kinklab

#endif
