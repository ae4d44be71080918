#ifndef KINKLAB_SCATTERING_HPP
#define KINKLAB_SCATTERING_HPP

#include "kinklab/grid.hpp"
#include "kinklab/operator.hpp"

#include <vector>

namespace kinklab {

// Jost data for -d2/dx2 + V with V -> omega^2: modified Jost solutions
// f_+-(x,k) = exp(+-ikx) m_+-(x,k), m_+- -> 1 at the matching infinity,
// transmission T(k) from the Wronskian of f_+ and f_-.
struct JostData {
    Grid grid;
    GridFunction V;
    double omega2 = 0.0;
    std::vector<double> k_grid;
    std::vector<cplx> T;
    std::vector<cplx> R;
    std::vector<cplx> wronskian;             // x-averaged W[f+, f-] per k
    std::vector<double> wronskian_rel_var;   // max relative deviation across x
    std::vector<std::vector<cplx>> m_plus;   // per k, per node
    std::vector<std::vector<cplx>> m_minus;
    cplx wronskian0;                         // k -> 0 extrapolation
};

// Log-spaced k grid on [k_min, k_max(omega)] with required values spliced in.
std::vector<double> make_k_grid(double omega, int count = 200, double k_min = 1e-3,
                                double k_max = -1.0, const std::vector<double>& extra = {});

// Integrates the Jost pair for every k. The per-k solves are independent;
// the parallel version maps them across workers (bitwise identical to the
// serial reference). Requires |V(+-L) - omega^2| <= 1e-10.
JostData compute_jost(const GridFunction& V, double omega2, const std::vector<double>& k_grid);
JostData compute_jost_serial(const GridFunction& V, double omega2, const std::vector<double>& k_grid);

// True when the k->0 Wronskian stays away from zero, i.e. omega^2 is not a
// threshold resonance. Requires min(k_grid) <= 1e-3.
bool edge_resonance_check(const JostData& jost);

// Distorted Fourier transform associated with the operator behind `jost`:
//   ghat(k)  = (2 pi)^{-1/2} int conj(T(k) e^{ikx} m_+(x, k)) g(x) dx, k > 0
//   ghat(-k) = (2 pi)^{-1/2} int conj(T(k) e^{-ikx} m_-(x, k)) g(x) dx.
// |k| is looked up in k_grid and solved on demand when absent. Sets
// *accuracy_warning when g has not decayed at the grid edges.
cplx distorted_ft(const CGridFunction& g, const JostData& jost, double k,
                  bool* accuracy_warning = nullptr);

// Continuum part of the Plancherel sum: int (|ghat(k)|^2 + |ghat(-k)|^2) dk
// over the stored k grid (trapezoid in k).
double plancherel_continuum(const CGridFunction& g, const JostData& jost);

} // namespace kinklab

#endif
