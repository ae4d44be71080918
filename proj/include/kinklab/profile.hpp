#ifndef KINKLAB_PROFILE_HPP
#define KINKLAB_PROFILE_HPP

#include "kinklab/grid.hpp"
#include "kinklab/kink.hpp"
#include "kinklab/model.hpp"
#include "kinklab/operator.hpp"
#include "kinklab/resonance.hpp"
#include "kinklab/scattering.hpp"

#include <map>
#include <vector>

namespace kinklab {

// A pair of complex full-line functions: one point of the matrix phase space.
struct VectorField {
    CGridFunction c1, c2;

    VectorField() = default;
    explicit VectorField(const Grid& g) : c1(g), c2(g) {}
};

VectorField conjugate(const VectorField& f);
// Bilinear pairing (J f, g) = int [ f2 g1 - f1 g2 ] dx (no conjugation).
cplx pairJ(const VectorField& f, const VectorField& g);
// Real pairing <J f, g> = Re (J f, conj g).
double pairJ_real(const VectorField& f, const VectorField& g);
double norm2(const VectorField& f);

// Refined profile: coefficient fields phi_m for m in NR up to the requested
// order, frequency corrections lambda_{j m} for m in Lambda_j, and the frame
// Phi_j. Internally everything is assembled against the fine-grid eigenvalues
// so the defining equations hold at the discretization floor; the spectral
// data keeps the extrapolated eigenvalues for reporting.
struct RefinedProfile {
    Grid grid;
    int order = 0;
    ResonanceStructure structure;
    std::vector<double> lambda;        // lambda_j used in the assembly
    std::vector<VectorField> Phi;      // Phi_j = (phi_j, -i lambda_j phi_j)
    std::map<MultiIndex, VectorField> phi;                      // m in NR
    std::map<std::pair<int, MultiIndex>, double> lambda_jm;      // primary (Lambda_j route)
    std::map<std::pair<int, MultiIndex>, double> lambda_jm_conj; // conjugate-equation recomputation
    std::map<MultiIndex, double> residual_rel;                   // defining-equation residual per m
    std::map<MultiIndex, double> scalar_reduction_defect;        // first-component identity defect

    // Assembly context retained for source extraction and the z-checks.
    PotentialModel model;
    GridFunction H;
    std::vector<EigenPair> odd_pairs;  // deflation data per j

    const VectorField& phi_at(const MultiIndex& m) const;
};

RefinedProfile build_refined_profile(const PotentialModel& model, const KinkData& kink,
                                     const SpectralData& odd_spec, const ResonanceStructure& structure,
                                     int order);

// R_m = -E_m for m in R_min: the z^m coefficient of the profile's residual.
std::map<MultiIndex, VectorField> compute_rmin_sources(const RefinedProfile& profile);

struct FgrEntry {
    MultiIndex m;
    double r_m = 0.0;          // sqrt((lambda.m)^2 - omega^2)
    double k_eval = 0.0;       // sqrt(r_m)
    cplx ft_plus, ft_minus;    // combined transform at +-k_eval (raw route)
    double gamma_raw = 0.0;    // route (a): transform of the raw components
    double gamma_pc = 0.0;     // route (b): after explicit discrete-mode removal
    bool nondegenerate = false;
};

struct FgrReport {
    std::vector<FgrEntry> entries;
    double threshold = 0.0;
    bool all_nondegenerate = false;
};

// Fermi-golden-rule coefficients for every m in R_min, computed through the
// distorted Fourier transform of L_1 two ways; both must agree to 1e-3
// relative for the nondegenerate verdict (beyond 1e-2 is an error).
FgrReport fgr_coefficient(const RefinedProfile& profile,
                          const std::map<MultiIndex, VectorField>& sources, const JostData& jost_L1,
                          double omega, double threshold = 1e-8);

// Orthogonality defect of the profile residual at the sampled z: solves the
// 2N frame system for the z_R correction against the modeled resonant part
// Sum z^m R_m, then returns max_zeta |<J R[z], D_z phi[z] zeta>| over the
// standard basis. Scales like |z|^(order+1) as z -> 0.
double profile_orthogonality_check(const RefinedProfile& profile,
                                   const std::map<MultiIndex, VectorField>& sources,
                                   const std::vector<cplx>& z);

} // namespace kinklab

#endif
