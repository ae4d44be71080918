#ifndef KINKLAB_MODEL_HPP
#define KINKLAB_MODEL_HPP

#include "kinklab/grid.hpp"

#include <string>
#include <vector>

namespace kinklab {

// Even polynomial field potential W(u) with exact derivatives of all orders.
// zeta is the smallest positive double zero of W and omega2 = W''(zeta) > 0.
// Instances are immutable after construction and safe to share across
// threads.
class PotentialModel {
  public:
    // coeffs_even[j] multiplies u^(2j).
    static PotentialModel from_even_coeffs(std::vector<double> coeffs_even);

    double operator()(double u) const { return eval(0, u); }
    double derivative(int order, double u) const;
    cplx derivative(int order, cplx u) const;

    double zeta() const { return zeta_; }
    double omega2() const { return omega2_; }
    double omega() const { return omega_; }
    int max_order() const { return max_order_; }
    const std::vector<double>& coeffs() const { return full_; }

  private:
    double eval(int order, double u) const;
    void locate_zeta();

    std::vector<double> full_;                    // ascending powers, odd entries zero
    std::vector<std::vector<double>> derivs_;     // derivs_[k] = coefficients of W^(k)
    double zeta_ = 0.0, omega2_ = 0.0, omega_ = 0.0;
    int max_order_ = 0;
};

// The phi^8 family W_eps(u) = 1/4 (1+eps)^2 (u^2-1)^2 (eps u^2-1)^2,
// eps in [0,1). eps = 0 is the phi^4 potential 1/4 (u^2-1)^2.
PotentialModel make_phi_family(double epsilon);

struct ValidationCheck {
    std::string name;
    bool pass = false;
    double worst = 0.0;   // worst offending value for this check
    double at = 0.0;      // sample u where it occurred
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_pass = false;
};

// Checks the structural hypotheses on W: double zero at zeta, positive mass,
// positivity on (-zeta, zeta), evenness. Failures are reported, not thrown.
ValidationReport validate(const PotentialModel& model, int samples = 2001);

} // namespace kinklab

#endif
