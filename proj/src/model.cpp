#include "kinklab/model.hpp"

#include "kinklab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace kinklab {

namespace {

constexpr int kDerivativeCap = 32;

double horner(const std::vector<double>& c, double u) {
    double v = 0.0;
    for (size_t i = c.size(); i-- > 0;) v = v * u + c[i];
    return v;
}

cplx horner(const std::vector<double>& c, cplx u) {
    cplx v = 0.0;
    for (size_t i = c.size(); i-- > 0;) v = v * u + c[i];
    return v;
}

std::vector<double> differentiate(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
    return d;
}

} // namespace

PotentialModel PotentialModel::from_even_coeffs(std::vector<double> coeffs_even) {
    if (coeffs_even.empty()) throw invalid_input("PotentialModel: no coefficients");
    while (coeffs_even.size() > 1 && coeffs_even.back() == 0.0) coeffs_even.pop_back();

    PotentialModel m;
    m.full_.assign(2 * coeffs_even.size() - 1, 0.0);
    for (size_t j = 0; j < coeffs_even.size(); ++j) m.full_[2 * j] = coeffs_even[j];

    m.max_order_ = kDerivativeCap;
    m.derivs_.reserve(m.max_order_ + 1);
    m.derivs_.push_back(m.full_);
    for (int k = 1; k <= m.max_order_; ++k) m.derivs_.push_back(differentiate(m.derivs_.back()));

    m.locate_zeta();
    return m;
}

double PotentialModel::eval(int order, double u) const { return horner(derivs_[order], u); }

double PotentialModel::derivative(int order, double u) const {
    if (order < 0) throw invalid_input("derivative: negative order");
    if (order > max_order_) throw capability_error("derivative: order beyond cap");
    return eval(order, u);
}

cplx PotentialModel::derivative(int order, cplx u) const {
    if (order < 0) throw invalid_input("derivative: negative order");
    if (order > max_order_) throw capability_error("derivative: order beyond cap");
    return horner(derivs_[order], u);
}

void PotentialModel::locate_zeta() {
    // Smallest positive double root: scan for roots of W' with W ~ 0 there,
    // refine the W' root by bisection down to 1e-14. If W has no double zero
    // (a malformed model), fall back to its smallest positive simple zero so
    // that validate() can report the defect instead of construction failing.
    // Root bound via the even-power representation (Cauchy bound in u^2),
    // much tighter than the bound in u when the leading coefficient is small.
    double cauchy = 0.0;
    const double lead = full_.back();
    for (size_t i = 0; i + 2 < full_.size(); i += 2) cauchy = std::max(cauchy, std::abs(full_[i] / lead));
    const double u_max = std::sqrt(1.0 + cauchy);

    // Resolution fine enough to isolate neighbouring critical points even
    // when the root bound is large.
    const int scan = std::clamp(static_cast<int>(20000.0 * u_max), 20000, 4000000);
    const double du = u_max / scan;
    double scale = 0.0;
    for (int i = 1; i <= scan; ++i) scale = std::max(scale, std::abs(eval(0, i * du)));

    auto bisect = [&](const std::vector<double>& poly, double lo, double hi) {
        for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = horner(poly, mid);
            if (fm == 0.0) return mid;
            if ((fm < 0.0) == (horner(poly, lo) < 0.0)) lo = mid; else hi = mid;
        }
        return 0.5 * (lo + hi);
    };

    const auto& wp = derivs_[1];
    double best = -1.0;
    double prev = horner(wp, du * 1e-6);
    for (int i = 1; i <= scan && best < 0.0; ++i) {
        const double u = i * du;
        const double cur = horner(wp, u);
        if (prev == 0.0 || (prev < 0.0) != (cur < 0.0) || cur == 0.0) {
            const double r = bisect(wp, std::max(du * 1e-6, (i - 1) * du), u);
            if (std::abs(eval(0, r)) <= 1e-10 * std::max(1.0, scale)) best = r;
        }
        prev = cur;
    }

    if (best < 0.0) {
        // No double zero: take the smallest positive simple zero of W itself.
        prev = eval(0, du * 1e-6);
        for (int i = 1; i <= scan && best < 0.0; ++i) {
            const double u = i * du;
            const double cur = eval(0, u);
            if ((prev < 0.0) != (cur < 0.0) || cur == 0.0)
                best = bisect(full_, std::max(du * 1e-6, (i - 1) * du), u);
            prev = cur;
        }
    }
    if (best < 0.0) throw invalid_input("PotentialModel: W has no positive zero");

    zeta_ = best;
    omega2_ = eval(2, zeta_);
    omega_ = omega2_ > 0.0 ? std::sqrt(omega2_) : 0.0;
}

PotentialModel make_phi_family(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon < 1.0)) throw invalid_input("make_phi_family: epsilon must lie in [0,1)");
    // 1/4 (1+e)^2 (u^2-1)^2 (e u^2-1)^2; even coefficients of the product:
    // (u^4-2u^2+1)(e^2 u^4-2e u^2+1)
    //   = e^2 u^8 - 2e(1+e) u^6 + (1+4e+e^2) u^4 - 2(1+e) u^2 + 1.
    const double e = epsilon;
    const double pref = 0.25 * (1.0 + e) * (1.0 + e);
    std::vector<double> even = {
        pref * 1.0,
        pref * (-2.0) * (1.0 + e),
        pref * (1.0 + 4.0 * e + e * e),
        pref * (-2.0) * e * (1.0 + e),
        pref * e * e,
    };
    return PotentialModel::from_even_coeffs(even);
}

ValidationReport validate(const PotentialModel& model, int samples) {
    ValidationReport rep;
    const double z = model.zeta();

    ValidationCheck dz{"W(zeta)=0 and W'(zeta)=0", false, 0.0, z};
    dz.worst = std::max(std::abs(model(z)), std::abs(model.derivative(1, z)));
    dz.pass = dz.worst <= 1e-12;
    rep.checks.push_back(dz);

    ValidationCheck mass{"omega^2 = W''(zeta) > 0", model.omega2() > 0.0, model.omega2(), z};
    rep.checks.push_back(mass);

    ValidationCheck pos{"W > 0 on (-zeta, zeta)", true, 1e300, 0.0};
    for (int i = 1; i < samples - 1; ++i) {
        const double u = -z + 2.0 * z * i / (samples - 1);
        const double w = model(u);
        if (w < pos.worst) { pos.worst = w; pos.at = u; }
    }
    pos.pass = pos.worst > 0.0;
    rep.checks.push_back(pos);

    ValidationCheck even{"W is even", true, 0.0, 0.0};
    for (int i = 0; i < samples; ++i) {
        const double u = 2.0 * z * i / (samples - 1);
        const double d = std::abs(model(u) - model(-u));
        if (d > even.worst) { even.worst = d; even.at = u; }
    }
    even.pass = even.worst <= 1e-12;
    rep.checks.push_back(even);

    rep.all_pass = true;
    for (const auto& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
    return rep;
}

} // namespace kinklab
