#include "kinklab/resonance.hpp"

#include "kinklab/errors.hpp"

#include <algorithm>
#include <cmath>

namespace kinklab {

namespace {

constexpr double kFreqTol = 1e-12;

// All m in N_0^{2N} with |m| <= cap, in the stable order.
std::vector<MultiIndex> enumerate_upto(int N, int cap) {
    std::vector<MultiIndex> out;
    MultiIndex cur = MultiIndex::zero(N);
    std::vector<int>* slots[2] = {&cur.mp, &cur.mm};

    // Recursive composition over the 2N slots.
    auto rec = [&](auto&& self, int slot, int remaining) -> void {
        if (slot == 2 * N) {
            out.push_back(cur);
            return;
        }
        int& cell = (*slots[slot / N])[slot % N];
        for (int v = 0; v <= remaining; ++v) {
            cell = v;
            self(self, slot + 1, remaining - v);
        }
        cell = 0;
    };
    rec(rec, 0, cap);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::string MultiIndex::to_string() const {
    std::string s = "(";
    for (int j = 0; j < N(); ++j) s += (j ? "," : "") + std::to_string(mp[j]);
    s += "|";
    for (int j = 0; j < N(); ++j) s += (j ? "," : "") + std::to_string(mm[j]);
    s += ")";
    return s;
}

double frequency(const MultiIndex& m, const std::vector<double>& lambdas) {
    double s = 0.0;
    for (int j = 0; j < m.N(); ++j) s += lambdas[j] * (m.mp[j] - m.mm[j]);
    return s;
}

bool precedes(const MultiIndex& n, const MultiIndex& m) {
    if (n.order() >= m.order()) return false;
    for (int j = 0; j < n.N(); ++j)
        if (n.mp[j] + n.mm[j] > m.mp[j] + m.mm[j]) return false;
    return true;
}

bool subtract(const MultiIndex& m, const MultiIndex& n, MultiIndex& out) {
    out = MultiIndex::zero(m.N());
    for (int j = 0; j < m.N(); ++j) {
        out.mp[j] = m.mp[j] - n.mp[j];
        out.mm[j] = m.mm[j] - n.mm[j];
        if (out.mp[j] < 0 || out.mm[j] < 0) return false;
    }
    return true;
}

bool ResonanceStructure::in_NR(const MultiIndex& m) const {
    return std::find(NR.begin(), NR.end(), m) != NR.end();
}

int ResonanceStructure::lambda_class(const MultiIndex& m) const {
    for (size_t j = 0; j < Lambda_j.size(); ++j)
        if (std::find(Lambda_j[j].begin(), Lambda_j[j].end(), m) != Lambda_j[j].end())
            return static_cast<int>(j);
    return -1;
}

int compute_M(double lambda1, double omega) {
    if (!(lambda1 > 0.0 && lambda1 < omega)) throw invalid_input("compute_M: need 0 < lambda_1 < omega");
    const double q = omega / lambda1;
    // Largest integer strictly below q, with an integer-boundary guard.
    int k = static_cast<int>(std::floor(q));
    if (std::abs(q - std::round(q)) < 1e-12) k = static_cast<int>(std::round(q)) - 1;
    else if (static_cast<double>(k) >= q) --k;
    return k + 1;
}

ResonanceStructure enumerate_sets(const std::vector<double>& lambdas, double omega) {
    if (lambdas.empty()) throw invalid_input("enumerate_sets: need N >= 1 internal modes");
    for (double l : lambdas)
        if (!(l > 0.0)) throw invalid_input("enumerate_sets: lambdas must be positive");
    if (!(omega > 0.0)) throw invalid_input("enumerate_sets: omega must be positive");

    ResonanceStructure s;
    s.lambdas = lambdas;
    s.omega = omega;
    const double l1 = *std::min_element(lambdas.begin(), lambdas.end());
    s.M = compute_M(l1, omega);
    const int N = static_cast<int>(lambdas.size());
    const int cap = 2 * s.M;

    const std::vector<MultiIndex> all = enumerate_upto(N, cap);

    std::vector<MultiIndex> R;
    for (const auto& m : all)
        if (std::abs(frequency(m, lambdas)) > omega + kFreqTol) R.push_back(m);

    for (const auto& m : R) {
        bool minimal = true;
        for (const auto& n : R)
            if (precedes(n, m)) { minimal = false; break; }
        if (minimal) s.R_min.push_back(m);
    }

    for (const auto& m : all) {
        if (std::find(s.R_min.begin(), s.R_min.end(), m) != s.R_min.end()) continue;
        bool dominated = false;
        for (const auto& n : s.R_min)
            if (precedes(n, m)) { dominated = true; break; }
        if (dominated) s.I_truncated.push_back(m);
        else s.NR.push_back(m);
    }

    s.Lambda_j.assign(N, {});
    for (const auto& m : s.NR) {
        const double f = frequency(m, lambdas);
        if (std::abs(f) <= kFreqTol) s.Lambda_0.push_back(m);
        for (int j = 0; j < N; ++j)
            if (std::abs(f - lambdas[j]) <= kFreqTol) s.Lambda_j[j].push_back(m);
    }
    return s;
}

GenericityReport check_genericity(const ResonanceStructure& s) {
    GenericityReport rep;
    const int N = static_cast<int>(s.lambdas.size());
    const std::vector<MultiIndex> all = enumerate_upto(N, 2 * s.M);

    for (const auto& m : all) {
        const double f = std::abs(frequency(m, s.lambdas));
        if (m.order() <= s.M) {
            if (std::abs(f - s.omega) <= 1e-9) rep.violations_omega.push_back(m);
            else if (std::abs(f - s.omega) <= 1e-6) rep.near_resonances.push_back(m);
        }
        if (f <= 1e-9 && m.mp != m.mm) rep.violations_null.push_back(m);
        else if (f <= 1e-6 && f > 1e-9 && m.mp != m.mm) rep.near_resonances.push_back(m);
    }
    rep.pass = rep.violations_omega.empty() && rep.violations_null.empty();
    return rep;
}

} // namespace kinklab
