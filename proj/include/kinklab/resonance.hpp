#ifndef KINKLAB_RESONANCE_HPP
#define KINKLAB_RESONANCE_HPP

#include <string>
#include <vector>

namespace kinklab {

// Multi-index m = (m_+, m_-) in N_0^{2N} over the internal-mode frequencies.
struct MultiIndex {
    std::vector<int> mp, mm;

    MultiIndex() = default;
    MultiIndex(std::vector<int> p, std::vector<int> m) : mp(std::move(p)), mm(std::move(m)) {}
    static MultiIndex zero(int N) { return MultiIndex(std::vector<int>(N, 0), std::vector<int>(N, 0)); }
    static MultiIndex unit(int N, int j) {  // e^j
        MultiIndex e = zero(N);
        e.mp[j] = 1;
        return e;
    }

    int N() const { return static_cast<int>(mp.size()); }
    int order() const {  // |m|
        int s = 0;
        for (int v : mp) s += v;
        for (int v : mm) s += v;
        return s;
    }
    MultiIndex conj() const { return MultiIndex(mm, mp); }  // m -> (m_-, m_+)
    bool operator==(const MultiIndex& o) const { return mp == o.mp && mm == o.mm; }
    // Stable total order: (|m|, m_+, m_-) lexicographic.
    bool operator<(const MultiIndex& o) const {
        const int a = order(), b = o.order();
        if (a != b) return a < b;
        if (mp != o.mp) return mp < o.mp;
        return mm < o.mm;
    }
    std::string to_string() const;
};

// lambda . m = sum_j lambda_j (m_+j - m_-j).
double frequency(const MultiIndex& m, const std::vector<double>& lambdas);
// Partial order: n < m iff componentwise n_+j + n_-j <= m_+j + m_-j and |n| < |m|.
bool precedes(const MultiIndex& n, const MultiIndex& m);
// Componentwise difference m - n when nonnegative.
bool subtract(const MultiIndex& m, const MultiIndex& n, MultiIndex& out);

struct ResonanceStructure {
    std::vector<double> lambdas;
    double omega = 0.0;
    int M = 0;
    std::vector<MultiIndex> R_min;
    std::vector<MultiIndex> NR;
    std::vector<MultiIndex> I_truncated;            // |m| <= 2M slice of I
    std::vector<std::vector<MultiIndex>> Lambda_j;  // per j = 1..N
    std::vector<MultiIndex> Lambda_0;

    bool in_NR(const MultiIndex& m) const;
    // Which Lambda_j (0-based) contains m; -1 if none.
    int lambda_class(const MultiIndex& m) const;
};

// Largest M with (M-1) lambda_1 < omega.
int compute_M(double lambda1, double omega);

// Exhaustive classification of every |m| <= 2M into R_min / NR / I, with
// Lambda_j and Lambda_0 filtered from NR. Frequency comparisons use a 1e-12
// absolute tolerance.
ResonanceStructure enumerate_sets(const std::vector<double>& lambdas, double omega);

struct GenericityReport {
    bool pass = false;
    std::vector<MultiIndex> violations_omega;    // |m| <= M with |lambda.m| = omega
    std::vector<MultiIndex> violations_null;     // |m| <= 2M, lambda.m = 0, m_+ != m_-
    std::vector<MultiIndex> near_resonances;     // within the 1e-6 warning band
};

GenericityReport check_genericity(const ResonanceStructure& s);

} // namespace kinklab

#endif
