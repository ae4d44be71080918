// Benchmark of the OpenMP kernels against their serial references. Both code
// paths are bitwise identical in output (pure per-item maps), so this is a
// timing comparison only.

#include "kinklab/kink.hpp"
#include "kinklab/model.hpp"
#include "kinklab/parallel.hpp"
#include "kinklab/scattering.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

namespace {

double time_best_of(int reps, const std::function<void()>& body) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        body();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

} // namespace

int main() {
    using namespace kinklab;
    std::printf("workers: %d\n", worker_count());

    const Grid grid(30.0, 6001);
    const PotentialModel model = make_phi_family(0.5);

    KinkData serial_kink, parallel_kink;
    const double t_kink_serial = time_best_of(3, [&] { serial_kink = compute_kink_serial(model, grid); });
    const double t_kink_par = time_best_of(3, [&] { parallel_kink = compute_kink(model, grid); });
    double kink_dev = 0.0;
    for (int i = 0; i < grid.n; ++i)
        kink_dev = std::max(kink_dev, std::abs(serial_kink.H[i] - parallel_kink.H[i]));

    GridFunction V(grid);
    const PotentialModel phi4 = make_phi_family(0.0);
    const KinkData kink4 = compute_kink(phi4, grid);
    for (int i = 0; i < grid.n; ++i) V[i] = phi4.derivative(2, kink4.H[i]);
    const std::vector<double> ks = make_k_grid(phi4.omega(), 200);

    JostData serial_jost, parallel_jost;
    const double t_jost_serial = time_best_of(3, [&] { serial_jost = compute_jost_serial(V, phi4.omega2(), ks); });
    const double t_jost_par = time_best_of(3, [&] { parallel_jost = compute_jost(V, phi4.omega2(), ks); });
    double jost_dev = 0.0;
    for (size_t i = 0; i < ks.size(); ++i)
        jost_dev = std::max(jost_dev, std::abs(serial_jost.T[i] - parallel_jost.T[i]));

    std::printf("%-28s %12s %12s %9s %12s\n", "kernel", "serial [s]", "parallel [s]", "speedup", "max |diff|");
    std::printf("%-28s %12.4f %12.4f %9.2f %12.3e\n", "kink quadrature inversion", t_kink_serial,
                t_kink_par, t_kink_serial / t_kink_par, kink_dev);
    std::printf("%-28s %12.4f %12.4f %9.2f %12.3e\n", "Jost sweep (200 k)", t_jost_serial,
                t_jost_par, t_jost_serial / t_jost_par, jost_dev);
    return 0;
}
