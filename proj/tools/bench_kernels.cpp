// Wall-time comparison of the serial reference kernels against their
// OpenMP counterparts: matrix assembly, residual mesh sweeps, Gram
// assembly, and the projected power iteration.

#include <chrono>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "volterra/completeness.hpp"
#include "volterra/discretize.hpp"
#include "volterra/quadrature.hpp"

using namespace volterra;

namespace {

double time_once(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-34s %10.3f s %10.3f s %8.2fx\n", name, serial, parallel,
                serial / parallel);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns are serial\n");
#endif
    std::printf("%-34s %12s %12s %9s\n", "kernel", "serial", "parallel", "speedup");

    const AlphaParam alpha(0.5);
    const QuadratureSpec quad = QuadratureSpec::defaults();

    {
        const Grid grid = Grid::graded(2048, default_grading(alpha));
        const SubstitutionMap phi = SubstitutionMap::power(alpha);
        const double s = time_once([&] { build_matrix(phi, grid, Exec::Serial); });
        const double p = time_once([&] { build_matrix(phi, grid, Exec::Parallel); });
        row("build_matrix N=2048", s, p);
    }
    {
        const double s = time_once([&] { residual_f(alpha, 6, quad, 400, Exec::Serial); });
        const double p = time_once([&] { residual_f(alpha, 6, quad, 400, Exec::Parallel); });
        row("residual_f n=6, mesh=400", s, p);
    }
    {
        const double s = time_once([&] { residual_g(alpha, 4, quad, 400, Exec::Serial); });
        const double p = time_once([&] { residual_g(alpha, 4, quad, 400, Exec::Parallel); });
        row("residual_g n=4, mesh=400", s, p);
    }
    {
        const auto one = [](double) { return 1.0; };
        const double s =
            time_once([&] { distance_to_span(one, Family::F, alpha, 12, quad, Exec::Serial); });
        const double p =
            time_once([&] { distance_to_span(one, Family::F, alpha, 12, quad, Exec::Parallel); });
        row("gram assembly f-family N=12", s, p);
    }
    {
        const double s = time_once([&] { invariant_subspace_demo(alpha, 2, 1024, Exec::Serial); });
        const double p = time_once([&] { invariant_subspace_demo(alpha, 2, 1024, Exec::Parallel); });
        row("subspace demo m=2, N=1024", s, p);
    }
    return 0;
}
