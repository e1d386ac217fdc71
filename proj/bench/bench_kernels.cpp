// Wall-clock comparison of the OpenMP kernels against the serial reference
// paths: Green-operator assembly and pointwise PV evaluation over all nodes.

#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fracblowup/fraclap.hpp"
#include "fracblowup/kernels.hpp"
#include "fracblowup/mesh.hpp"
#include "fracblowup/parallel.hpp"

using namespace fracblowup;

namespace {

double now() {
#ifdef _OPENMP
    return omp_get_wtime();
#else
    return 0.0;
#endif
}

template <typename F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        double t0 = now();
        f();
        best = std::min(best, now() - t0);
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 512;
    double s = 0.5;
    int threads = apply_thread_cap();
    std::printf("n=%d s=%g threads=%d\n", n, s, threads);

    KernelSet ks = make_kernel_set(1, s);
    auto mesh = std::make_shared<GradedMesh>(
        build_graded_mesh(Domain{DomainKind::Interval, 1}, n, 2.0 / s));

    double t_serial = time_best_of(2, [&] {
        assemble_green_operator(ks, mesh, Parallelism::Serial);
    });
    double t_omp = time_best_of(2, [&] {
        assemble_green_operator(ks, mesh, Parallelism::OpenMP);
    });
    std::printf("green assembly   serial %8.3f ms   openmp %8.3f ms   speedup %.2fx\n",
                1e3 * t_serial, 1e3 * t_omp, t_serial / t_omp);

    FracLapOperator op = make_fraclap_operator(mesh, s);
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = torsion_value(ks, std::abs(mesh->nodes[i]));
    GridFunction gf = make_grid_function(mesh, vals);
    std::vector<int> idx = fraclap_admissible_indices(op);

    double a_serial = time_best_of(3, [&] {
        fraclap_apply_all(op, gf, idx, Parallelism::Serial);
    });
    double a_omp = time_best_of(3, [&] {
        fraclap_apply_all(op, gf, idx, Parallelism::OpenMP);
    });
    std::printf("pv apply (all)   serial %8.3f ms   openmp %8.3f ms   speedup %.2fx\n",
                1e3 * a_serial, 1e3 * a_omp, a_serial / a_omp);
    return 0;
}
