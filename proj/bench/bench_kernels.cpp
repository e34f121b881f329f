// Benchmark: serial reference kernels vs the OpenMP paths on the workloads
// that dominate the verification pipeline. Run with --quick for a reduced
// smoke configuration. Both paths produce identical canonical results; the
// comparison below asserts that while timing.

#include <cstdio>
#include <cstring>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#else
#include <chrono>
static double omp_get_wtime() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}
#endif

#include "kcp/fitter.hpp"
#include "kcp/parallel.hpp"
#include "kcp/system.hpp"

using namespace kcp;

namespace {

int reps = 3;

double time_best(const std::function<void()>& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        double t0 = omp_get_wtime();
        fn();
        best = std::min(best, omp_get_wtime() - t0);
    }
    return best;
}

void report(const char* name, double serial, double parallel, bool match) {
    std::printf("%-34s serial %8.3f s   parallel %8.3f s   speedup %5.2fx   %s\n", name, serial,
                parallel, serial / parallel, match ? "results identical" : "RESULTS DIFFER");
}

} // namespace

int main(int argc, char** argv) {
    bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
    if (quick) reps = 1;

#ifdef _OPENMP
    std::printf("OpenMP: up to %d threads\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel paths fall back to serial\n");
#endif

    PhaseSystem sys = builtin("kc3d-nondegenerate");
    const RationalForm& b1 = sys.find_integral("B1")->form;
    const RationalForm& f = sys.find_integral("F")->form;

    // multiplication kernel on bracket-sized operands
    {
        RationalForm big = poisson_bracket(b1, f); // ~1500 terms
        RationalForm lhs = quick ? b1 : big;
        RationalForm serial_out, parallel_out;
        double ts = time_best([&] { serial_out = mul_serial(lhs, big); });
        double tp = time_best([&] { parallel_out = mul_parallel(lhs, big); });
        report("multiply (bracket-sized operands)", ts, tp, serial_out == parallel_out);
    }

    // nested bracket {B1, {B1, F}}, the heaviest closure target
    {
        RationalForm serial_out, parallel_out;
        double ts = time_best([&] {
            set_max_threads(1);
            serial_out = poisson_bracket(b1, poisson_bracket(b1, f));
        });
        set_max_threads(0);
        double tp =
            time_best([&] { parallel_out = poisson_bracket(b1, poisson_bracket(b1, f)); });
        report("nested bracket {B1,{B1,F}}", ts, tp, serial_out == parallel_out);
    }

    if (!quick) {
        // full ternary closure, 50 exact fits
        ClosureReport serial_rep, parallel_rep;
        double ts = time_best([&] {
            set_max_threads(1);
            serial_rep = ternary_closure(sys);
        });
        set_max_threads(0);
        double tp = time_best([&] { parallel_rep = ternary_closure(sys); });
        bool match = serial_rep.all_ok && parallel_rep.all_ok &&
                     serial_rep.triples.size() == parallel_rep.triples.size();
        for (size_t i = 0; match && i < serial_rep.triples.size(); ++i)
            match = serial_rep.triples[i].value == parallel_rep.triples[i].value;
        report("ternary closure (50 fits)", ts, tp, match);
    } else {
        // one representative structure-function fit
        StructureFunctionFit serial_fit, parallel_fit;
        double ts = time_best([&] {
            set_max_threads(1);
            serial_fit = fit_structure_function(sys, "A2", "B2", "A1");
        });
        set_max_threads(0);
        double tp =
            time_best([&] { parallel_fit = fit_structure_function(sys, "A2", "B2", "A1"); });
        report("structure-function fit F2", ts, tp, serial_fit.F == parallel_fit.F);
    }

    set_max_threads(0);
    return 0;
}
