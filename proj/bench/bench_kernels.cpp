// Serial reference vs OpenMP kernels for the zeta main sum.
//   bench_kernels --benchmark_filter=MainSumMp
#include <benchmark/benchmark.h>

#include <omp.h>

#include "critline/kernels.hpp"

using namespace critline;
using kernels::Mode;

namespace {

void main_sum_d(benchmark::State& st, Mode mode) {
    const long N = st.range(0);
    std::complex<double> s(0.5, 5.0 * N);
    for (auto _ : st) benchmark::DoNotOptimize(kernels::main_sum_d(s, N, mode));
    st.SetItemsProcessed(st.iterations() * N);
    st.counters["threads"] = mode == Mode::Serial ? 1 : omp_get_max_threads();
}

void main_sum_mp(benchmark::State& st, Mode mode) {
    const long N = st.range(0), bits = st.range(1);
    Complex s(Real(0.5, bits), Real(5.0 * N, bits));
    Complex out(bits);
    for (auto _ : st) {
        kernels::main_sum_mp(out, s, N, bits, mode);
        benchmark::DoNotOptimize(out.re.get());
    }
    st.SetItemsProcessed(st.iterations() * N);
    st.counters["threads"] = mode == Mode::Serial ? 1 : omp_get_max_threads();
}

// warm prime terms after a small ordinate step, as in the secant polish
void main_sum_mp_warm(benchmark::State& st) {
    const long N = st.range(0), bits = st.range(1);
    kernels::PrimeState warm;
    Complex out(bits);
    double t = 5.0 * N;
    kernels::main_sum_mp(out, Complex(Real(0.5, bits), Real(t, bits)), N, bits, Mode::Parallel, &warm);
    for (auto _ : st) {
        t += 1e-9;
        kernels::main_sum_mp(out, Complex(Real(0.5, bits), Real(t, bits)), N, bits, Mode::Parallel, &warm);
        benchmark::DoNotOptimize(out.re.get());
    }
    st.SetItemsProcessed(st.iterations() * N);
}

}  // namespace

BENCHMARK_CAPTURE(main_sum_d, serial, Mode::Serial)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);
BENCHMARK_CAPTURE(main_sum_d, parallel, Mode::Parallel)->RangeMultiplier(8)->Range(1 << 10, 1 << 19);
BENCHMARK_CAPTURE(main_sum_mp, serial, Mode::Serial)->ArgsProduct({{1000, 8000}, {116, 350}})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(main_sum_mp, parallel, Mode::Parallel)->ArgsProduct({{1000, 8000}, {116, 350}})->Unit(benchmark::kMillisecond);
BENCHMARK(main_sum_mp_warm)->ArgsProduct({{1000, 8000}, {116, 350}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
