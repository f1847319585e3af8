// Compares the serial reference elimination with the OpenMP version on the
// coefficient fields the engine actually uses, plus one end-to-end screening
// kernel computation. Set OMP_NUM_THREADS to vary the parallel width.
#include <benchmark/benchmark.h>

#include <random>

#include "walg/linalg.hpp"
#include "walg/poly.hpp"
#include "walg/screening.hpp"

using namespace walg;

namespace {

Mat<mpq_class> random_rational(int rows, int cols, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  Mat<mpq_class> m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      mpq_class q(num(rng), den(rng));
      q.canonicalize();
      m.at(r, c) = q;
    }
  return m;
}

Mat<RatFunc> random_ratfunc(int rows, int cols, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(-4, 4);
  Mat<RatFunc> m(rows, cols);
  RatFunc k = RatFunc::sym();
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m.at(r, c) = k * RatFunc(num(rng)) + RatFunc(num(rng));
  return m;
}

template <class F>
void bench_rref(benchmark::State& state, const Mat<F>& base, Exec ex) {
  for (auto _ : state) {
    Mat<F> m = base;
    auto piv = rref(m, ex);
    benchmark::DoNotOptimize(piv);
  }
}

}  // namespace

static void BM_rref_rational_serial(benchmark::State& state) {
  int n = (int)state.range(0);
  bench_rref(state, random_rational(n, 2 * n, 7), Exec::serial);
}
static void BM_rref_rational_omp(benchmark::State& state) {
  int n = (int)state.range(0);
  bench_rref(state, random_rational(n, 2 * n, 7), Exec::parallel);
}
BENCHMARK(BM_rref_rational_serial)
    ->Arg(32)
    ->Arg(64)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rref_rational_omp)
    ->Arg(32)
    ->Arg(64)
    ->Unit(benchmark::kMillisecond);

static void BM_rref_ratfunc_serial(benchmark::State& state) {
  int n = (int)state.range(0);
  bench_rref(state, random_ratfunc(n, 2 * n, 11), Exec::serial);
}
static void BM_rref_ratfunc_omp(benchmark::State& state) {
  int n = (int)state.range(0);
  bench_rref(state, random_ratfunc(n, 2 * n, 11), Exec::parallel);
}
BENCHMARK(BM_rref_ratfunc_serial)
    ->Arg(4)
    ->Arg(8)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rref_ratfunc_omp)
    ->Arg(4)
    ->Arg(8)
    ->Unit(benchmark::kMillisecond);

static void BM_joint_kernel_sl3(benchmark::State& state) {
  LieAlg g = build_simple("A2");
  Sl2Triple t = principal_triple(g);
  for (auto _ : state) {
    WSetup S = build_w_setup(g, t, RatFunc::sym());
    KernelBasis kb = joint_kernel(S, (int)state.range(0));
    benchmark::DoNotOptimize(kb.by_weight2);
  }
}
BENCHMARK(BM_joint_kernel_sl3)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
