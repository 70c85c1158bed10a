#include "polyent/measures.hpp"
#include "polyent/verify.hpp"

#include <benchmark/benchmark.h>

using namespace polyent;

namespace {

void BM_EigHermitian(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const CMatrix rho = random_mixed(DimList{n}, n, 1, 0).density();
  for (auto _ : st) benchmark::DoNotOptimize(eig_hermitian(rho));
}
BENCHMARK(BM_EigHermitian)->Arg(4)->Arg(8)->Arg(16);

void BM_Entropy(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const CMatrix rho = random_mixed(DimList{n}, n, 1, 0).density();
  for (auto _ : st) benchmark::DoNotOptimize(entropy(rho));
}
BENCHMARK(BM_Entropy)->Arg(2)->Arg(4)->Arg(9);

void BM_ConcurrenceTwoQubit(benchmark::State& st) {
  const CMatrix rho = random_mixed(DimList{2, 2}, 3, 1, 0).density();
  for (auto _ : st) benchmark::DoNotOptimize(concurrence_2q(rho));
}
BENCHMARK(BM_ConcurrenceTwoQubit);

void BM_UeDirect(benchmark::State& st) {
  const int db = static_cast<int>(st.range(0));
  const auto m = random_mixed(DimList{2, db}, 2 * db, 1, 0);
  OptimConfig c;
  c.restarts = 4;
  for (auto _ : st) benchmark::DoNotOptimize(ue_direct(m.density(), m.dims(), c).value);
}
BENCHMARK(BM_UeDirect)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_EoaRoof(benchmark::State& st) {
  const int d = static_cast<int>(st.range(0));
  const auto s = random_pure(DimList{d, d, d}, 1, 0);
  OptimConfig c;
  c.restarts = 4;
  const CMatrix rho = s.reduced({0, 1});
  for (auto _ : st) benchmark::DoNotOptimize(eoa_roof(rho, DimList{d, d}, c).value);
}
BENCHMARK(BM_EoaRoof)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_LocalizableEa(benchmark::State& st) {
  const auto s = random_pure(DimList{2, 2, 2, 2}, 1, 0);
  OptimConfig c;
  c.restarts = 4;
  for (auto _ : st) benchmark::DoNotOptimize(localizable_ea(s, ProductRoles{0, 2, 3}, c).value);
}
BENCHMARK(BM_LocalizableEa)->Unit(benchmark::kMillisecond);

void BM_Remark1(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(run_remark1().violations.size());
}
BENCHMARK(BM_Remark1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
