#include "dtl/derham.hpp"

#include <benchmark/benchmark.h>

using namespace dtl;

namespace {

const FieldDesc F3 = FieldDesc::get(3, 1, 1);

TateApprox C(const PuiseuxApprox& a, int tdeg) { return TateApprox::constant(1, tdeg, a); }
TateApprox t1(int tdeg) { return TateApprox::variable(1, tdeg, 1, F3); }
DrinfeldModule carlitz(int tdeg) { return DrinfeldModule(F3, {C(PuiseuxApprox::from_int(F3, 1), tdeg)}); }
DrinfeldModule rank2(int tdeg) { return DrinfeldModule(F3, {t1(tdeg), C(PuiseuxApprox::from_int(F3, 1), tdeg)}); }

// Fresh module per iteration so the coefficient cache is not reused.
void BM_ExpCoeffsRecursion(benchmark::State& st) {
  PrecisionScope scope(Rational(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(exp_coeffs(rank2(3), 8, SeriesMethod::recursion));
}
BENCHMARK(BM_ExpCoeffsRecursion)->Arg(40)->Arg(80);

void BM_ExpCoeffsPartition(benchmark::State& st) {
  PrecisionScope scope(Rational(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(exp_coeffs(rank2(3), 8, SeriesMethod::partition));
}
BENCHMARK(BM_ExpCoeffsPartition)->Arg(40)->Arg(80);

void BM_ThetaTorsionAndPeriods(benchmark::State& st) {
  PrecisionScope scope(40);
  for (auto _ : st) {
    const DrinfeldModule phi = rank2(static_cast<int>(st.range(0)));
    benchmark::DoNotOptimize(periods_from_torsion(phi, theta_torsion(phi), Rational(35)));
  }
}
BENCHMARK(BM_ThetaTorsionAndPeriods)->Arg(3)->Arg(5);

void BM_FrameWithTheta(benchmark::State& st) {
  PrecisionScope scope(40);
  for (auto _ : st) {
    const DrinfeldModule phi = rank2(3);
    ZFrameData fr = build_frame(phi, 8);
    build_theta(phi, fr, periods_from_torsion(phi, theta_torsion(phi), Rational(35)), 30);
    benchmark::DoNotOptimize(psi_and_rat_check(fr));
  }
}
BENCHMARK(BM_FrameWithTheta)->Unit(benchmark::kMillisecond);

void BM_Legendre(benchmark::State& st) {
  PrecisionScope scope(40);
  for (auto _ : st) {
    const DrinfeldModule phi = st.range(0) == 1 ? carlitz(3) : rank2(3);
    benchmark::DoNotOptimize(legendre_check(phi, periods_from_torsion(phi, theta_torsion(phi), Rational(35)), Rational(25)));
  }
}
BENCHMARK(BM_Legendre)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_ExpInverse(benchmark::State& st) {
  PrecisionScope scope(40);
  const DrinfeldModule phi = rank2(3);
  ZFrameData fr = build_frame(phi, 8);
  build_theta(phi, fr, periods_from_torsion(phi, theta_torsion(phi), Rational(35)), 30);
  psi_and_rat_check(fr);
  const TateApprox h0 = C(PuiseuxApprox::theta_pow(F3, -1), 3) + t1(3) * t1(3);
  for (auto _ : st) benchmark::DoNotOptimize(exp_inverse(phi, fr, h0, Rational(30)));
}
BENCHMARK(BM_ExpInverse)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
