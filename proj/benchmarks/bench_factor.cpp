#include <benchmark/benchmark.h>


#include "opfactor/ansatz.hpp"
#include "opfactor/expr.hpp"
#include "opfactor/gradedfact.hpp"
#include "opfactor/groebner.hpp"

using namespace opfactor;

namespace {

const AlgebraSpec kA1 = AlgebraSpec::weyl(1);
const AlgebraSpec kA2 = AlgebraSpec::weyl(2);
const AlgebraSpec kA3 = AlgebraSpec::weyl(3);

void BM_multiply(benchmark::State& st) {
  const OrePoly a = parse("(x1*d1+x2)^3*(d1+x2*d2)", kA2);
  const OrePoly b = parse("(d1^2+x1*d2+x2)^3", kA2);
  for (auto _ : st) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_multiply);

void BM_factor_multivariate(benchmark::State& st) {
  const VarSet& v = grading::theta_vars(2);
  const CommPoly f = parse_comm("(theta1^3*theta2+7*theta1-2)*(theta2^2-theta1*theta2+3)*(theta1+theta2+1)", v);
  for (auto _ : st) benchmark::DoNotOptimize(commfact::factor_multivariate(f));
}
BENCHMARK(BM_factor_multivariate)->Unit(benchmark::kMillisecond);

void BM_graded_h3(benchmark::State& st) {
  const OrePoly h = parse("x1*x2^2*x3^3*d1*d2^2+x2*x3^3*d2", kA3);
  for (auto _ : st) benchmark::DoNotOptimize(gradedfact::enumerate_graded(h));
}
BENCHMARK(BM_graded_h3)->Unit(benchmark::kMillisecond);

void BM_graded_h4(benchmark::State& st) {
  const OrePoly h = parse("(x1^2*d1+x1*x2*d2)*(d1*d2+d1^2*d2^2*x1*x2)", kA2);
  for (auto _ : st) benchmark::DoNotOptimize(gradedfact::enumerate_graded(h));
}
BENCHMARK(BM_graded_h4)->Unit(benchmark::kMillisecond);

void BM_factor_h1(benchmark::State& st) {
  const OrePoly h = parse("(d1+1)^2*(d1+x1*d2)", kA2);
  for (auto _ : st) benchmark::DoNotOptimize(ansatz::factor(h));
}
BENCHMARK(BM_factor_h1)->Unit(benchmark::kMillisecond);

void BM_factor_h2(benchmark::State& st) {
  const OrePoly h =
      parse("(x1*d1*d2+(x1*d1+3)*x2*d2+x2)*((x1*d1+4)*x1*d2+x1+(x1*d1+1)*x1*x2)", kA2);
  for (auto _ : st) benchmark::DoNotOptimize(ansatz::factor(h));
}
BENCHMARK(BM_factor_h2)->Unit(benchmark::kMillisecond);

void BM_factor_quartic(benchmark::State& st) {
  const OrePoly h = parse("(x1^4-1)*x1*d1^2+(1+7*x1^4)*d1+8*x1^3", kA1);
  for (auto _ : st) benchmark::DoNotOptimize(ansatz::factor(h));
}
BENCHMARK(BM_factor_quartic)->Unit(benchmark::kMillisecond);

void BM_premultiplier(benchmark::State& st) {
  const OrePoly h = parse("d1^3-x1*d1-2", kA1);
  for (auto _ : st) benchmark::DoNotOptimize(ansatz::factor_with_premultiplier(h, 1));
}
BENCHMARK(BM_premultiplier)->Unit(benchmark::kMillisecond);

void BM_factor_a1_product(benchmark::State& st) {
  const OrePoly h = parse("(x1^2-x1*d1+d1^2)*(x1^2+3/2*d1^2)", kA1);
  for (auto _ : st) benchmark::DoNotOptimize(ansatz::factor(h));
}
BENCHMARK(BM_factor_a1_product)->Unit(benchmark::kMillisecond);

void BM_groebner_lex_vs_grevlex(benchmark::State& st) {
  const VarSet v({"a", "b", "c"});
  groebner::PolySystem s{v, {parse_comm("a^2+b*c-2", v), parse_comm("b^2-a*c+1", v), parse_comm("c^2-a*b-1", v)}};
  const bool lex = st.range(0) == 0;
  for (auto _ : st) {
    if (lex) benchmark::DoNotOptimize(groebner::buchberger(s));
    else benchmark::DoNotOptimize(groebner::buchberger_grevlex(s));
  }
  st.SetLabel(lex ? "lex" : "grevlex");
}
BENCHMARK(BM_groebner_lex_vs_grevlex)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
