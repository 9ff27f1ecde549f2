#include <doctest.h>

#include <random>
#include <set>

#include "opfactor/ansatz.hpp"
#include "opfactor/errors.hpp"
#include "opfactor/expr.hpp"
#include "opfactor/gradedfact.hpp"
#include "support.hpp"

using namespace opfactor;
using namespace opfactor::ansatz;

namespace {

const char* const kH1 = "(d1+1)^2*(d1+x1*d2)";
const char* const kP2 = "x1*d1*d2+(x1*d1+3)*x2*d2+x2";
const char* const kQ2 = "(x1*d1+4)*x1*d2+x1+(x1*d1+1)*x1*x2";

// Some factorization whose first c factors multiply to a scalar multiple of a.
bool has_grouping(const std::vector<Factorization>& fs, const OrePoly& a) {
  const OrePoly target = a.monic();
  for (const auto& f : fs) {
    OrePoly acc = OrePoly::constant(a.algebra(), Rational(1));
    for (std::size_t c = 0; c + 1 < f.factors.size(); ++c) {
      acc = acc * f.factors[c];
      if (acc.monic() == target) return true;
    }
  }
  return false;
}

AnsatzInstance running_instance() {
  const AlgebraSpec a2 = AlgebraSpec::weyl(2);
  const VarSet& th = grading::theta_vars(2);
  AnsatzInstance inst;
  inst.h = parse(std::string("(") + kP2 + ")*(" + kQ2 + ")", a2);
  for (const auto& [z, part] : grading::graded_decomposition(inst.h)) inst.M.insert(inst.M.begin(), z);
  inst.candidate = {GradedPart::make({0, 1}, parse_comm("theta1", th)),
                    GradedPart::make({-1, 1}, parse_comm("theta1+4", th)),
                    GradedPart::make({0, -1}, parse_comm("1", th)),
                    GradedPart::make({-1, -1}, parse_comm("theta1+1", th))};
  inst.eta_degrees = {{0, 1}, {0, 0}, {0, -1}};
  inst.mu_degrees = {{-1, 1}, {-1, 0}, {-1, -1}};
  inst.theta_bounds = {theta_degree_bound(inst.h, 1), theta_degree_bound(inst.h, 2)};
  return inst;
}

OrePoly random_operator(std::mt19937_64& rng, const AlgebraSpec& alg) {
  std::uniform_int_distribution<unsigned> ex(0, 2);
  std::uniform_int_distribution<int> nterms(1, 3), coef(-3, 3);
  for (;;) {
    OrePoly p(alg);
    const int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
      const unsigned a = ex(rng);
      const unsigned b = ex(rng);
      if (a + b > 2) continue;
      p.add_term({a, b}, Rational(coef(rng)));
    }
    if (!p.is_zero() && !p.is_constant()) return p.monic();
  }
}

}  // namespace

TEST_CASE("gamma: closed form") {
  const VarSet& th1 = grading::theta_vars(1);
  CHECK(gamma({2, -1}, {3, -4}).is_one());
  CHECK(gamma({-1}, {1}) == parse_comm("theta1", th1));
  CHECK(gamma({1}, {-1}) == parse_comm("theta1+1", th1));
  CHECK(gamma({-2}, {1}) == parse_comm("theta1-1", th1));
  CHECK(gamma({3}, {-1}) == parse_comm("theta1+3", th1));
  CHECK_THROWS_AS(gamma({1}, {1, 2}), MismatchError);
}

TEST_CASE("property: gamma agrees with normal ordering") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> nn(1, 3), v(-4, 4);
  for (int it = 0; it < testsupport::kPropertyCases; ++it) {
    const std::size_t n = static_cast<std::size_t>(nn(rng));
    DegreeVector a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = v(rng);
      b[i] = v(rng);
    }
    CHECK(gamma(a, b) == grading::tail_product(a, b, AlgebraSpec::weyl(n)));
  }
}

TEST_CASE("theta_degree_bound") {
  const AlgebraSpec a2 = AlgebraSpec::weyl(2);
  const OrePoly h2 = parse(std::string("(") + kP2 + ")*(" + kQ2 + ")", a2);
  CHECK(theta_degree_bound(h2, 1) == 2);
  CHECK(theta_degree_bound(h2, 2) == 2);
  CHECK(theta_degree_bound(parse("x1", a2), 1) == 0);
  CHECK_THROWS_AS(theta_degree_bound(h2, 0), DomainError);
  CHECK_THROWS_AS(theta_degree_bound(h2, 3), DomainError);
}

TEST_CASE("extreme candidates and degree window of the finite-degree example") {
  const AlgebraSpec a2 = AlgebraSpec::weyl(2);
  const OrePoly h = parse("x2*d1*d2+d1+x1*x2*d1^2+4*d2+4*x1*d1", a2);
  const auto cands = extreme_candidates(h);
  bool found = false;
  for (const auto& c : cands) {
    if (grading::from_theta_form(c.p_top, a2) == parse("d2", a2) &&
        grading::from_theta_form(c.q_top, a2) == parse("x2*d1", a2) &&
        grading::from_theta_form(c.p_bot, a2) == parse("x1*d1", a2) &&
        grading::from_theta_form(c.q_bot, a2) == parse("4", a2))
      found = true;
    CHECK(grading::compare_degrees(c.p_top.z, c.p_bot.z) > 0);
    CHECK(grading::compare_degrees(c.q_top.z, c.q_bot.z) > 0);
  }
  CHECK(found);
  const auto [eta, mu] = degree_window(h, {0, 1}, {0, 0}, {1, -1}, {0, 0});
  CHECK(eta == std::vector<DegreeVector>{{0, 1}, {0, 0}});
  CHECK(mu == std::vector<DegreeVector>{{1, -1}, {0, 1}, {0, 0}});
  CHECK_THROWS_AS(degree_window(h, {0, 1}, {0, 0}, {1, 0}, {0, 0}), DomainError);
  CHECK_THROWS_AS(extreme_candidates(parse("x1*d2", a2)), DomainError);
  // equal extremes: nothing in between
  const auto [e1, m1] = degree_window(parse("d1+x1*d1^2", AlgebraSpec::weyl(1)), {1}, {1}, {0}, {0});
  CHECK(e1.size() == 1);
  CHECK(m1.size() == 1);
}

TEST_CASE("build_system: the running example") {
  const AnsatzInstance inst = running_instance();
  const AnsatzSystem sys = build_system(inst);
  CHECK(sys.nu == 9);
  CHECK(sys.coefficient_unknowns == 9);
  CHECK(sys.system.unknowns.size() == 9);
  const auto gb = groebner::buchberger(sys.system);
  const VarSet& u = sys.system.unknowns;
  std::vector<CommPoly> expect;
  for (int i = 8; i >= 1; --i) expect.push_back(CommPoly::variable(u, static_cast<std::size_t>(i)));
  expect.push_back(CommPoly::variable(u, 0) - CommPoly::constant(u, Rational(1)));
  CHECK(gb == expect);
  const auto sol = groebner::solve_rational(sys.system);
  REQUIRE(sol.points.size() == 1);
  CHECK(sol.points[0].at("q2_0") == Rational(1));
  const auto splits = solve_instance(inst);
  REQUIRE(splits.size() == 1);
  const AlgebraSpec a2 = AlgebraSpec::weyl(2);
  CHECK(splits[0].p == parse(kP2, a2));
  CHECK(splits[0].q == parse(kQ2, a2));
  const auto parts = grading::graded_decomposition(splits[0].p);
  CHECK(grading::to_theta_form(parts.at({0, 0})).theta_poly == parse_comm("(theta1+3)*theta2", grading::theta_vars(2)));
  // two unknown summands; the first equation has none
  REQUIRE(!sys.chi_top.empty());
  CHECK(sys.chi_top[0] == 0);
  CHECK(sys.chi_bottom[0] == 0);
}

TEST_CASE("build_system: the hand-cleared equation is implied") {
  // (hA - θ1 Q(θ1,θ2+1))(θ1+1) = (hC - Q(θ1,θ2-1))(θ1+4) at Q = 1
  const AnsatzInstance inst = running_instance();
  const AnsatzSystem sys = build_system(inst);
  std::vector<CommPoly> probe;
  const VarSet& u = sys.system.unknowns;
  for (std::size_t i = 0; i < u.size(); ++i)
    probe.push_back(CommPoly::variable(u, i) - CommPoly::constant(u, Rational(i == 0 ? 1 : 0)));
  for (const auto& g : sys.system.generators) CHECK(groebner::normal_form(g, probe).is_zero());
}

TEST_CASE("build_system: window too small") {
  AnsatzInstance inst = running_instance();
  inst.mu_degrees = {{-1, 1}};
  CHECK_THROWS_AS(build_system(inst), DomainError);
}

TEST_CASE("factor: examples") {
  const AlgebraSpec a1 = AlgebraSpec::weyl(1);
  const AlgebraSpec a2 = AlgebraSpec::weyl(2);

  const OrePoly h1 = parse(kH1, a2);
  const auto r1 = factor(h1);
  CHECK(r1.factorizations.size() == 2);
  CHECK(!r1.irreducible);
  std::set<std::vector<std::string>> k1;
  for (const auto& f : r1.factorizations) {
    CHECK(f.product(a2) == h1);
    k1.insert(gradedfact::factor_key(f));
  }
  CHECK(k1.count({to_string(parse("x1*d1*d2+d1^2+x1*d2+d1+2*d2", a2)), "d1+1"}) == 1);
  CHECK(k1.count({"d1+1", "d1+1", to_string(parse("d1+x1*d2", a2))}) == 1);

  const OrePoly h2 = parse(std::string("(") + kP2 + ")*(" + kQ2 + ")", a2);
  const auto r2 = factor(h2);
  CHECK(r2.factorizations.size() == 3);
  CHECK(has_grouping(r2.factorizations, parse(kP2, a2)));
  for (const auto& f : r2.factorizations) CHECK(f.product(a2) == h2);

  const auto r3 = factor(parse("d1^3-x1*d1-2", a1));
  CHECK(r3.irreducible);
  REQUIRE(r3.factorizations.size() == 1);
  CHECK(r3.factorizations[0].factors.size() == 1);

  const auto one = factor(h1, Mode::one);
  REQUIRE(one.factorizations.size() == 1);
  CHECK(one.factorizations[0].product(a2) == h1);

  // homogeneous factor on the left
  const auto r4 = factor(parse("x1*(d1+1)", a1));
  CHECK(r4.factorizations.size() == 1);
  CHECK(gradedfact::factor_key(r4.factorizations[0]) == std::vector<std::string>{"x1", "d1+1"});

  CHECK_THROWS_AS(factor(OrePoly(a1)), DomainError);
  CHECK_THROWS_AS(factor(parse("3", a1)), DomainError);
  CHECK_THROWS_AS(factor(parse("x1*d1+x1", AlgebraSpec::qweyl({Rational(2)}))), DomainError);
}

TEST_CASE("factor: operator with quartic coefficients") {
  const AlgebraSpec a1 = AlgebraSpec::weyl(1);
  const OrePoly h = parse("(x1^4-1)*x1*d1^2+(1+7*x1^4)*d1+8*x1^3", a1);
  const auto r = factor(h);
  for (const auto& f : r.factorizations) {
    CHECK(f.product(a1) == h);
    for (const auto& g : f.factors) CHECK(g.is_monic());
  }
  // the two families (d1)(x1*d1-2)·… and (x1*d1-1)(d1)·…, each with 3! orderings of the x-factors
  CHECK(has_grouping(r.factorizations, parse("d1*(x1*d1-2)", a1)));
  CHECK(has_grouping(r.factorizations, parse("(x1*d1-1)*d1", a1)));
  // three more, checked independently by applying the operators to a generic function
  std::set<std::vector<std::string>> keys;
  for (const auto& f : r.factorizations) keys.insert(gradedfact::factor_key(f));
  CHECK(keys.count({"x1^3*d1+3*x1^2+x1*d1-1", "d1", "x1+1", "x1-1"}) == 1);
  CHECK(keys.count({"x1^3*d1+3*x1^2-x1*d1+1", "d1", "x1^2+1"}) == 1);
  CHECK(r.factorizations.size() == 15);
}

TEST_CASE("factor_shift") {
  const AlgebraSpec s1 = AlgebraSpec::shift(1);
  const OrePoly h = parse("(x1*s1)*(s1+1)", s1);
  const auto r = factor_shift(h);
  CHECK(!r.irreducible);
  bool found = false;
  for (const auto& f : r.factorizations) {
    CHECK(f.product(s1) == h);
    CHECK(f.factors.size() >= 2);
    if (f.factors.back() == parse("s1+1", s1)) found = true;
  }
  CHECK(found);
  const auto irr = factor_shift(parse("s1", s1));
  CHECK(irr.irreducible);
  CHECK(irr.factorizations[0].factors[0] == parse("s1", s1));
  const OrePoly g = parse("(s1+x1)*(s1-1)", s1);
  for (const auto& f : factor_shift(g).factorizations) CHECK(f.product(s1) == g);
  CHECK_THROWS_AS(factor_shift(parse("d1", AlgebraSpec::weyl(1))), DomainError);
}

TEST_CASE("factor_with_premultiplier") {
  const AlgebraSpec a1 = AlgebraSpec::weyl(1);
  const OrePoly h = parse("d1^3-x1*d1-2", a1);
  const auto out = factor_with_premultiplier(h, 1);
  bool found = false;
  for (const auto& pf : out) {
    CHECK(pf.factorization.product(a1) == OrePoly::monomial(a1, {pf.premultiplier.lead_exponent()[0]}, {0}, Rational(1)) * h);
    if (pf.premultiplier.to_string() == "x1" &&
        gradedfact::factor_key(pf.factorization) == std::vector<std::string>{"d1", "x1*d1^2-x1^2-d1"})
      found = true;
  }
  CHECK(found);
  const auto sq = factor_with_premultiplier(parse("d1^2", a1), 0);
  REQUIRE(sq.size() == 1);
  CHECK(gradedfact::factor_key(sq[0].factorization) == std::vector<std::string>{"d1", "d1"});
  // max_deg = 0 is plain factorization
  const auto zero = factor_with_premultiplier(parse(kH1, AlgebraSpec::weyl(2)), 0);
  CHECK(zero.size() == factor(parse(kH1, AlgebraSpec::weyl(2))).factorizations.size());
}

TEST_CASE("property: A_1 products of two operators are recovered") {
  std::mt19937_64 rng(42);
  const AlgebraSpec a1 = AlgebraSpec::weyl(1);
  for (int it = 0; it < testsupport::kPropertyCases; ++it) {
    const OrePoly a = random_operator(rng, a1);
    const OrePoly b = random_operator(rng, a1);
    const OrePoly h = a * b;
    const auto r = factor(h);
    for (const auto& f : r.factorizations) CHECK(f.product(a1) == h);
    CHECK(has_grouping(r.factorizations, a));
  }
}

TEST_CASE("property: built systems in A_1") {
  std::mt19937_64 rng(43);
  const AlgebraSpec a1 = AlgebraSpec::weyl(1);
  int built = 0;
  for (int it = 0; built < testsupport::kPropertyCases && it < 20 * testsupport::kPropertyCases; ++it) {
    const OrePoly h = random_operator(rng, a1) * random_operator(rng, a1);
    if (grading::degree_of(h)) continue;
    for (const auto& c : extreme_candidates(h)) {
      const AnsatzInstance inst = make_instance(h, c);
      const AnsatzSystem sys = build_system(inst);
      ++built;
      const std::size_t k = inst.eta_degrees.size();
      const std::size_t l = inst.mu_degrees.size();
      CHECK(sys.coefficient_unknowns == (l - 2) * sys.nu);
      std::size_t nu = 1;
      for (unsigned bnd : inst.theta_bounds) nu *= bnd + 1;
      CHECK(sys.nu == nu);
      // each early equation brings one new p̃ and one new q̃ (balanced windows)
      const std::size_t kappa = (k - 2) + (l - 2);
      bool consecutive = true;
      for (std::size_t i = 0; i + 1 < k; ++i) consecutive = consecutive && inst.eta_degrees[i][0] == inst.eta_degrees[i + 1][0] + 1;
      for (std::size_t i = 0; i + 1 < l; ++i) consecutive = consecutive && inst.mu_degrees[i][0] == inst.mu_degrees[i + 1][0] + 1;
      if (k == l && consecutive)
        for (std::size_t i = 1; i <= (kappa + 1) / 2; ++i) CHECK(sys.chi_top[i - 1] == 2 * (i - 1));
      for (const auto& s : solve_instance(inst)) {
        CHECK(s.p * s.q == h);
        for (const auto* f : {&s.p, &s.q})
          for (const auto& [z, part] : grading::graded_decomposition(*f))
            CHECK(grading::to_theta_form(part).theta_poly.degree_in(0) <= inst.theta_bounds[0]);
      }
    }
  }
  CHECK(built >= testsupport::kPropertyCases);
}
