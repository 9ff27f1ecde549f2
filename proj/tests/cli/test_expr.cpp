#include <doctest.h>

#include <random>

#include "opfactor/expr.hpp"
#include "support.hpp"

using namespace opfactor;

TEST_CASE("parse examples") {
  const auto a2 = AlgebraSpec::weyl(2);
  const OrePoly d1 = OrePoly::d(a2, 0), d2 = OrePoly::d(a2, 1), x1 = OrePoly::x(a2, 0);
  const OrePoly one = OrePoly::constant(a2, Rational(1));
  const OrePoly h1 = (d1 + one) * (d1 + one) * (d1 + x1 * d2);
  CHECK(parse("(d1+1)^2*(d1+x1*d2)", a2) == h1);
  CHECK(print_canonical(parse("x1", a2)) == "x1");

  const auto a1 = AlgebraSpec::weyl(1);
  CHECK(print_canonical(parse("d1*x1", a1)) == "x1*d1+1");
  CHECK(print_canonical(parse("∂1*x1", a1)) == "x1*d1+1");
  CHECK(print_canonical(parse("x1*d1-x1*d1", a1)) == "0");
  CHECK(print_canonical(parse("-x1^2", a1)) == "-x1^2");
  CHECK(print_canonical(parse("1/2*x1-3/6", a1)) == "1/2*x1-1/2");
  CHECK(print_canonical(parse("(x1)^0", a1)) == "1");

  const auto s1 = AlgebraSpec::shift(1);
  CHECK(print_canonical(parse("s1*x1", s1)) == "x1*s1+s1");

  const auto q1 = AlgebraSpec::qweyl({Rational(2)});
  CHECK(print_canonical(parse("d1*x1", q1)) == "2*x1*d1+1");
}

TEST_CASE("parse errors carry byte offsets") {
  const auto a2 = AlgebraSpec::weyl(2);
  auto offset = [&](const char* s) {
    try {
      parse(s, a2);
    } catch (const ParseError& e) {
      return static_cast<long>(e.offset());
    }
    return -1L;
  };
  CHECK(offset("x1+") == 3);
  CHECK(offset("x3") == 0);
  CHECK(offset("x1*y1") == 3);
  CHECK(offset("x1d1") == 2);
  CHECK(offset("(x1+d1") == 6);
  CHECK(offset("x1/0") == 2);
  CHECK(offset("") == 0);
  CHECK(offset("x0") == 0);
  CHECK_THROWS_AS(parse("s1", a2), ParseError);
  CHECK_THROWS_AS(parse("d1", AlgebraSpec::shift(1)), ParseError);
}

TEST_CASE("print_canonical ordering") {
  const auto a2 = AlgebraSpec::weyl(2);
  CHECK(print_canonical(parse("d2+d1+x2+x1", a2)) == "x1+x2+d1+d2");
  CHECK(print_canonical(parse("x1+x2^2+d1*d2", a2)) == "x2^2+d1*d2+x1");
  CHECK(print_canonical(OrePoly(a2)) == "0");
}

TEST_CASE("property: parse inverts print_canonical") {
  std::mt19937_64 rng(41);
  const std::vector<AlgebraSpec> algs{AlgebraSpec::weyl(1), AlgebraSpec::weyl(2), AlgebraSpec::weyl(3),
                                      AlgebraSpec::shift(2), AlgebraSpec::qweyl({Rational(2), Rational(-1, 3)})};
  for (int it = 0; it < testsupport::kPropertyCases; ++it) {
    const auto& alg = algs[static_cast<std::size_t>(it) % algs.size()];
    const OrePoly p = testsupport::random_ore(rng, alg, 5, 3);
    const std::string s = print_canonical(p);
    CHECK(parse(s, alg) == p);
    CHECK(print_canonical(parse(s, alg)) == s);
  }
}
