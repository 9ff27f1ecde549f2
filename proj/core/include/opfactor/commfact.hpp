#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "opfactor/comm_poly.hpp"

namespace opfactor::commfact {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed0f4c7u;

/// unit * prod factors[i].first ^ factors[i].second, factors monic (lex) and irreducible over Q.
struct CommFactorization {
  Rational unit{1};
  std::vector<std::pair<CommPoly, unsigned>> factors;

  [[nodiscard]] CommPoly product(const VarSet& vars) const;
  /// Factors repeated by multiplicity, in stored order.
  [[nodiscard]] std::vector<CommPoly> expanded() const;
};

/// f = c * prod g_i^i with g_i squarefree, pairwise coprime, monic; constant pieces omitted.
std::vector<std::pair<CommPoly, unsigned>> squarefree_decompose(const CommPoly& f);

/// Complete factorization over Q of a polynomial in at most one variable.
CommFactorization factor_univariate(const CommPoly& f, std::uint64_t seed = kDefaultSeed);

/// Complete factorization over Q of a multivariate polynomial.
CommFactorization factor_multivariate(const CommPoly& f, std::uint64_t seed = kDefaultSeed);

/// Monic greatest common divisor (0 only if both inputs are 0).
CommPoly gcd(const CommPoly& f, const CommPoly& g);

/// Content with respect to variable i: gcd of the coefficients of powers of x_i.
CommPoly content_in(const CommPoly& f, std::size_t i);

}  // namespace opfactor::commfact
