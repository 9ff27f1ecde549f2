#pragma once

// Dense univariate helpers shared by the factorization sources.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "opfactor/rational.hpp"

namespace opfactor::detail {

/// Coefficients low to high, no trailing zeros; empty = 0.
using QPoly = std::vector<Rational>;

void trim(QPoly& a);
inline int degree(const QPoly& a) { return static_cast<int>(a.size()) - 1; }
QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
QPoly scale(const QPoly& a, const Rational& c);
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly monic(const QPoly& a);
QPoly gcd(QPoly a, QPoly b);
QPoly derivative(const QPoly& a);
/// Inverse of a modulo m (requires gcd = 1), degree < deg m.
QPoly inverse_mod(const QPoly& a, const QPoly& m);

/// Squarefree decomposition of a nonzero polynomial (Yun); pieces monic, index = multiplicity.
std::vector<std::pair<QPoly, unsigned>> squarefree(const QPoly& f);

/// Irreducible monic factors of a squarefree polynomial of positive degree.
std::vector<QPoly> factor_squarefree(const QPoly& f, std::mt19937_64& rng);

}  // namespace opfactor::detail
