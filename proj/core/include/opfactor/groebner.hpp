#pragma once

#include <map>
#include <string>
#include <vector>

#include "opfactor/comm_poly.hpp"
#include "opfactor/errors.hpp"

namespace opfactor::groebner {

/// Generators over the declared unknowns. Monomial order: pure lex with the
/// first unknown largest.
struct PolySystem {
  VarSet unknowns;
  std::vector<CommPoly> generators;
};

struct SolutionSet {
  std::vector<std::map<std::string, Rational>> points;
  bool complete_over_Q = true;
  /// Irreducible eliminant factors of degree > 1 that were skipped.
  std::size_t dropped = 0;
};

class NonIsolatedSolutions : public Error {
 public:
  NonIsolatedSolutions(std::vector<CommPoly> basis)
      : Error("polynomial system has non-isolated solutions"), basis_(std::move(basis)) {}
  [[nodiscard]] const std::vector<CommPoly>& basis() const { return basis_; }

 private:
  std::vector<CommPoly> basis_;
};

/// Full reduction of f modulo g (lex).
CommPoly normal_form(const CommPoly& f, const std::vector<CommPoly>& g);
CommPoly s_polynomial(const CommPoly& f, const CommPoly& g);

/// Reduced lex Gröbner basis, sorted by leading monomial (ascending).
std::vector<CommPoly> buchberger(const PolySystem& sys);

/// All points with rational coordinates.
SolutionSet solve_rational(const PolySystem& sys);

/// Reduced Gröbner basis for graded reverse lex, sorted by leading monomial (ascending).
std::vector<CommPoly> buchberger_grevlex(const PolySystem& sys);

/// Same contract as solve_rational, through a grevlex basis: each unknown's eliminant
/// comes from the normal forms of its powers, and the rational roots are combined and
/// checked against the generators. `dropped` counts nonlinear eliminant factors.
SolutionSet solve_rational_zero_dim(const PolySystem& sys);

}  // namespace opfactor::groebner
