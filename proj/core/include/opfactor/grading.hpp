#pragma once

#include <compare>
#include <map>
#include <optional>
#include <vector>

#include "opfactor/comm_poly.hpp"
#include "opfactor/ore_poly.hpp"

namespace opfactor::grading {

/// deg(X^a D^b) = b - a, componentwise.
using DegreeVector = std::vector<long>;

/// Lexicographic order on Z^n; additive, and the order used for sorting
/// the bounded degree sets that occur in factorization.
std::strong_ordering compare_degrees(const DegreeVector& a, const DegreeVector& b);

struct DegreeLess {
  bool operator()(const DegreeVector& a, const DegreeVector& b) const { return compare_degrees(a, b) < 0; }
};

DegreeVector operator+(const DegreeVector& a, const DegreeVector& b);
DegreeVector operator-(const DegreeVector& a, const DegreeVector& b);
bool is_zero_degree(const DegreeVector& z);

/// Homogeneous element p = theta_poly(θ) * X^e D^w with e, w the negative and positive parts of z.
struct GradedPart {
  DegreeVector z;
  CommPoly theta_poly;
  std::vector<unsigned> e;
  std::vector<unsigned> w;

  static GradedPart make(DegreeVector z, CommPoly theta_poly);
  friend bool operator==(const GradedPart&, const GradedPart&) = default;
};

/// theta1..thetan, shared across calls.
const VarSet& theta_vars(std::size_t n);

DegreeVector monomial_degree(const OreMonomial& m, std::size_t n);
std::optional<DegreeVector> degree_of(const OrePoly& p);
std::map<DegreeVector, OrePoly, DegreeLess> graded_decomposition(const OrePoly& p);

/// x_i^m d_i^m as a polynomial in θ (Weyl and q-Weyl).
CommPoly xd_to_theta(unsigned m, std::size_t i, const AlgebraSpec& algebra);

GradedPart to_theta_form(const OrePoly& p);
OrePoly from_theta_form(const GradedPart& g, const AlgebraSpec& algebra);
/// θ_i as an Ore element.
OrePoly theta_element(const AlgebraSpec& algebra, std::size_t i);

/// For a monic K[θ]-irreducible f that still splits in the algebra, the two
/// generator factors and the scalar with f = unit * left * right.
struct ThetaSplit {
  OrePoly left;
  OrePoly right;
  Rational unit;
};
std::optional<ThetaSplit> theta_rewrite_reducibles(const CommPoly& f, const AlgebraSpec& algebra);

/// g with X^e(z) D^w(z) * f(θ) = g(θ) * X^e(z) D^w(z).
CommPoly pass_left(const CommPoly& f, const DegreeVector& z, const AlgebraSpec& algebra);
/// g with f(θ) * X^e(z) D^w(z) = X^e(z) D^w(z) * g(θ).
CommPoly pass_right(const CommPoly& f, const DegreeVector& z, const AlgebraSpec& algebra);

/// θ-polynomial c with T_alpha * T_beta = c(θ) * T_(alpha+beta), computed by
/// normal ordering (works for Weyl and q-Weyl).
CommPoly tail_product(const DegreeVector& alpha, const DegreeVector& beta, const AlgebraSpec& algebra);

/// Product of homogeneous elements, entirely in θ-form.
GradedPart graded_mul(const GradedPart& a, const GradedPart& b, const AlgebraSpec& algebra);
/// q with p * q = h, if it exists.
std::optional<GradedPart> divide_left(const GradedPart& h, const GradedPart& p, const AlgebraSpec& algebra);
/// p with p * q = h, if it exists.
std::optional<GradedPart> divide_right(const GradedPart& h, const GradedPart& q, const AlgebraSpec& algebra);

}  // namespace opfactor::grading
