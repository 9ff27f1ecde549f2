#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opfactor/comm_poly.hpp"
#include "opfactor/rational.hpp"

namespace opfactor {

enum class AlgebraKind { weyl, shift, qweyl };

/// Which algebra an operator lives in: A_n, S_n or Q_n (with concrete q_i).
struct AlgebraSpec {
  AlgebraKind kind = AlgebraKind::weyl;
  std::size_t n = 1;
  std::vector<Rational> q;  // only for qweyl, length n

  static AlgebraSpec weyl(std::size_t n);
  static AlgebraSpec shift(std::size_t n);
  static AlgebraSpec qweyl(std::vector<Rational> q);

  /// q_i, or 1 outside the q-Weyl case.
  [[nodiscard]] Rational q_of(std::size_t i) const;
  [[nodiscard]] bool has_trivial_q() const;
  /// Throws DomainError unless the invariants hold.
  void validate() const;

  friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;
};

std::string to_string(AlgebraKind kind);

/// Exponent pair (a, b) stored concatenated: a_1..a_n, b_1..b_n.
using OreMonomial = std::vector<unsigned>;

/// Canonical order: degree-lex with x1 > ... > xn > d1 > ... > dn; the map
/// iterates from the largest monomial down.
struct OreMonomialGreater {
  bool operator()(const OreMonomial& a, const OreMonomial& b) const { return deglex_greater(a, b); }
};

/// Element of A_n / S_n / Q_n in normal order: sum of c * X^a D^b (or X^a S^b).
class OrePoly {
 public:
  using TermMap = std::map<OreMonomial, Rational, OreMonomialGreater>;

  OrePoly() = default;
  explicit OrePoly(AlgebraSpec algebra);

  static OrePoly constant(const AlgebraSpec& algebra, const Rational& c);
  /// x_i, 0-based.
  static OrePoly x(const AlgebraSpec& algebra, std::size_t i);
  /// d_i (or s_i in the shift algebra), 0-based.
  static OrePoly d(const AlgebraSpec& algebra, std::size_t i);
  static OrePoly monomial(const AlgebraSpec& algebra, const std::vector<unsigned>& a,
                          const std::vector<unsigned>& b, const Rational& c);

  [[nodiscard]] const AlgebraSpec& algebra() const { return algebra_; }
  [[nodiscard]] std::size_t n() const { return algebra_.n; }
  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const;
  [[nodiscard]] Rational constant_term() const;
  [[nodiscard]] Rational coefficient(const OreMonomial& m) const;

  /// Leading term under the canonical order; precondition: nonzero.
  [[nodiscard]] const OreMonomial& lead_monomial() const { return terms_.begin()->first; }
  [[nodiscard]] const Rational& lead_coefficient() const { return terms_.begin()->second; }
  [[nodiscard]] bool is_monic() const { return !is_zero() && lead_coefficient().is_one(); }
  [[nodiscard]] OrePoly monic() const;

  /// Generators indexed 0..2n-1: x_1..x_n then d_1..d_n.
  [[nodiscard]] unsigned max_var_degree(std::size_t v) const;
  /// Sum of max_var_degree over all generators; strictly drops under nontrivial splits.
  [[nodiscard]] unsigned generator_degree_sum() const;
  [[nodiscard]] unsigned total_degree() const;

  void add_term(const OreMonomial& m, const Rational& c);
  [[nodiscard]] OrePoly scaled(const Rational& c) const;
  [[nodiscard]] OrePoly pow(unsigned k) const;

  OrePoly& operator+=(const OrePoly& other);
  OrePoly& operator-=(const OrePoly& other);
  friend OrePoly operator+(OrePoly a, const OrePoly& b) { return a += b; }
  friend OrePoly operator-(OrePoly a, const OrePoly& b) { return a -= b; }
  friend OrePoly operator-(const OrePoly& a) { return a.scaled(Rational(-1)); }
  friend OrePoly operator*(const OrePoly& a, const OrePoly& b);
  friend bool operator==(const OrePoly& a, const OrePoly& b) {
    return a.algebra_ == b.algebra_ && a.terms_ == b.terms_;
  }

 private:
  void require_same_algebra(const OrePoly& other) const;

  AlgebraSpec algebra_;
  TermMap terms_;
};

OrePoly multiply(const OrePoly& f, const OrePoly& g);

/// Normal form of d_i^b x_i^c in one coordinate, as (coefficient, x-exp, d-exp) triples.
struct OreTerm1 {
  Rational coefficient;
  unsigned x_exp;
  unsigned d_exp;
};
std::vector<OreTerm1> commute_power(const AlgebraSpec& algebra, std::size_t i, unsigned b, unsigned c);

/// Same quantity via repeated single rewrites of adjacent d*x pairs; independent of commute_power.
std::vector<OreTerm1> commute_power_by_rewriting(const AlgebraSpec& algebra, std::size_t i, unsigned b,
                                                 unsigned c);

/// ι: S_n -> A_n, x_i -> x_i d_i, s_j -> d_j.
OrePoly iota_embed(const OrePoly& p);
/// Preimage under ι when p lies in K<θ, d>; nullopt otherwise.
std::optional<OrePoly> iota_preimage(const OrePoly& p);

unsigned max_var_degree(const OrePoly& p, std::size_t v);

/// Canonical text: degree-lex terms, "*" between atoms, "^k" for k > 1, "0" for zero.
std::string to_string(const OrePoly& p);

/// Unit scalar times an ordered sequence of monic non-constant factors.
struct Factorization {
  Rational unit{1};
  std::vector<OrePoly> factors;

  /// unit * f_1 * ... * f_m.
  [[nodiscard]] OrePoly product(const AlgebraSpec& algebra) const;
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

}  // namespace opfactor
