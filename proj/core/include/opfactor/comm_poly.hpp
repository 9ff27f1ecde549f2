#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "opfactor/rational.hpp"

namespace opfactor {

using Exponent = std::vector<unsigned>;

/// Ordered list of variable names shared by many polynomials.
class VarSet {
 public:
  VarSet() : names_(std::make_shared<const std::vector<std::string>>()) {}
  explicit VarSet(std::vector<std::string> names)
      : names_(std::make_shared<const std::vector<std::string>>(std::move(names))) {}

  /// theta1..thetan style names: prefix + index (1-based).
  static VarSet numbered(const std::string& prefix, std::size_t count);

  [[nodiscard]] std::size_t size() const { return names_->size(); }
  [[nodiscard]] const std::string& name(std::size_t i) const { return names_->at(i); }
  [[nodiscard]] const std::vector<std::string>& names() const { return *names_; }

  friend bool operator==(const VarSet& a, const VarSet& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

/// Sparse multivariate polynomial over Q. Terms are kept in a map ordered
/// lexicographically on exponent vectors, so the lex-leading term is last.
class CommPoly {
 public:
  using TermMap = std::map<Exponent, Rational>;

  CommPoly() = default;
  explicit CommPoly(VarSet vars) : vars_(std::move(vars)) {}

  static CommPoly constant(const VarSet& vars, const Rational& c);
  static CommPoly variable(const VarSet& vars, std::size_t i);
  static CommPoly monomial(const VarSet& vars, Exponent exp, const Rational& c);

  [[nodiscard]] const VarSet& vars() const { return vars_; }
  [[nodiscard]] std::size_t nvars() const { return vars_.size(); }
  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const;
  [[nodiscard]] bool is_one() const { return is_constant() && constant_term().is_one(); }
  [[nodiscard]] Rational constant_term() const;
  [[nodiscard]] Rational coefficient(const Exponent& exp) const;

  [[nodiscard]] unsigned total_degree() const;
  [[nodiscard]] unsigned degree_in(std::size_t i) const;
  /// Variables that actually occur.
  [[nodiscard]] std::vector<bool> support() const;

  /// Lex-leading term; precondition: nonzero.
  [[nodiscard]] const Exponent& lead_exponent() const { return terms_.rbegin()->first; }
  [[nodiscard]] const Rational& lead_coefficient() const { return terms_.rbegin()->second; }
  /// Scales so the lex-leading coefficient is 1 (zero stays zero).
  [[nodiscard]] CommPoly monic() const;

  /// Adds c*X^exp in place.
  void add_term(const Exponent& exp, const Rational& c);

  [[nodiscard]] CommPoly scaled(const Rational& c) const;
  [[nodiscard]] CommPoly pow(unsigned k) const;
  [[nodiscard]] CommPoly mul_monomial(const Exponent& exp, const Rational& c) const;

  /// f(x_1+o_1, ..., x_k+o_k).
  [[nodiscard]] CommPoly shift_substitute(const std::vector<Rational>& offsets) const;
  /// f(a_1 x_1 + b_1, ..., a_k x_k + b_k).
  [[nodiscard]] CommPoly affine_substitute(const std::vector<std::pair<Rational, Rational>>& maps) const;
  /// Replace variable i by the constant value (variable stays in the set).
  [[nodiscard]] CommPoly partial_evaluate(std::size_t i, const Rational& value) const;
  [[nodiscard]] Rational evaluate(const std::vector<Rational>& point) const;
  [[nodiscard]] CommPoly derivative(std::size_t i) const;

  /// Exact quotient if g divides f, otherwise nullopt.
  [[nodiscard]] std::optional<CommPoly> divide_exact(const CommPoly& g) const;

  /// Degree-lex printing (x1 > x2 > ...), e.g. "t1^2*t2-3/2*t1+1".
  [[nodiscard]] std::string to_string() const;

  CommPoly& operator+=(const CommPoly& other);
  CommPoly& operator-=(const CommPoly& other);
  friend CommPoly operator+(CommPoly a, const CommPoly& b) { return a += b; }
  friend CommPoly operator-(CommPoly a, const CommPoly& b) { return a -= b; }
  friend CommPoly operator*(const CommPoly& a, const CommPoly& b);
  friend CommPoly operator-(const CommPoly& a) { return a.scaled(Rational(-1)); }
  friend bool operator==(const CommPoly& a, const CommPoly& b) {
    return a.terms_ == b.terms_ && (a.terms_.empty() || a.vars_.size() == b.vars_.size());
  }

 private:
  void require_same_vars(const CommPoly& other) const;

  VarSet vars_;
  TermMap terms_;
};

CommPoly add(const CommPoly& f, const CommPoly& g);
CommPoly mul(const CommPoly& f, const CommPoly& g);
CommPoly shift_substitute(const CommPoly& f, const std::vector<Rational>& offsets);
Rational evaluate(const CommPoly& f, const std::vector<Rational>& point);

/// Total order "a before b" used for canonical printing: higher total degree
/// first, then lexicographically larger first.
bool deglex_greater(const Exponent& a, const Exponent& b);

std::ostream& operator<<(std::ostream& os, const CommPoly& f);

}  // namespace opfactor
