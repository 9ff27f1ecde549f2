#include "opfactor/comm_poly.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

#include "opfactor/errors.hpp"

namespace opfactor {

VarSet VarSet::numbered(const std::string& prefix, std::size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) names.push_back(prefix + std::to_string(i));
  return VarSet(std::move(names));
}

CommPoly CommPoly::constant(const VarSet& vars, const Rational& c) {
  CommPoly f(vars);
  f.add_term(Exponent(vars.size(), 0), c);
  return f;
}

CommPoly CommPoly::variable(const VarSet& vars, std::size_t i) {
  if (i >= vars.size()) throw DomainError("CommPoly::variable: index out of range");
  Exponent e(vars.size(), 0);
  e[i] = 1;
  return monomial(vars, std::move(e), Rational(1));
}

CommPoly CommPoly::monomial(const VarSet& vars, Exponent exp, const Rational& c) {
  if (exp.size() != vars.size()) throw DomainError("CommPoly::monomial: exponent length mismatch");
  CommPoly f(vars);
  if (!c.is_zero()) f.terms_.emplace(std::move(exp), c);
  return f;
}

bool CommPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](unsigned v) { return v == 0; });
}

Rational CommPoly::constant_term() const { return coefficient(Exponent(nvars(), 0)); }

Rational CommPoly::coefficient(const Exponent& exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned CommPoly::total_degree() const {
  unsigned best = 0;
  for (const auto& [e, c] : terms_) best = std::max(best, std::accumulate(e.begin(), e.end(), 0U));
  return best;
}

unsigned CommPoly::degree_in(std::size_t i) const {
  unsigned best = 0;
  for (const auto& [e, c] : terms_) best = std::max(best, e.at(i));
  return best;
}

std::vector<bool> CommPoly::support() const {
  std::vector<bool> used(nvars(), false);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) used[i] = true;
  return used;
}

CommPoly CommPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(lead_coefficient().inverse());
}

void CommPoly::add_term(const Exponent& exp, const Rational& c) {
  if (c.is_zero()) return;
  if (exp.size() != nvars()) throw DomainError("CommPoly: exponent length mismatch");
  auto [it, inserted] = terms_.try_emplace(exp, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CommPoly CommPoly::scaled(const Rational& c) const {
  CommPoly r(vars_);
  if (c.is_zero()) return r;
  for (const auto& [e, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, v * c);
  return r;
}

CommPoly CommPoly::pow(unsigned k) const {
  CommPoly result = constant(vars_, Rational(1));
  CommPoly base = *this;
  while (k != 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k != 0) base = base * base;
  }
  return result;
}

CommPoly CommPoly::mul_monomial(const Exponent& exp, const Rational& c) const {
  CommPoly r(vars_);
  if (c.is_zero()) return r;
  for (const auto& [e, v] : terms_) {
    Exponent s = e;
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += exp[i];
    r.terms_.emplace_hint(r.terms_.end(), std::move(s), v * c);
  }
  return r;
}

CommPoly CommPoly::shift_substitute(const std::vector<Rational>& offsets) const {
  if (offsets.size() != nvars()) throw DomainError("shift_substitute: offsets length mismatch");
  std::vector<std::pair<Rational, Rational>> maps;
  maps.reserve(offsets.size());
  for (const auto& o : offsets) maps.emplace_back(Rational(1), o);
  return affine_substitute(maps);
}

CommPoly CommPoly::affine_substitute(const std::vector<std::pair<Rational, Rational>>& maps) const {
  if (maps.size() != nvars()) throw DomainError("affine_substitute: map length mismatch");
  const std::size_t k = nvars();
  // Powers of each image a_i x_i + b_i, built on demand; kept univariate as coefficient lists.
  std::vector<std::vector<std::vector<Rational>>> powers(k);
  auto power = [&](std::size_t i, unsigned d) -> const std::vector<Rational>& {
    auto& list = powers[i];
    if (list.empty()) list.push_back({Rational(1)});
    while (list.size() <= d) {
      const auto& prev = list.back();
      std::vector<Rational> next(prev.size() + 1, Rational(0));
      for (std::size_t j = 0; j < prev.size(); ++j) {
        next[j] += prev[j] * maps[i].second;
        next[j + 1] += prev[j] * maps[i].first;
      }
      list.push_back(std::move(next));
    }
    return list[d];
  };
  CommPoly result(vars_);
  for (const auto& [e, c] : terms_) {
    // Expand the product of per-variable images as a tensor product.
    std::vector<std::pair<Exponent, Rational>> partial{{Exponent(k, 0), c}};
    for (std::size_t i = 0; i < k; ++i) {
      if (e[i] == 0) continue;
      const auto& p = power(i, e[i]);
      std::vector<std::pair<Exponent, Rational>> next;
      next.reserve(partial.size() * p.size());
      for (const auto& [pe, pc] : partial)
        for (std::size_t j = 0; j < p.size(); ++j) {
          if (p[j].is_zero()) continue;
          Exponent ne = pe;
          ne[i] = static_cast<unsigned>(j);
          next.emplace_back(std::move(ne), pc * p[j]);
        }
      partial = std::move(next);
    }
    for (const auto& [pe, pc] : partial) result.add_term(pe, pc);
  }
  return result;
}

CommPoly CommPoly::partial_evaluate(std::size_t i, const Rational& value) const {
  if (i >= nvars()) throw DomainError("partial_evaluate: index out of range");
  CommPoly result(vars_);
  for (const auto& [e, c] : terms_) {
    Exponent ne = e;
    ne[i] = 0;
    result.add_term(ne, c * value.pow(e[i]));
  }
  return result;
}

Rational CommPoly::evaluate(const std::vector<Rational>& point) const {
  if (point.size() != nvars()) throw DomainError("evaluate: point length mismatch");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) t *= point[i].pow(e[i]);
    sum += t;
  }
  return sum;
}

CommPoly CommPoly::derivative(std::size_t i) const {
  if (i >= nvars()) throw DomainError("derivative: index out of range");
  CommPoly result(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent ne = e;
    --ne[i];
    result.add_term(ne, c * Rational(static_cast<long>(e[i])));
  }
  return result;
}

std::optional<CommPoly> CommPoly::divide_exact(const CommPoly& g) const {
  require_same_vars(g);
  if (g.is_zero()) throw DomainError("divide_exact: division by zero");
  CommPoly remainder = *this;
  CommPoly quotient(vars_);
  const Exponent& ge = g.lead_exponent();
  const Rational gc_inv = g.lead_coefficient().inverse();
  while (!remainder.is_zero()) {
    const Exponent& re = remainder.lead_exponent();
    Exponent qe(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
      if (re[i] < ge[i]) return std::nullopt;
      qe[i] = re[i] - ge[i];
    }
    const Rational qc = remainder.lead_coefficient() * gc_inv;
    quotient.add_term(qe, qc);
    remainder -= g.mul_monomial(qe, qc);
  }
  return quotient;
}

bool deglex_greater(const Exponent& a, const Exponent& b) {
  const unsigned da = std::accumulate(a.begin(), a.end(), 0U);
  const unsigned db = std::accumulate(b.begin(), b.end(), 0U);
  if (da != db) return da > db;
  return b < a;
}

std::string CommPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const TermMap::value_type*> sorted;
  sorted.reserve(terms_.size());
  for (const auto& t : terms_) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* x, const auto* y) { return deglex_greater(x->first, y->first); });
  std::ostringstream os;
  bool first = true;
  for (const auto* t : sorted) {
    const auto& [e, c] = *t;
    Rational mag = c.abs();
    if (c.sign() < 0)
      os << '-';
    else if (!first)
      os << '+';
    first = false;
    bool any_var = false;
    std::ostringstream vs;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (any_var) vs << '*';
      vs << vars_.name(i);
      if (e[i] > 1) vs << '^' << e[i];
      any_var = true;
    }
    if (!any_var) {
      os << mag;
    } else {
      if (!mag.is_one()) os << mag << '*';
      os << vs.str();
    }
  }
  return os.str();
}

void CommPoly::require_same_vars(const CommPoly& other) const {
  if (!(vars_ == other.vars_)) throw MismatchError("CommPoly: variable-set mismatch");
}

CommPoly& CommPoly::operator+=(const CommPoly& other) {
  require_same_vars(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

CommPoly& CommPoly::operator-=(const CommPoly& other) {
  require_same_vars(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

CommPoly operator*(const CommPoly& a, const CommPoly& b) {
  a.require_same_vars(b);
  CommPoly r(a.vars_);
  if (a.is_zero() || b.is_zero()) return r;
  const std::size_t k = a.nvars();
  Exponent e(k);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < k; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

CommPoly add(const CommPoly& f, const CommPoly& g) { return f + g; }
CommPoly mul(const CommPoly& f, const CommPoly& g) { return f * g; }
CommPoly shift_substitute(const CommPoly& f, const std::vector<Rational>& offsets) {
  return f.shift_substitute(offsets);
}
Rational evaluate(const CommPoly& f, const std::vector<Rational>& point) { return f.evaluate(point); }

std::ostream& operator<<(std::ostream& os, const CommPoly& f) { return os << f.to_string(); }

}  // namespace opfactor
