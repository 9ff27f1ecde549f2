#include "opfactor/ore_poly.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

#include "opfactor/errors.hpp"

namespace opfactor {

AlgebraSpec AlgebraSpec::weyl(std::size_t n) { return AlgebraSpec{AlgebraKind::weyl, n, {}}; }
AlgebraSpec AlgebraSpec::shift(std::size_t n) { return AlgebraSpec{AlgebraKind::shift, n, {}}; }
AlgebraSpec AlgebraSpec::qweyl(std::vector<Rational> q) {
  const std::size_t n = q.size();
  AlgebraSpec spec{AlgebraKind::qweyl, n, std::move(q)};
  spec.validate();
  return spec;
}

Rational AlgebraSpec::q_of(std::size_t i) const {
  return kind == AlgebraKind::qweyl ? q.at(i) : Rational(1);
}

bool AlgebraSpec::has_trivial_q() const {
  for (const auto& v : q)
    if (!v.is_one()) return false;
  return true;
}

void AlgebraSpec::validate() const {
  if (n == 0) throw DomainError("algebra needs n >= 1");
  if (kind == AlgebraKind::qweyl) {
    if (q.size() != n) throw DomainError("q-Weyl algebra needs exactly n q-values");
    for (const auto& v : q)
      if (v.is_zero()) throw DomainError("q-values must be nonzero");
  } else if (!q.empty()) {
    throw DomainError("q-values only apply to the q-Weyl algebra");
  }
}

std::string to_string(AlgebraKind kind) {
  switch (kind) {
    case AlgebraKind::weyl: return "weyl";
    case AlgebraKind::shift: return "shift";
    case AlgebraKind::qweyl: return "qweyl";
  }
  return "?";
}

OrePoly::OrePoly(AlgebraSpec algebra) : algebra_(std::move(algebra)) { algebra_.validate(); }

OrePoly OrePoly::constant(const AlgebraSpec& algebra, const Rational& c) {
  OrePoly p(algebra);
  p.add_term(OreMonomial(2 * algebra.n, 0), c);
  return p;
}

OrePoly OrePoly::x(const AlgebraSpec& algebra, std::size_t i) {
  if (i >= algebra.n) throw DomainError("generator index exceeds n");
  OreMonomial m(2 * algebra.n, 0);
  m[i] = 1;
  OrePoly p(algebra);
  p.add_term(m, Rational(1));
  return p;
}

OrePoly OrePoly::d(const AlgebraSpec& algebra, std::size_t i) {
  if (i >= algebra.n) throw DomainError("generator index exceeds n");
  OreMonomial m(2 * algebra.n, 0);
  m[algebra.n + i] = 1;
  OrePoly p(algebra);
  p.add_term(m, Rational(1));
  return p;
}

OrePoly OrePoly::monomial(const AlgebraSpec& algebra, const std::vector<unsigned>& a,
                          const std::vector<unsigned>& b, const Rational& c) {
  if (a.size() != algebra.n || b.size() != algebra.n) throw DomainError("monomial exponent length mismatch");
  OreMonomial m(a);
  m.insert(m.end(), b.begin(), b.end());
  OrePoly p(algebra);
  p.add_term(m, c);
  return p;
}

bool OrePoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& m = terms_.begin()->first;
  return std::all_of(m.begin(), m.end(), [](unsigned v) { return v == 0; });
}

Rational OrePoly::constant_term() const { return coefficient(OreMonomial(2 * n(), 0)); }

Rational OrePoly::coefficient(const OreMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

OrePoly OrePoly::monic() const {
  if (is_zero()) return *this;
  return scaled(lead_coefficient().inverse());
}

unsigned OrePoly::max_var_degree(std::size_t v) const {
  if (v >= 2 * n()) throw DomainError("max_var_degree: generator index out of range");
  unsigned best = 0;
  for (const auto& [m, c] : terms_) best = std::max(best, m[v]);
  return best;
}

unsigned OrePoly::generator_degree_sum() const {
  unsigned sum = 0;
  for (std::size_t v = 0; v < 2 * n(); ++v) sum += max_var_degree(v);
  return sum;
}

unsigned OrePoly::total_degree() const {
  unsigned best = 0;
  for (const auto& [m, c] : terms_) best = std::max(best, std::accumulate(m.begin(), m.end(), 0U));
  return best;
}

void OrePoly::add_term(const OreMonomial& m, const Rational& c) {
  if (c.is_zero()) return;
  if (m.size() != 2 * n()) throw DomainError("OrePoly: monomial length mismatch");
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

OrePoly OrePoly::scaled(const Rational& c) const {
  OrePoly r(algebra_);
  if (c.is_zero()) return r;
  for (const auto& [m, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, v * c);
  return r;
}

OrePoly OrePoly::pow(unsigned k) const {
  OrePoly result = constant(algebra_, Rational(1));
  for (unsigned i = 0; i < k; ++i) result = result * *this;
  return result;
}

void OrePoly::require_same_algebra(const OrePoly& other) const {
  if (!(algebra_ == other.algebra_)) throw MismatchError("OrePoly: algebra mismatch");
}

OrePoly& OrePoly::operator+=(const OrePoly& other) {
  require_same_algebra(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

OrePoly& OrePoly::operator-=(const OrePoly& other) {
  require_same_algebra(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

namespace {

// d^b x^c = sum_k C(b,k) C(c,k) k! x^(c-k) d^(b-k).
std::vector<OreTerm1> weyl_closed_form(unsigned b, unsigned c) {
  std::vector<OreTerm1> out;
  mpz_class fact = 1;
  for (unsigned k = 0; k <= std::min(b, c); ++k) {
    if (k > 0) fact *= k;
    out.push_back({Rational(mpz_class(binomial(b, k) * binomial(c, k) * fact)), c - k, b - k});
  }
  return out;
}

using Term1Map = std::map<std::pair<unsigned, unsigned>, Rational>;

// Left-multiply a normal-ordered single-coordinate element by d (or s).
Term1Map left_mul_d(const AlgebraSpec& algebra, std::size_t i, const Term1Map& in) {
  Term1Map out;
  auto add = [&](unsigned xe, unsigned de, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = out.try_emplace({xe, de}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) out.erase(it);
    }
  };
  const Rational q = algebra.q_of(i);
  for (const auto& [key, c] : in) {
    const auto [m, j] = key;
    if (algebra.kind == AlgebraKind::shift) {
      // s x^m = (x+1)^m s
      for (unsigned k = 0; k <= m; ++k) add(k, j + 1, c * Rational(binomial(m, k)));
    } else {
      // d x^m = q^m x^m d + [m]_q x^(m-1)
      add(m, j + 1, c * q.pow(m));
      if (m > 0) add(m - 1, j, c * q_bracket(m, q));
    }
  }
  return out;
}

struct CommuteKey {
  AlgebraKind kind;
  Rational q;
  unsigned b;
  unsigned c;
  bool operator<(const CommuteKey& o) const {
    return std::tie(kind, q, b, c) < std::tie(o.kind, o.q, o.b, o.c);
  }
};

std::mutex cache_mutex;
std::map<CommuteKey, std::vector<OreTerm1>> commute_cache;

std::vector<OreTerm1> commute_iterative(const AlgebraSpec& algebra, std::size_t i, unsigned b, unsigned c) {
  Term1Map cur{{{c, 0}, Rational(1)}};
  for (unsigned k = 0; k < b; ++k) cur = left_mul_d(algebra, i, cur);
  std::vector<OreTerm1> out;
  for (const auto& [key, v] : cur) out.push_back({v, key.first, key.second});
  return out;
}

}  // namespace

std::vector<OreTerm1> commute_power(const AlgebraSpec& algebra, std::size_t i, unsigned b, unsigned c) {
  if (b == 0 || c == 0) return {{Rational(1), c, b}};
  if (algebra.kind == AlgebraKind::weyl) return weyl_closed_form(b, c);
  const CommuteKey key{algebra.kind, algebra.q_of(i), b, c};
  {
    std::lock_guard lock(cache_mutex);
    auto it = commute_cache.find(key);
    if (it != commute_cache.end()) return it->second;
  }
  auto result = commute_iterative(algebra, i, b, c);
  std::lock_guard lock(cache_mutex);
  commute_cache.emplace(key, result);
  return result;
}

std::vector<OreTerm1> commute_power_by_rewriting(const AlgebraSpec& algebra, std::size_t i, unsigned b,
                                                 unsigned c) {
  // Words over {x, d}; rewrite the leftmost "dx" until none remain.
  std::map<std::string, Rational> words{{std::string(b, 'd') + std::string(c, 'x'), Rational(1)}};
  const Rational q = algebra.q_of(i);
  std::map<std::pair<unsigned, unsigned>, Rational> done;
  while (!words.empty()) {
    auto node = words.extract(words.begin());
    const std::string& w = node.key();
    const Rational coeff = node.mapped();
    const auto pos = w.find("dx");
    if (pos == std::string::npos) {
      const auto xs = static_cast<unsigned>(std::count(w.begin(), w.end(), 'x'));
      const auto ds = static_cast<unsigned>(w.size()) - xs;
      done[{xs, ds}] += coeff;
      continue;
    }
    auto push = [&](std::string nw, const Rational& c) {
      if (c.is_zero()) return;
      words[std::move(nw)] += c;
    };
    const std::string head = w.substr(0, pos);
    const std::string tail = w.substr(pos + 2);
    if (algebra.kind == AlgebraKind::shift) {
      // s x = x s + s
      push(head + "xd" + tail, coeff);
      push(head + "d" + tail, coeff);
    } else {
      push(head + "xd" + tail, coeff * q);
      push(head + tail, coeff);
    }
  }
  std::vector<OreTerm1> out;
  for (const auto& [key, v] : done)
    if (!v.is_zero()) out.push_back({v, key.first, key.second});
  return out;
}

OrePoly operator*(const OrePoly& a, const OrePoly& b) {
  a.require_same_algebra(b);
  const AlgebraSpec& alg = a.algebra_;
  const std::size_t n = alg.n;
  OrePoly result(alg);
  if (a.is_zero() || b.is_zero()) return result;
  OreMonomial m(2 * n);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      // x^a1 d^b1 * x^a2 d^b2 = x^a1 (prod_i d_i^b1_i x_i^a2_i) d^b2
      std::vector<std::pair<OreMonomial, Rational>> partial;
      OreMonomial base(2 * n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        base[i] = ma[i];
        base[n + i] = mb[n + i];
      }
      partial.emplace_back(std::move(base), ca * cb);
      for (std::size_t i = 0; i < n; ++i) {
        const unsigned bi = ma[n + i];
        const unsigned ci = mb[i];
        if (bi == 0 && ci == 0) continue;
        const auto table = commute_power(alg, i, bi, ci);
        std::vector<std::pair<OreMonomial, Rational>> next;
        next.reserve(partial.size() * table.size());
        for (const auto& [pm, pc] : partial)
          for (const auto& t : table) {
            OreMonomial nm = pm;
            nm[i] += t.x_exp;
            nm[n + i] += t.d_exp;
            next.emplace_back(std::move(nm), pc * t.coefficient);
          }
        partial = std::move(next);
      }
      for (const auto& [pm, pc] : partial) result.add_term(pm, pc);
    }
  }
  return result;
}

OrePoly multiply(const OrePoly& f, const OrePoly& g) { return f * g; }

unsigned max_var_degree(const OrePoly& p, std::size_t v) { return p.max_var_degree(v); }

OrePoly Factorization::product(const AlgebraSpec& algebra) const {
  OrePoly result = OrePoly::constant(algebra, unit);
  for (const auto& f : factors) result = result * f;
  return result;
}

namespace {

std::string atom_text(char sym, std::size_t index, unsigned exp) {
  std::string s(1, sym);
  s += std::to_string(index + 1);
  if (exp > 1) s += "^" + std::to_string(exp);
  return s;
}


}  // namespace

std::string to_string(const OrePoly& p) {
  if (p.is_zero()) return "0";
  const std::size_t n = p.n();
  const char dsym = p.algebra().kind == AlgebraKind::shift ? 's' : 'd';
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    std::string mono;
    for (std::size_t i = 0; i < n; ++i)
      if (m[i] > 0) mono += (mono.empty() ? "" : "*") + atom_text('x', i, m[i]);
    for (std::size_t i = 0; i < n; ++i)
      if (m[n + i] > 0) mono += (mono.empty() ? "" : "*") + atom_text(dsym, i, m[n + i]);
    std::string coef;
    if (mono.empty()) {
      coef = c.abs().to_string();
    } else if (!c.abs().is_one()) {
      coef = c.abs().to_string() + "*";
    }
    if (c.sign() < 0)
      out += "-";
    else if (!first)
      out += "+";
    out += coef + mono;
    first = false;
  }
  return out;
}

}  // namespace opfactor
