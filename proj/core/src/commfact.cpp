#include "opfactor/commfact.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "opfactor/errors.hpp"
#include "upoly.hpp"

namespace opfactor::commfact {

namespace {

using detail::QPoly;

// Clears denominators and content; sign chosen so the lex-leading coefficient is positive.
CommPoly integer_primitive(const CommPoly& f) {
  mpz_class den = 1;
  for (const auto& [e, c] : f.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.denominator().get_mpz_t());
  mpz_class g = 0;
  for (const auto& [e, c] : f.terms()) {
    mpz_class v = c.numerator() * (den / c.denominator());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  Rational s(den, g);
  if (f.lead_coefficient().sign() < 0) s = -s;
  return f.scaled(s);
}

struct Kronecker {
  std::vector<unsigned long> radix;  // per variable: deg_i(f) + 1

  unsigned long encode(const Exponent& e) const {
    unsigned long k = 0, w = 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
      k += e[i] * w;
      w *= radix[i];
    }
    return k;
  }

  Exponent decode(unsigned long k) const {
    Exponent e(radix.size());
    for (std::size_t i = 0; i < radix.size(); ++i) {
      e[i] = static_cast<unsigned>(k % radix[i]);
      k /= radix[i];
    }
    return e;
  }

  QPoly image(const CommPoly& f) const {
    QPoly u;
    for (const auto& [e, c] : f.terms()) {
      const unsigned long k = encode(e);
      if (u.size() <= k) u.resize(k + 1, Rational(0));
      u[k] = c;
    }
    detail::trim(u);
    return u;
  }

  CommPoly preimage(const QPoly& u, const VarSet& vars) const {
    CommPoly f(vars);
    for (std::size_t k = 0; k < u.size(); ++k)
      if (!u[k].is_zero()) f.add_term(decode(k), u[k]);
    return f;
  }
};

// Irreducible factors (with repetition) of a polynomial with no monomial content.
std::vector<CommPoly> split_no_monomial(const CommPoly& f, std::mt19937_64& rng) {
  if (f.is_constant()) return {};
  const std::size_t n = f.nvars();
  Kronecker kr;
  kr.radix.resize(n);
  for (std::size_t i = 0; i < n; ++i) kr.radix[i] = f.degree_in(i) + 1;

  std::vector<QPoly> pieces;
  for (const auto& [g, m] : detail::squarefree(kr.image(f)))
    for (const auto& u : detail::factor_squarefree(g, rng))
      for (unsigned j = 0; j < m; ++j) pieces.push_back(u);

  std::vector<CommPoly> found;
  CommPoly rest = f;
  std::size_t s = 1;
  while (!pieces.empty() && s <= pieces.size() && !rest.is_constant()) {
    bool hit = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      QPoly prod{Rational(1)};
      for (std::size_t i : idx) prod = detail::mul(prod, pieces[i]);
      const CommPoly cand = kr.preimage(prod, f.vars());
      if (!cand.is_constant()) {
        if (auto q = rest.divide_exact(cand)) {
          found.push_back(cand.monic());
          rest = *q;
          std::vector<QPoly> remaining;
          for (std::size_t i = 0; i < pieces.size(); ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) remaining.push_back(std::move(pieces[i]));
          pieces = std::move(remaining);
          hit = true;
          break;
        }
      }
      std::size_t pos = s;
      while (pos > 0 && idx[pos - 1] == pieces.size() - s + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!hit) ++s;
  }
  if (!rest.is_constant()) found.push_back(rest.monic());
  return found;
}

bool factor_less(const CommPoly& a, const CommPoly& b) {
  if (a.total_degree() != b.total_degree()) return a.total_degree() < b.total_degree();
  return a.to_string() < b.to_string();
}

CommFactorization factor_impl(const CommPoly& f, std::uint64_t seed) {
  if (f.is_zero()) throw DomainError("cannot factor the zero polynomial");
  CommFactorization out;
  out.unit = f.lead_coefficient();
  if (f.is_constant()) return out;

  const std::size_t n = f.nvars();
  // monomial content
  Exponent low(n, ~0U);
  for (const auto& [e, c] : f.terms())
    for (std::size_t i = 0; i < n; ++i) low[i] = std::min(low[i], e[i]);
  CommPoly g(f.vars());
  for (const auto& [e, c] : f.terms()) {
    Exponent r = e;
    for (std::size_t i = 0; i < n; ++i) r[i] -= low[i];
    g.add_term(r, c);
  }

  std::vector<CommPoly> all;
  for (std::size_t i = 0; i < n; ++i)
    for (unsigned j = 0; j < low[i]; ++j) all.push_back(CommPoly::variable(f.vars(), i));
  std::mt19937_64 rng(seed);
  for (auto& h : split_no_monomial(integer_primitive(g), rng)) all.push_back(std::move(h));

  std::sort(all.begin(), all.end(), factor_less);
  for (auto& h : all) {
    if (!out.factors.empty() && out.factors.back().first == h)
      ++out.factors.back().second;
    else
      out.factors.emplace_back(std::move(h), 1U);
  }
  return out;
}

}  // namespace

CommPoly CommFactorization::product(const VarSet& vars) const {
  CommPoly r = CommPoly::constant(vars, unit);
  for (const auto& [f, m] : factors) r = r * f.pow(m);
  return r;
}

std::vector<CommPoly> CommFactorization::expanded() const {
  std::vector<CommPoly> r;
  for (const auto& [f, m] : factors)
    for (unsigned j = 0; j < m; ++j) r.push_back(f);
  return r;
}

CommFactorization factor_univariate(const CommPoly& f, std::uint64_t seed) {
  if (!f.is_zero()) {
    const auto sup = f.support();
    if (std::count(sup.begin(), sup.end(), true) > 1)
      throw DomainError("factor_univariate: more than one variable occurs");
  }
  return factor_impl(f, seed);
}

CommFactorization factor_multivariate(const CommPoly& f, std::uint64_t seed) { return factor_impl(f, seed); }

std::vector<std::pair<CommPoly, unsigned>> squarefree_decompose(const CommPoly& f) {
  if (f.is_zero()) throw DomainError("squarefree decomposition of zero");
  std::map<unsigned, CommPoly> by_mult;
  for (const auto& [g, m] : factor_impl(f, kDefaultSeed).factors) {
    auto it = by_mult.find(m);
    if (it == by_mult.end())
      by_mult.emplace(m, g);
    else
      it->second = it->second * g;
  }
  std::vector<std::pair<CommPoly, unsigned>> out;
  for (auto& [m, g] : by_mult) out.emplace_back(g.monic(), m);
  return out;
}

CommPoly gcd(const CommPoly& f, const CommPoly& g) {
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  const auto ff = factor_impl(f, kDefaultSeed);
  const auto fg = factor_impl(g, kDefaultSeed);
  CommPoly r = CommPoly::constant(f.vars(), Rational(1));
  for (const auto& [a, m] : ff.factors)
    for (const auto& [b, k] : fg.factors)
      if (a == b) r = r * a.pow(std::min(m, k));
  return r;
}

CommPoly content_in(const CommPoly& f, std::size_t i) {
  std::map<unsigned, CommPoly> coeffs;
  for (const auto& [e, c] : f.terms()) {
    Exponent r = e;
    r[i] = 0;
    auto it = coeffs.try_emplace(e[i], CommPoly(f.vars())).first;
    it->second.add_term(r, c);
  }
  CommPoly g(f.vars());
  for (const auto& [k, c] : coeffs) {
    g = gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

}  // namespace opfactor::commfact
