#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "opfactor/comm_poly.hpp"
#include "opfactor/ore_poly.hpp"

namespace testsupport {

using opfactor::AlgebraKind;
using opfactor::AlgebraSpec;
using opfactor::CommPoly;
using opfactor::OrePoly;
using opfactor::Rational;
using opfactor::VarSet;

inline constexpr int kPropertyCases = 1000;

inline Rational small_rational(std::mt19937_64& rng, int height = 5, bool allow_fraction = true) {
  std::uniform_int_distribution<long> num(-height, height);
  std::uniform_int_distribution<long> den(1, allow_fraction ? 3 : 1);
  return Rational(num(rng), den(rng));
}

inline Rational nonzero_rational(std::mt19937_64& rng, int height = 5) {
  Rational r;
  do r = small_rational(rng, height); while (r.is_zero());
  return r;
}

inline CommPoly random_comm(std::mt19937_64& rng, const VarSet& vars, int max_terms = 4, unsigned max_exp = 3) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<unsigned> ex(0, max_exp);
  CommPoly f(vars);
  const int t = nterms(rng);
  for (int i = 0; i < t; ++i) {
    opfactor::Exponent e(vars.size());
    for (auto& v : e) v = ex(rng);
    f.add_term(e, small_rational(rng));
  }
  return f;
}

inline OrePoly random_ore(std::mt19937_64& rng, const AlgebraSpec& alg, int max_terms = 4, unsigned max_exp = 3) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<unsigned> ex(0, max_exp);
  OrePoly p(alg);
  const int t = nterms(rng);
  for (int i = 0; i < t; ++i) {
    opfactor::OreMonomial m(2 * alg.n);
    for (auto& v : m) v = ex(rng);
    p.add_term(m, small_rational(rng));
  }
  return p;
}

/// Random homogeneous element of the given degree.
inline OrePoly random_homogeneous(std::mt19937_64& rng, const AlgebraSpec& alg, const std::vector<long>& z,
                                  int max_terms = 3, unsigned max_kappa = 2) {
  std::uniform_int_distribution<unsigned> ex(0, max_kappa);
  std::uniform_int_distribution<int> nterms(1, max_terms);
  OrePoly p(alg);
  const int t = nterms(rng);
  for (int i = 0; i < t; ++i) {
    opfactor::OreMonomial m(2 * alg.n);
    for (std::size_t j = 0; j < alg.n; ++j) {
      const unsigned k = ex(rng);
      m[j] = k + static_cast<unsigned>(z[j] < 0 ? -z[j] : 0);
      m[alg.n + j] = k + static_cast<unsigned>(z[j] > 0 ? z[j] : 0);
    }
    p.add_term(m, small_rational(rng));
  }
  return p;
}

/// Multiplication oracle: expand every term pair as a word over the generators
/// and rewrite adjacent (d_i, x_j) pairs until the word is normal ordered.
inline OrePoly multiply_by_words(const OrePoly& a, const OrePoly& b) {
  const AlgebraSpec& alg = a.algebra();
  const std::size_t n = alg.n;
  // token 2i = x_i, 2i+1 = d_i
  using Word = std::vector<int>;
  std::map<Word, Rational> pending;
  auto word_of = [&](const opfactor::OreMonomial& m) {
    Word w;
    for (std::size_t i = 0; i < n; ++i)
      for (unsigned k = 0; k < m[i]; ++k) w.push_back(static_cast<int>(2 * i));
    for (std::size_t i = 0; i < n; ++i)
      for (unsigned k = 0; k < m[n + i]; ++k) w.push_back(static_cast<int>(2 * i + 1));
    return w;
  };
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      Word w = word_of(ma);
      Word wb = word_of(mb);
      w.insert(w.end(), wb.begin(), wb.end());
      pending[w] += ca * cb;
    }
  OrePoly out(alg);
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    Word w = node.key();
    const Rational c = node.mapped();
    if (c.is_zero()) continue;
    std::size_t pos = w.size();
    for (std::size_t k = 0; k + 1 < w.size(); ++k)
      if ((w[k] & 1) == 1 && (w[k + 1] & 1) == 0) {
        pos = k;
        break;
      }
    if (pos == w.size()) {
      opfactor::OreMonomial m(2 * n, 0);
      for (int t : w) ++m[(t & 1) ? n + static_cast<std::size_t>(t / 2) : static_cast<std::size_t>(t / 2)];
      out.add_term(m, c);
      continue;
    }
    const int di = w[pos] / 2;
    const int xj = w[pos + 1] / 2;
    Word swapped = w;
    std::swap(swapped[pos], swapped[pos + 1]);
    if (di != xj) {
      pending[swapped] += c;
      continue;
    }
    if (alg.kind == AlgebraKind::shift) {
      pending[swapped] += c;  // s x = x s + s
      Word dropped = w;
      dropped.erase(dropped.begin() + static_cast<long>(pos) + 1);
      pending[dropped] += c;
    } else {
      pending[swapped] += c * alg.q_of(static_cast<std::size_t>(di));
      Word dropped = w;
      dropped.erase(dropped.begin() + static_cast<long>(pos), dropped.begin() + static_cast<long>(pos) + 2);
      pending[dropped] += c;
    }
  }
  return out;
}

}  // namespace testsupport
