#include "opfactor/grading.hpp"

#include <algorithm>
#include <mutex>
#include <tuple>

#include "opfactor/errors.hpp"

namespace opfactor::grading {

namespace {

void require_graded_algebra(const AlgebraSpec& algebra) {
  if (algebra.kind == AlgebraKind::shift) throw DomainError("the Z^n-grading applies to Weyl and q-Weyl algebras only");
}

// Affine map θ_i -> a θ_i + b realising X^e(z) D^w(z) f = f(map) X^e(z) D^w(z) in coordinate i.
std::pair<Rational, Rational> pass_left_map(long zi, const Rational& q) {
  if (zi >= 0) {
    const auto k = static_cast<unsigned>(zi);
    return {q.pow(k), q_bracket(k, q)};
  }
  const auto k = static_cast<unsigned>(-zi);
  const Rational qk = q.pow(k);
  return {qk.inverse(), -q_bracket(k, q) / qk};
}

}  // namespace

std::strong_ordering compare_degrees(const DegreeVector& a, const DegreeVector& b) {
  if (a.size() != b.size()) throw MismatchError("compare_degrees: length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

DegreeVector operator+(const DegreeVector& a, const DegreeVector& b) {
  if (a.size() != b.size()) throw MismatchError("degree length mismatch");
  DegreeVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

DegreeVector operator-(const DegreeVector& a, const DegreeVector& b) {
  if (a.size() != b.size()) throw MismatchError("degree length mismatch");
  DegreeVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

bool is_zero_degree(const DegreeVector& z) {
  return std::all_of(z.begin(), z.end(), [](long v) { return v == 0; });
}

GradedPart GradedPart::make(DegreeVector z, CommPoly theta_poly) {
  GradedPart g;
  g.e.assign(z.size(), 0);
  g.w.assign(z.size(), 0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] < 0) g.e[i] = static_cast<unsigned>(-z[i]);
    if (z[i] > 0) g.w[i] = static_cast<unsigned>(z[i]);
  }
  g.z = std::move(z);
  g.theta_poly = std::move(theta_poly);
  return g;
}

const VarSet& theta_vars(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, VarSet> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, VarSet::numbered("theta", n)).first;
  return it->second;
}

DegreeVector monomial_degree(const OreMonomial& m, std::size_t n) {
  DegreeVector z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = static_cast<long>(m[n + i]) - static_cast<long>(m[i]);
  return z;
}

std::optional<DegreeVector> degree_of(const OrePoly& p) {
  if (p.is_zero()) throw DomainError("degree_of: zero has no degree");
  std::optional<DegreeVector> z;
  for (const auto& [m, c] : p.terms()) {
    auto d = monomial_degree(m, p.n());
    if (!z)
      z = std::move(d);
    else if (*z != d)
      return std::nullopt;
  }
  return z;
}

std::map<DegreeVector, OrePoly, DegreeLess> graded_decomposition(const OrePoly& p) {
  std::map<DegreeVector, OrePoly, DegreeLess> parts;
  for (const auto& [m, c] : p.terms()) {
    auto z = monomial_degree(m, p.n());
    auto it = parts.find(z);
    if (it == parts.end()) it = parts.emplace(std::move(z), OrePoly(p.algebra())).first;
    it->second.add_term(m, c);
  }
  return parts;
}

CommPoly xd_to_theta(unsigned m, std::size_t i, const AlgebraSpec& algebra) {
  require_graded_algebra(algebra);
  const VarSet& vars = theta_vars(algebra.n);
  const Rational q = algebra.q_of(i);
  CommPoly theta = CommPoly::variable(vars, i);
  CommPoly result = CommPoly::constant(vars, Rational(1));
  for (unsigned j = 0; j < m; ++j)
    result = result * (theta - CommPoly::constant(vars, q_bracket(j, q)));
  if (algebra.kind == AlgebraKind::qweyl && m > 1) {
    const unsigned tri = (m - 1) * m / 2;
    result = result.scaled(q.pow(tri).inverse());
  }
  return result;
}

CommPoly pass_left(const CommPoly& f, const DegreeVector& z, const AlgebraSpec& algebra) {
  require_graded_algebra(algebra);
  std::vector<std::pair<Rational, Rational>> maps;
  maps.reserve(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) maps.push_back(pass_left_map(z[i], algebra.q_of(i)));
  return f.affine_substitute(maps);
}

CommPoly pass_right(const CommPoly& f, const DegreeVector& z, const AlgebraSpec& algebra) {
  require_graded_algebra(algebra);
  std::vector<std::pair<Rational, Rational>> maps;
  maps.reserve(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const auto [a, b] = pass_left_map(z[i], algebra.q_of(i));
    const Rational inv = a.inverse();
    maps.emplace_back(inv, -b * inv);
  }
  return f.affine_substitute(maps);
}

GradedPart to_theta_form(const OrePoly& p) {
  require_graded_algebra(p.algebra());
  const auto z = degree_of(p);
  if (!z) throw DomainError("to_theta_form: input is not homogeneous");
  const std::size_t n = p.n();
  const VarSet& vars = theta_vars(n);
  CommPoly acc(vars);
  for (const auto& [m, c] : p.terms()) {
    CommPoly term = CommPoly::constant(vars, c);
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned a = m[i];
      const unsigned b = m[n + i];
      const unsigned kappa = std::min(a, b);
      CommPoly factor = xd_to_theta(kappa, i, p.algebra());
      if (a > b) {
        // x^e (x^k d^k): move the θ-polynomial left past x^e.
        DegreeVector zi(n, 0);
        zi[i] = -static_cast<long>(a - b);
        factor = pass_left(factor, zi, p.algebra());
      }
      term = term * factor;
    }
    acc += term;
  }
  return GradedPart::make(*z, std::move(acc));
}

OrePoly theta_element(const AlgebraSpec& algebra, std::size_t i) {
  return OrePoly::x(algebra, i) * OrePoly::d(algebra, i);
}

OrePoly from_theta_form(const GradedPart& g, const AlgebraSpec& algebra) {
  require_graded_algebra(algebra);
  const std::size_t n = algebra.n;
  if (g.z.size() != n) throw MismatchError("from_theta_form: degree length mismatch");
  std::vector<std::vector<OrePoly>> powers(n);
  auto theta_pow = [&](std::size_t i, unsigned k) -> const OrePoly& {
    auto& list = powers[i];
    if (list.empty()) list.push_back(OrePoly::constant(algebra, Rational(1)));
    while (list.size() <= k) list.push_back(list.back() * theta_element(algebra, i));
    return list[k];
  };
  OrePoly body(algebra);
  for (const auto& [e, c] : g.theta_poly.terms()) {
    OrePoly term = OrePoly::constant(algebra, c);
    for (std::size_t i = 0; i < n; ++i)
      if (e[i] != 0) term = term * theta_pow(i, e[i]);
    body += term;
  }
  return body * OrePoly::monomial(algebra, g.e, g.w, Rational(1));
}

std::optional<ThetaSplit> theta_rewrite_reducibles(const CommPoly& f, const AlgebraSpec& algebra) {
  require_graded_algebra(algebra);
  if (f.is_zero() || f.total_degree() != 1 || f.size() > 2) return std::nullopt;
  const CommPoly g = f.monic();
  std::size_t var = 0;
  std::size_t linear_terms = 0;
  for (const auto& [e, c] : g.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] == 1) {
        var = i;
        ++linear_terms;
      }
  }
  if (linear_terms != 1) return std::nullopt;
  const Rational lc = f.lead_coefficient();
  const Rational c0 = g.constant_term();
  const Rational q = algebra.q_of(var);
  if (c0.is_zero()) return ThetaSplit{OrePoly::x(algebra, var), OrePoly::d(algebra, var), lc};
  // d_i x_i = q_i (θ_i + 1/q_i)
  if (c0 == q.inverse()) return ThetaSplit{OrePoly::d(algebra, var), OrePoly::x(algebra, var), lc * q.inverse()};
  return std::nullopt;
}

namespace {

struct TailKey {
  AlgebraKind kind;
  Rational q;
  long a;
  long b;
  bool operator<(const TailKey& o) const { return std::tie(kind, q, a, b) < std::tie(o.kind, o.q, o.a, o.b); }
};

// Univariate coefficient list of the single-coordinate tail product.
std::vector<Rational> tail_product_1(AlgebraKind kind, const Rational& q, long a, long b) {
  static std::mutex mutex;
  static std::map<TailKey, std::vector<Rational>> cache;
  const TailKey key{kind, q, a, b};
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const AlgebraSpec one = kind == AlgebraKind::qweyl ? AlgebraSpec::qweyl({q}) : AlgebraSpec::weyl(1);
  auto tail = [&](long z) {
    return OrePoly::monomial(one, {static_cast<unsigned>(z < 0 ? -z : 0)}, {static_cast<unsigned>(z > 0 ? z : 0)},
                             Rational(1));
  };
  const GradedPart g = to_theta_form(tail(a) * tail(b));
  std::vector<Rational> coeffs(g.theta_poly.degree_in(0) + 1, Rational(0));
  for (const auto& [e, c] : g.theta_poly.terms()) coeffs[e[0]] = c;
  std::lock_guard lock(mutex);
  cache.emplace(key, coeffs);
  return coeffs;
}

}  // namespace

CommPoly tail_product(const DegreeVector& alpha, const DegreeVector& beta, const AlgebraSpec& algebra) {
  require_graded_algebra(algebra);
  if (alpha.size() != beta.size() || alpha.size() != algebra.n) throw MismatchError("tail_product: length mismatch");
  const VarSet& vars = theta_vars(algebra.n);
  CommPoly result = CommPoly::constant(vars, Rational(1));
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if ((alpha[i] >= 0 && beta[i] >= 0) || (alpha[i] <= 0 && beta[i] <= 0)) continue;
    const auto coeffs = tail_product_1(algebra.kind, algebra.q_of(i), alpha[i], beta[i]);
    CommPoly factor(vars);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      Exponent e(algebra.n, 0);
      e[i] = static_cast<unsigned>(k);
      factor.add_term(e, coeffs[k]);
    }
    result = result * factor;
  }
  return result;
}

GradedPart graded_mul(const GradedPart& a, const GradedPart& b, const AlgebraSpec& algebra) {
  CommPoly body = a.theta_poly * pass_left(b.theta_poly, a.z, algebra);
  body = body * tail_product(a.z, b.z, algebra);
  return GradedPart::make(a.z + b.z, std::move(body));
}

std::optional<GradedPart> divide_left(const GradedPart& h, const GradedPart& p, const AlgebraSpec& algebra) {
  const DegreeVector mu = h.z - p.z;
  const CommPoly denom = p.theta_poly * tail_product(p.z, mu, algebra);
  auto r = h.theta_poly.divide_exact(denom);
  if (!r) return std::nullopt;
  return GradedPart::make(mu, pass_right(*r, p.z, algebra));
}

std::optional<GradedPart> divide_right(const GradedPart& h, const GradedPart& q, const AlgebraSpec& algebra) {
  const DegreeVector eta = h.z - q.z;
  const CommPoly denom = pass_left(q.theta_poly, eta, algebra) * tail_product(eta, q.z, algebra);
  auto r = h.theta_poly.divide_exact(denom);
  if (!r) return std::nullopt;
  return GradedPart::make(eta, std::move(*r));
}

}  // namespace opfactor::grading
