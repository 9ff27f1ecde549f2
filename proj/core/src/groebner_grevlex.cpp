#include <algorithm>
#include <cstdint>
#include <functional>
#include <list>
#include <map>
#include <optional>

#include "opfactor/commfact.hpp"
#include "opfactor/groebner.hpp"

namespace opfactor::groebner {

namespace {

unsigned total(const Exponent& e) {
  unsigned s = 0;
  for (unsigned v : e) s += v;
  return s;
}

// ascending grevlex
struct GrevLess {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const unsigned da = total(a), db = total(b);
    if (da != db) return da < db;
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] > b[i];
    return false;
  }
};

// F_p with a per-thread modulus below 2^31
thread_local std::uint64_t g_mod = 2147483647;
constexpr std::uint64_t kFilterPrimes[] = {2147483629, 2147483587};

struct Fp {
  std::uint64_t v = 0;
  Fp() = default;
  explicit Fp(std::uint64_t x) : v(x % g_mod) {}
  [[nodiscard]] bool is_zero() const { return v == 0; }
  [[nodiscard]] Fp inverse() const {
    std::uint64_t r = 1, b = v, e = g_mod - 2;
    while (e) {
      if (e & 1) r = r * b % g_mod;
      b = b * b % g_mod;
      e >>= 1;
    }
    return Fp(r);
  }
  Fp& operator+=(const Fp& o) {
    v = (v + o.v) % g_mod;
    return *this;
  }
  Fp& operator*=(const Fp& o) {
    v = v * o.v % g_mod;
    return *this;
  }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator-(const Fp& a) { return Fp(g_mod - a.v); }
};

template <class K>
struct GPolyT {
  std::map<Exponent, K, GrevLess> t;
  [[nodiscard]] bool zero() const { return t.empty(); }
  [[nodiscard]] const Exponent& lead() const { return t.rbegin()->first; }
  [[nodiscard]] bool constant() const { return t.size() == 1 && total(lead()) == 0; }
  [[nodiscard]] const K& lc() const { return t.rbegin()->second; }
  void add(const Exponent& e, const K& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t.emplace(e, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
  void make_monic() {
    const K inv = lc().inverse();
    for (auto& [e, c] : t) c *= inv;
  }
};

using GPoly = GPolyT<Rational>;

GPoly from(const CommPoly& f) {
  GPoly g;
  for (const auto& [e, c] : f.terms()) g.t.emplace(e, c);
  return g;
}

CommPoly to(const GPoly& g, const VarSet& vars) {
  CommPoly f(vars);
  for (const auto& [e, c] : g.t) f.add_term(e, c);
  return f;
}

bool divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponent lcm(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Exponent plus(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Exponent minus(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

bool coprime(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) return false;
  return true;
}

// f -= c * x^m * g
template <class K>
void sub_mul(GPolyT<K>& f, const GPolyT<K>& g, const Exponent& m, const K& c) {
  for (const auto& [e, d] : g.t) f.add(plus(e, m), -(c * d));
}

// basis elements are monic
template <class K>
GPolyT<K> normal_form(GPolyT<K> p, const std::vector<GPolyT<K>>& g) {
  GPolyT<K> r;
  while (!p.zero()) {
    const Exponent t = p.lead();
    const K c = p.lc();
    const GPolyT<K>* hit = nullptr;
    for (const auto& h : g)
      if (!h.zero() && divides(h.lead(), t)) {
        hit = &h;
        break;
      }
    if (hit) {
      sub_mul(p, *hit, minus(t, hit->lead()), c);
    } else {
      r.t.emplace(t, c);
      p.t.erase(std::prev(p.t.end()));
    }
  }
  return r;
}

template <class K>
GPolyT<K> spoly(const GPolyT<K>& f, const GPolyT<K>& g) {
  const Exponent l = lcm(f.lead(), g.lead());
  GPolyT<K> s;
  for (const auto& [e, c] : f.t) s.add(plus(e, minus(l, f.lead())), c);
  sub_mul(s, g, minus(l, g.lead()), K(1));
  return s;
}

struct Pair {
  std::size_t i, j;
  Exponent lcm;
};

template <class K>
std::vector<GPolyT<K>> grevlex_basis(std::vector<GPolyT<K>> input) {
  using GPoly = GPolyT<K>;
  std::vector<GPoly> basis;
  for (auto& g : input) {
    if (g.zero()) continue;
    g.make_monic();
    if (g.constant()) return {g};
    basis.push_back(std::move(g));
  }
  if (basis.empty()) return {};

  std::list<Pair> pairs;
  std::vector<bool> alive(basis.size(), true);
  auto update = [&](std::size_t k) {
    const Exponent& lk = basis[k].lead();
    for (auto it = pairs.begin(); it != pairs.end();) {
      if (divides(lk, it->lcm) && lcm(basis[it->i].lead(), lk) != it->lcm && lcm(basis[it->j].lead(), lk) != it->lcm)
        it = pairs.erase(it);
      else
        ++it;
    }
    std::vector<Pair> fresh;
    for (std::size_t i = 0; i < k; ++i)
      if (alive[i]) fresh.push_back({i, k, lcm(basis[i].lead(), lk)});
    std::vector<Pair> kept;
    for (const auto& p : fresh) {
      bool redundant = false;
      for (const auto& q : fresh)
        if (q.lcm != p.lcm && divides(q.lcm, p.lcm)) redundant = true;
      for (const auto& q : kept)
        if (q.lcm == p.lcm) redundant = true;
      if (!redundant) kept.push_back(p);
    }
    for (const auto& p : kept)
      if (!coprime(basis[p.i].lead(), lk)) pairs.push_back(p);
    for (std::size_t i = 0; i < k; ++i)
      if (alive[i] && divides(lk, basis[i].lead())) alive[i] = false;
  };
  for (std::size_t k = 1; k < basis.size(); ++k) update(k);

  auto active = [&] {
    std::vector<GPoly> a;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (alive[i]) a.push_back(basis[i]);
    return a;
  };

  GrevLess less;
  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(),
                                 [&](const Pair& a, const Pair& b) { return less(a.lcm, b.lcm); });
    const Pair p = *best;
    pairs.erase(best);
    GPoly h = normal_form(spoly(basis[p.i], basis[p.j]), active());
    if (h.zero()) continue;
    h.make_monic();
    if (h.constant()) return {h};
    basis.push_back(std::move(h));
    alive.push_back(true);
    update(basis.size() - 1);
  }

  std::vector<GPoly> g = active();
  std::vector<GPoly> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < g.size() && !drop; ++j) {
      if (i == j || !divides(g[j].lead(), g[i].lead())) continue;
      drop = g[j].lead() != g[i].lead() || j < i;
    }
    if (!drop) minimal.push_back(g[i]);
  }
  std::vector<GPoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<GPoly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    GPoly r = normal_form(minimal[i], others);
    r.make_monic();
    reduced.push_back(std::move(r));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const GPoly& a, const GPoly& b) { return less(a.lead(), b.lead()); });
  return reduced;
}

// Smallest monic polynomial in x_var alone lying in the ideal, from normal forms of powers.
CommPoly eliminant(std::size_t var, const std::vector<GPoly>& basis, const std::vector<Exponent>& standard,
                   const VarSet& vars) {
  std::map<Exponent, std::size_t, GrevLess> index;
  for (std::size_t i = 0; i < standard.size(); ++i) index.emplace(standard[i], i);
  const std::size_t n = vars.size();
  const std::size_t dim = standard.size();

  // echelon rows: (vector over standard monomials, combination of powers)
  struct Row {
    std::vector<Rational> v;
    std::vector<Rational> comb;
    std::size_t pivot;
  };
  std::vector<Row> rows;
  GPoly power;
  power.t.emplace(Exponent(n, 0), Rational(1));
  Exponent step(n, 0);
  step[var] = 1;
  for (std::size_t d = 0; d <= dim; ++d) {
    if (d > 0) {
      GPoly next;
      for (const auto& [e, c] : power.t) next.add(plus(e, step), c);
      power = normal_form(std::move(next), basis);
    }
    std::vector<Rational> v(dim);
    for (const auto& [e, c] : power.t) v[index.at(e)] = c;
    std::vector<Rational> comb(d + 1);
    comb[d] = Rational(1);
    for (const auto& r : rows) {
      const Rational c = v[r.pivot];
      if (c.is_zero()) continue;
      for (std::size_t i = 0; i < dim; ++i) v[i] -= c * r.v[i];
      for (std::size_t i = 0; i < r.comb.size(); ++i) comb[i] -= c * r.comb[i];
    }
    std::size_t piv = dim;
    for (std::size_t i = 0; i < dim; ++i)
      if (!v[i].is_zero()) {
        piv = i;
        break;
      }
    if (piv == dim) {
      CommPoly f(VarSet({vars.name(var)}));
      for (std::size_t i = 0; i < comb.size(); ++i) f.add_term(Exponent{static_cast<unsigned>(i)}, comb[i]);
      return f;
    }
    const Rational inv = v[piv].inverse();
    for (auto& x : v) x *= inv;
    for (auto& x : comb) x *= inv;
    rows.push_back({std::move(v), std::move(comb), piv});
  }
  throw Error("eliminant: no dependency among powers");
}

std::vector<GPoly> grevlex_basis(const PolySystem& sys) {
  std::vector<GPoly> in;
  for (const auto& f : sys.generators) {
    if (f.is_zero()) continue;
    if (!(f.vars() == sys.unknowns)) throw MismatchError("generator uses undeclared unknowns");
    in.push_back(from(f));
  }
  return grevlex_basis(std::move(in));
}

// Image of the system mod p; nullopt when p divides a denominator.
std::optional<std::vector<GPolyT<Fp>>> reduce_mod(const PolySystem& sys) {
  std::vector<GPolyT<Fp>> out;
  for (const auto& f : sys.generators) {
    GPolyT<Fp> g;
    for (const auto& [e, c] : f.terms()) {
      const mpz_class den = c.raw().get_den() % mpz_class(g_mod);
      if (den == 0) return std::nullopt;
      mpz_class num = c.raw().get_num() % mpz_class(g_mod);
      if (num < 0) num += g_mod;
      g.add(e, Fp(num.get_ui()) * Fp(den.get_ui()).inverse());
    }
    out.push_back(std::move(g));
  }
  return out;
}

// The ideal is the unit ideal mod p: no rational point has p-integral coordinates.
bool trivial_mod(const PolySystem& sys, std::uint64_t prime) {
  g_mod = prime;
  auto img = reduce_mod(sys);
  if (!img) return false;
  const auto b = grevlex_basis(std::move(*img));
  return b.size() == 1 && b[0].constant();
}

// a/b with |a|, b <= sqrt(m/2) and a = b*u mod m
std::optional<mpq_class> reconstruct(const mpz_class& u, const mpz_class& m) {
  mpz_class bound;
  mpz_sqrt(bound.get_mpz_t(), mpz_class(m / 2).get_mpz_t());
  mpz_class r0 = m, r1 = u, t0 = 0, t1 = 1;
  while (r1 > bound) {
    const mpz_class q = r0 / r1;
    r0 = r0 - q * r1;
    std::swap(r0, r1);
    t0 = t0 - q * t1;
    std::swap(t0, t1);
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  mpq_class v(r1, t1);
  v.canonicalize();
  return v;
}

// The unique rational point, when every image mod p is a single reduced point.
// nullopt: the shortcut does not apply and the exact path has to run.
std::optional<std::vector<Rational>> unique_point(const PolySystem& sys) {
  const std::size_t n = sys.unknowns.size();
  std::vector<mpz_class> acc(n);
  mpz_class modulus = 1;
  std::optional<std::vector<mpq_class>> previous;
  mpz_class prime = mpz_class(1) << 30;
  for (int used = 0; used < 64;) {
    mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
    g_mod = prime.get_ui();
    auto img = reduce_mod(sys);
    if (!img) continue;
    const auto b = grevlex_basis(std::move(*img));
    if (b.size() == 1 && b[0].constant()) continue;
    if (b.size() != n) return std::nullopt;
    std::vector<std::uint64_t> value(n);
    for (const auto& g : b) {
      if (total(g.lead()) != 1 || g.t.size() > 2) return std::nullopt;
      const std::size_t i = std::find(g.lead().begin(), g.lead().end(), 1u) - g.lead().begin();
      value[i] = g.t.size() == 2 ? (-g.t.begin()->second).v : 0;
    }
    ++used;
    // CRT
    for (std::size_t i = 0; i < n; ++i) {
      mpz_class inv;
      mpz_class mp = modulus % prime;
      mpz_invert(inv.get_mpz_t(), mp.get_mpz_t(), prime.get_mpz_t());
      mpz_class diff = (mpz_class(static_cast<unsigned long>(value[i])) - acc[i]) % prime;
      if (diff < 0) diff += prime;
      acc[i] += modulus * ((diff * inv) % prime);
    }
    modulus *= prime;
    std::vector<mpq_class> cur;
    for (std::size_t i = 0; i < n; ++i) {
      auto v = reconstruct(acc[i], modulus);
      if (!v) break;
      cur.push_back(*v);
    }
    if (cur.size() != n) {
      previous.reset();
      continue;
    }
    if (previous && *previous == cur) {
      std::vector<Rational> pt;
      for (const auto& v : cur) pt.emplace_back(v);
      for (const auto& f : sys.generators)
        if (!f.evaluate(pt).is_zero()) return std::nullopt;
      return pt;
    }
    previous = std::move(cur);
  }
  return std::nullopt;
}

}  // namespace

std::vector<CommPoly> buchberger_grevlex(const PolySystem& sys) {
  std::vector<CommPoly> out;
  for (const auto& g : grevlex_basis(sys)) out.push_back(to(g, sys.unknowns));
  return out;
}

SolutionSet solve_rational_zero_dim(const PolySystem& sys) {
  SolutionSet out;
  const std::size_t n = sys.unknowns.size();
  if (n > 0 && trivial_mod(sys, kFilterPrimes[0]) && trivial_mod(sys, kFilterPrimes[1])) return out;
  if (n > 0) {
    if (auto pt = unique_point(sys)) {
      std::map<std::string, Rational> named;
      for (std::size_t i = 0; i < n; ++i) named.emplace(sys.unknowns.name(i), (*pt)[i]);
      out.points.push_back(std::move(named));
      return out;
    }
  }
  const std::vector<GPoly> basis = grevlex_basis(sys);
  auto as_comm = [&] {
    std::vector<CommPoly> b;
    for (const auto& g : basis) b.push_back(to(g, sys.unknowns));
    return b;
  };
  if (basis.empty()) {
    if (n == 0) out.points.emplace_back();
    else throw NonIsolatedSolutions(as_comm());
    return out;
  }
  if (basis.size() == 1 && basis[0].constant()) return out;

  for (std::size_t i = 0; i < n; ++i) {
    bool found = false;
    for (const auto& g : basis) {
      const Exponent& e = g.lead();
      if (e[i] > 0 && total(e) == e[i]) found = true;
    }
    if (!found) throw NonIsolatedSolutions(as_comm());
  }

  // standard monomials: not divisible by any leading monomial
  std::vector<Exponent> standard;
  std::vector<Exponent> frontier{Exponent(n, 0)};
  std::map<Exponent, bool, GrevLess> seen;
  while (!frontier.empty()) {
    Exponent e = frontier.back();
    frontier.pop_back();
    if (!seen.emplace(e, true).second) continue;
    bool reducible = false;
    for (const auto& g : basis)
      if (divides(g.lead(), e)) reducible = true;
    if (reducible) continue;
    standard.push_back(e);
    for (std::size_t i = 0; i < n; ++i) {
      Exponent f = e;
      ++f[i];
      frontier.push_back(std::move(f));
    }
  }

  // candidate values per unknown from rational roots of its eliminant
  std::vector<std::vector<Rational>> cand(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CommPoly e = eliminant(i, basis, standard, sys.unknowns);
    for (const auto& [f, m] : commfact::factor_univariate(e).factors) {
      if (f.degree_in(0) != 1) {
        ++out.dropped;
        out.complete_over_Q = false;
        continue;
      }
      cand[i].push_back(-f.coefficient(Exponent{0}) / f.coefficient(Exponent{1}));
    }
  }

  // backtracking, pruning with basis elements whose unknowns are all fixed
  std::vector<std::size_t> last(basis.size(), 0);
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (const auto& [e, c] : basis[k].t)
      for (std::size_t i = 0; i < n; ++i)
        if (e[i] > 0) last[k] = std::max(last[k], i);
  const std::vector<CommPoly> comm = as_comm();
  std::vector<Rational> values(n);
  std::function<void(std::size_t)> assign = [&](std::size_t k) {
    if (k == n) {
      for (const auto& f : sys.generators)
        if (!f.evaluate(values).is_zero()) return;
      std::map<std::string, Rational> pt;
      for (std::size_t i = 0; i < n; ++i) pt.emplace(sys.unknowns.name(i), values[i]);
      out.points.push_back(std::move(pt));
      return;
    }
    for (const auto& v : cand[k]) {
      values[k] = v;
      bool ok = true;
      for (std::size_t b = 0; b < comm.size() && ok; ++b)
        if (last[b] == k && !comm[b].evaluate(values).is_zero()) ok = false;
      if (ok) assign(k + 1);
    }
  };
  assign(0);
  return out;
}

}  // namespace opfactor::groebner
