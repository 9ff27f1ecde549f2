#include "upoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace opfactor::detail {

void trim(QPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

QPoly add(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

QPoly sub(const QPoly& a, const QPoly& b) {
  QPoly r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

QPoly scale(const QPoly& a, const Rational& c) {
  if (c.is_zero()) return {};
  QPoly r = a;
  for (auto& v : r) v *= c;
  return r;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  QPoly r = a;
  trim(r);
  if (r.size() < b.size()) return {{}, r};
  QPoly q(r.size() - b.size() + 1, Rational(0));
  const Rational inv = b.back().inverse();
  for (std::size_t k = q.size(); k-- > 0;) {
    const Rational c = r[k + b.size() - 1] * inv;
    q[k] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[k + j] -= c * b[j];
  }
  trim(q);
  trim(r);
  return {q, r};
}

QPoly monic(const QPoly& a) {
  if (a.empty()) return a;
  return scale(a, a.back().inverse());
}

namespace {

// Primitive integer images keep the remainder sequence from blowing up.
std::vector<mpz_class> primitive_integer(const QPoly& a) {
  mpz_class den = 1;
  for (const auto& c : a) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.denominator().get_mpz_t());
  std::vector<mpz_class> z(a.size());
  mpz_class g = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    z[i] = a[i].numerator() * (den / a[i].denominator());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
  }
  if (g != 0)
    for (auto& v : z) v /= g;
  return z;
}

void make_primitive(std::vector<mpz_class>& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  mpz_class g = 0;
  for (const auto& v : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (g > 1)
    for (auto& v : a) v /= g;
}

// Pseudo-remainder of a by b over Z.
std::vector<mpz_class> prem(std::vector<mpz_class> a, const std::vector<mpz_class>& b) {
  const std::size_t m = b.size();
  while (a.size() >= m) {
    const mpz_class top = a.back();
    const std::size_t shift = a.size() - m;
    for (auto& v : a) v *= b.back();
    for (std::size_t j = 0; j < m; ++j) a[shift + j] -= top * b[j];
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

}  // namespace

QPoly gcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  if (a.empty()) return monic(b);
  if (b.empty()) return monic(a);
  auto za = primitive_integer(a);
  auto zb = primitive_integer(b);
  if (za.size() < zb.size()) std::swap(za, zb);
  while (!zb.empty()) {
    auto r = prem(za, zb);
    make_primitive(r);
    za = std::move(zb);
    zb = std::move(r);
  }
  QPoly g(za.size());
  for (std::size_t i = 0; i < za.size(); ++i) g[i] = Rational(za[i]);
  return monic(g);
}

QPoly derivative(const QPoly& a) {
  if (a.size() <= 1) return {};
  QPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * Rational(static_cast<long>(i));
  trim(r);
  return r;
}

QPoly inverse_mod(const QPoly& a, const QPoly& m) {
  // extended Euclid tracking only the coefficient of a
  QPoly r0 = m;
  QPoly r1 = divmod(a, m).second;
  QPoly t0;
  QPoly t1{Rational(1)};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1);
    QPoly t = sub(t0, mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (r0.size() != 1) throw std::domain_error("inverse_mod: not coprime");
  return divmod(scale(t0, r0[0].inverse()), m).second;
}

bool squarefree_mod_small_prime(const QPoly& f);

std::vector<std::pair<QPoly, unsigned>> squarefree(const QPoly& f) {
  std::vector<std::pair<QPoly, unsigned>> out;
  if (f.size() <= 1) return out;
  if (squarefree_mod_small_prime(f)) {
    out.emplace_back(monic(f), 1U);
    return out;
  }
  const QPoly df = derivative(f);
  const QPoly a0 = gcd(f, df);
  QPoly b = divmod(f, a0).first;
  QPoly c = divmod(df, a0).first;
  QPoly d = sub(c, derivative(b));
  for (unsigned i = 1; b.size() > 1; ++i) {
    const QPoly a = gcd(b, d);
    if (a.size() > 1) out.emplace_back(a, i);
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    d = sub(c, derivative(b));
  }
  return out;
}

namespace {

using u64 = std::uint64_t;
using ModPoly = std::vector<u64>;
using ZPoly = std::vector<mpz_class>;

// --- arithmetic in F_p[x], p < 2^31 ---

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e != 0) {
    if (e & 1U) r = r * a % p;
    a = a * a % p;
    e >>= 1U;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

void mtrim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ModPoly msub(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  mtrim(r);
  return r;
}

ModPoly mmul(const ModPoly& a, const ModPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  mtrim(r);
  return r;
}

std::pair<ModPoly, ModPoly> mdivmod(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly r = a;
  mtrim(r);
  if (r.size() < b.size()) return {{}, r};
  ModPoly q(r.size() - b.size() + 1, 0);
  const u64 inv = invmod(b.back(), p);
  for (std::size_t k = q.size(); k-- > 0;) {
    const u64 c = r[k + b.size() - 1] * inv % p;
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[k + j] = (r[k + j] + p - c * b[j] % p) % p;
  }
  mtrim(q);
  mtrim(r);
  return {q, r};
}

ModPoly mmonic(const ModPoly& a, u64 p) {
  if (a.empty()) return a;
  const u64 inv = invmod(a.back(), p);
  ModPoly r = a;
  for (auto& v : r) v = v * inv % p;
  return r;
}

ModPoly mgcd(ModPoly a, ModPoly b, u64 p) {
  mtrim(a);
  mtrim(b);
  while (!b.empty()) {
    ModPoly r = mdivmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return mmonic(a, p);
}

// s, t with s a + t b = 1 (a, b coprime).
std::pair<ModPoly, ModPoly> mbezout(const ModPoly& a, const ModPoly& b, u64 p) {
  ModPoly r0 = a, r1 = b;
  ModPoly s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = mdivmod(r0, r1, p);
    ModPoly s = msub(s0, mmul(q, s1, p), p);
    ModPoly t = msub(t0, mmul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (r0.size() != 1) throw std::logic_error("mbezout: inputs not coprime");
  const u64 inv = invmod(r0[0], p);
  for (auto& v : s0) v = v * inv % p;
  for (auto& v : t0) v = v * inv % p;
  return {s0, t0};
}

ModPoly mderiv(const ModPoly& a, u64 p) {
  if (a.size() <= 1) return {};
  ModPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * (i % p) % p;
  mtrim(r);
  return r;
}

ModPoly mpowmod(ModPoly base, const mpz_class& e, const ModPoly& m, u64 p) {
  ModPoly result{1};
  base = mdivmod(base, m, p).second;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mdivmod(mmul(result, result, p), m, p).second;
    if (mpz_tstbit(e.get_mpz_t(), i) != 0) result = mdivmod(mmul(result, base, p), m, p).second;
  }
  return result;
}

// Distinct-degree factorization of a monic squarefree polynomial.
std::vector<std::pair<ModPoly, unsigned>> distinct_degree(ModPoly f, u64 p) {
  std::vector<std::pair<ModPoly, unsigned>> out;
  const ModPoly x{0, 1};
  ModPoly h = x;
  unsigned d = 0;
  while (static_cast<int>(f.size()) - 1 >= 2 * static_cast<int>(d + 1)) {
    ++d;
    h = mpowmod(h, mpz_class(static_cast<unsigned long>(p)), f, p);
    ModPoly g = mgcd(msub(h, x, p), f, p);
    if (g.size() > 1) {
      out.emplace_back(g, d);
      f = mdivmod(f, g, p).first;
      h = mdivmod(h, f, p).second;
    }
  }
  if (f.size() > 1) out.emplace_back(f, static_cast<unsigned>(f.size() - 1));
  return out;
}

// Cantor-Zassenhaus equal-degree splitting (odd p).
void equal_degree(const ModPoly& g, unsigned d, u64 p, std::mt19937_64& rng, std::vector<ModPoly>& out) {
  const std::size_t n = g.size() - 1;
  if (n == d) {
    out.push_back(g);
    return;
  }
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), p, d);
  e = (e - 1) / 2;
  std::uniform_int_distribution<u64> coef(0, p - 1);
  for (;;) {
    ModPoly a(n);
    for (auto& v : a) v = coef(rng);
    mtrim(a);
    if (a.size() <= 1) continue;
    ModPoly b = msub(mpowmod(a, e, g, p), ModPoly{1}, p);
    ModPoly u = mgcd(b, g, p);
    if (u.size() > 1 && u.size() < g.size()) {
      equal_degree(u, d, p, rng, out);
      equal_degree(mdivmod(g, u, p).first, d, p, rng, out);
      return;
    }
  }
}

std::vector<ModPoly> factor_mod_p(const ModPoly& f, u64 p, std::mt19937_64& rng) {
  std::vector<ModPoly> out;
  for (const auto& [g, d] : distinct_degree(mmonic(f, p), p)) equal_degree(g, d, p, rng, out);
  return out;
}

// --- integer polynomials modulo M ---

mpz_class mod_nonneg(const mpz_class& a, const mpz_class& m) {
  mpz_class r = a % m;
  if (r < 0) r += m;
  return r;
}

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zreduce(const ZPoly& a, const mpz_class& m) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_nonneg(a[i], m);
  ztrim(r);
  return r;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return zreduce(r, m);
}

ZPoly zsub(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return zreduce(r, m);
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return zreduce(r, m);
}

// Division by a monic polynomial modulo m.
std::pair<ZPoly, ZPoly> zdivmod_monic(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
  ZPoly r = zreduce(a, m);
  if (r.size() < b.size()) return {{}, r};
  ZPoly q(r.size() - b.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    const mpz_class c = mod_nonneg(r[k + b.size() - 1], m);
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[k + j] = mod_nonneg(r[k + j] - c * b[j], m);
  }
  ztrim(q);
  ztrim(r);
  return {q, r};
}

ZPoly from_mod(const ModPoly& a) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
  return r;
}

ModPoly to_mod(const ZPoly& a, u64 p) {
  ModPoly r(a.size());
  const mpz_class pm(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mod_nonneg(a[i], pm).get_ui();
  mtrim(r);
  return r;
}

struct Lifter {
  u64 p;
  unsigned steps;  // final modulus is p^(2^steps)
  mpz_class modulus;

  // f = g h mod p, h monic, s g + t h = 1 mod p; returns lifted (g, h) mod modulus.
  std::pair<ZPoly, ZPoly> lift_pair(const ZPoly& f, ZPoly g, ZPoly h, ZPoly s, ZPoly t) const {
    mpz_class m(static_cast<unsigned long>(p));
    for (unsigned k = 0; k < steps; ++k) {
      const mpz_class m2 = m * m;
      const ZPoly e = zsub(f, zmul(g, h, m2), m2);
      auto [q, r] = zdivmod_monic(zmul(s, e, m2), h, m2);
      const ZPoly g2 = zadd(g, zadd(zmul(t, e, m2), zmul(q, g, m2), m2), m2);
      const ZPoly h2 = zadd(h, r, m2);
      const ZPoly b = zsub(zadd(zmul(s, g2, m2), zmul(t, h2, m2), m2), ZPoly{1}, m2);
      auto [c, d] = zdivmod_monic(zmul(s, b, m2), h2, m2);
      s = zsub(s, d, m2);
      t = zsub(t, zadd(zmul(t, b, m2), zmul(c, g2, m2), m2), m2);
      g = g2;
      h = h2;
      m = m2;
    }
    return {g, h};
  }

  // Monic lifts of the modular factors of f (lc(f) invertible mod p).
  void lift_all(const ZPoly& f, const std::vector<ModPoly>& us, std::vector<ZPoly>& out) const {
    if (us.size() == 1) {
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), mpz_class(mod_nonneg(f.back(), modulus)).get_mpz_t(), modulus.get_mpz_t());
      ZPoly r(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) r[i] = mod_nonneg(f[i] * inv, modulus);
      out.push_back(std::move(r));
      return;
    }
    const std::size_t k = us.size() / 2;
    ModPoly g0{to_mod(ZPoly{f.back()}, p)};
    for (std::size_t i = 0; i < k; ++i) g0 = mmul(g0, us[i], p);
    ModPoly h0{1};
    for (std::size_t i = k; i < us.size(); ++i) h0 = mmul(h0, us[i], p);
    auto [s, t] = mbezout(g0, h0, p);
    auto [g, h] = lift_pair(f, from_mod(g0), from_mod(h0), from_mod(s), from_mod(t));
    lift_all(g, std::vector<ModPoly>(us.begin(), us.begin() + static_cast<long>(k)), out);
    lift_all(h, std::vector<ModPoly>(us.begin() + static_cast<long>(k), us.end()), out);
  }
};

mpz_class content(const ZPoly& a) {
  mpz_class g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

ZPoly primitive(const ZPoly& a) {
  const mpz_class c = content(a);
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] / c;
  if (!r.empty() && r.back() < 0)
    for (auto& v : r) v = -v;
  return r;
}

// Exact division over Z, nullopt if not divisible.
bool zdivides(const ZPoly& f, const ZPoly& g, ZPoly& quotient) {
  ZPoly r = f;
  if (r.size() < g.size()) return false;
  ZPoly q(r.size() - g.size() + 1, 0);
  for (std::size_t k = q.size(); k-- > 0;) {
    const mpz_class& top = r[k + g.size() - 1];
    if (top % g.back() != 0) return false;
    const mpz_class c = top / g.back();
    q[k] = c;
    for (std::size_t j = 0; j < g.size(); ++j) r[k + j] -= c * g[j];
  }
  for (const auto& v : r)
    if (v != 0) return false;
  quotient = std::move(q);
  return true;
}

const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = [] {
    std::vector<u64> ps;
    for (u64 n = 3; ps.size() < 200; n += 2) {
      bool prime = true;
      for (u64 d = 3; d * d <= n; d += 2)
        if (n % d == 0) {
          prime = false;
          break;
        }
      if (prime) ps.push_back(n);
    }
    return ps;
  }();
  return primes;
}

// Irreducible factors over Z of a primitive squarefree polynomial with positive leading coefficient.
std::vector<ZPoly> zassenhaus(const ZPoly& f, std::mt19937_64& rng) {
  const std::size_t n = f.size() - 1;
  if (n <= 1) return {f};
  // pick the good prime with the fewest modular factors among the first few
  u64 best_p = 0;
  std::vector<ModPoly> best;
  int good = 0;
  for (u64 p : small_primes()) {
    if (mod_nonneg(f.back(), mpz_class(static_cast<unsigned long>(p))) == 0) continue;
    const ModPoly fp = to_mod(f, p);
    if (fp.size() != f.size()) continue;
    if (mgcd(fp, mderiv(fp, p), p).size() != 1) continue;
    auto facs = factor_mod_p(fp, p, rng);
    if (best_p == 0 || facs.size() < best.size()) {
      best_p = p;
      best = std::move(facs);
    }
    if (++good >= 5 || best.size() == 1) break;
  }
  if (best_p == 0) throw std::logic_error("zassenhaus: no good prime found");
  if (best.size() == 1) return {f};

  // coefficient bound for factors of lc * f
  mpz_class norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  mpz_class norm;
  mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
  norm += 1;
  mpz_class bound = norm * abs(f.back());
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<mp_bitcnt_t>(n + 1));

  Lifter lifter{best_p, 0, mpz_class(static_cast<unsigned long>(best_p))};
  while (lifter.modulus <= bound) {
    lifter.modulus *= lifter.modulus;
    ++lifter.steps;
  }
  std::vector<ZPoly> lifted;
  lifter.lift_all(f, best, lifted);

  const mpz_class& M = lifter.modulus;
  const mpz_class half = M / 2;
  auto symmetric = [&](ZPoly a) {
    for (auto& v : a) {
      v = mod_nonneg(v, M);
      if (v > half) v -= M;
    }
    ztrim(a);
    return a;
  };

  std::vector<ZPoly> result;
  ZPoly rest = f;
  std::vector<ZPoly> pool = lifted;
  std::size_t s = 1;
  while (2 * s <= pool.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      ZPoly cand{mod_nonneg(rest.back(), M)};
      for (std::size_t i : idx) cand = zmul(cand, pool[i], M);
      cand = primitive(symmetric(cand));
      ZPoly quotient;
      if (cand.size() > 1 && zdivides(rest, cand, quotient)) {
        result.push_back(cand);
        rest = std::move(quotient);
        std::vector<ZPoly> remaining;
        for (std::size_t i = 0; i < pool.size(); ++i)
          if (std::find(idx.begin(), idx.end(), i) == idx.end()) remaining.push_back(std::move(pool[i]));
        pool = std::move(remaining);
        found = true;
        break;
      }
      // next combination
      std::size_t pos = s;
      while (pos > 0 && idx[pos - 1] == pool.size() - s + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (rest.size() > 1) result.push_back(primitive(rest));
  return result;
}

ZPoly to_primitive_integer(const QPoly& f) {
  mpz_class den = 1;
  for (const auto& c : f) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.denominator().get_mpz_t());
  ZPoly z(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) z[i] = f[i].numerator() * (den / f[i].denominator());
  return primitive(z);
}

}  // namespace

// Sufficient test: a degree-preserving squarefree image mod p implies squarefree over Q.
bool squarefree_mod_small_prime(const QPoly& f) {
  const ZPoly z = to_primitive_integer(f);
  for (std::size_t k = 0; k < 3; ++k) {
    const u64 p = small_primes()[k + 10];
    const ModPoly fp = to_mod(z, p);
    if (fp.size() != z.size()) continue;
    if (mgcd(fp, mderiv(fp, p), p).size() == 1) return true;
  }
  return false;
}

std::vector<QPoly> factor_squarefree(const QPoly& f, std::mt19937_64& rng) {
  if (f.size() <= 1) return {};
  if (f.size() == 2) return {monic(f)};
  std::vector<QPoly> out;
  QPoly g = f;
  // strip x^k first so the modular image keeps a nonzero constant term
  std::size_t low = 0;
  while (low < g.size() && g[low].is_zero()) ++low;
  if (low > 0) {
    out.push_back({Rational(0), Rational(1)});
    g.erase(g.begin(), g.begin() + static_cast<long>(low));
  }
  if (g.size() <= 1) return out;
  for (const auto& z : zassenhaus(to_primitive_integer(g), rng)) {
    QPoly q(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) q[i] = Rational(z[i]);
    out.push_back(monic(q));
  }
  return out;
}

}  // namespace opfactor::detail
