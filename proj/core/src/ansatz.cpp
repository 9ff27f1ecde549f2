#include "opfactor/ansatz.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "opfactor/errors.hpp"
#include "opfactor/gradedfact.hpp"

namespace opfactor::ansatz {

namespace {

using grading::compare_degrees;
using grading::DegreeLess;

bool greater(const DegreeVector& a, const DegreeVector& b) { return compare_degrees(a, b) > 0; }

OrePoly product_of(const std::vector<OrePoly>& fs, std::size_t from, std::size_t to, const AlgebraSpec& alg) {
  OrePoly acc = OrePoly::constant(alg, Rational(1));
  for (std::size_t i = from; i < to; ++i) acc = acc * fs[i];
  return acc;
}

unsigned x_degree(const OrePoly& p, std::size_t i) { return p.max_var_degree(i); }
unsigned d_degree(const OrePoly& p, std::size_t i) { return p.max_var_degree(p.n() + i); }

// All z with lo < z < hi (lex) inside the box [lower, upper].
std::vector<DegreeVector> between(const DegreeVector& hi, const DegreeVector& lo, const std::vector<long>& lower,
                                  const std::vector<long>& upper) {
  std::vector<DegreeVector> out;
  const std::size_t n = hi.size();
  DegreeVector z(n);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      if (greater(hi, z) && greater(z, lo)) out.push_back(z);
      return;
    }
    for (long v = lower[i]; v <= upper[i]; ++v) {
      z[i] = v;
      rec(i + 1);
    }
  };
  if (n > 0) rec(0);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return greater(a, b); });
  return out;
}

std::vector<DegreeVector> with_ends(const DegreeVector& hi, std::vector<DegreeVector> mid, const DegreeVector& lo) {
  std::vector<DegreeVector> out{hi};
  out.insert(out.end(), mid.begin(), mid.end());
  if (compare_degrees(hi, lo) != 0) out.push_back(lo);
  return out;
}

// Two-block groupings (prefix, rest*unit) of every graded factorization of a summand.
std::vector<std::pair<OrePoly, OrePoly>> groupings(const OrePoly& part, std::uint64_t seed) {
  const AlgebraSpec& alg = part.algebra();
  std::vector<std::pair<OrePoly, OrePoly>> out;
  std::set<std::string> seen;
  for (const auto& f : gradedfact::enumerate_graded(part, seed)) {
    for (std::size_t c = 0; c <= f.factors.size(); ++c) {
      OrePoly a = product_of(f.factors, 0, c, alg);
      OrePoly b = product_of(f.factors, c, f.factors.size(), alg).scaled(f.unit);
      if (seen.insert(to_string(a) + "|" + to_string(b)).second) out.emplace_back(std::move(a), std::move(b));
    }
  }
  return out;
}

// Polynomials over θ_1..θ_n followed by the unknowns.
struct Ring {
  std::size_t n;
  VarSet unknowns;
  VarSet vars;

  Ring(std::size_t n_, VarSet u) : n(n_), unknowns(std::move(u)) {
    std::vector<std::string> names = grading::theta_vars(n).names();
    for (const auto& s : unknowns.names()) names.push_back(s);
    vars = VarSet(std::move(names));
  }

  [[nodiscard]] CommPoly embed(const CommPoly& t) const {
    CommPoly out(vars);
    for (const auto& [e, c] : t.terms()) {
      Exponent x(vars.size(), 0);
      std::copy(e.begin(), e.end(), x.begin());
      out.add_term(x, c);
    }
    return out;
  }

  [[nodiscard]] CommPoly unknown(std::size_t j) const { return CommPoly::variable(vars, n + j); }

  [[nodiscard]] CommPoly shift(const CommPoly& f, const DegreeVector& eta) const {
    std::vector<Rational> off(vars.size(), Rational(0));
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      off[i] = Rational(eta[i]);
      any = any || eta[i] != 0;
    }
    return any ? f.shift_substitute(off) : f;
  }

  // coefficient of each θ-monomial, as polynomials in the unknowns
  [[nodiscard]] std::vector<CommPoly> coefficients(const CommPoly& f) const {
    std::map<Exponent, CommPoly> groups;
    for (const auto& [e, c] : f.terms()) {
      Exponent th(e.begin(), e.begin() + static_cast<long>(n));
      Exponent rest(e.begin() + static_cast<long>(n), e.end());
      auto it = groups.find(th);
      if (it == groups.end()) it = groups.emplace(th, CommPoly(unknowns)).first;
      it->second.add_term(rest, c);
    }
    std::vector<CommPoly> out;
    for (auto& [e, g] : groups) out.push_back(std::move(g));
    return out;
  }

  [[nodiscard]] CommPoly specialize(const CommPoly& f, const std::vector<Rational>& values) const {
    CommPoly out(grading::theta_vars(n));
    for (const auto& [e, c] : f.terms()) {
      Rational v = c;
      for (std::size_t j = 0; j < values.size(); ++j)
        for (unsigned k = 0; k < e[n + j]; ++k) v *= values[j];
      out.add_term(Exponent(e.begin(), e.begin() + static_cast<long>(n)), v);
    }
    return out;
  }
};

// p̃ as num / den with den a θ-polynomial
struct Frac {
  CommPoly num;
  CommPoly den;
};

CommPoly lcm(const CommPoly& a, const CommPoly& b) {
  const CommPoly g = commfact::gcd(a, b);
  return *(a * b).divide_exact(g);
}

// Everything build_system and solve_instance share.
struct Built {
  Ring ring;
  AnsatzSystem sys;
  std::vector<CommPoly> q;  // q̃_{mu_j} in the ring
  std::vector<Frac> p_top;  // p̃ expressions from the top-down chain
  bool inconsistent = false;
};

std::vector<Exponent> bounded_exponents(const std::vector<unsigned>& bounds) {
  std::size_t nu = 1;
  for (unsigned b : bounds) nu *= b + 1;
  std::vector<Exponent> out(nu, Exponent(bounds.size(), 0));
  for (std::size_t idx = 0; idx < nu; ++idx) {
    std::size_t r = idx;
    for (std::size_t t = 0; t < bounds.size(); ++t) {
      out[idx][t] = static_cast<unsigned>(r % (bounds[t] + 1));
      r /= bounds[t] + 1;
    }
  }
  return out;
}

Built build(const AnsatzInstance& inst) {
  const std::size_t n = inst.h.n();
  const std::size_t k = inst.eta_degrees.size();
  const std::size_t l = inst.mu_degrees.size();
  if (k < 2 || l < 2) throw DomainError("no ansatz: window gives k < 2 or l < 2");
  if (inst.theta_bounds.size() != n) throw MismatchError("build_system: theta bound length mismatch");
  const auto& eta = inst.eta_degrees;
  const auto& mu = inst.mu_degrees;

  const auto exps = bounded_exponents(inst.theta_bounds);
  const std::size_t nu = exps.size();
  std::vector<std::string> names;
  for (std::size_t j = 1; j + 1 < l; ++j)
    for (std::size_t i = 0; i < nu; ++i) names.push_back("q" + std::to_string(j + 1) + "_" + std::to_string(i));
  if (inst.free_bottom_scale) {
    names.emplace_back("lambda");
    names.emplace_back("mu");
  }
  Built b{Ring(n, VarSet(names)), {}, {}, {}};
  const Ring& R = b.ring;
  b.sys.nu = nu;
  b.sys.coefficient_unknowns = (l - 2) * nu;
  b.sys.system.unknowns = R.unknowns;
  const std::size_t lam = (l - 2) * nu;

  const auto& cand = inst.candidate;
  const CommPoly one = R.embed(CommPoly::constant(grading::theta_vars(n), Rational(1)));

  // q̃ in the ring; the bottom one without its scale (handled per use)
  b.q.resize(l);
  b.q[0] = R.embed(cand.q_top.theta_poly);
  b.q[l - 1] = R.embed(cand.q_bot.theta_poly);
  for (std::size_t j = 1; j + 1 < l; ++j) {
    CommPoly f(R.vars);
    for (std::size_t i = 0; i < nu; ++i) {
      Exponent e(R.vars.size(), 0);
      std::copy(exps[i].begin(), exps[i].end(), e.begin());
      e[n + (j - 1) * nu + i] = 1;
      f.add_term(e, Rational(1));
    }
    b.q[j] = std::move(f);
  }
  auto q_full = [&](std::size_t j) {
    return (j == l - 1 && inst.free_bottom_scale) ? b.q[j] * R.unknown(lam + 1) : b.q[j];
  };
  CommPoly p_bot = R.embed(cand.p_bot.theta_poly);
  if (inst.free_bottom_scale) p_bot = p_bot * R.unknown(lam);

  // graded parts of h, zero off M
  std::map<DegreeVector, CommPoly, DegreeLess> htilde;
  for (const auto& [z, part] : grading::graded_decomposition(inst.h))
    htilde.emplace(z, R.embed(grading::to_theta_form(part).theta_poly));

  std::map<DegreeVector, std::vector<std::pair<std::size_t, std::size_t>>, DegreeLess> eqs;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t c = 0; c < l; ++c) eqs[grading::operator+(eta[a], mu[c])].emplace_back(a, c);
  for (const auto& [z, f] : htilde)
    if (!eqs.count(z)) b.inconsistent = true;

  auto h_at = [&](const DegreeVector& z) {
    auto it = htilde.find(z);
    return it == htilde.end() ? CommPoly(R.vars) : it->second;
  };
  std::map<std::pair<std::size_t, std::size_t>, CommPoly> gam;
  auto weight = [&](std::size_t a, std::size_t c) -> const CommPoly& {
    auto it = gam.find({a, c});
    if (it == gam.end()) it = gam.emplace(std::make_pair(a, c), R.embed(gamma(eta[a], mu[c]))).first;
    return it->second;
  };

  std::vector<CommPoly> gens;
  auto emit = [&](const CommPoly& f) {
    for (auto& c : R.coefficients(f))
      if (!c.is_zero()) gens.push_back(std::move(c));
  };

  // One directional chain; `first` is the known q̃ index whose cofactor defines new p̃.
  auto chain = [&](bool top_down, std::vector<std::size_t>& chi) {
    std::vector<std::optional<Frac>> p(k);
    p[0] = Frac{R.embed(cand.p_top.theta_poly), one};
    p[k - 1] = Frac{p_bot, one};
    const std::size_t anchor = top_down ? 0 : l - 1;
    std::set<std::pair<char, std::size_t>> seen;
    std::vector<DegreeVector> order;
    for (const auto& [z, t] : eqs) order.push_back(z);
    if (top_down) std::reverse(order.begin(), order.end());
    for (const auto& z : order) {
      const auto& terms = eqs[z];
      for (const auto& [a, c] : terms) {
        if (a != 0 && a != k - 1) seen.insert({'p', a});
        if (c != 0 && c != l - 1) seen.insert({'q', c});
      }
      chi.push_back(seen.size());
      std::optional<std::size_t> defines;
      for (const auto& [a, c] : terms)
        if (c == anchor && !p[a]) defines = a;
      CommPoly L = one;
      for (const auto& [a, c] : terms)
        if (!(defines && a == *defines)) L = lcm(L, p[a]->den);
      CommPoly acc = h_at(z) * L;
      for (const auto& [a, c] : terms) {
        if (defines && a == *defines) continue;
        acc -= p[a]->num * *(L.divide_exact(p[a]->den)) * R.shift(q_full(c), eta[a]) * weight(a, c);
      }
      if (defines) {
        // p̃_a * cofactor = acc / L; for the scaled bottom q̃, 1/mu = lambda
        const std::size_t a = *defines;
        CommPoly cof = R.shift(b.q[anchor], eta[a]) * weight(a, anchor);
        if (!top_down && inst.free_bottom_scale) acc = acc * R.unknown(lam);
        p[a] = Frac{acc, cof * L};
      } else {
        emit(acc);
      }
    }
    std::vector<Frac> out;
    for (auto& f : p) out.push_back(std::move(*f));
    return out;
  };

  b.p_top = chain(true, b.sys.chi_top);
  const auto p_bottom = chain(false, b.sys.chi_bottom);
  for (std::size_t a = 1; a + 1 < k; ++a)
    emit(b.p_top[a].num * p_bottom[a].den - p_bottom[a].num * b.p_top[a].den);
  if (inst.free_bottom_scale) {
    CommPoly lm = CommPoly::variable(R.unknowns, lam) * CommPoly::variable(R.unknowns, lam + 1);
    gens.push_back(lm - CommPoly::constant(R.unknowns, Rational(1)));
  }

  // dedup up to scalar
  std::set<std::string> keys;
  for (const auto& g : gens) {
    if (g.is_constant()) {
      b.inconsistent = true;
      continue;
    }
    CommPoly m = g.monic();
    if (keys.insert(m.to_string()).second) b.sys.system.generators.push_back(std::move(m));
  }
  if (b.inconsistent) b.sys.system.generators = {CommPoly::constant(R.unknowns, Rational(1))};
  return b;
}

// f with variable v replaced by e.
CommPoly substitute(const CommPoly& f, std::size_t v, const CommPoly& e) {
  std::vector<CommPoly> powers{CommPoly::constant(f.vars(), Rational(1))};
  CommPoly out(f.vars());
  for (const auto& [x, c] : f.terms()) {
    while (powers.size() <= x[v]) powers.push_back(powers.back() * e);
    Exponent rest = x;
    rest[v] = 0;
    out += powers[x[v]].mul_monomial(rest, c);
  }
  return out;
}

// Linear generators are used to eliminate unknowns before the Gröbner step.
struct Presolved {
  groebner::PolySystem system;  // over the unknowns still present
  std::vector<std::size_t> kept;  // their indices in the original set
  std::vector<std::optional<CommPoly>> value;  // eliminated unknown -> expression in the original ring
  bool inconsistent = false;
};

Presolved presolve(std::vector<CommPoly> gens, const VarSet& unknowns) {
  const std::size_t m = unknowns.size();
  Presolved out;
  out.value.assign(m, std::nullopt);
  for (;;) {
    std::size_t pick = gens.size();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (gens[i].is_zero()) continue;
      if (gens[i].is_constant()) {
        out.inconsistent = true;
        return out;
      }
      if (gens[i].total_degree() == 1 && (pick == gens.size() || gens[i].size() < gens[pick].size())) pick = i;
    }
    if (pick == gens.size()) break;
    const CommPoly g = gens[pick];
    gens.erase(gens.begin() + static_cast<long>(pick));
    std::size_t v = 0;
    Rational c;
    for (const auto& [x, a] : g.terms())
      for (std::size_t j = 0; j < m; ++j)
        if (x[j] == 1) {
          v = j;
          c = a;
        }
    Exponent xv(m, 0);
    xv[v] = 1;
    CommPoly e = g;
    e.add_term(xv, -c);
    e = e.scaled(-c.inverse());
    for (auto& h : gens) h = substitute(h, v, e);
    for (auto& val : out.value)
      if (val) val = substitute(*val, v, e);
    out.value[v] = e;
  }
  std::vector<std::string> names;
  std::vector<long> pos(m, -1);
  for (std::size_t j = 0; j < m; ++j)
    if (!out.value[j]) {
      pos[j] = static_cast<long>(out.kept.size());
      out.kept.push_back(j);
      names.push_back(unknowns.name(j));
    }
  out.system.unknowns = VarSet(names);
  std::set<std::string> seen;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    CommPoly r(out.system.unknowns);
    for (const auto& [x, a] : g.terms()) {
      Exponent y(out.kept.size(), 0);
      for (std::size_t j = 0; j < m; ++j)
        if (x[j] > 0) y[static_cast<std::size_t>(pos[j])] = x[j];
      r.add_term(y, a);
    }
    r = r.monic();
    if (seen.insert(r.to_string()).second) out.system.generators.push_back(std::move(r));
  }
  return out;
}

// Upper/lower degree bounds for one factor given the known summands of the other.
void factor_box(const OrePoly& h, const OrePoly& other_top, const OrePoly& other_bot, std::vector<long>& lower,
                std::vector<long>& upper) {
  const std::size_t n = h.n();
  lower.assign(n, 0);
  upper.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned ox = std::max(x_degree(other_top, i), x_degree(other_bot, i));
    const unsigned od = std::max(d_degree(other_top, i), d_degree(other_bot, i));
    lower[i] = -(static_cast<long>(x_degree(h, i)) - static_cast<long>(ox));
    upper[i] = static_cast<long>(d_degree(h, i)) - static_cast<long>(od);
  }
}

OrePoly assemble(const std::vector<DegreeVector>& degs, const std::vector<CommPoly>& parts, const AlgebraSpec& alg) {
  OrePoly out(alg);
  for (std::size_t i = 0; i < degs.size(); ++i)
    if (!parts[i].is_zero()) out += grading::from_theta_form(GradedPart::make(degs[i], parts[i]), alg);
  return out;
}

// Splits with one homogeneous factor, found by dividing every graded part.
std::vector<Split> homogeneous_splits(const OrePoly& h, const std::vector<std::pair<OrePoly, OrePoly>>& tops) {
  const AlgebraSpec& alg = h.algebra();
  const auto parts = grading::graded_decomposition(h);
  std::vector<Split> out;
  for (const auto& [a, b] : tops) {
    if (!a.is_constant()) {
      const auto af = grading::to_theta_form(a);
      OrePoly q(alg);
      bool ok = true;
      for (const auto& [z, part] : parts) {
        auto r = grading::divide_left(grading::to_theta_form(part), af, alg);
        if (!r) {
          ok = false;
          break;
        }
        q += grading::from_theta_form(*r, alg);
      }
      if (ok && !q.is_constant() && a * q == h) out.push_back({a, q});
    }
    if (!b.is_constant()) {
      const auto bf = grading::to_theta_form(b);
      OrePoly p(alg);
      bool ok = true;
      for (const auto& [z, part] : parts) {
        auto r = grading::divide_right(grading::to_theta_form(part), bf, alg);
        if (!r) {
          ok = false;
          break;
        }
        p += grading::from_theta_form(*r, alg);
      }
      if (ok && !p.is_constant() && p * b == h) out.push_back({p, b});
    }
  }
  return out;
}

std::string factors_key(const std::vector<OrePoly>& fs) {
  std::string k;
  for (const auto& f : fs) k += to_string(f) + " | ";
  return k;
}

void require_factorable(const OrePoly& h) {
  if (h.is_zero()) throw DomainError("cannot factor zero");
  if (h.is_constant()) throw DomainError("cannot factor a unit");
}

// Recursive driver with memoisation on the monic input.
class Driver {
 public:
  Driver(Mode mode, std::uint64_t seed) : mode_(mode), seed_(seed) {}

  std::vector<Factorization> run(const OrePoly& h) {
    const Rational lc = h.lead_coefficient();
    const OrePoly hm = h.monic();
    const std::string key = to_string(hm);
    auto it = memo_.find(key);
    if (it == memo_.end()) it = memo_.emplace(key, compute(hm)).first;
    std::vector<Factorization> out = it->second;
    for (auto& f : out) f.unit *= lc;
    return out;
  }

  std::size_t dropped = 0;
  std::size_t skipped = 0;
  bool top_irreducible = false;

 private:
  std::vector<Factorization> compute(const OrePoly& h) {
    const AlgebraSpec& alg = h.algebra();
    if (grading::degree_of(h)) {
      if (mode_ == Mode::one) return {gradedfact::factor_graded(h, seed_)};
      return gradedfact::enumerate_graded(h, seed_);
    }
    if (alg.kind != AlgebraKind::weyl)
      throw DomainError("non-graded factorization is only available in the Weyl algebra");
    const bool outermost = depth_ == 0;
    ++depth_;
    const auto splits = find_splits(h);
    std::map<std::string, Factorization> acc;
    for (const auto& s : splits) {
      if (s.p.generator_degree_sum() >= h.generator_degree_sum() || s.q.generator_degree_sum() >= h.generator_degree_sum())
        throw std::logic_error("ansatz: split does not reduce the generator degree");
      const auto left = run(s.p);
      const auto right = run(s.q);
      for (const auto& a : left) {
        for (const auto& b : right) {
          Factorization f;
          f.unit = a.unit * b.unit;
          f.factors = a.factors;
          f.factors.insert(f.factors.end(), b.factors.begin(), b.factors.end());
          acc.emplace(factors_key(f.factors), std::move(f));
          if (mode_ == Mode::one) break;
        }
        if (mode_ == Mode::one) break;
      }
      if (mode_ == Mode::one && !acc.empty()) break;
    }
    --depth_;
    if (acc.empty()) {
      if (outermost) top_irreducible = true;
      Factorization f;
      f.factors.push_back(h);
      return {f};
    }
    std::vector<Factorization> out;
    for (auto& [k, f] : acc) out.push_back(std::move(f));
    return out;
  }

  std::vector<Split> find_splits(const OrePoly& h) {
    std::vector<Split> out;
    std::set<std::string> seen;
    auto add = [&](Split s) {
      const Rational c = s.p.lead_coefficient();
      s.p = s.p.monic();
      s.q = s.q.scaled(c);
      if (seen.insert(to_string(s.p)).second) out.push_back(std::move(s));
    };
    const auto parts = grading::graded_decomposition(h);
    const auto tops = groupings(parts.rbegin()->second, seed_);
    for (auto& s : homogeneous_splits(h, tops)) {
      add(std::move(s));
      if (mode_ == Mode::one) return out;
    }
    std::vector<std::pair<std::size_t, AnsatzInstance>> work;
    for (const auto& c : extreme_candidates(h, seed_)) {
      AnsatzInstance inst = make_instance(h, c);
      if (inst.eta_degrees.size() < 2 || inst.mu_degrees.size() < 2) continue;
      work.emplace_back(inst.eta_degrees.size() + inst.mu_degrees.size(), std::move(inst));
    }
    std::stable_sort(work.begin(), work.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [size, inst] : work) {
      std::vector<Split> found;
      try {
        found = solve_instance(inst, &dropped);
      } catch (const groebner::NonIsolatedSolutions&) {
        ++skipped;
        continue;
      }
      for (auto& s : found) {
        add(std::move(s));
        if (mode_ == Mode::one) return out;
      }
    }
    return out;
  }

  Mode mode_;
  std::uint64_t seed_;
  int depth_ = 0;
  std::map<std::string, std::vector<Factorization>> memo_;
};

}  // namespace

std::vector<Candidate> extreme_candidates(const OrePoly& h, std::uint64_t seed) {
  require_factorable(h);
  if (grading::degree_of(h)) throw DomainError("extreme_candidates: input is graded; use gradedfact");
  const auto parts = grading::graded_decomposition(h);
  const auto tops = groupings(parts.rbegin()->second, seed);
  const auto bots = groupings(parts.begin()->second, seed);
  std::vector<Candidate> out;
  for (const auto& [pt, qt] : tops) {
    const auto pt_form = grading::to_theta_form(pt);
    const auto qt_form = grading::to_theta_form(qt);
    for (const auto& [pb, qb] : bots) {
      const auto pb_form = grading::to_theta_form(pb);
      const auto qb_form = grading::to_theta_form(qb);
      if (!greater(pt_form.z, pb_form.z) || !greater(qt_form.z, qb_form.z)) continue;
      out.push_back({pt_form, qt_form, pb_form, qb_form});
    }
  }
  return out;
}

std::pair<std::vector<DegreeVector>, std::vector<DegreeVector>> degree_window(const OrePoly& h,
                                                                              const DegreeVector& eta1,
                                                                              const DegreeVector& etak,
                                                                              const DegreeVector& mu1,
                                                                              const DegreeVector& mul) {
  const std::size_t n = h.n();
  if (eta1.size() != n || etak.size() != n || mu1.size() != n || mul.size() != n)
    throw MismatchError("degree_window: length mismatch");
  const auto parts = grading::graded_decomposition(h);
  if (parts.empty()) throw DomainError("degree_window: zero input");
  if (compare_degrees(grading::operator+(eta1, mu1), parts.rbegin()->first) != 0 ||
      compare_degrees(grading::operator+(etak, mul), parts.begin()->first) != 0 || greater(etak, eta1) ||
      greater(mul, mu1))
    throw DomainError("degree_window: inconsistent extremes");
  std::vector<long> lower(n), upper(n);
  for (std::size_t i = 0; i < n; ++i) {
    lower[i] = -static_cast<long>(x_degree(h, i));
    upper[i] = static_cast<long>(d_degree(h, i));
  }
  return {with_ends(eta1, between(eta1, etak, lower, upper), etak),
          with_ends(mu1, between(mu1, mul, lower, upper), mul)};
}

unsigned theta_degree_bound(const OrePoly& h, std::size_t t) {
  if (t == 0 || t > h.n()) throw DomainError("theta_degree_bound: index out of range");
  return std::min(x_degree(h, t - 1), d_degree(h, t - 1));
}

CommPoly gamma(const DegreeVector& alpha, const DegreeVector& beta) {
  if (alpha.size() != beta.size()) throw MismatchError("gamma: length mismatch");
  const std::size_t n = alpha.size();
  const VarSet& th = grading::theta_vars(n);
  CommPoly out = CommPoly::constant(th, Rational(1));
  for (std::size_t k = 0; k < n; ++k) {
    const long a = alpha[k];
    const long b = beta[k];
    if ((a >= 0 && b >= 0) || (a <= 0 && b <= 0)) continue;
    const CommPoly t = CommPoly::variable(th, k);
    auto lin = [&](long c) { return t + CommPoly::constant(th, Rational(c)); };
    const long aa = std::abs(a), ab = std::abs(b);
    if (a < 0) {
      if (aa <= ab)
        for (long tau = 0; tau < aa; ++tau) out = out * lin(-tau);
      else
        for (long tau = 0; tau < ab; ++tau) out = out * lin(-tau - aa + ab);
    } else {
      if (aa <= ab)
        for (long tau = 1; tau <= a; ++tau) out = out * lin(tau);
      else
        for (long tau = 1; tau <= ab; ++tau) out = out * lin(tau + aa - ab);
    }
  }
  return out;
}

AnsatzInstance make_instance(const OrePoly& h, const Candidate& c) {
  const AlgebraSpec& alg = h.algebra();
  AnsatzInstance inst;
  inst.h = h;
  for (const auto& [z, part] : grading::graded_decomposition(h)) inst.M.insert(inst.M.begin(), z);
  inst.candidate = c;
  // the degree box, narrowed by the generator degrees the other factor already uses
  const auto [eta_all, mu_all] = degree_window(h, c.p_top.z, c.p_bot.z, c.q_top.z, c.q_bot.z);
  std::vector<long> lo, hi;
  auto keep = [&](const std::vector<DegreeVector>& all, const GradedPart& o_top, const GradedPart& o_bot) {
    factor_box(h, grading::from_theta_form(o_top, alg), grading::from_theta_form(o_bot, alg), lo, hi);
    std::vector<DegreeVector> out;
    for (std::size_t i = 0; i < all.size(); ++i) {
      bool inside = true;
      for (std::size_t t = 0; t < h.n(); ++t) inside = inside && all[i][t] >= lo[t] && all[i][t] <= hi[t];
      if (inside || i == 0 || i + 1 == all.size()) out.push_back(all[i]);
    }
    return out;
  };
  inst.eta_degrees = keep(eta_all, c.q_top, c.q_bot);
  inst.mu_degrees = keep(mu_all, c.p_top, c.p_bot);
  for (std::size_t t = 1; t <= h.n(); ++t) inst.theta_bounds.push_back(theta_degree_bound(h, t));
  inst.free_bottom_scale = true;
  return inst;
}

AnsatzSystem build_system(const AnsatzInstance& inst) { return build(inst).sys; }

std::vector<Split> solve_instance(const AnsatzInstance& inst, std::size_t* dropped) {
  const Built b = build(inst);
  if (b.inconsistent) return {};
  const AlgebraSpec& alg = inst.h.algebra();
  const std::size_t n = inst.h.n();
  const std::size_t k = inst.eta_degrees.size();
  const std::size_t l = inst.mu_degrees.size();
  const VarSet& U = b.ring.unknowns;

  // q̃_mu coefficients beyond what the known p summands leave for q are zero
  std::vector<CommPoly> gens = b.sys.system.generators;
  {
    const OrePoly pt = grading::from_theta_form(inst.candidate.p_top, alg);
    const OrePoly pb = grading::from_theta_form(inst.candidate.p_bot, alg);
    const auto exps = bounded_exponents(inst.theta_bounds);
    const std::size_t nu = exps.size();
    for (std::size_t j = 1; j + 1 < l; ++j) {
      const DegreeVector& z = inst.mu_degrees[j];
      for (std::size_t i = 0; i < nu; ++i) {
        bool fits = true;
        for (std::size_t t = 0; t < n; ++t) {
          const long xs = static_cast<long>(x_degree(inst.h, t)) - std::max(x_degree(pt, t), x_degree(pb, t));
          const long ds = static_cast<long>(d_degree(inst.h, t)) - std::max(d_degree(pt, t), d_degree(pb, t));
          const long e = static_cast<long>(exps[i][t]);
          fits = fits && e + std::max(-z[t], 0L) <= xs && e + std::max(z[t], 0L) <= ds;
        }
        if (!fits) gens.push_back(CommPoly::variable(U, (j - 1) * nu + i));
      }
    }
  }
  const Presolved pre = presolve(std::move(gens), U);
  if (pre.inconsistent) return {};

  std::vector<std::vector<Rational>> points;
  auto complete = [&](const std::vector<Rational>& kept_values) {
    std::vector<Rational> full(U.size());
    for (std::size_t i = 0; i < pre.kept.size(); ++i) full[pre.kept[i]] = kept_values[i];
    for (std::size_t j = 0; j < U.size(); ++j)
      if (pre.value[j]) full[j] = pre.value[j]->evaluate(full);
    points.push_back(std::move(full));
  };
  if (pre.kept.empty()) {
    if (pre.system.generators.empty()) complete({});
  } else if (pre.system.generators.empty()) {
    throw groebner::NonIsolatedSolutions({});
  } else {
    const auto sol = groebner::solve_rational_zero_dim(pre.system);
    if (dropped) *dropped += sol.dropped;
    for (const auto& pt : sol.points) {
      std::vector<Rational> v;
      for (const auto& name : pre.system.unknowns.names()) v.push_back(pt.at(name));
      complete(v);
    }
  }
  std::vector<Split> out;
  const std::size_t lam = (l - 2) * b.sys.nu;
  for (const auto& v : points) {
    std::vector<CommPoly> qs, ps;
    for (std::size_t j = 0; j < l; ++j) qs.push_back(b.ring.specialize(b.q[j], v));
    if (inst.free_bottom_scale) qs[l - 1] = qs[l - 1].scaled(v[lam + 1]);
    bool ok = true;
    for (std::size_t a = 0; a < k && ok; ++a) {
      const CommPoly num = b.ring.specialize(b.p_top[a].num, v);
      const CommPoly den = b.ring.specialize(b.p_top[a].den, v);
      if (den.is_zero()) {
        ok = false;
        break;
      }
      auto r = num.divide_exact(den);
      if (!r) ok = false;
      else ps.push_back(std::move(*r));
    }
    if (!ok) continue;
    Split s{assemble(inst.eta_degrees, ps, alg), assemble(inst.mu_degrees, qs, alg)};
    if (s.p.is_constant() || s.q.is_constant() || !(s.p * s.q == inst.h)) continue;
    out.push_back(std::move(s));
  }
  return out;
}

FactorResult factor(const OrePoly& h, Mode mode, std::uint64_t seed) {
  require_factorable(h);
  if (h.algebra().kind == AlgebraKind::shift) throw DomainError("factor: use factor_shift for the shift algebra");
  Driver d(mode, seed);
  FactorResult r;
  r.factorizations = d.run(h);
  r.irreducible = r.factorizations.size() == 1 && r.factorizations[0].factors.size() == 1;
  r.dropped = d.dropped;
  r.skipped_systems = d.skipped;
  return r;
}

FactorResult factor_shift(const OrePoly& h, Mode mode, std::uint64_t seed) {
  require_factorable(h);
  if (h.algebra().kind != AlgebraKind::shift) throw DomainError("factor_shift: input is not in the shift algebra");
  const FactorResult weyl = factor(iota_embed(h), Mode::all, seed);
  FactorResult r;
  r.dropped = weyl.dropped;
  r.skipped_systems = weyl.skipped_systems;
  std::map<std::string, Factorization> acc;
  for (const auto& f : weyl.factorizations) {
    // minimal ι-image blocks, left to right; a leftover tail joins the last block
    std::vector<OrePoly> blocks;
    std::optional<OrePoly> open;
    for (const auto& g : f.factors) {
      open = open ? *open * g : g;
      if (iota_preimage(*open)) {
        blocks.push_back(*open);
        open.reset();
      }
    }
    if (open) {
      if (blocks.empty()) continue;
      blocks.back() = blocks.back() * *open;
      if (!iota_preimage(blocks.back())) continue;
    }
    if (blocks.size() < 2) continue;
    Factorization s;
    s.unit = f.unit;
    for (const auto& blk : blocks) {
      const OrePoly pre = *iota_preimage(blk);
      s.unit *= pre.lead_coefficient();
      s.factors.push_back(pre.monic());
    }
    acc.emplace(factors_key(s.factors), std::move(s));
    if (mode == Mode::one) break;
  }
  for (auto& [k, f] : acc) r.factorizations.push_back(std::move(f));
  if (r.factorizations.empty()) {
    r.irreducible = true;
    Factorization f;
    f.unit = h.lead_coefficient();
    f.factors.push_back(h.monic());
    r.factorizations.push_back(std::move(f));
  }
  return r;
}

std::vector<PremultipliedFactorization> factor_with_premultiplier(const OrePoly& h, unsigned max_deg,
                                                                  std::uint64_t seed) {
  require_factorable(h);
  const AlgebraSpec& alg = h.algebra();
  const std::size_t n = alg.n;
  const VarSet xs = VarSet::numbered("x", n);
  // monic monomials by total degree, then lex
  std::vector<Exponent> monos;
  for (unsigned deg = 0; deg <= max_deg; ++deg) {
    std::vector<Exponent> level;
    Exponent e(n, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
      if (i + 1 == n) {
        e[i] = left;
        level.push_back(e);
        return;
      }
      for (unsigned v = left + 1; v-- > 0;) {
        e[i] = v;
        rec(i + 1, left - v);
      }
    };
    rec(0, deg);
    monos.insert(monos.end(), level.begin(), level.end());
  }
  std::vector<PremultipliedFactorization> out;
  for (const auto& e : monos) {
    const OrePoly s = OrePoly::monomial(alg, std::vector<unsigned>(e.begin(), e.end()), std::vector<unsigned>(n, 0),
                                        Rational(1));
    const bool trivial_s = s.is_constant();
    const FactorResult r = factor(s * h, Mode::all, seed);
    for (const auto& f : r.factorizations) {
      if (!trivial_s) {
        if (f.factors.size() < 2) continue;
        bool splits_off_s = false;
        OrePoly pre = OrePoly::constant(alg, Rational(1));
        for (std::size_t j = 0; j + 1 < f.factors.size() && !splits_off_s; ++j) {
          pre = pre * f.factors[j];
          splits_off_s = pre.monic() == s;
        }
        if (splits_off_s) continue;
      }
      out.push_back({CommPoly::monomial(xs, e, Rational(1)), f});
    }
  }
  return out;
}

}  // namespace opfactor::ansatz
