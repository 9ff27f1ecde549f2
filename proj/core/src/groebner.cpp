#include "opfactor/groebner.hpp"

#include <algorithm>
#include <functional>
#include <list>

#include "opfactor/commfact.hpp"

namespace opfactor::groebner {

namespace {

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

struct Pair {
  std::size_t i, j;
  Exponent lcm;
};

// Subtract multiples of g from the term t of f; returns true if something reduced.
bool reduce_term(CommPoly& f, const Exponent& t, const std::vector<CommPoly>& g) {
  const Rational c = f.coefficient(t);
  for (const auto& h : g) {
    if (h.is_zero() || !divides(h.lead_exponent(), t)) continue;
    f -= h.mul_monomial(minus(t, h.lead_exponent()), c / h.lead_coefficient());
    return true;
  }
  return false;
}

}  // namespace

CommPoly normal_form(const CommPoly& f, const std::vector<CommPoly>& g) {
  CommPoly p = f;
  CommPoly r(f.vars());
  while (!p.is_zero()) {
    const Exponent t = p.lead_exponent();
    if (!reduce_term(p, t, g)) {
      r.add_term(t, p.lead_coefficient());
      p.add_term(t, -p.lead_coefficient());
    }
  }
  return r;
}

CommPoly s_polynomial(const CommPoly& f, const CommPoly& g) {
  const Exponent l = lcm(f.lead_exponent(), g.lead_exponent());
  return f.mul_monomial(minus(l, f.lead_exponent()), f.lead_coefficient().inverse()) -
         g.mul_monomial(minus(l, g.lead_exponent()), g.lead_coefficient().inverse());
}

std::vector<CommPoly> buchberger(const PolySystem& sys) {
  std::vector<CommPoly> basis;
  for (const auto& f : sys.generators) {
    if (f.is_zero()) continue;
    if (!(f.vars() == sys.unknowns)) throw MismatchError("generator uses undeclared unknowns");
    basis.push_back(f.monic());
  }
  if (basis.empty()) return {};

  std::list<Pair> pairs;
  std::vector<bool> alive(basis.size(), true);

  // Gebauer-Moeller style update when adding basis[k]
  auto update = [&](std::size_t k) {
    const Exponent& lk = basis[k].lead_exponent();
    // chain criterion on existing pairs
    for (auto it = pairs.begin(); it != pairs.end();) {
      if (divides(lk, it->lcm) && lcm(basis[it->i].lead_exponent(), lk) != it->lcm &&
          lcm(basis[it->j].lead_exponent(), lk) != it->lcm)
        it = pairs.erase(it);
      else
        ++it;
    }
    std::vector<Pair> fresh;
    for (std::size_t i = 0; i < k; ++i)
      if (alive[i]) fresh.push_back({i, k, lcm(basis[i].lead_exponent(), lk)});
    // among new pairs keep one per lcm, and drop those whose lcm is a proper multiple of another's
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
      if (!coprime(basis[p.i].lead_exponent(), lk)) pairs.push_back(p);
    for (std::size_t i = 0; i < k; ++i)
      if (alive[i] && divides(lk, basis[i].lead_exponent())) alive[i] = false;
  };

  for (std::size_t k = 1; k < basis.size(); ++k) update(k);

  auto active = [&] {
    std::vector<CommPoly> a;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (alive[i]) a.push_back(basis[i]);
    return a;
  };

  while (!pairs.empty()) {
    // normal strategy: smallest lcm first
    auto best = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.lcm < b.lcm; });
    const Pair p = *best;
    pairs.erase(best);
    const CommPoly h = normal_form(s_polynomial(basis[p.i], basis[p.j]), basis);
    if (h.is_zero()) continue;
    if (h.is_constant()) return {CommPoly::constant(sys.unknowns, Rational(1))};
    basis.push_back(h.monic());
    alive.push_back(true);
    update(basis.size() - 1);
  }

  // minimal, then interreduced
  std::vector<CommPoly> g = active();
  std::vector<CommPoly> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < g.size() && !drop; ++j) {
      if (i == j || !divides(g[j].lead_exponent(), g[i].lead_exponent())) continue;
      drop = g[j].lead_exponent() != g[i].lead_exponent() || j < i;
    }
    if (!drop) minimal.push_back(g[i]);
  }
  std::vector<CommPoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<CommPoly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    reduced.push_back(normal_form(minimal[i], others).monic());
  }
  std::sort(reduced.begin(), reduced.end(),
            [](const CommPoly& a, const CommPoly& b) { return a.lead_exponent() < b.lead_exponent(); });
  return reduced;
}

SolutionSet solve_rational(const PolySystem& sys) {
  SolutionSet out;
  const std::vector<CommPoly> basis = buchberger(sys);
  const std::size_t n = sys.unknowns.size();
  if (basis.empty()) {
    if (n == 0) out.points.emplace_back();
    else throw NonIsolatedSolutions(basis);
    return out;
  }
  if (basis.size() == 1 && basis[0].is_one()) return out;

  // zero-dimensional iff every unknown has a pure power among the leading monomials
  for (std::size_t i = 0; i < n; ++i) {
    bool found = false;
    for (const auto& g : basis) {
      const Exponent& e = g.lead_exponent();
      bool pure = e[i] > 0;
      for (std::size_t j = 0; j < n && pure; ++j)
        if (j != i && e[j] != 0) pure = false;
      if (pure) found = true;
    }
    if (!found) throw NonIsolatedSolutions(basis);
  }

  // elements grouped by their largest occurring unknown
  std::vector<std::vector<CommPoly>> by_level(n);
  for (const auto& g : basis) {
    std::size_t top = n;
    for (std::size_t i = 0; i < n; ++i)
      if (g.degree_in(i) > 0) {
        top = i;
        break;
      }
    if (top < n) by_level[top].push_back(g);
  }

  std::vector<Rational> values(n);
  std::function<void(std::size_t)> solve_level = [&](std::size_t k) {
    // k counts down from n-1 to 0; all unknowns > k are fixed
    CommPoly eliminant(sys.unknowns);
    for (std::size_t lvl = k; lvl < n; ++lvl) {
      for (const auto& g : by_level[lvl]) {
        CommPoly s = g;
        for (std::size_t j = k + 1; j < n; ++j) s = s.partial_evaluate(j, values[j]);
        eliminant = commfact::gcd(eliminant, s);
      }
    }
    if (eliminant.is_zero()) throw NonIsolatedSolutions(basis);
    if (eliminant.is_constant()) return;
    for (const auto& [f, m] : commfact::factor_univariate(eliminant).factors) {
      if (f.degree_in(k) != 1) {
        ++out.dropped;
        out.complete_over_Q = false;
        continue;
      }
      Exponent one(n, 0);
      one[k] = 1;
      values[k] = -f.coefficient(Exponent(n, 0)) / f.coefficient(one);
      if (k == 0) {
        std::map<std::string, Rational> pt;
        for (std::size_t i = 0; i < n; ++i) pt.emplace(sys.unknowns.name(i), values[i]);
        out.points.push_back(std::move(pt));
      } else {
        solve_level(k - 1);
      }
    }
  };
  solve_level(n - 1);

  // exact verification against the original generators
  for (const auto& pt : out.points) {
    std::vector<Rational> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = pt.at(sys.unknowns.name(i));
    for (const auto& f : sys.generators)
      if (!f.evaluate(v).is_zero()) throw Error("solve_rational: extracted point fails a generator");
  }
  return out;
}

}  // namespace opfactor::groebner
