#include "opfactor/gradedfact.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "opfactor/errors.hpp"
#include "opfactor/grading.hpp"

namespace opfactor::gradedfact {

namespace {

using grading::DegreeVector;

// x_i, d_i or a monic θ-polynomial
struct Token {
  enum Kind { x, d, theta } kind;
  std::size_t index = 0;
  CommPoly f;

  [[nodiscard]] std::string key() const {
    switch (kind) {
      case x: return "x" + std::to_string(index);
      case d: return "d" + std::to_string(index);
      default: return "t:" + f.to_string();
    }
  }
};

using State = std::vector<Token>;

std::string state_key(const State& s) {
  std::string k;
  for (const auto& t : s) k += t.key() + "|";
  return k;
}

DegreeVector unit_degree(const Token& t, std::size_t n) {
  DegreeVector z(n, 0);
  z[t.index] = t.kind == Token::x ? -1 : 1;
  return z;
}

void require_graded(const OrePoly& p) {
  if (p.algebra().kind == AlgebraKind::shift)
    throw DomainError("graded factorization needs the Weyl or q-Weyl algebra");
  if (p.is_zero()) throw DomainError("cannot factor zero");
}

// θ-factors of p̃ (with θ_i / θ_i + 1/q_i split), scalar folded into unit.
void theta_tokens(const CommPoly& f, const AlgebraSpec& alg, std::uint64_t seed, Rational& unit, State& out) {
  const auto cf = commfact::factor_multivariate(f, seed);
  unit *= cf.unit;
  for (const auto& g : cf.expanded()) {
    if (auto split = grading::theta_rewrite_reducibles(g, alg)) {
      unit *= split->unit;
      std::size_t var = 0;
      for (std::size_t i = 0; i < alg.n; ++i)
        if (g.degree_in(i) > 0) var = i;
      const bool x_first = split->left == OrePoly::x(alg, var);
      if (x_first) {
        out.push_back({Token::x, var, {}});
        out.push_back({Token::d, var, {}});
      } else {
        out.push_back({Token::d, var, {}});
        out.push_back({Token::x, var, {}});
      }
    } else {
      out.push_back({Token::theta, 0, g});
    }
  }
}

Factorization to_factorization(const State& s, const Rational& unit, const AlgebraSpec& alg) {
  Factorization f;
  f.unit = unit;
  const DegreeVector zero(alg.n, 0);
  for (const auto& t : s) {
    switch (t.kind) {
      case Token::x: f.factors.push_back(OrePoly::x(alg, t.index)); break;
      case Token::d: f.factors.push_back(OrePoly::d(alg, t.index)); break;
      default: f.factors.push_back(grading::from_theta_form(grading::GradedPart::make(zero, t.f), alg)); break;
    }
  }
  return f;
}

State initial_state(const OrePoly& p, std::uint64_t seed, Rational& unit) {
  require_graded(p);
  const AlgebraSpec& alg = p.algebra();
  const auto part = grading::to_theta_form(p);
  unit = Rational(1);
  State s;
  theta_tokens(part.theta_poly, alg, seed, unit, s);
  for (std::size_t i = 0; i < alg.n; ++i)
    for (unsigned k = 0; k < part.e[i]; ++k) s.push_back({Token::x, i, {}});
  for (std::size_t i = 0; i < alg.n; ++i)
    for (unsigned k = 0; k < part.w[i]; ++k) s.push_back({Token::d, i, {}});
  return s;
}

bool splittable(const Token& t, const AlgebraSpec& alg) {
  return t.kind == Token::theta && grading::theta_rewrite_reducibles(t.f, alg).has_value();
}

}  // namespace

std::vector<std::string> factor_key(const Factorization& f) {
  std::vector<std::string> k;
  for (const auto& g : f.factors) k.push_back(to_string(g));
  return k;
}

Factorization factor_graded(const OrePoly& p, std::uint64_t seed) {
  require_graded(p);
  if (!grading::degree_of(p)) throw DomainError("input is not homogeneous");
  Rational unit;
  const State s = initial_state(p, seed, unit);
  return to_factorization(s, unit, p.algebra());
}

Factorization factor_graded_zero(const OrePoly& p, std::uint64_t seed) {
  require_graded(p);
  const auto z = grading::degree_of(p);
  if (!z || !grading::is_zero_degree(*z)) throw DomainError("input is not homogeneous of degree 0");
  return factor_graded(p, seed);
}

std::vector<Factorization> enumerate_graded(const OrePoly& p, std::uint64_t seed) {
  require_graded(p);
  if (!grading::degree_of(p)) throw DomainError("input is not homogeneous");
  const AlgebraSpec& alg = p.algebra();
  const std::size_t n = alg.n;

  Rational unit0;
  std::deque<std::pair<State, Rational>> queue;
  std::set<std::string> visited;
  {
    State s = initial_state(p, seed, unit0);
    visited.insert(state_key(s));
    queue.emplace_back(std::move(s), unit0);
  }
  std::map<std::string, std::pair<State, Rational>> finals;

  auto push = [&](State s, Rational u) {
    if (visited.insert(state_key(s)).second) queue.emplace_back(std::move(s), std::move(u));
  };

  while (!queue.empty()) {
    auto [s, unit] = std::move(queue.front());
    queue.pop_front();
    bool final = true;
    for (const auto& t : s)
      if (splittable(t, alg)) final = false;
    if (final) finals.emplace(state_key(s), std::make_pair(s, unit));

    for (std::size_t i = 0; i < s.size(); ++i) {
      // rewrite θ_i -> x_i d_i, θ_i + 1/q_i -> d_i x_i
      if (s[i].kind == Token::theta) {
        if (auto split = grading::theta_rewrite_reducibles(s[i].f, alg)) {
          std::size_t var = 0;
          for (std::size_t v = 0; v < n; ++v)
            if (s[i].f.degree_in(v) > 0) var = v;
          const bool x_first = split->left == OrePoly::x(alg, var);
          State t(s.begin(), s.begin() + static_cast<long>(i));
          t.push_back({x_first ? Token::x : Token::d, var, {}});
          t.push_back({x_first ? Token::d : Token::x, var, {}});
          t.insert(t.end(), s.begin() + static_cast<long>(i) + 1, s.end());
          push(std::move(t), unit * split->unit);
        }
      }
      if (i + 1 >= s.size()) continue;
      const Token& a = s[i];
      const Token& b = s[i + 1];
      State t = s;
      Rational u = unit;
      bool moved = true;
      if (a.kind == Token::theta && b.kind == Token::theta) {
        std::swap(t[i], t[i + 1]);
      } else if (a.kind == Token::theta) {
        // f(θ) g = g f'(θ)
        const CommPoly g = grading::pass_right(a.f, unit_degree(b, n), alg);
        u *= g.lead_coefficient();
        t[i] = b;
        t[i + 1] = {Token::theta, 0, g.monic()};
      } else if (b.kind == Token::theta) {
        const CommPoly g = grading::pass_left(b.f, unit_degree(a, n), alg);
        u *= g.lead_coefficient();
        t[i] = {Token::theta, 0, g.monic()};
        t[i + 1] = a;
      } else if (a.index != b.index) {
        std::swap(t[i], t[i + 1]);
      } else {
        moved = false;
        if (a.kind != b.kind) {
          // merge x_i d_i -> θ_i, d_i x_i -> q_i (θ_i + 1/q_i)
          const CommPoly th = CommPoly::variable(grading::theta_vars(n), a.index);
          const Rational q = alg.q_of(a.index);
          State m(s.begin(), s.begin() + static_cast<long>(i));
          if (a.kind == Token::x) {
            m.push_back({Token::theta, 0, th});
          } else {
            m.push_back({Token::theta, 0, th + CommPoly::constant(th.vars(), q.inverse())});
            u *= q;
          }
          m.insert(m.end(), s.begin() + static_cast<long>(i) + 2, s.end());
          push(std::move(m), u);
        }
      }
      if (moved) push(std::move(t), u);
    }
  }

  std::vector<Factorization> out;
  for (const auto& [k, su] : finals) out.push_back(to_factorization(su.first, su.second, alg));
  std::sort(out.begin(), out.end(), [](const Factorization& a, const Factorization& b) { return factor_key(a) < factor_key(b); });
  return out;
}

}  // namespace opfactor::gradedfact
