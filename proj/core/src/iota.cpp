#include "opfactor/errors.hpp"
#include "opfactor/grading.hpp"
#include "opfactor/ore_poly.hpp"

namespace opfactor {

OrePoly iota_embed(const OrePoly& p) {
  if (p.algebra().kind != AlgebraKind::shift) throw DomainError("iota_embed expects a shift-algebra element");
  const std::size_t n = p.n();
  const AlgebraSpec weyl = AlgebraSpec::weyl(n);
  std::vector<std::vector<OrePoly>> powers(n);
  auto theta_pow = [&](std::size_t i, unsigned k) -> const OrePoly& {
    auto& list = powers[i];
    if (list.empty()) list.push_back(OrePoly::constant(weyl, Rational(1)));
    while (list.size() <= k) list.push_back(list.back() * grading::theta_element(weyl, i));
    return list[k];
  };
  OrePoly result(weyl);
  for (const auto& [m, c] : p.terms()) {
    OrePoly term = OrePoly::constant(weyl, c);
    for (std::size_t i = 0; i < n; ++i)
      if (m[i] != 0) term = term * theta_pow(i, m[i]);
    std::vector<unsigned> b(m.begin() + static_cast<long>(n), m.end());
    result += term * OrePoly::monomial(weyl, std::vector<unsigned>(n, 0), b, Rational(1));
  }
  return result;
}

std::optional<OrePoly> iota_preimage(const OrePoly& p) {
  if (p.algebra().kind != AlgebraKind::weyl) return std::nullopt;
  const std::size_t n = p.n();
  const AlgebraSpec shift = AlgebraSpec::shift(n);
  OrePoly result(shift);
  for (const auto& [z, part] : grading::graded_decomposition(p)) {
    for (long v : z)
      if (v < 0) return std::nullopt;
    // part = f(θ) D^z  ->  f(x) S^z
    const auto g = grading::to_theta_form(part);
    for (const auto& [e, c] : g.theta_poly.terms()) {
      OreMonomial m(2 * n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        m[i] = e[i];
        m[n + i] = static_cast<unsigned>(z[i]);
      }
      result.add_term(m, c);
    }
  }
  return result;
}

}  // namespace opfactor
