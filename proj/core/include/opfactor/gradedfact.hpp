#pragma once

#include <cstdint>
#include <vector>

#include "opfactor/commfact.hpp"
#include "opfactor/ore_poly.hpp"

namespace opfactor::gradedfact {

/// One complete factorization of a homogeneous element of degree 0 (Weyl / q-Weyl).
Factorization factor_graded_zero(const OrePoly& p, std::uint64_t seed = commfact::kDefaultSeed);

/// One complete factorization of a homogeneous element: θ-factors, then the generators of X^e D^w.
Factorization factor_graded(const OrePoly& p, std::uint64_t seed = commfact::kDefaultSeed);

/// Every factorization reachable by swapping adjacent factors and rewriting θ_i <-> x_i*d_i,
/// θ_i + 1/q_i <-> d_i*x_i; distinct ordered factor tuples, sorted by their canonical strings.
std::vector<Factorization> enumerate_graded(const OrePoly& p, std::uint64_t seed = commfact::kDefaultSeed);

/// Ordered tuple of canonical factor strings (the distinctness key; the unit is ignored).
std::vector<std::string> factor_key(const Factorization& f);

}  // namespace opfactor::gradedfact
