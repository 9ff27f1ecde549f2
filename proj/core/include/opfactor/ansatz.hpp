#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "opfactor/commfact.hpp"
#include "opfactor/grading.hpp"
#include "opfactor/groebner.hpp"
#include "opfactor/ore_poly.hpp"

namespace opfactor::ansatz {

using grading::DegreeVector;
using grading::GradedPart;

/// Known extreme summands of a split h = p*q: top and bottom graded parts of p and q.
struct Candidate {
  GradedPart p_top;
  GradedPart q_top;
  GradedPart p_bot;
  GradedPart q_bot;
};

struct AnsatzInstance {
  OrePoly h;
  /// degrees of the graded parts of h, largest first
  std::vector<DegreeVector> M;
  Candidate candidate;
  /// largest first, endpoints included (k and l entries)
  std::vector<DegreeVector> eta_degrees;
  std::vector<DegreeVector> mu_degrees;
  /// per-θ_t degree bound of the unknown q̃
  std::vector<unsigned> theta_bounds;
  /// p_bot carries an unknown scalar lambda (and q_bot its inverse mu)
  bool free_bottom_scale = false;
};

struct AnsatzSystem {
  groebner::PolySystem system;
  /// number of unknown q̃ coefficients, (l-2)*nu
  std::size_t coefficient_unknowns = 0;
  std::size_t nu = 0;
  /// chi_i for the top-down order: unknown summands seen in equations 1..i
  std::vector<std::size_t> chi_top;
  std::vector<std::size_t> chi_bottom;
};

/// One two-factor split h = p*q with p, q non-units.
struct Split {
  OrePoly p;
  OrePoly q;
};

enum class Mode { one, all };

struct FactorResult {
  std::vector<Factorization> factorizations;
  /// no nontrivial split was found
  bool irreducible = false;
  /// irrational solution branches skipped while solving (result complete over Q only)
  std::size_t dropped = 0;
  /// some candidate system had non-isolated solutions and was skipped
  std::size_t skipped_systems = 0;
};

/// Extreme-summand candidates from two-block groupings of the graded factorizations of
/// the top and bottom summands. Only groupings with distinct top/bottom degrees on both
/// sides are returned.
std::vector<Candidate> extreme_candidates(const OrePoly& h, std::uint64_t seed = commfact::kDefaultSeed);

/// Interior degrees for p and q between the extremes, bounded by the generator degrees of h.
/// Returns (eta sequence, mu sequence), largest first, endpoints included.
std::pair<std::vector<DegreeVector>, std::vector<DegreeVector>> degree_window(const OrePoly& h,
                                                                              const DegreeVector& eta1,
                                                                              const DegreeVector& etak,
                                                                              const DegreeVector& mu1,
                                                                              const DegreeVector& mul);

/// min(deg_{x_t} h, deg_{d_t} h), t 1-based.
unsigned theta_degree_bound(const OrePoly& h, std::size_t t);

/// Closed-form θ-weight with T_alpha * T_beta = gamma(θ) * T_(alpha+beta) in A_n.
CommPoly gamma(const DegreeVector& alpha, const DegreeVector& beta);

/// Instance for a candidate, with windows and bounds taken from h.
AnsatzInstance make_instance(const OrePoly& h, const Candidate& c);

/// Coefficient equations with the p̃ unknowns eliminated, over the q̃ coefficients.
/// Unknown q̃_{mu_j} coefficient of θ^e is named "q<j>_<i>" (j 1-based, i mixed radix in e).
AnsatzSystem build_system(const AnsatzInstance& inst);

/// Every split coming from rational solutions of the instance's system.
std::vector<Split> solve_instance(const AnsatzInstance& inst, std::size_t* dropped = nullptr);

/// All factorizations (or one) of h in A_n into monic irreducibles.
FactorResult factor(const OrePoly& h, Mode mode = Mode::all, std::uint64_t seed = commfact::kDefaultSeed);

/// Factorizations in S_n, through ι and merging of adjacent Weyl factors into ι-image blocks.
FactorResult factor_shift(const OrePoly& h, Mode mode = Mode::all, std::uint64_t seed = commfact::kDefaultSeed);

struct PremultipliedFactorization {
  CommPoly premultiplier;
  Factorization factorization;
};

/// Factorizations of s*h for monic monomials s in the x-variables of degree <= max_deg.
std::vector<PremultipliedFactorization> factor_with_premultiplier(const OrePoly& h, unsigned max_deg,
                                                                  std::uint64_t seed = commfact::kDefaultSeed);

}  // namespace opfactor::ansatz
