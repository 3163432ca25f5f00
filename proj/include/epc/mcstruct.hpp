#pragma once

#include <cstdint>
#include <random>

#include "epc/graded.hpp"

namespace epc {

/*
 * ExtendedPoisson: a degree-2 element H = pi + theta + omega of
 * Gamma(Lambda^2 A), A = T^{1,0} (+) Lambda^{0,1}, split into its three
 * bigraded components
 *   pi    in Gamma(Lambda^2 T^{1,0})            (bivector)
 *   theta in Gamma(T^{1,0} (x) Lambda^{0,1})    (mixed part)
 *   omega in Gamma(Lambda^{0,2})                ((0,2)-form)
 *
 * Components are stored as canonical GradedElements.  The coefficient
 * tensors use the summation-over-all-pairs convention: a stored monomial
 * c * Dz_i ^ Dz_j (i < j) corresponds to pi^{i,j} = c/2, pi^{j,i} = -c/2,
 * while theta^p_q is the stored coefficient of Dz_p ^ dzb_q itself.
 */
struct ExtendedPoisson {
  Model model;
  GradedElement pi, theta, omega;

  ExtendedPoisson(Model m, GradedElement pi_part, GradedElement theta_part, GradedElement omega_part);
  static ExtendedPoisson zero(Model m);
  // Split a degree-2 polyvector of A by species; rejects stray species/grades.
  static ExtendedPoisson decompose(const GradedElement& h);

  GradedElement total() const;
  bool is_constant_coefficient() const;

  // Coefficient tensors (0-based indices).
  CoeffFn pi_tensor(int i, int q) const;     // pi^{i,q}, antisymmetric
  CoeffFn theta_tensor(int p, int q) const;  // theta^p_q
  CoeffFn omega_tensor(int k, int l) const;  // omega_{k,l}, antisymmetric
};

// Maurer-Cartan residuals, one per bigraded slot plus the combined equation.
struct McResiduals {
  GradedElement r_omega;  // delbar omega + [omega, theta]
  GradedElement r_theta;  // delbar theta + [omega, pi] + 1/2 [theta, theta]
  GradedElement r_pi;     // delbar pi + [theta, pi]
  GradedElement r_pipi;   // [pi, pi]
  GradedElement r_total;  // delbar H + 1/2 [H, H]
  bool satisfied = false;
};

McResiduals check_mc(const ExtendedPoisson& h);

// The weighted family (lambda pi, theta, lambda^{-1} omega); lambda != 0.
ExtendedPoisson scale_family(const ExtendedPoisson& h, const GaussianRational& lambda);

// Twisted Lichnerowicz differential delbar_H u = delbar u + [H, u] on
// polyvectors of A.
GradedElement twisted_delbar(const ExtendedPoisson& h, const GradedElement& u);

struct D2Report {
  bool mc_satisfied = false;
  bool residual_zero = false;
  int max_residual_terms = 0;
  int cases_run = 0;
  GradedElement worst_residual;
};

// Applies delbar_H twice over a deterministic spanning sweep plus seeded
// random polyvectors of each degree <= max_degree.  The residual is computed
// whether or not H is Maurer-Cartan so both directions of the MC <=> d^2 = 0
// equivalence can be observed.
D2Report check_d2(const ExtendedPoisson& h, int trials, uint64_t seed, int max_degree);

// Deterministic seeded generator used by the property and acceptance suites.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed ^ 0x9e3779b97f4a7c15ull) {}
  int uniform(int lo, int hi);  // inclusive
};

GaussianRational random_scalar(Rng& rng);
CoeffFn random_coeff(Model m, Rng& rng);
GradedElement random_polyvector(Model m, int degree, Rng& rng);
GradedElement random_form(Model m, int degree, Rng& rng);
ExtendedPoisson random_structure(Model m, Rng& rng);

}  // namespace epc
