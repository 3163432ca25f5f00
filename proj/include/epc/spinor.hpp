#pragma once

#include "epc/algebroid.hpp"

namespace epc {

/*
 * Twisted elements: sections of Lambda^k A (x) L with L = Lambda^{n,0}
 * trivialized by s = dz_1 ^ ... ^ dz_n.  A twisted element is stored as the
 * plain exterior product u ^ s, so every monomial carries the full dz slot
 * (Q = {1..n}) and no Dzb leg.  twist/untwist convert between u and u (x) s,
 * absorbing the Koszul sign of moving the dz block past the dzb legs.
 */
GradedElement spinor_s(Model m);
bool is_twisted_element(const GradedElement& x);
GradedElement twist(const GradedElement& u);
GradedElement untwist(const GradedElement& x);

// nabla^H_alpha0 s = nabla_coefficient(alpha0) * s on the frame:
//   Dzb_i  ->  -sum_p d(theta^p_i)/dz_p
//   dz^i   ->  2 sum_p d(pi^{i,p})/dz_p
CoeffFn nabla_coefficient(const ExtendedPoisson& h, Gen species, int index);

// The degree-raising operator D^H s, returned untwisted (a degree-1
// polyvector u with D^H s = u (x) s).
GradedElement dd_h_s(const ExtendedPoisson& h);

// Connection on L: t must be g*s (trivial exterior part).
GradedElement nabla_H(const ExtendedPoisson& h, const GradedElement& alpha, const GradedElement& t);

// D^H on sections of L, Leibniz over the trivialization:
// D^H(g s) = (delbar^H g) (x) s + g * D^H s.
GradedElement dd_H(const ExtendedPoisson& h, const GradedElement& t);

// The ELW differential on Gamma(Lambda A (x) L):
// delbar_*^H(u (x) s) = (delbar^H u) (x) s + (-1)^k u ^ D^H s.
GradedElement delbar_star_H(const ExtendedPoisson& h, const GradedElement& x);

// Clifford symbol isomorphism Lambda^k A (x) L -> (+)_{i-j=n-k} Lambda^{i,j}
// and its per-monomial inverse.
GradedElement tau(const GradedElement& x);
GradedElement tau_inverse(const GradedElement& lambda);

// Koszul-Brylinski operator delbar + [del, iota_H] on forms.
GradedElement kb_differential(const ExtendedPoisson& h, const GradedElement& lambda);

struct Main1Report {
  bool mc_satisfied = false;
  bool residual_zero = false;
  int cases_run = 0;
  int max_residual_terms = 0;
  GradedElement worst_residual;
};

// Residual tau(delbar_*^H x) - (delbar + [del, iota_H])(tau x) over random
// twisted elements of each exterior degree <= max_degree.
Main1Report verify_main1(const ExtendedPoisson& h, int trials, uint64_t seed, int max_degree);

// Unimodularity residual delbar(omega0) + del(iota_H omega0) for a
// trivializing (n,0)-form omega0.
GradedElement modular_residual(const ExtendedPoisson& h, const GradedElement& omega0);

}  // namespace epc
