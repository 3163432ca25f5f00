#pragma once

#include <string>
#include <vector>

#include "epc/algebroid.hpp"

namespace epc {

/*
 * A linear complex submanifold Y of a flat model: the span of `basis`
 * (columns, complex n-vectors) gives T^{1,0}Y, translated by `base` on a
 * chart.  On the torus the basis columns must be Gaussian integers (a
 * rational subtorus) and the base must be zero.  The conjugate span is
 * T^{0,1}Y, the annihilator {xi : <xi, basis> = 0} is N^{1,0}Y, and
 * K = T^{0,1}Y (+) N^{1,0}Y is the subbundle tested for coisotropy.
 */
struct LinearSubmanifold {
  Model ambient;
  std::vector<std::vector<GaussianRational>> basis;
  std::vector<GaussianRational> base;  // empty means the origin

  Model parameter_model() const { return Model{ambient.kind, (int)basis.size()}; }
};

// Holomorphic affine map f(z) = matrix * z + translation between flat models
// of the same kind; matrix is rows(target.dim) x cols(source.dim).  Torus
// maps need Gaussian-integer entries and zero translation.
struct LinearHolomorphicMap {
  Model source, target;
  std::vector<std::vector<GaussianRational>> matrix;
  std::vector<GaussianRational> translation;  // empty means zero
};

LinearHolomorphicMap compose(const LinearHolomorphicMap& f, const LinearHolomorphicMap& g);
LinearHolomorphicMap identity_map(Model m);

// Restriction of an ambient coefficient function to Y (chart: substitute the
// parametrization; torus: push characters to the subtorus).
CoeffFn restrict_to(const LinearSubmanifold& y, const CoeffFn& f);

// Spanning sections of K = T^{0,1}Y (+) N^{1,0}Y as constant degree-1
// sections of A*, with printable labels.
struct KSection {
  std::string label;
  GradedElement section;
};
std::vector<KSection> k_spanning_sections(const ExtendedPoisson& h, const LinearSubmanifold& y);

struct CoisoResidual {
  std::string u_label, v_label;
  CoeffFn restricted;  // H(u, v) restricted to Y
};

struct CoisoReport {
  bool coisotropic = false;
  std::vector<CoisoResidual> residuals;
};

// H(u, v) = <H# u, v> must vanish identically on Y for all u, v in K.
CoisoReport coisotropic_check(const ExtendedPoisson& h, const LinearSubmanifold& y);

struct SubalgebroidReport {
  bool precondition = false;  // coisotropic_check verdict
  bool anchor_ok = false;     // a_*^H(K) restricted to Y lies in T_C Y
  bool bracket_ok = false;    // brackets of spanning sections stay in K on Y
  bool verdict = false;
  std::vector<std::string> failures;
};

SubalgebroidReport subalgebroid_check(const ExtendedPoisson& h, const LinearSubmanifold& y);

// H^v = -pi + theta - omega.
ExtendedPoisson dual_structure(const ExtendedPoisson& h);

// Block sum of H1 and dual_structure(H2) on the product model.
ExtendedPoisson product_structure(const ExtendedPoisson& h1, const ExtendedPoisson& h2);

// Graph {(f(z), z)} of f: X2 -> X1 inside the product of the two models.
LinearSubmanifold graph_submanifold(const LinearHolomorphicMap& f);

struct PoissonMapReport {
  bool verdict = false;
  CoeffMatrix r_pi;     // f_* pi_2 - pi_1 o f      (target indices, source functions)
  CoeffMatrix r_omega;  // f^* omega_1 - omega_2    (source indices)
  CoeffMatrix r_theta;  // A Theta_2 - Theta_1(f) conj(A)
  bool graph_checked = false;
  bool graph_verdict = false;
  bool agree = true;  // component conditions vs graph coisotropy
};

/*
 * Extended Poisson map test for f: X2 -> X1 carrying H2 to H1: the three
 * component conditions f_* pi_2 = pi_1, f^* omega_1 = omega_2, and
 * f_* o theta_flat_2 = theta_flat_1 o f_*, each checked symbolically after
 * substitution, cross-checked against coisotropy of the graph of f in
 * X1 x X2 with the second factor dualized.
 */
PoissonMapReport poisson_map_check(const ExtendedPoisson& h1, const ExtendedPoisson& h2,
                                   const LinearHolomorphicMap& f);

}  // namespace epc
