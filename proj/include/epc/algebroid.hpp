#pragma once

#include <complex>
#include <string>
#include <vector>

#include "epc/linalg.hpp"
#include "epc/mcstruct.hpp"

namespace epc {

using CoeffMatrix = std::vector<std::vector<CoeffFn>>;

CoeffMatrix coeff_matrix(Model m, int rows, int cols);
bool coeff_matrix_is_zero(const CoeffMatrix& a);
bool coeff_matrix_is_constant(const CoeffMatrix& a);

/*
 * The four contraction blocks of the bundle map H#: alpha -> iota_alpha H
 * from the dual algebroid A* = T^{0,1} (+) Lambda^{1,0} to
 * A = T^{1,0} (+) Lambda^{0,1}, in the frame splittings:
 *
 *   H#(Dzb_i) = sum_p theta_flat[p][i] Dz_p + sum_l omega_flat[l][i] dzb_l
 *   H#(dz^i)  = sum_q pi_sharp[q][i]  Dz_q + sum_q theta_sharp[q][i] dzb_q
 *
 * In tensor components theta_flat[p][i] = -theta^p_i, pi_sharp[q][i] =
 * 2 pi^{i,q}, omega_flat[l][i] = 2 omega_{i,l}, theta_sharp[q][i] =
 * theta^i_q; theta_sharp = -(theta_flat)^* as bundle maps.
 */
struct HSharpBlocks {
  Model model;
  CoeffMatrix theta_flat, pi_sharp, omega_flat, theta_sharp;
};

HSharpBlocks h_sharp(const ExtendedPoisson& h);

// H# applied to a degree-1 section of A*; returns a section of A.
GradedElement apply_h_sharp(const ExtendedPoisson& h, const GradedElement& alpha);
// Hbar# (the sharp map of the conjugate structure) on a degree-1 section of A.
GradedElement apply_hbar_sharp(const ExtendedPoisson& h, const GradedElement& x);

// Matrix of Hbar# H#: A* -> A* on the ordered frame (Dzb_1..Dzb_n, dz^1..dz^n).
CoeffMatrix hbar_h_composition(const ExtendedPoisson& h);

/*
 * Generalized-complex criterion: H defines a generalized complex structure
 * iff Hbar# H# - Id is invertible.  Constant-coefficient H is decided
 * exactly by one determinant over Q(i); otherwise the determinant is
 * evaluated numerically on the sample points.
 */
struct GcReport {
  bool exact = false;
  CoeffMatrix composition;                       // Hbar# H#, 2n x 2n
  GaussianRational det_exact;                    // det(composition - Id), exact path
  std::vector<std::complex<double>> det_values;  // per sample point, numeric path
  bool verdict = false;
};

GcReport gc_criterion(const ExtendedPoisson& h, const std::vector<SamplePoint>& points);

// Twisted anchor a_*^H = a_* + a o H# on degree-1 sections of A*; the image
// is a complexified vector field (Dz/Dzb legs).
GradedElement anchor_H(const ExtendedPoisson& h, const GradedElement& alpha);

// Twisted bracket on degree-1 sections of A*, extended CoeffFn-bilinearly by
// the Leibniz rule from the frame values
//   [Dzb_i, Dzb_j] = 2 del(omega_ij),  [dz^i, dz^j] = 2 del(pi^{i,j}),
//   [dz^j, Dzb_i] = del(theta^j_i) = -[Dzb_i, dz^j].
GradedElement bracket_H(const ExtendedPoisson& h, const GradedElement& alpha, const GradedElement& beta);

// Lie bracket of complexified vector fields.
GradedElement vector_field_bracket(const GradedElement& x, const GradedElement& y);

/*
 * Principal part F = (conjugation + theta_flat) (+) pi_sharp from
 * T^{0,1} (+) Lambda^{1,0} onto T^{1,0}, real-linear fiberwise:
 *   c_p = conj(a_p) + sum_i t_block[p][i] a_i + sum_i p_block[p][i] b_i.
 * The algebroid is elliptic iff F is pointwise surjective, i.e. the real
 * 2n x 4n matrix of F has full rank 2n.
 */
struct EllipticityF {
  Model model;
  CoeffMatrix t_block, p_block;
};

EllipticityF ellipticity_f(const ExtendedPoisson& h);

// Real matrix of F at a point: rows (Re c_p, Im c_p), columns
// (Re a_i, Im a_i, Re b_i, Im b_i).
std::vector<std::vector<double>> f_real_matrix(const EllipticityF& f, const SamplePoint& p);
// Exact counterpart for constant-coefficient structures (entries real).
QMatrix f_real_matrix_exact(const EllipticityF& f);

struct EllipticReport {
  bool exact = false;
  int expected_rank = 0;
  std::vector<int> ranks;              // one entry when exact
  std::vector<int> degenerate_points;  // grid indices with rank < 2n (numeric path)
  bool verdict = false;
  std::string note;
};

EllipticReport check_elliptic(const ExtendedPoisson& h, const std::vector<SamplePoint>& grid);

// Sample grids: the torus gets per_dim points per real dimension; the chart
// gets the origin, integer shifts along each real axis, and the all-ones
// point.
std::vector<SamplePoint> default_grid(Model m, int per_dim);

}  // namespace epc
