#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "epc/coeff.hpp"

namespace epc {

// Generator species, in canonical order.  Dz_i = d/dz_i and Dzb_i = d/dzb_i
// span the complexified tangent frame; Fdz_i = dz_i and Fdzb_i = dzb_i the
// coframe.  All four are odd.
enum class Gen : uint8_t { Dz = 0, Dzb = 1, Fdz = 2, Fdzb = 3 };

struct GenRef {
  Gen species;
  int index;  // 0-based
};

// Frame monomial Dz_P ^ Dzb_Pb ^ dz_Q ^ dzb_Qb in the fixed canonical order,
// each index set a bitmask with bits listed in increasing index order.
struct FrameMono {
  uint32_t P = 0, Pb = 0, Q = 0, Qb = 0;

  int degree() const;
  friend auto operator<=>(const FrameMono&, const FrameMono&) = default;
};

// Parity helpers exposed for the test suite.
int merge_inversions(uint32_t a, uint32_t b);  // #{(x in a, y in b) : y < x} mod 2
// Wedge of canonical monomials: nullopt when a species overlaps, otherwise
// the Koszul sign and the merged canonical monomial.
std::optional<std::pair<int, FrameMono>> wedge_mono(const FrameMono& m1, const FrameMono& m2);
// Contraction of the polyvector W = Dz_A ^ Dzb_B into the form dz_Q ^ dzb_Qb
// under the duality normalization <dz_I ^ dzb_J, Dz_I ^ Dzb_J> = +1:
// nullopt unless A (resp. B) is contained in Q (resp. Qb).
std::optional<std::pair<int, FrameMono>> contract_mono(const FrameMono& w, const FrameMono& form);

/*
 * GradedElement: an exact section of the full exterior bundle
 * Lambda(T^{1,0}) ^ Lambda(T^{0,1}) ^ Lambda^{*,*}, i.e. a finite sum of
 * frame monomials with CoeffFn coefficients.  Subspaces are carved out by
 * species predicates:
 *   - polyvectors of A = T^{1,0} (+) Lambda^{0,1}:  Pb = Q = 0
 *   - differential forms:                           P = Pb = 0
 *   - sections of A* = T^{0,1} (+) Lambda^{1,0}:    P = Qb = 0
 * Zero coefficients are never stored, so == is semantic equality.
 */
class GradedElement {
 public:
  GradedElement() = default;
  explicit GradedElement(Model m) : model_(m) {}

  static GradedElement zero(Model m) { return GradedElement(m); }
  static GradedElement scalar(Model m, const CoeffFn& f);
  static GradedElement term(Model m, const FrameMono& mono, const CoeffFn& f);
  static GradedElement generator(Model m, Gen species, int index);  // 0-based index

  const Model& model() const { return model_; }
  const std::map<FrameMono, CoeffFn>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int term_count() const { return (int)terms_.size(); }

  bool is_homogeneous(int degree) const;
  bool is_polyvector_A() const;
  bool is_form() const;
  bool is_section_Astar() const;

  // Coefficient of a monomial (zero function if absent).
  CoeffFn coefficient(const FrameMono& mono) const;
  // Degree-d part.
  GradedElement graded_part(int degree) const;
  // Part with |P| = p, |Pb| = pb, |Q| = q, |Qb| = qb (-1 matches anything).
  GradedElement species_part(int p, int pb, int q, int qb) const;

  GradedElement operator-() const;
  GradedElement& operator+=(const GradedElement& o);
  GradedElement& operator-=(const GradedElement& o);
  friend GradedElement operator+(GradedElement x, const GradedElement& y) { return x += y; }
  friend GradedElement operator-(GradedElement x, const GradedElement& y) { return x -= y; }
  friend bool operator==(const GradedElement& x, const GradedElement& y) {
    return x.terms_ == y.terms_;
  }

  GradedElement scaled(const GaussianRational& c) const;
  GradedElement mul_fn(const CoeffFn& f) const;
  // Complex conjugation (swaps Dz <-> Dzb and dz <-> dzb, conjugates coefficients).
  GradedElement conjugate() const;

  std::string to_string() const;

  void add_term(const FrameMono& mono, const CoeffFn& f);

 private:
  Model model_;
  std::map<FrameMono, CoeffFn> terms_;
};

GradedElement wedge(const GradedElement& x, const GradedElement& y);

// Contraction iota_W(xi) by duality; W must be a polyvector of the tangent
// frame (Q = Qb = 0 in every term), xi a form.
GradedElement contract(const GradedElement& w, const GradedElement& xi);

// Dolbeault operators on arbitrary elements in the flat frame:
// del (bar = false) wedges dz_j from the left, delbar (bar = true) dzb_j.
GradedElement dolbeault(const GradedElement& x, bool bar);

// Clifford action of x in Lambda(T_C X) (x) Lambda(T*_C X) on the form lambda:
// a monomial W (x) xi acts by (-1)^{w(w-1)/2} iota_W (xi ^ lambda), w = |W|.
GradedElement clifford_act(const GradedElement& x, const GradedElement& lambda);

// Pseudo-metric of the double E = T_C (+) T*_C on degree-1 sections:
// <X1 + xi1, X2 + xi2> = 1/2 (<xi1, X2> + <xi2, X1>).
CoeffFn metric_E(const GradedElement& x, const GradedElement& y);

// Schouten-Nijenhuis (Gerstenhaber) bracket on polyvectors of the algebroid
// A = T^{1,0} (+) Lambda^{0,1}: extends [Dz_i, f] = df/dz_i, [dzb_j, f] = 0 and
// vanishing generator brackets by the graded Leibniz rules.
GradedElement schouten(const GradedElement& u, const GradedElement& v);

// Inner product iota_H lambda = -H . lambda for H of degree 2 in Lambda^2 A.
GradedElement interior_H(const GradedElement& h2, const GradedElement& lambda);

// Commutator [del, iota_H] lambda = del(iota_H lambda) - iota_H(del lambda).
GradedElement bracket_del_iH(const GradedElement& h2, const GradedElement& lambda);

// Transport to a model of the same kind along a strictly increasing index
// map (index_map[j] = new slot of variable j); signs are unaffected because
// the relative order inside each species is preserved.
GradedElement remap_element(const GradedElement& x, Model target, const std::vector<int>& index_map);

// Derivative of g along a degree-1 complexified vector field (Dz/Dzb legs).
CoeffFn apply_vector_field(const GradedElement& v, const CoeffFn& g);

// Natural duality pairing <X + xi, Y + eta> = eta(X) + xi(Y) on degree-1
// sections of T_C (+) T*_C (twice the pseudo-metric).
CoeffFn pair_sections(const GradedElement& x, const GradedElement& y);

// List of generators of a monomial in canonical order.
std::vector<GenRef> mono_generators(const FrameMono& m);
std::string gen_name(Gen species, int index);

}  // namespace epc
