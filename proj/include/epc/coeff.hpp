#pragma once

#include <map>
#include <string>
#include <vector>

#include "epc/rational.hpp"

namespace epc {

enum class ModelKind { Chart, Torus };

// Flat model: the chart C^n with coordinates z_1..z_n, or the torus
// C^n / (Z + iZ)^n.  dim is the complex dimension n.
struct Model {
  ModelKind kind = ModelKind::Chart;
  int dim = 1;

  friend bool operator==(const Model&, const Model&) = default;
};

// Evaluation point, stored as 2n real coordinates (Re z_1, Im z_1, ...).
// On the torus the entries are the real coordinates (x_j, y_j) of
// z_j = x_j + i y_j taken mod 1.
struct SamplePoint {
  std::vector<double> coords;
};

// Exponent table key.  Chart: z^a zb^b with a, b >= 0 componentwise.
// Torus: the character e[a; b] = exp(2 pi i (a.x + b.y)) with a, b in Z^n.
struct CoeffKey {
  std::vector<int> a;
  std::vector<int> b;

  friend auto operator<=>(const CoeffKey&, const CoeffKey&) = default;
};

/*
 * CoeffFn: an exact coefficient function on a flat model.
 *
 * Chart model: polynomials in z_1..z_n, zb_1..zb_n over the Gaussian
 * rationals.  Torus model: finite Fourier sums of unitary characters
 * e[k; l].  Terms with zero coefficient are never stored; the zero
 * function has an empty term map, so structural equality is semantic
 * equality.
 *
 * Wirtinger derivatives follow the torus normalization that drops the
 * overall factor pi:
 *     d/dz_j   e[k; l] = (i k_j + l_j) e[k; l]
 *     d/dzb_j  e[k; l] = (i k_j - l_j) e[k; l]
 * which rescales every Fourier-side operator by the same positive
 * constant and keeps all coefficients in Q(i).
 */
class CoeffFn {
 public:
  CoeffFn() = default;
  explicit CoeffFn(Model m) : model_(m) {}

  static CoeffFn zero(Model m) { return CoeffFn(m); }
  static CoeffFn constant(Model m, const GaussianRational& c);
  static CoeffFn monomial(Model m, CoeffKey key, const GaussianRational& c);
  // Chart only: the coordinate function z_j (bar = false) or zb_j (bar = true); j is 0-based.
  static CoeffFn coordinate(Model m, int j, bool bar);
  // Torus only: the character e[k; l].
  static CoeffFn character(Model m, std::vector<int> k, std::vector<int> l);

  const Model& model() const { return model_; }
  const std::map<CoeffKey, GaussianRational>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // The value at the constant term; exact only when is_constant().
  GaussianRational constant_part() const;

  CoeffFn operator-() const;
  CoeffFn& operator+=(const CoeffFn& o);
  CoeffFn& operator-=(const CoeffFn& o);
  friend CoeffFn operator+(CoeffFn x, const CoeffFn& y) { return x += y; }
  friend CoeffFn operator-(CoeffFn x, const CoeffFn& y) { return x -= y; }
  friend CoeffFn operator*(const CoeffFn& x, const CoeffFn& y);
  friend bool operator==(const CoeffFn& x, const CoeffFn& y) {
    return x.model_ == y.model_ && x.terms_ == y.terms_;
  }

  CoeffFn scaled(const GaussianRational& c) const;
  CoeffFn pow(int e) const;

  // Complex conjugate: swaps z/zb exponents (chart) or negates frequencies (torus).
  CoeffFn conjugate() const;

  // Wirtinger derivative d/dz_j (bar = false) or d/dzb_j (bar = true); j is 0-based.
  CoeffFn wirtinger(int j, bool bar) const;

  std::complex<double> evaluate(const SamplePoint& p) const;

  // Torus average (volume normalized to 1): the coefficient of e[0; 0].
  GaussianRational integrate_torus() const;

  // Reinterpret on a larger model of the same kind; index_map[j] gives the
  // new 0-based slot of old variable j.  Used for product structures.
  CoeffFn remap(Model target, const std::vector<int>& index_map) const;

  // Chart only: substitute z_i = base[i] + sum_a cols[a][i] * t_a, yielding a
  // function on the chart `sub` with coordinates t_1..t_m.
  CoeffFn substitute_affine(Model sub,
                            const std::vector<std::vector<GaussianRational>>& cols,
                            const std::vector<GaussianRational>& base) const;

  // Torus only: restrict along the lattice map z = W t where the columns of W
  // are Gaussian integers; characters push to characters on the sub-torus.
  CoeffFn push_torus(Model sub, const std::vector<std::vector<GaussianRational>>& cols) const;

  // Canonical printer; output re-parses under the expression grammar.
  std::string to_string() const;

 private:
  void add_term(const CoeffKey& key, const GaussianRational& c);

  Model model_;
  std::map<CoeffKey, GaussianRational> terms_;
};

// Gaussian-rational scalar rendered per the expression grammar: "3/2", "-2i",
// "(1/2+3/4i)".  with_mono controls the 1/-1 elisions used in term position.
std::string scalar_str(const GaussianRational& c);

}  // namespace epc
