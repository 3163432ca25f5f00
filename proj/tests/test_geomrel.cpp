#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "epc/geomrel.hpp"
#include "epc/mcstruct.hpp"

using namespace epc;

namespace {

const Model kChart2{ModelKind::Chart, 2};
const Model kChart3{ModelKind::Chart, 3};
const Model kChart4{ModelKind::Chart, 4};
const Model kTorus1{ModelKind::Torus, 1};
const Model kTorus2{ModelKind::Torus, 2};
const Model kTorus3{ModelKind::Torus, 3};

GaussianRational q(long v) { return GaussianRational(v); }

// pi with pi^{1,2} = z1 on C^2.
ExtendedPoisson holo_pi() {
  auto pi = GradedElement::term(kChart2, FrameMono{0b11, 0, 0, 0},
                                CoeffFn::coordinate(kChart2, 0, false).scaled(q(2)));
  return ExtendedPoisson(kChart2, pi, GradedElement::zero(kChart2), GradedElement::zero(kChart2));
}

// pi with pi^{1,2} = 1 on C^2.
ExtendedPoisson const_pi() {
  auto pi = GradedElement::term(kChart2, FrameMono{0b11, 0, 0, 0},
                                CoeffFn::constant(kChart2, q(2)));
  return ExtendedPoisson(kChart2, pi, GradedElement::zero(kChart2), GradedElement::zero(kChart2));
}

// omega = dzb1 ^ dzb2 on C^2.
ExtendedPoisson omega_n2() {
  auto om = GradedElement::term(kChart2, FrameMono{0, 0, 0, 0b11},
                                CoeffFn::constant(kChart2, q(1)));
  return ExtendedPoisson(kChart2, GradedElement::zero(kChart2), GradedElement::zero(kChart2), om);
}

// theta = Dz2 ^ dzb1 on C^2 (theta^2_1 = 1).
ExtendedPoisson theta21() {
  auto th = GradedElement::term(kChart2, FrameMono{0b10, 0, 0, 0b01},
                                CoeffFn::constant(kChart2, q(1)));
  return ExtendedPoisson(kChart2, GradedElement::zero(kChart2), th, GradedElement::zero(kChart2));
}

// omega = z3 dzb1 ^ dzb2 on C^3 (holomorphic coefficient, Maurer-Cartan).
ExtendedPoisson omega_z3() {
  auto om = GradedElement::term(kChart3, FrameMono{0, 0, 0, 0b011},
                                CoeffFn::coordinate(kChart3, 2, false));
  return ExtendedPoisson(kChart3, GradedElement::zero(kChart3), GradedElement::zero(kChart3), om);
}

ExtendedPoisson torus_theta_e() {
  auto th = GradedElement::term(kTorus1, FrameMono{1, 0, 0, 1}, CoeffFn::character(kTorus1, {1}, {0}));
  return ExtendedPoisson(kTorus1, GradedElement::zero(kTorus1), th, GradedElement::zero(kTorus1));
}

ExtendedPoisson mixed_const() {
  auto one = CoeffFn::constant(kTorus2, q(1));
  auto pi = GradedElement::term(kTorus2, FrameMono{0b11, 0, 0, 0}, one);
  auto th = GradedElement::term(kTorus2, FrameMono{0b01, 0, 0, 0b10}, one);
  auto om = GradedElement::term(kTorus2, FrameMono{0, 0, 0, 0b11}, one);
  return ExtendedPoisson(kTorus2, pi, th, om);
}

// Y = {z_{m+1} = ... = z_n = 0} inside C^n or the corresponding subtorus.
LinearSubmanifold first_coords(Model ambient, int m) {
  LinearSubmanifold y;
  y.ambient = ambient;
  for (int j = 0; j < m; ++j) {
    std::vector<GaussianRational> col(ambient.dim);
    col[j] = q(1);
    y.basis.push_back(col);
  }
  return y;
}

LinearHolomorphicMap shear_n2() {
  LinearHolomorphicMap f;
  f.source = kChart2;
  f.target = kChart2;
  f.matrix = {{q(1), q(0)}, {q(1), q(1)}};
  return f;
}

}  // namespace

TEST_CASE("coisotropy of linear subspaces") {
  auto y1 = first_coords(kChart2, 1);

  // H = 0: every subspace is coisotropic.
  auto rep0 = coisotropic_check(ExtendedPoisson::zero(kChart2), y1);
  CHECK(rep0.coisotropic);
  for (const auto& r : rep0.residuals) CHECK(r.restricted.is_zero());

  // omega = dzb1 ^ dzb2: the only K x K pairing <H# Dzb1, Dzb1> vanishes by skewness.
  CHECK(coisotropic_check(omega_n2(), y1).coisotropic);

  // theta^2_1 = 1: H# Dzb1 has a Dz2 component, which pairs with dz^2 in K.
  auto bad = coisotropic_check(theta21(), y1);
  CHECK(!bad.coisotropic);
  bool found_nonzero = false;
  for (const auto& r : bad.residuals) found_nonzero = found_nonzero || !r.restricted.is_zero();
  CHECK(found_nonzero);

  // pi^{1,2} = z1: H(dz^2, dz^2) = 0 is the only conormal pairing.
  CHECK(coisotropic_check(holo_pi(), y1).coisotropic);

  // omega = z3 dzb1 ^ dzb2 restricted to {z3 = 0}: H(Dzb1, Dzb2) = z3 -> 0.
  CHECK(coisotropic_check(omega_z3(), first_coords(kChart3, 2)).coisotropic);
}

TEST_CASE("coisotropic subspaces carry subalgebroids") {
  auto y1 = first_coords(kChart2, 1);

  auto rep0 = subalgebroid_check(ExtendedPoisson::zero(kChart2), y1);
  CHECK(rep0.precondition);
  CHECK(rep0.anchor_ok);
  CHECK(rep0.bracket_ok);
  CHECK(rep0.verdict);
  CHECK(rep0.failures.empty());

  // a(dz^2) = 2 pi^{2,1} Dz1 is tangent to {z2 = 0}; brackets of constant
  // sections vanish for constant pi.
  auto rep_pi = subalgebroid_check(const_pi(), y1);
  CHECK(rep_pi.verdict);

  // Failed precondition short-circuits with an explanation.
  auto rep_bad = subalgebroid_check(theta21(), y1);
  CHECK(!rep_bad.precondition);
  CHECK(!rep_bad.verdict);
  CHECK(!rep_bad.failures.empty());

  // [Dzb1, Dzb2] = del(z3) = dz^3 lies in the conormal part of K, so the
  // bracket condition needs N^{1,0}Y and not just T^{0,1}Y.
  auto rep_z3 = subalgebroid_check(omega_z3(), first_coords(kChart3, 2));
  CHECK(rep_z3.precondition);
  CHECK(rep_z3.bracket_ok);
  CHECK(rep_z3.verdict);

  // Agreement: on Maurer-Cartan structures, coisotropy decides the verdict.
  struct Pair {
    ExtendedPoisson h;
    LinearSubmanifold y;
  };
  std::vector<Pair> corpus = {{ExtendedPoisson::zero(kChart2), y1},
                              {const_pi(), y1},
                              {holo_pi(), y1},
                              {omega_n2(), y1},
                              {omega_z3(), first_coords(kChart3, 2)},
                              {theta21(), y1}};
  for (const auto& [h, y] : corpus) {
    REQUIRE(check_mc(h).satisfied);
    auto co = coisotropic_check(h, y);
    auto sub = subalgebroid_check(h, y);
    CHECK(co.coisotropic == sub.verdict);
  }
}

TEST_CASE("torus subtori") {
  // Rational subtorus y = {z2 = 0} of the 2-torus with constant pi.
  auto pi = GradedElement::term(kTorus2, FrameMono{0b11, 0, 0, 0},
                                CoeffFn::constant(kTorus2, q(2)));
  ExtendedPoisson h(kTorus2, pi, GradedElement::zero(kTorus2), GradedElement::zero(kTorus2));
  auto y = first_coords(kTorus2, 1);
  CHECK(coisotropic_check(h, y).coisotropic);
  CHECK(subalgebroid_check(h, y).verdict);
}

TEST_CASE("dual structure") {
  std::vector<ExtendedPoisson> corpus = {const_pi(), holo_pi(), theta21(), omega_n2(),
                                         mixed_const()};
  for (const auto& h : corpus) {
    auto hv = dual_structure(h);
    auto expect = scale_family(h, q(-1));
    CHECK(hv.pi == expect.pi);
    CHECK(hv.theta == expect.theta);
    CHECK(hv.omega == expect.omega);

    // Involution.
    auto back = dual_structure(hv);
    CHECK(back.pi == h.pi);
    CHECK(back.theta == h.theta);
    CHECK(back.omega == h.omega);

    // Maurer-Cartan is self-dual.
    CHECK(check_mc(hv).satisfied == check_mc(h).satisfied);
  }

  // Coisotropy is dual-invariant: each K x K pairing is scaled by +-1.
  auto y1 = first_coords(kChart2, 1);
  for (const auto& h : {omega_n2(), theta21(), holo_pi()}) {
    CHECK(coisotropic_check(dual_structure(h), y1).coisotropic ==
          coisotropic_check(h, y1).coisotropic);
  }
}

TEST_CASE("product structure") {
  auto z2 = ExtendedPoisson::zero(kChart2);
  auto p0 = product_structure(z2, z2);
  CHECK(p0.model.dim == 4);
  CHECK(p0.total().is_zero());

  // Block layout: H1 on indices 1..n1, dual(H2) shifted to n1+1..n1+n2.
  auto h1 = holo_pi();
  auto h2 = const_pi();
  auto p = product_structure(h1, h2);
  CHECK(p.model.kind == ModelKind::Chart);
  CHECK(p.model.dim == 4);
  auto expected_pi = remap_element(h1.pi, kChart4, {0, 1}) +
                     remap_element(scale_family(h2, q(-1)).pi, kChart4, {2, 3});
  CHECK(p.pi == expected_pi);

  // Mixed species land in their own blocks.
  auto t1 = torus_theta_e();
  auto m2 = mixed_const();
  auto pm = product_structure(t1, m2);
  CHECK(pm.model.kind == ModelKind::Torus);
  CHECK(pm.model.dim == 3);
  CHECK(pm.theta == remap_element(t1.theta, kTorus3, {0}) +
                        remap_element(m2.theta, kTorus3, {1, 2}));
  CHECK(pm.pi == remap_element(scale_family(m2, q(-1)).pi, kTorus3, {1, 2}));
  CHECK(pm.omega == remap_element(scale_family(m2, q(-1)).omega, kTorus3, {1, 2}));

  // Products of Maurer-Cartan structures are Maurer-Cartan.
  CHECK(check_mc(p).satisfied);
  CHECK(check_mc(pm).satisfied);
}

TEST_CASE("submanifold and map validation") {
  auto h = ExtendedPoisson::zero(kChart2);

  LinearSubmanifold dep;
  dep.ambient = kChart2;
  dep.basis = {{q(1), q(2)}, {q(2), q(4)}};
  CHECK_THROWS_AS(coisotropic_check(h, dep), std::invalid_argument);

  LinearSubmanifold short_col;
  short_col.ambient = kChart2;
  short_col.basis = {{q(1)}};
  CHECK_THROWS_AS(coisotropic_check(h, short_col), std::invalid_argument);

  LinearSubmanifold frac;
  frac.ambient = kTorus2;
  frac.basis = {{GaussianRational::from_fractions(1, 2, 0, 1), q(0)}};
  CHECK_THROWS_AS(coisotropic_check(ExtendedPoisson::zero(kTorus2), frac), std::invalid_argument);

  LinearHolomorphicMap shifted;
  shifted.source = kTorus2;
  shifted.target = kTorus2;
  shifted.matrix = {{q(1), q(0)}, {q(0), q(1)}};
  shifted.translation = {q(1), q(0)};
  auto ht = ExtendedPoisson::zero(kTorus2);
  CHECK_THROWS_AS(poisson_map_check(ht, ht, shifted), std::invalid_argument);
}

TEST_CASE("poisson map verdicts") {
  auto h_pi = const_pi();
  auto id2 = identity_map(kChart2);

  // Identity carries any structure to itself.
  auto rep_id = poisson_map_check(h_pi, h_pi, id2);
  CHECK(rep_id.verdict);
  CHECK(rep_id.graph_checked);
  CHECK(rep_id.graph_verdict);
  CHECK(rep_id.agree);

  // Identity does not carry pi to zero: r_pi survives.
  auto rep_bad = poisson_map_check(ExtendedPoisson::zero(kChart2), h_pi, id2);
  CHECK(!rep_bad.verdict);
  CHECK(!coeff_matrix_is_zero(rep_bad.r_pi));
  CHECK(rep_bad.graph_checked);
  CHECK(!rep_bad.graph_verdict);
  CHECK(rep_bad.agree);

  // The unimodular shear preserves a constant bivector: f_* pi = det(A) pi.
  auto rep_shear = poisson_map_check(h_pi, h_pi, shear_n2());
  CHECK(rep_shear.verdict);
  CHECK(rep_shear.agree);

  // Composition of passing maps passes.
  auto f2 = compose(shear_n2(), shear_n2());
  CHECK(f2.matrix[1][0] == q(2));
  auto rep_comp = poisson_map_check(h_pi, h_pi, f2);
  CHECK(rep_comp.verdict);
  CHECK(rep_comp.agree);

  // Integer matrix on the torus.
  auto pi_t = GradedElement::term(kTorus2, FrameMono{0b11, 0, 0, 0},
                                  CoeffFn::constant(kTorus2, q(2)));
  ExtendedPoisson ht(kTorus2, pi_t, GradedElement::zero(kTorus2), GradedElement::zero(kTorus2));
  LinearHolomorphicMap ft;
  ft.source = kTorus2;
  ft.target = kTorus2;
  ft.matrix = {{q(1), q(1)}, {q(0), q(1)}};
  auto rep_t = poisson_map_check(ht, ht, ft);
  CHECK(rep_t.verdict);
  CHECK(rep_t.agree);

  // A form-side failure: identity should carry omega to omega, not to zero.
  auto rep_om = poisson_map_check(omega_n2(), ExtendedPoisson::zero(kChart2), id2);
  CHECK(!rep_om.verdict);
  CHECK(!coeff_matrix_is_zero(rep_om.r_omega));
  CHECK(rep_om.agree);
}
