#include <doctest.h>

#include "epc/graded.hpp"
#include "epc/mcstruct.hpp"

using namespace epc;

namespace {

const Model kChart1{ModelKind::Chart, 1};
const Model kChart2{ModelKind::Chart, 2};
const Model kTorus2{ModelKind::Torus, 2};

GaussianRational sign_pow(int e) {
  return ((e % 2) + 2) % 2 == 0 ? GaussianRational(1) : GaussianRational(-1);
}

GradedElement gen(Model m, Gen s, int i) { return GradedElement::generator(m, s, i); }

// Random degree-1 section of the double E = T_C (+) T*_C: all four species.
GradedElement random_e_section(Model m, Rng& rng) {
  auto e = GradedElement::zero(m);
  for (Gen s : {Gen::Dz, Gen::Dzb, Gen::Fdz, Gen::Fdzb}) {
    for (int i = 0; i < m.dim; ++i) {
      e += gen(m, s, i).mul_fn(random_coeff(m, rng));
    }
  }
  return e;
}

// The odd commutator [v, del] lambda = v.(del lambda) - (-1)^q del(v.lambda)
// for a homogeneous degree-q polyvector v acting by Clifford multiplication.
GradedElement v_del_commutator(const GradedElement& v, int q, const GradedElement& lambda) {
  return clifford_act(v, dolbeault(lambda, false)) -
         dolbeault(clifford_act(v, lambda), false).scaled(sign_pow(q));
}

}  // namespace

TEST_CASE("wedge: Koszul signs, associativity, nilpotence") {
  auto dz1 = gen(kChart2, Gen::Fdz, 0);
  auto dzb1 = gen(kChart2, Gen::Fdzb, 0);
  CHECK(wedge(dz1, dz1).is_zero());
  CHECK(wedge(dz1, dzb1) == -wedge(dzb1, dz1));

  Rng rng(101);
  for (int t = 0; t < 50; ++t) {
    int p = rng.uniform(1, 2), q = rng.uniform(1, 2), r = rng.uniform(1, 2);
    auto x = random_form(kChart2, p, rng);
    auto y = random_form(kChart2, q, rng);
    auto z = random_polyvector(kChart2, r, rng);
    CHECK(wedge(wedge(x, y), z) == wedge(x, wedge(y, z)));
    CHECK(wedge(x, y) == wedge(y, x).scaled(sign_pow(p * q)));
  }
}

TEST_CASE("contraction follows the +1 duality normalization") {
  auto dz1 = gen(kChart1, Gen::Fdz, 0);
  auto dzb1 = gen(kChart1, Gen::Fdzb, 0);
  auto w = wedge(gen(kChart1, Gen::Dz, 0), gen(kChart1, Gen::Dzb, 0));

  // <dz ^ dzb, Dz ^ Dzb> = +1 and iota_{Dz}(dz ^ dzb) = dzb.
  CHECK(contract(w, wedge(dz1, dzb1)) == GradedElement::scalar(kChart1, CoeffFn::constant(kChart1, GaussianRational(1))));
  CHECK(contract(gen(kChart1, Gen::Dz, 0), wedge(dz1, dzb1)) == dzb1);
  CHECK(contract(gen(kChart1, Gen::Dzb, 0), dzb1) ==
        GradedElement::scalar(kChart1, CoeffFn::constant(kChart1, GaussianRational(1))));
  CHECK(contract(gen(kChart1, Gen::Dz, 0), dzb1).is_zero());
}

TEST_CASE("clifford action: pinned low-degree values") {
  // (Dz1 ^ dzb1) . dz1 = -dzb1.
  auto x = wedge(gen(kChart2, Gen::Dz, 0), gen(kChart2, Gen::Fdzb, 0));
  CHECK(clifford_act(x, gen(kChart2, Gen::Fdz, 0)) == -gen(kChart2, Gen::Fdzb, 0));

  // iota_pi(dz1 ^ dz2) returns the stored coefficient of pi = c Dz1 ^ Dz2,
  // and the Clifford action of a degree-2 element carries the extra sign.
  auto pi = wedge(gen(kChart2, Gen::Dz, 0), gen(kChart2, Gen::Dz, 1)).scaled(GaussianRational(3));
  auto vol = wedge(gen(kChart2, Gen::Fdz, 0), gen(kChart2, Gen::Fdz, 1));
  auto three = GradedElement::scalar(kChart2, CoeffFn::constant(kChart2, GaussianRational(3)));
  CHECK(interior_H(pi, vol) == three);
  CHECK(clifford_act(pi, vol) == -three);
}

TEST_CASE("metric of the double and the natural pairing") {
  auto dz = gen(kChart2, Gen::Dz, 0);
  auto fdz = gen(kChart2, Gen::Fdz, 0);
  CHECK(metric_E(dz, fdz) == CoeffFn::constant(kChart2, GaussianRational::from_fractions(1, 2, 0, 1)));
  CHECK(metric_E(dz + fdz, dz + fdz) == CoeffFn::constant(kChart2, GaussianRational(1)));
  CHECK(metric_E(dz, dz).is_zero());
  CHECK(pair_sections(dz, fdz) == CoeffFn::constant(kChart2, GaussianRational(1)));
  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    auto x = random_e_section(kChart2, rng);
    auto y = random_e_section(kChart2, rng);
    CHECK(metric_E(x, y) == metric_E(y, x));
    CHECK(pair_sections(x, y) == metric_E(x, y).scaled(GaussianRational(2)));
    CHECK(pair_sections(x, y) == pair_sections(y, x));
  }
}

TEST_CASE("clifford relation x.y + y.x = 2<x,y>") {
  for (Model m : {kChart2, kTorus2}) {
    Rng rng(m.kind == ModelKind::Chart ? 41 : 42);
    for (int t = 0; t < 50; ++t) {
      auto x = random_e_section(m, rng);
      auto y = random_e_section(m, rng);
      auto lambda = random_form(m, rng.uniform(0, 2 * m.dim), rng);
      auto lhs = clifford_act(x, clifford_act(y, lambda)) + clifford_act(y, clifford_act(x, lambda));
      CHECK(lhs == lambda.mul_fn(metric_E(x, y).scaled(GaussianRational(2))));
    }
  }
}

TEST_CASE("dolbeault operators square to zero and anticommute") {
  Rng rng(51);
  for (Model m : {kChart2, kTorus2}) {
    for (int t = 0; t < 25; ++t) {
      auto x = random_form(m, rng.uniform(0, 2), rng) + random_polyvector(m, rng.uniform(0, 2), rng);
      CHECK(dolbeault(dolbeault(x, false), false).is_zero());
      CHECK(dolbeault(dolbeault(x, true), true).is_zero());
      CHECK(dolbeault(dolbeault(x, false), true) == -dolbeault(dolbeault(x, true), false));
    }
  }
}

TEST_CASE("schouten bracket: graded skew symmetry and Jacobi") {
  for (Model m : {kChart2, kTorus2}) {
    Rng rng(m.kind == ModelKind::Chart ? 61 : 62);
    for (int t = 0; t < 50; ++t) {
      int p = rng.uniform(1, 2), q = rng.uniform(1, 2), r = rng.uniform(1, 2);
      auto u = random_polyvector(m, p, rng);
      auto v = random_polyvector(m, q, rng);
      auto w = random_polyvector(m, r, rng);
      CHECK(schouten(u, v) == schouten(v, u).scaled(-sign_pow((p - 1) * (q - 1))));
      auto jac = schouten(u, schouten(v, w)) - schouten(schouten(u, v), w) -
                 schouten(v, schouten(u, w)).scaled(sign_pow((p - 1) * (q - 1)));
      CHECK(jac.is_zero());
    }
  }
}

TEST_CASE("schouten bracket: Leibniz rule over the wedge") {
  for (Model m : {kChart2, kTorus2}) {
    Rng rng(m.kind == ModelKind::Chart ? 71 : 72);
    for (int t = 0; t < 50; ++t) {
      int p = rng.uniform(1, 2), q = rng.uniform(1, 2), r = rng.uniform(1, 2);
      auto u = random_polyvector(m, p, rng);
      auto v = random_polyvector(m, q, rng);
      auto w = random_polyvector(m, r, rng);
      auto lhs = schouten(u, wedge(v, w));
      auto rhs = wedge(schouten(u, v), w) + wedge(v, schouten(u, w)).scaled(sign_pow((p - 1) * q));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("delbar is a derivation of the clifford action") {
  for (Model m : {kChart2, kTorus2}) {
    Rng rng(m.kind == ModelKind::Chart ? 81 : 82);
    for (int t = 0; t < 50; ++t) {
      int p = rng.uniform(1, 2);
      auto u = random_polyvector(m, p, rng);
      auto lambda = random_form(m, rng.uniform(0, 2 * m.dim), rng);
      auto lhs = dolbeault(clifford_act(u, lambda), true);
      auto rhs = clifford_act(dolbeault(u, true), lambda) +
                 clifford_act(u, dolbeault(lambda, true)).scaled(sign_pow(p));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("[del, iota_H] acts through the bracket with H") {
  for (Model m : {kChart2, kTorus2}) {
    Rng rng(m.kind == ModelKind::Chart ? 91 : 92);
    for (int t = 0; t < 50; ++t) {
      int p = rng.uniform(1, 2);
      auto h2 = random_polyvector(m, 2, rng);
      auto u = random_polyvector(m, p, rng);
      auto lambda = random_form(m, rng.uniform(0, 2 * m.dim), rng);
      auto lhs = bracket_del_iH(h2, clifford_act(u, lambda));
      auto rhs = clifford_act(schouten(h2, u), lambda) +
                 clifford_act(u, bracket_del_iH(h2, lambda)).scaled(sign_pow(p));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("schouten bracket characterized by Clifford commutators") {
  // [[u, del], v] acting on forms computes the Clifford action of [u, v]:
  //   [u,v].lambda = (-1)^{q+1} ( u.([v,del]lambda)
  //                              - (-1)^{p(q+1)} [v,del](u.lambda) ).
  for (Model m : {kChart2, kTorus2}) {
    Rng rng(m.kind == ModelKind::Chart ? 111 : 112);
    for (int t = 0; t < 50; ++t) {
      int p = rng.uniform(1, 2), q = rng.uniform(1, 2);
      auto u = random_polyvector(m, p, rng);
      auto v = random_polyvector(m, q, rng);
      auto lambda = random_form(m, rng.uniform(0, 2 * m.dim), rng);
      auto inner = clifford_act(u, v_del_commutator(v, q, lambda)) -
                   v_del_commutator(v, q, clifford_act(u, lambda)).scaled(sign_pow(p * (q + 1)));
      CHECK(clifford_act(schouten(u, v), lambda) == inner.scaled(sign_pow(q + 1)));
    }
  }
}

TEST_CASE("conjugation swaps species and is an involution") {
  CHECK(gen(kChart2, Gen::Dz, 0).conjugate() == gen(kChart2, Gen::Dzb, 0));
  CHECK(gen(kChart2, Gen::Fdz, 1).conjugate() == gen(kChart2, Gen::Fdzb, 1));
  Rng rng(121);
  for (int t = 0; t < 20; ++t) {
    auto x = random_form(kTorus2, rng.uniform(0, 3), rng);
    CHECK(x.conjugate().conjugate() == x);
  }
}

TEST_CASE("index remapping embeds elements in larger models") {
  Model big{ModelKind::Chart, 3};
  std::vector<int> map = {1, 2};
  CHECK(remap_element(gen(kChart2, Gen::Dz, 0), big, map) == gen(big, Gen::Dz, 1));
  Rng rng(131);
  for (int t = 0; t < 15; ++t) {
    auto x = random_polyvector(kChart2, rng.uniform(1, 2), rng);
    auto y = random_polyvector(kChart2, rng.uniform(1, 2), rng);
    CHECK(remap_element(wedge(x, y), big, map) ==
          wedge(remap_element(x, big, map), remap_element(y, big, map)));
  }
}

TEST_CASE("directional derivative along complexified vector fields") {
  auto m = kChart2;
  auto v = gen(m, Gen::Dz, 0).mul_fn(CoeffFn::coordinate(m, 1, false));  // z2 d/dz1
  auto g = CoeffFn::coordinate(m, 0, false) * CoeffFn::coordinate(m, 0, true);  // z1 zb1
  CHECK(apply_vector_field(v, g) == CoeffFn::coordinate(m, 1, false) * CoeffFn::coordinate(m, 0, true));
}
