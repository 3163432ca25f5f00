#include "epc/spinor.hpp"

#include <stdexcept>

namespace epc {

namespace {

uint32_t full_mask(const Model& m) { return (m.dim >= 32) ? ~0u : ((1u << m.dim) - 1u); }

FrameMono s_mono(const Model& m) { return FrameMono{0, 0, full_mask(m), 0}; }

void require_twisted(const GradedElement& x, const char* who) {
  if (!is_twisted_element(x)) throw std::invalid_argument(std::string(who) + ": twisted element required");
}

}  // namespace

GradedElement spinor_s(Model m) {
  return GradedElement::term(m, s_mono(m), CoeffFn::constant(m, GaussianRational::one()));
}

bool is_twisted_element(const GradedElement& x) {
  uint32_t full = full_mask(x.model());
  for (const auto& [mono, f] : x.terms())
    if (mono.Pb != 0 || mono.Q != full) return false;
  return true;
}

GradedElement twist(const GradedElement& u) {
  if (!u.is_polyvector_A()) throw std::invalid_argument("twist: polyvector of A required");
  return wedge(u, spinor_s(u.model()));
}

GradedElement untwist(const GradedElement& x) {
  require_twisted(x, "untwist");
  GradedElement u(x.model());
  for (const auto& [mono, f] : x.terms()) {
    FrameMono bare{mono.P, 0, 0, mono.Qb};
    auto w = wedge_mono(bare, s_mono(x.model()));
    // the twist sign is +-1, so dividing by it is multiplying by it
    u.add_term(bare, f.scaled(GaussianRational(w->first)));
  }
  return u;
}

CoeffFn nabla_coefficient(const ExtendedPoisson& h, Gen species, int index) {
  int n = h.model.dim;
  CoeffFn r = CoeffFn::zero(h.model);
  if (species == Gen::Dzb) {
    for (int p = 0; p < n; ++p) r -= h.theta_tensor(p, index).wirtinger(p, false);
  } else if (species == Gen::Fdz) {
    for (int p = 0; p < n; ++p)
      r += h.pi_tensor(index, p).scaled(GaussianRational(2)).wirtinger(p, false);
  } else {
    throw std::invalid_argument("nabla_coefficient: generator not in A*");
  }
  return r;
}

GradedElement dd_h_s(const ExtendedPoisson& h) {
  GradedElement u(h.model);
  for (int i = 0; i < h.model.dim; ++i) {
    u += GradedElement::generator(h.model, Gen::Dz, i).mul_fn(nabla_coefficient(h, Gen::Fdz, i));
    u += GradedElement::generator(h.model, Gen::Fdzb, i).mul_fn(nabla_coefficient(h, Gen::Dzb, i));
  }
  return u;
}

GradedElement nabla_H(const ExtendedPoisson& h, const GradedElement& alpha, const GradedElement& t) {
  require_twisted(t, "nabla_H");
  if (!alpha.is_section_Astar() || !alpha.is_homogeneous(1))
    throw std::invalid_argument("nabla_H: degree-1 section of A* required");
  FrameMono sm = s_mono(h.model);
  for (const auto& [mono, f] : t.terms())
    if (!(mono == sm)) throw std::invalid_argument("nabla_H: t must have trivial exterior part");
  CoeffFn g = t.coefficient(sm);
  CoeffFn out = apply_vector_field(anchor_H(h, alpha), g);
  for (const auto& [mono, f] : alpha.terms()) {
    GenRef gen = mono_generators(mono)[0];
    out += f * g * nabla_coefficient(h, gen.species, gen.index);
  }
  return GradedElement::term(h.model, sm, out);
}

GradedElement dd_H(const ExtendedPoisson& h, const GradedElement& t) {
  require_twisted(t, "dd_H");
  FrameMono sm = s_mono(h.model);
  for (const auto& [mono, f] : t.terms())
    if (!(mono == sm)) throw std::invalid_argument("dd_H: t must have trivial exterior part");
  CoeffFn g = t.coefficient(sm);
  GradedElement gs = GradedElement::scalar(h.model, g);
  return twist(twisted_delbar(h, gs) + dd_h_s(h).mul_fn(g));
}

GradedElement delbar_star_H(const ExtendedPoisson& h, const GradedElement& x) {
  require_twisted(x, "delbar_star_H");
  GradedElement u = untwist(x);
  GradedElement out = twisted_delbar(h, u);
  GradedElement ds = dd_h_s(h);
  for (int k = 0; k <= 2 * h.model.dim; ++k) {
    GradedElement uk = u.graded_part(k);
    if (uk.is_zero()) continue;
    GradedElement w = wedge(uk, ds);
    out += (k % 2 == 0) ? w : -w;
  }
  return twist(out);
}

GradedElement tau(const GradedElement& x) {
  require_twisted(x, "tau");
  return clifford_act(untwist(x), spinor_s(x.model()));
}

GradedElement tau_inverse(const GradedElement& lambda) {
  if (!lambda.is_form()) throw std::invalid_argument("tau_inverse: form required");
  const Model& m = lambda.model();
  uint32_t full = full_mask(m);
  GradedElement x(m);
  for (const auto& [mono, c] : lambda.terms()) {
    FrameMono u_mono{full & ~mono.Q, 0, 0, mono.Qb};
    GradedElement u = GradedElement::term(m, u_mono, CoeffFn::constant(m, GaussianRational::one()));
    GradedElement image = clifford_act(u, spinor_s(m));
    // single monomial in, single monomial out, coefficient +-1
    GaussianRational sign = image.terms().begin()->second.constant_part();
    x += twist(u).mul_fn(c.scaled(sign.inverse()));
  }
  return x;
}

GradedElement kb_differential(const ExtendedPoisson& h, const GradedElement& lambda) {
  return dolbeault(lambda, true) + bracket_del_iH(h.total(), lambda);
}

Main1Report verify_main1(const ExtendedPoisson& h, int trials, uint64_t seed, int max_degree) {
  Main1Report rep;
  rep.mc_satisfied = check_mc(h).satisfied;
  rep.residual_zero = true;
  rep.worst_residual = GradedElement::zero(h.model);
  Rng rng(seed);
  int top = std::min(max_degree, 2 * h.model.dim);
  for (int k = 0; k <= top; ++k)
    for (int t = 0; t < trials; ++t) {
      GradedElement x = twist(random_polyvector(h.model, k, rng));
      GradedElement residual = tau(delbar_star_H(h, x)) - kb_differential(h, tau(x));
      ++rep.cases_run;
      if (!residual.is_zero()) {
        rep.residual_zero = false;
        if (residual.term_count() > rep.max_residual_terms) {
          rep.max_residual_terms = residual.term_count();
          rep.worst_residual = residual;
        }
      }
    }
  return rep;
}

GradedElement modular_residual(const ExtendedPoisson& h, const GradedElement& omega0) {
  uint32_t full = full_mask(h.model);
  for (const auto& [mono, f] : omega0.terms())
    if (mono.P != 0 || mono.Pb != 0 || mono.Q != full || mono.Qb != 0)
      throw std::invalid_argument("modular_residual: (n,0)-form required");
  return dolbeault(omega0, true) + dolbeault(interior_H(h.total(), omega0), false);
}

}  // namespace epc
