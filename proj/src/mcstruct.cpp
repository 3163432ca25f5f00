#include "epc/mcstruct.hpp"

#include <bit>
#include <stdexcept>

namespace epc {

namespace {

const GaussianRational kHalf = GaussianRational::from_fractions(1, 2, 0, 1);

void check_species(const GradedElement& e, int p, int qb, const char* what) {
  for (const auto& [m, f] : e.terms()) {
    if (m.Pb || m.Q) throw std::invalid_argument(std::string(what) + ": not a polyvector of A");
    if (std::popcount(m.P) != p || std::popcount(m.Qb) != qb)
      throw std::invalid_argument(std::string(what) + ": wrong bigrade");
  }
}

}  // namespace

ExtendedPoisson::ExtendedPoisson(Model m, GradedElement pi_part, GradedElement theta_part,
                                 GradedElement omega_part)
    : model(m), pi(std::move(pi_part)), theta(std::move(theta_part)), omega(std::move(omega_part)) {
  check_species(pi, 2, 0, "pi");
  check_species(theta, 1, 1, "theta");
  check_species(omega, 0, 2, "omega");
}

ExtendedPoisson ExtendedPoisson::zero(Model m) {
  return ExtendedPoisson(m, GradedElement::zero(m), GradedElement::zero(m), GradedElement::zero(m));
}

ExtendedPoisson ExtendedPoisson::decompose(const GradedElement& h) {
  Model m = h.model();
  GradedElement pi(m), theta(m), omega(m);
  for (const auto& [mono, f] : h.terms()) {
    if (mono.Pb || mono.Q || mono.degree() != 2)
      throw std::invalid_argument("decompose: H must be a degree-2 polyvector of A");
    int p = std::popcount(mono.P);
    if (p == 2)
      pi.add_term(mono, f);
    else if (p == 1)
      theta.add_term(mono, f);
    else
      omega.add_term(mono, f);
  }
  return ExtendedPoisson(m, pi, theta, omega);
}

GradedElement ExtendedPoisson::total() const { return pi + theta + omega; }

bool ExtendedPoisson::is_constant_coefficient() const {
  for (const GradedElement* e : {&pi, &theta, &omega})
    for (const auto& [m, f] : e->terms())
      if (!f.is_constant()) return false;
  return true;
}

CoeffFn ExtendedPoisson::pi_tensor(int i, int q) const {
  if (i == q) return CoeffFn::zero(model);
  FrameMono m;
  m.P = (1u << i) | (1u << q);
  CoeffFn c = pi.coefficient(m).scaled(kHalf);
  return i < q ? c : -c;
}

CoeffFn ExtendedPoisson::theta_tensor(int p, int q) const {
  FrameMono m;
  m.P = 1u << p;
  m.Qb = 1u << q;
  return theta.coefficient(m);
}

CoeffFn ExtendedPoisson::omega_tensor(int k, int l) const {
  if (k == l) return CoeffFn::zero(model);
  FrameMono m;
  m.Qb = (1u << k) | (1u << l);
  CoeffFn c = omega.coefficient(m).scaled(kHalf);
  return k < l ? c : -c;
}

McResiduals check_mc(const ExtendedPoisson& h) {
  McResiduals r;
  r.r_pipi = schouten(h.pi, h.pi);
  r.r_pi = dolbeault(h.pi, true) + schouten(h.theta, h.pi);
  r.r_theta = dolbeault(h.theta, true) + schouten(h.omega, h.pi) + schouten(h.theta, h.theta).scaled(kHalf);
  r.r_omega = dolbeault(h.omega, true) + schouten(h.omega, h.theta);
  GradedElement total = h.total();
  r.r_total = dolbeault(total, true) + schouten(total, total).scaled(kHalf);
  r.satisfied = r.r_omega.is_zero() && r.r_theta.is_zero() && r.r_pi.is_zero() && r.r_pipi.is_zero();
  return r;
}

ExtendedPoisson scale_family(const ExtendedPoisson& h, const GaussianRational& lambda) {
  if (lambda.is_zero()) throw std::invalid_argument("scale_family: lambda must be invertible");
  return ExtendedPoisson(h.model, h.pi.scaled(lambda), h.theta, h.omega.scaled(lambda.inverse()));
}

GradedElement twisted_delbar(const ExtendedPoisson& h, const GradedElement& u) {
  if (!u.is_polyvector_A()) throw std::invalid_argument("twisted_delbar: u must be a polyvector of A");
  return dolbeault(u, true) + schouten(h.total(), u);
}

int Rng::uniform(int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(eng);
}

GaussianRational random_scalar(Rng& rng) {
  for (;;) {
    GaussianRational c(rng.uniform(-2, 2), rng.uniform(-2, 2));
    if (!c.is_zero()) return c;
  }
}

CoeffFn random_coeff(Model m, Rng& rng) {
  CoeffFn f(m);
  int nterms = rng.uniform(1, 3);
  for (int t = 0; t < nterms; ++t) {
    CoeffKey key{std::vector<int>(m.dim), std::vector<int>(m.dim)};
    for (int j = 0; j < m.dim; ++j) {
      if (m.kind == ModelKind::Chart) {
        key.a[j] = rng.uniform(0, 2);
        key.b[j] = rng.uniform(0, 2);
      } else {
        key.a[j] = rng.uniform(-2, 2);
        key.b[j] = rng.uniform(-2, 2);
      }
    }
    f += CoeffFn::monomial(m, key, random_scalar(rng));
  }
  return f;
}

namespace {

// Random degree-d monomial in the given species masks, coefficients included.
GradedElement random_in_species(Model m, int degree, Rng& rng, bool polyvector) {
  GradedElement e(m);
  int nterms = rng.uniform(1, 2);
  for (int t = 0; t < nterms; ++t) {
    // Choose `degree` distinct generators among the 2n available.
    std::vector<int> slots(2 * m.dim);
    for (int i = 0; i < 2 * m.dim; ++i) slots[i] = i;
    FrameMono mono;
    int left = degree;
    while (left > 0 && !slots.empty()) {
      int pick = rng.uniform(0, (int)slots.size() - 1);
      int s = slots[pick];
      slots.erase(slots.begin() + pick);
      uint32_t bit = 1u << (s % m.dim);
      if (polyvector) {
        if (s < m.dim)
          mono.P |= bit;
        else
          mono.Qb |= bit;
      } else {
        if (s < m.dim)
          mono.Q |= bit;
        else
          mono.Qb |= bit;
      }
      --left;
    }
    if (left > 0) continue;  // degree exceeds 2n: skip
    e += GradedElement::term(m, mono, random_coeff(m, rng));
  }
  return e;
}

}  // namespace

GradedElement random_polyvector(Model m, int degree, Rng& rng) {
  return random_in_species(m, degree, rng, true);
}

GradedElement random_form(Model m, int degree, Rng& rng) {
  return random_in_species(m, degree, rng, false);
}

ExtendedPoisson random_structure(Model m, Rng& rng) {
  GradedElement pi(m), theta(m), omega(m);
  for (int i = 0; i < m.dim; ++i) {
    for (int j = i + 1; j < m.dim; ++j) {
      FrameMono mp, mo;
      mp.P = (1u << i) | (1u << j);
      mo.Qb = mp.P;
      if (rng.uniform(0, 1)) pi += GradedElement::term(m, mp, random_coeff(m, rng));
      if (rng.uniform(0, 1)) omega += GradedElement::term(m, mo, random_coeff(m, rng));
    }
  }
  for (int p = 0; p < m.dim; ++p) {
    for (int q = 0; q < m.dim; ++q) {
      if (!rng.uniform(0, 1)) continue;
      FrameMono mt;
      mt.P = 1u << p;
      mt.Qb = 1u << q;
      theta += GradedElement::term(m, mt, random_coeff(m, rng));
    }
  }
  return ExtendedPoisson(m, pi, theta, omega);
}

D2Report check_d2(const ExtendedPoisson& h, int trials, uint64_t seed, int max_degree) {
  D2Report report;
  report.mc_satisfied = check_mc(h).satisfied;
  report.worst_residual = GradedElement::zero(h.model);
  const Model m = h.model;

  auto probe = [&](const GradedElement& u) {
    if (u.is_zero()) return;
    GradedElement r = twisted_delbar(h, twisted_delbar(h, u));
    ++report.cases_run;
    if (r.term_count() > report.max_residual_terms) {
      report.max_residual_terms = r.term_count();
      report.worst_residual = r;
    }
  };

  // Deterministic sweep: low-degree coefficient functions alone and attached
  // to each frame generator of A.
  std::vector<CoeffFn> fns;
  fns.push_back(CoeffFn::constant(m, GaussianRational::one()));
  for (int j = 0; j < m.dim; ++j) {
    if (m.kind == ModelKind::Chart) {
      fns.push_back(CoeffFn::coordinate(m, j, false));
      fns.push_back(CoeffFn::coordinate(m, j, true));
      fns.push_back(CoeffFn::coordinate(m, j, false) * CoeffFn::coordinate(m, j, true));
    } else {
      std::vector<int> k(m.dim, 0), l(m.dim, 0);
      k[j] = 1;
      fns.push_back(CoeffFn::character(m, k, l));
      k[j] = -1;
      fns.push_back(CoeffFn::character(m, k, l));
      k[j] = 0;
      l[j] = 1;
      fns.push_back(CoeffFn::character(m, k, l));
    }
  }
  for (const CoeffFn& f : fns) {
    probe(GradedElement::scalar(m, f));
    for (int j = 0; j < m.dim; ++j) {
      probe(GradedElement::generator(m, Gen::Dz, j).mul_fn(f));
      probe(GradedElement::generator(m, Gen::Fdzb, j).mul_fn(f));
    }
  }

  Rng rng(seed);
  for (int d = 0; d <= max_degree && d <= 2 * m.dim; ++d)
    for (int t = 0; t < trials; ++t) probe(random_polyvector(m, d, rng));

  report.residual_zero = report.max_residual_terms == 0;
  return report;
}

}  // namespace epc
