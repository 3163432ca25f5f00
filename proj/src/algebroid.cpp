#include "epc/algebroid.hpp"

#include <stdexcept>

namespace epc {

namespace {

FrameMono gen_mono(Gen s, int j) {
  FrameMono m;
  uint32_t bit = 1u << j;
  switch (s) {
    case Gen::Dz: m.P = bit; break;
    case Gen::Dzb: m.Pb = bit; break;
    case Gen::Fdz: m.Q = bit; break;
    case Gen::Fdzb: m.Qb = bit; break;
  }
  return m;
}

void require_astar_section(const GradedElement& alpha, const char* who) {
  if (!alpha.is_section_Astar() || !alpha.is_homogeneous(1))
    throw std::invalid_argument(std::string(who) + ": degree-1 section of A* required");
}

// Derivative of g along the twisted anchor of a bare frame generator of A*.
CoeffFn anchor_gen_apply(const ExtendedPoisson& h, const GenRef& gen, const CoeffFn& g) {
  int n = h.model.dim;
  CoeffFn r = CoeffFn::zero(h.model);
  if (gen.species == Gen::Dzb) {
    r += g.wirtinger(gen.index, true);
    for (int p = 0; p < n; ++p) r -= h.theta_tensor(p, gen.index) * g.wirtinger(p, false);
  } else if (gen.species == Gen::Fdz) {
    for (int q = 0; q < n; ++q)
      r += h.pi_tensor(gen.index, q).scaled(GaussianRational(2)) * g.wirtinger(q, false);
  } else {
    throw std::invalid_argument("anchor: generator not in A*");
  }
  return r;
}

// Frame bracket table: [gen_a, gen_b]_H as a section of A*.
GradedElement bracket_gen_table(const ExtendedPoisson& h, const GenRef& a, const GenRef& b) {
  const Model& m = h.model;
  GradedElement r(m);
  CoeffFn val = CoeffFn::zero(m);
  if (a.species == Gen::Dzb && b.species == Gen::Dzb) {
    val = h.omega_tensor(a.index, b.index).scaled(GaussianRational(2));
  } else if (a.species == Gen::Fdz && b.species == Gen::Fdz) {
    val = h.pi_tensor(a.index, b.index).scaled(GaussianRational(2));
  } else if (a.species == Gen::Fdz && b.species == Gen::Dzb) {
    val = h.theta_tensor(a.index, b.index);
  } else if (a.species == Gen::Dzb && b.species == Gen::Fdz) {
    val = -h.theta_tensor(b.index, a.index);
  } else {
    throw std::invalid_argument("bracket_H: generator not in A*");
  }
  // del of the table function, a Lambda^{1,0} section
  for (int k = 0; k < m.dim; ++k) r += GradedElement::term(m, gen_mono(Gen::Fdz, k), val.wirtinger(k, false));
  return r;
}

}  // namespace

CoeffMatrix coeff_matrix(Model m, int rows, int cols) {
  return CoeffMatrix(rows, std::vector<CoeffFn>(cols, CoeffFn::zero(m)));
}

bool coeff_matrix_is_zero(const CoeffMatrix& a) {
  for (const auto& row : a)
    for (const auto& f : row)
      if (!f.is_zero()) return false;
  return true;
}

bool coeff_matrix_is_constant(const CoeffMatrix& a) {
  for (const auto& row : a)
    for (const auto& f : row)
      if (!f.is_constant()) return false;
  return true;
}

HSharpBlocks h_sharp(const ExtendedPoisson& h) {
  int n = h.model.dim;
  HSharpBlocks b{h.model, coeff_matrix(h.model, n, n), coeff_matrix(h.model, n, n),
                 coeff_matrix(h.model, n, n), coeff_matrix(h.model, n, n)};
  for (int i = 0; i < n; ++i)
    for (int p = 0; p < n; ++p) {
      b.theta_flat[p][i] = -h.theta_tensor(p, i);
      b.pi_sharp[p][i] = h.pi_tensor(i, p).scaled(GaussianRational(2));
      b.omega_flat[p][i] = h.omega_tensor(i, p).scaled(GaussianRational(2));
      b.theta_sharp[p][i] = h.theta_tensor(i, p);
    }
  return b;
}

GradedElement apply_h_sharp(const ExtendedPoisson& h, const GradedElement& alpha) {
  require_astar_section(alpha, "apply_h_sharp");
  HSharpBlocks b = h_sharp(h);
  int n = h.model.dim;
  GradedElement r(h.model);
  for (const auto& [mono, f] : alpha.terms()) {
    GenRef gen = mono_generators(mono)[0];
    if (gen.species == Gen::Dzb) {
      for (int p = 0; p < n; ++p) {
        r += GradedElement::term(h.model, gen_mono(Gen::Dz, p), f * b.theta_flat[p][gen.index]);
        r += GradedElement::term(h.model, gen_mono(Gen::Fdzb, p), f * b.omega_flat[p][gen.index]);
      }
    } else {
      for (int q = 0; q < n; ++q) {
        r += GradedElement::term(h.model, gen_mono(Gen::Dz, q), f * b.pi_sharp[q][gen.index]);
        r += GradedElement::term(h.model, gen_mono(Gen::Fdzb, q), f * b.theta_sharp[q][gen.index]);
      }
    }
  }
  return r;
}

GradedElement apply_hbar_sharp(const ExtendedPoisson& h, const GradedElement& x) {
  if (!x.is_polyvector_A() || !x.is_homogeneous(1))
    throw std::invalid_argument("apply_hbar_sharp: degree-1 section of A required");
  return apply_h_sharp(h, x.conjugate()).conjugate();
}

CoeffMatrix hbar_h_composition(const ExtendedPoisson& h) {
  int n = h.model.dim;
  CoeffMatrix comp = coeff_matrix(h.model, 2 * n, 2 * n);
  for (int col = 0; col < 2 * n; ++col) {
    Gen s = col < n ? Gen::Dzb : Gen::Fdz;
    int idx = col < n ? col : col - n;
    GradedElement alpha = GradedElement::generator(h.model, s, idx);
    GradedElement y = apply_hbar_sharp(h, apply_h_sharp(h, alpha));
    for (int i = 0; i < n; ++i) {
      comp[i][col] = y.coefficient(gen_mono(Gen::Dzb, i));
      comp[n + i][col] = y.coefficient(gen_mono(Gen::Fdz, i));
    }
  }
  return comp;
}

GcReport gc_criterion(const ExtendedPoisson& h, const std::vector<SamplePoint>& points) {
  GcReport rep;
  rep.composition = hbar_h_composition(h);
  int d = (int)rep.composition.size();
  if (h.is_constant_coefficient()) {
    rep.exact = true;
    QMatrix m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        m.at(i, j) = rep.composition[i][j].constant_part();
        if (i == j) m.at(i, j) -= GaussianRational::one();
      }
    rep.det_exact = determinant(m);
    rep.verdict = !rep.det_exact.is_zero();
    return rep;
  }
  if (points.empty()) throw std::invalid_argument("gc_criterion: empty sample set");
  rep.verdict = true;
  for (const SamplePoint& p : points) {
    std::vector<std::vector<std::complex<double>>> m(d, std::vector<std::complex<double>>(d));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        m[i][j] = rep.composition[i][j].evaluate(p);
        if (i == j) m[i][j] -= 1.0;
      }
    std::complex<double> det = numeric_det(std::move(m));
    rep.det_values.push_back(det);
    if (std::abs(det) <= 1e-9) rep.verdict = false;
  }
  return rep;
}

GradedElement anchor_H(const ExtendedPoisson& h, const GradedElement& alpha) {
  require_astar_section(alpha, "anchor_H");
  // a_* keeps the T^{0,1} part, a keeps the T^{1,0} part of H# alpha
  return alpha.species_part(0, 1, 0, 0) + apply_h_sharp(h, alpha).species_part(1, 0, 0, 0);
}

GradedElement bracket_H(const ExtendedPoisson& h, const GradedElement& alpha, const GradedElement& beta) {
  require_astar_section(alpha, "bracket_H");
  require_astar_section(beta, "bracket_H");
  GradedElement r(h.model);
  for (const auto& [ma, f] : alpha.terms()) {
    GenRef ga = mono_generators(ma)[0];
    for (const auto& [mb, g] : beta.terms()) {
      GenRef gb = mono_generators(mb)[0];
      r += bracket_gen_table(h, ga, gb).mul_fn(f * g);
      r += GradedElement::term(h.model, mb, f * anchor_gen_apply(h, ga, g));
      r -= GradedElement::term(h.model, ma, g * anchor_gen_apply(h, gb, f));
    }
  }
  return r;
}

GradedElement vector_field_bracket(const GradedElement& x, const GradedElement& y) {
  const Model& m = x.model();
  GradedElement r(m);
  for (int j = 0; j < m.dim; ++j) {
    for (bool bar : {false, true}) {
      FrameMono mono = gen_mono(bar ? Gen::Dzb : Gen::Dz, j);
      CoeffFn c = apply_vector_field(x, y.coefficient(mono)) - apply_vector_field(y, x.coefficient(mono));
      r += GradedElement::term(m, mono, c);
    }
  }
  return r;
}

EllipticityF ellipticity_f(const ExtendedPoisson& h) {
  HSharpBlocks b = h_sharp(h);
  return EllipticityF{h.model, b.theta_flat, b.pi_sharp};
}

std::vector<std::vector<double>> f_real_matrix(const EllipticityF& f, const SamplePoint& p) {
  int n = f.model.dim;
  std::vector<std::vector<double>> m(2 * n, std::vector<double>(4 * n, 0.0));
  for (int q = 0; q < n; ++q) {
    m[2 * q][2 * q] += 1.0;      // Re conj(a_q)
    m[2 * q + 1][2 * q + 1] -= 1.0;  // Im conj(a_q)
    for (int i = 0; i < n; ++i) {
      std::complex<double> t = f.t_block[q][i].evaluate(p);
      std::complex<double> pc = f.p_block[q][i].evaluate(p);
      m[2 * q][2 * i] += t.real();
      m[2 * q][2 * i + 1] -= t.imag();
      m[2 * q + 1][2 * i] += t.imag();
      m[2 * q + 1][2 * i + 1] += t.real();
      m[2 * q][2 * n + 2 * i] += pc.real();
      m[2 * q][2 * n + 2 * i + 1] -= pc.imag();
      m[2 * q + 1][2 * n + 2 * i] += pc.imag();
      m[2 * q + 1][2 * n + 2 * i + 1] += pc.real();
    }
  }
  return m;
}

QMatrix f_real_matrix_exact(const EllipticityF& f) {
  if (!coeff_matrix_is_constant(f.t_block) || !coeff_matrix_is_constant(f.p_block))
    throw std::invalid_argument("f_real_matrix_exact: constant coefficients required");
  int n = f.model.dim;
  QMatrix m(2 * n, 4 * n);
  auto real = [](const mpq_class& q) { return GaussianRational(q, mpq_class(0)); };
  for (int q = 0; q < n; ++q) {
    m.at(2 * q, 2 * q) += GaussianRational::one();
    m.at(2 * q + 1, 2 * q + 1) -= GaussianRational::one();
    for (int i = 0; i < n; ++i) {
      GaussianRational t = f.t_block[q][i].constant_part();
      GaussianRational pc = f.p_block[q][i].constant_part();
      m.at(2 * q, 2 * i) += real(t.re);
      m.at(2 * q, 2 * i + 1) -= real(t.im);
      m.at(2 * q + 1, 2 * i) += real(t.im);
      m.at(2 * q + 1, 2 * i + 1) += real(t.re);
      m.at(2 * q, 2 * n + 2 * i) += real(pc.re);
      m.at(2 * q, 2 * n + 2 * i + 1) -= real(pc.im);
      m.at(2 * q + 1, 2 * n + 2 * i) += real(pc.im);
      m.at(2 * q + 1, 2 * n + 2 * i + 1) += real(pc.re);
    }
  }
  return m;
}

EllipticReport check_elliptic(const ExtendedPoisson& h, const std::vector<SamplePoint>& grid) {
  EllipticReport rep;
  rep.expected_rank = 2 * h.model.dim;
  rep.note =
      "verdict is pointwise surjectivity of the principal part on the sampled set; "
      "degeneracy is reported per point";
  EllipticityF f = ellipticity_f(h);
  if (h.is_constant_coefficient()) {
    rep.exact = true;
    int r = rank(f_real_matrix_exact(f));
    rep.ranks.push_back(r);
    rep.verdict = (r == rep.expected_rank);
    return rep;
  }
  if (grid.empty()) throw std::invalid_argument("check_elliptic: empty grid");
  rep.verdict = true;
  for (size_t i = 0; i < grid.size(); ++i) {
    int r = numeric_rank(f_real_matrix(f, grid[i]));
    rep.ranks.push_back(r);
    if (r < rep.expected_rank) {
      rep.degenerate_points.push_back((int)i);
      rep.verdict = false;
    }
  }
  return rep;
}

std::vector<SamplePoint> default_grid(Model m, int per_dim) {
  if (per_dim < 1) throw std::invalid_argument("default_grid: per_dim must be positive");
  std::vector<SamplePoint> pts;
  int d = 2 * m.dim;
  if (m.kind == ModelKind::Torus) {
    std::vector<int> idx(d, 0);
    while (true) {
      SamplePoint p;
      p.coords.resize(d);
      for (int j = 0; j < d; ++j) p.coords[j] = (double)idx[j] / per_dim;
      pts.push_back(std::move(p));
      int j = 0;
      while (j < d && ++idx[j] == per_dim) idx[j++] = 0;
      if (j == d) break;
    }
    return pts;
  }
  pts.push_back(SamplePoint{std::vector<double>(d, 0.0)});
  for (int j = 0; j < d; ++j)
    for (int g = 1; g < per_dim; ++g) {
      SamplePoint p{std::vector<double>(d, 0.0)};
      p.coords[j] = g;
      pts.push_back(std::move(p));
    }
  pts.push_back(SamplePoint{std::vector<double>(d, 1.0)});
  return pts;
}

}  // namespace epc
