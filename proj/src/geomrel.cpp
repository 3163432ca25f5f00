#include "epc/geomrel.hpp"

#include <stdexcept>

#include "epc/linalg.hpp"

namespace epc {

namespace {

bool same_model(Model a, Model b) { return a.kind == b.kind && a.dim == b.dim; }

bool is_gaussian_integer(const GaussianRational& c) {
  return c.re.get_den() == 1 && c.im.get_den() == 1;
}

void validate_submanifold(const LinearSubmanifold& y) {
  const int n = y.ambient.dim;
  for (const auto& col : y.basis) {
    if ((int)col.size() != n) throw std::invalid_argument("submanifold basis column has wrong length");
  }
  if (!y.base.empty() && (int)y.base.size() != n)
    throw std::invalid_argument("submanifold base point has wrong length");
  if ((int)y.basis.size() > n) throw std::invalid_argument("submanifold basis too large");
  QMatrix m((int)y.basis.size(), n);
  for (int a = 0; a < (int)y.basis.size(); ++a)
    for (int i = 0; i < n; ++i) m.at(a, i) = y.basis[a][i];
  if (rank(m) != (int)y.basis.size())
    throw std::invalid_argument("submanifold basis is linearly dependent");
  if (y.ambient.kind == ModelKind::Torus) {
    for (const auto& col : y.basis)
      for (const auto& c : col)
        if (!is_gaussian_integer(c))
          throw std::invalid_argument("torus submanifold basis must have Gaussian-integer entries");
    for (const auto& c : y.base)
      if (!c.is_zero()) throw std::invalid_argument("torus submanifold cannot be translated");
  }
}

void validate_map(const LinearHolomorphicMap& f) {
  if (f.source.kind != f.target.kind) throw std::invalid_argument("map must stay within one model kind");
  if ((int)f.matrix.size() != f.target.dim) throw std::invalid_argument("map matrix has wrong row count");
  for (const auto& row : f.matrix)
    if ((int)row.size() != f.source.dim) throw std::invalid_argument("map matrix has wrong column count");
  if (!f.translation.empty() && (int)f.translation.size() != f.target.dim)
    throw std::invalid_argument("map translation has wrong length");
  if (f.source.kind == ModelKind::Torus) {
    for (const auto& row : f.matrix)
      for (const auto& c : row)
        if (!is_gaussian_integer(c))
          throw std::invalid_argument("torus map matrix must have Gaussian-integer entries");
    for (const auto& c : f.translation)
      if (!c.is_zero()) throw std::invalid_argument("torus map cannot be translated");
  }
}

// Columns of the annihilator {xi : sum_i xi_i v_i = 0 for every basis column v}.
QMatrix annihilator(const LinearSubmanifold& y) {
  const int n = y.ambient.dim;
  QMatrix m((int)y.basis.size(), n);
  for (int a = 0; a < (int)y.basis.size(); ++a)
    for (int i = 0; i < n; ++i) m.at(a, i) = y.basis[a][i];
  return kernel_basis(m);
}

GradedElement constant_section(Model m, Gen species, const std::vector<GaussianRational>& coeffs) {
  GradedElement out = GradedElement::zero(m);
  for (int i = 0; i < m.dim; ++i) {
    if (coeffs[i].is_zero()) continue;
    out = out + GradedElement::generator(m, species, i).scaled(coeffs[i]);
  }
  return out;
}

}  // namespace

LinearHolomorphicMap identity_map(Model m) {
  LinearHolomorphicMap f{m, m, {}, {}};
  f.matrix.assign(m.dim, std::vector<GaussianRational>(m.dim, GaussianRational(0)));
  for (int i = 0; i < m.dim; ++i) f.matrix[i][i] = GaussianRational(1);
  return f;
}

LinearHolomorphicMap compose(const LinearHolomorphicMap& f, const LinearHolomorphicMap& g) {
  validate_map(f);
  validate_map(g);
  if (!same_model(g.target, f.source)) throw std::invalid_argument("compose: inner models disagree");
  LinearHolomorphicMap out{g.source, f.target, {}, {}};
  out.matrix.assign(f.target.dim, std::vector<GaussianRational>(g.source.dim, GaussianRational(0)));
  for (int i = 0; i < f.target.dim; ++i)
    for (int j = 0; j < g.source.dim; ++j)
      for (int k = 0; k < f.source.dim; ++k) out.matrix[i][j] += f.matrix[i][k] * g.matrix[k][j];
  bool any_shift = !f.translation.empty() || !g.translation.empty();
  if (any_shift) {
    out.translation.assign(f.target.dim, GaussianRational(0));
    for (int i = 0; i < f.target.dim; ++i) {
      if (!f.translation.empty()) out.translation[i] += f.translation[i];
      if (!g.translation.empty())
        for (int k = 0; k < f.source.dim; ++k) out.translation[i] += f.matrix[i][k] * g.translation[k];
    }
  }
  return out;
}

CoeffFn restrict_to(const LinearSubmanifold& y, const CoeffFn& f) {
  Model sub = y.parameter_model();
  if (y.ambient.kind == ModelKind::Torus) return f.push_torus(sub, y.basis);
  std::vector<GaussianRational> base = y.base;
  if (base.empty()) base.assign(y.ambient.dim, GaussianRational(0));
  return f.substitute_affine(sub, y.basis, base);
}

std::vector<KSection> k_spanning_sections(const ExtendedPoisson& h, const LinearSubmanifold& y) {
  validate_submanifold(y);
  if (!same_model(h.model, y.ambient)) throw std::invalid_argument("submanifold lives in a different model");
  std::vector<KSection> out;
  const int n = y.ambient.dim;
  for (int a = 0; a < (int)y.basis.size(); ++a) {
    std::vector<GaussianRational> c(n);
    for (int i = 0; i < n; ++i) c[i] = y.basis[a][i].conj();
    out.push_back({"tbar" + std::to_string(a + 1), constant_section(h.model, Gen::Dzb, c)});
  }
  QMatrix ann = annihilator(y);
  for (int b = 0; b < ann.cols(); ++b) {
    std::vector<GaussianRational> c(n);
    for (int i = 0; i < n; ++i) c[i] = ann.at(i, b);
    out.push_back({"ann" + std::to_string(b + 1), constant_section(h.model, Gen::Fdz, c)});
  }
  return out;
}

CoisoReport coisotropic_check(const ExtendedPoisson& h, const LinearSubmanifold& y) {
  auto sections = k_spanning_sections(h, y);
  CoisoReport report;
  report.coisotropic = true;
  for (size_t a = 0; a < sections.size(); ++a) {
    for (size_t b = a + 1; b < sections.size(); ++b) {
      GradedElement image = apply_h_sharp(h, sections[a].section);
      CoeffFn value = pair_sections(image, sections[b].section);
      CoeffFn restricted = restrict_to(y, value);
      if (!restricted.is_zero()) {
        report.coisotropic = false;
        report.residuals.push_back({sections[a].label, sections[b].label, restricted});
      }
    }
  }
  return report;
}

SubalgebroidReport subalgebroid_check(const ExtendedPoisson& h, const LinearSubmanifold& y) {
  SubalgebroidReport report;
  CoisoReport pre = coisotropic_check(h, y);
  report.precondition = pre.coisotropic;
  if (!report.precondition) {
    report.failures.push_back("coisotropic precondition fails");
    return report;
  }

  auto sections = k_spanning_sections(h, y);
  QMatrix ann = annihilator(y);
  const int n = y.ambient.dim;

  // Membership tests against the spanning data of Y:
  //   T^{1,0}Y components must be killed by every annihilator column,
  //   T^{0,1}Y components by its conjugate, and (T^{1,0})* components must
  //   pair to zero with every basis column of T^{1,0}Y.
  auto dz_in_tangent = [&](const GradedElement& v, const std::string& who) {
    for (int b = 0; b < ann.cols(); ++b) {
      CoeffFn sum = CoeffFn::zero(h.model);
      for (int i = 0; i < n; ++i)
        sum = sum + v.coefficient(FrameMono{1u << i, 0, 0, 0}).scaled(ann.at(i, b));
      if (!restrict_to(y, sum).is_zero())
        report.failures.push_back(who + ": holomorphic part leaves the tangent span");
    }
  };
  auto dzb_in_tangent = [&](const GradedElement& v, const std::string& who) {
    for (int b = 0; b < ann.cols(); ++b) {
      CoeffFn sum = CoeffFn::zero(h.model);
      for (int i = 0; i < n; ++i)
        sum = sum + v.coefficient(FrameMono{0, 1u << i, 0, 0}).scaled(ann.at(i, b).conj());
      if (!restrict_to(y, sum).is_zero())
        report.failures.push_back(who + ": antiholomorphic part leaves the tangent span");
    }
  };
  auto fdz_in_annihilator = [&](const GradedElement& v, const std::string& who) {
    for (size_t a = 0; a < y.basis.size(); ++a) {
      CoeffFn sum = CoeffFn::zero(h.model);
      for (int i = 0; i < n; ++i)
        sum = sum + v.coefficient(FrameMono{0, 0, 1u << i, 0}).scaled(y.basis[a][i]);
      if (!restrict_to(y, sum).is_zero())
        report.failures.push_back(who + ": covector part leaves the annihilator");
    }
  };

  size_t before = report.failures.size();
  for (const auto& ks : sections) {
    GradedElement v = anchor_H(h, ks.section);
    dz_in_tangent(v, "anchor(" + ks.label + ")");
    dzb_in_tangent(v, "anchor(" + ks.label + ")");
  }
  report.anchor_ok = report.failures.size() == before;

  before = report.failures.size();
  for (size_t a = 0; a < sections.size(); ++a) {
    for (size_t b = a + 1; b < sections.size(); ++b) {
      GradedElement br = bracket_H(h, sections[a].section, sections[b].section);
      std::string who = "bracket(" + sections[a].label + ", " + sections[b].label + ")";
      dzb_in_tangent(br, who);
      fdz_in_annihilator(br, who);
    }
  }
  report.bracket_ok = report.failures.size() == before;

  report.verdict = report.precondition && report.anchor_ok && report.bracket_ok;
  return report;
}

ExtendedPoisson dual_structure(const ExtendedPoisson& h) {
  return scale_family(h, GaussianRational(-1));
}

ExtendedPoisson product_structure(const ExtendedPoisson& h1, const ExtendedPoisson& h2) {
  if (h1.model.kind != h2.model.kind) throw std::invalid_argument("product needs one model kind");
  const int n1 = h1.model.dim, n2 = h2.model.dim;
  Model prod{h1.model.kind, n1 + n2};
  std::vector<int> map1(n1), map2(n2);
  for (int j = 0; j < n1; ++j) map1[j] = j;
  for (int j = 0; j < n2; ++j) map2[j] = n1 + j;
  ExtendedPoisson dual2 = dual_structure(h2);
  return ExtendedPoisson(prod,
                         remap_element(h1.pi, prod, map1) + remap_element(dual2.pi, prod, map2),
                         remap_element(h1.theta, prod, map1) + remap_element(dual2.theta, prod, map2),
                         remap_element(h1.omega, prod, map1) + remap_element(dual2.omega, prod, map2));
}

LinearSubmanifold graph_submanifold(const LinearHolomorphicMap& f) {
  validate_map(f);
  const int n1 = f.target.dim, n2 = f.source.dim;
  LinearSubmanifold y;
  y.ambient = Model{f.source.kind, n1 + n2};
  for (int j = 0; j < n2; ++j) {
    std::vector<GaussianRational> col(n1 + n2, GaussianRational(0));
    for (int i = 0; i < n1; ++i) col[i] = f.matrix[i][j];
    col[n1 + j] = GaussianRational(1);
    y.basis.push_back(col);
  }
  if (!f.translation.empty()) {
    y.base.assign(n1 + n2, GaussianRational(0));
    for (int i = 0; i < n1; ++i) y.base[i] = f.translation[i];
  }
  return y;
}

PoissonMapReport poisson_map_check(const ExtendedPoisson& h1, const ExtendedPoisson& h2,
                                   const LinearHolomorphicMap& f) {
  validate_map(f);
  if (!same_model(f.source, h2.model) || !same_model(f.target, h1.model))
    throw std::invalid_argument("map endpoints disagree with the structures");
  const int n1 = f.target.dim, n2 = f.source.dim;

  // Substitute z = A w + t into a target-side coefficient function.
  std::vector<std::vector<GaussianRational>> cols(n2, std::vector<GaussianRational>(n1));
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) cols[j][i] = f.matrix[i][j];
  std::vector<GaussianRational> base = f.translation;
  if (base.empty()) base.assign(n1, GaussianRational(0));
  auto pullback = [&](const CoeffFn& g) {
    if (f.source.kind == ModelKind::Torus) return g.push_torus(f.source, cols);
    return g.substitute_affine(f.source, cols, base);
  };

  PoissonMapReport report;
  report.verdict = true;
  auto note = [&](CoeffMatrix& slot, int rows, int colsn, auto entry) {
    slot.assign(rows, std::vector<CoeffFn>(colsn, CoeffFn::zero(f.source)));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < colsn; ++j) {
        slot[i][j] = entry(i, j);
        if (!slot[i][j].is_zero()) report.verdict = false;
      }
  };

  // f_* pi_2 - pi_1 o f, as functions of the source coordinates.
  note(report.r_pi, n1, n1, [&](int i, int j) {
    CoeffFn sum = CoeffFn::zero(f.source);
    for (int a = 0; a < n2; ++a)
      for (int b = 0; b < n2; ++b)
        sum = sum + h2.pi_tensor(a, b).scaled(f.matrix[i][a] * f.matrix[j][b]);
    return sum - pullback(h1.pi_tensor(i, j));
  });

  // f^* omega_1 - omega_2.
  note(report.r_omega, n2, n2, [&](int a, int b) {
    CoeffFn sum = CoeffFn::zero(f.source);
    for (int k = 0; k < n1; ++k)
      for (int l = 0; l < n1; ++l)
        sum = sum + pullback(h1.omega_tensor(k, l)).scaled(f.matrix[k][a].conj() * f.matrix[l][b].conj());
    return sum - h2.omega_tensor(a, b);
  });

  // A Theta_2 - Theta_1(f) conj(A): both sides send dwbar_b to a holomorphic
  // target vector; equality is f_* o theta_flat_2 = theta_flat_1 o f_*.
  note(report.r_theta, n1, n2, [&](int p, int b) {
    CoeffFn lhs = CoeffFn::zero(f.source);
    for (int a = 0; a < n2; ++a) lhs = lhs + h2.theta_tensor(a, b).scaled(f.matrix[p][a]);
    CoeffFn rhs = CoeffFn::zero(f.source);
    for (int k = 0; k < n1; ++k) rhs = rhs + pullback(h1.theta_tensor(p, k)).scaled(f.matrix[k][b].conj());
    return lhs - rhs;
  });

  report.graph_checked = true;
  ExtendedPoisson prod = product_structure(h1, h2);
  report.graph_verdict = coisotropic_check(prod, graph_submanifold(f)).coisotropic;
  report.agree = report.graph_verdict == report.verdict;
  return report;
}

}  // namespace epc
