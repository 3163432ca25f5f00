#include "epc/coeff.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace epc {

namespace {

long q_to_long(const mpq_class& q, const char* what) {
  if (q.get_den() != 1) throw std::invalid_argument(std::string(what) + ": not an integer");
  if (!q.get_num().fits_slong_p()) throw std::invalid_argument(std::string(what) + ": out of range");
  return q.get_num().get_si();
}

void check_same_model(const Model& a, const Model& b) {
  if (!(a == b)) throw std::invalid_argument("CoeffFn model mismatch");
}

}  // namespace

CoeffFn CoeffFn::constant(Model m, const GaussianRational& c) {
  CoeffFn f(m);
  CoeffKey key{std::vector<int>(m.dim, 0), std::vector<int>(m.dim, 0)};
  f.add_term(key, c);
  return f;
}

CoeffFn CoeffFn::monomial(Model m, CoeffKey key, const GaussianRational& c) {
  if ((int)key.a.size() != m.dim || (int)key.b.size() != m.dim)
    throw std::invalid_argument("CoeffFn key arity mismatch");
  if (m.kind == ModelKind::Chart) {
    for (int e : key.a)
      if (e < 0) throw std::invalid_argument("negative chart exponent");
    for (int e : key.b)
      if (e < 0) throw std::invalid_argument("negative chart exponent");
  }
  CoeffFn f(m);
  f.add_term(key, c);
  return f;
}

CoeffFn CoeffFn::coordinate(Model m, int j, bool bar) {
  if (m.kind != ModelKind::Chart) throw std::invalid_argument("coordinate functions are chart-only");
  if (j < 0 || j >= m.dim) throw std::invalid_argument("coordinate index out of range");
  CoeffKey key{std::vector<int>(m.dim, 0), std::vector<int>(m.dim, 0)};
  (bar ? key.b : key.a)[j] = 1;
  return monomial(m, key, GaussianRational::one());
}

CoeffFn CoeffFn::character(Model m, std::vector<int> k, std::vector<int> l) {
  if (m.kind != ModelKind::Torus) throw std::invalid_argument("characters are torus-only");
  if ((int)k.size() != m.dim || (int)l.size() != m.dim)
    throw std::invalid_argument("character frequency arity mismatch");
  return monomial(m, CoeffKey{std::move(k), std::move(l)}, GaussianRational::one());
}

void CoeffFn::add_term(const CoeffKey& key, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool CoeffFn::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const CoeffKey& key = terms_.begin()->first;
  for (int e : key.a)
    if (e != 0) return false;
  for (int e : key.b)
    if (e != 0) return false;
  return true;
}

GaussianRational CoeffFn::constant_part() const {
  CoeffKey key{std::vector<int>(model_.dim, 0), std::vector<int>(model_.dim, 0)};
  auto it = terms_.find(key);
  return it == terms_.end() ? GaussianRational::zero() : it->second;
}

CoeffFn CoeffFn::operator-() const {
  CoeffFn r(model_);
  for (const auto& [key, c] : terms_) r.terms_.emplace(key, -c);
  return r;
}

CoeffFn& CoeffFn::operator+=(const CoeffFn& o) {
  if (terms_.empty() && o.terms_.empty()) return *this;  // zero is model-agnostic
  if (terms_.empty()) model_ = o.model_;
  if (!o.terms_.empty()) check_same_model(model_, o.model_);
  for (const auto& [key, c] : o.terms_) add_term(key, c);
  return *this;
}

CoeffFn& CoeffFn::operator-=(const CoeffFn& o) { return *this += -o; }

CoeffFn operator*(const CoeffFn& x, const CoeffFn& y) {
  if (x.terms_.empty() || y.terms_.empty()) return CoeffFn(x.terms_.empty() ? y.model_ : x.model_);
  check_same_model(x.model_, y.model_);
  const int n = x.model_.dim;
  CoeffFn r(x.model_);
  for (const auto& [ka, ca] : x.terms_) {
    for (const auto& [kb, cb] : y.terms_) {
      CoeffKey key{std::vector<int>(n), std::vector<int>(n)};
      for (int j = 0; j < n; ++j) {
        key.a[j] = ka.a[j] + kb.a[j];
        key.b[j] = ka.b[j] + kb.b[j];
      }
      r.add_term(key, ca * cb);
    }
  }
  return r;
}

CoeffFn CoeffFn::scaled(const GaussianRational& c) const {
  CoeffFn r(model_);
  if (c.is_zero()) return r;
  for (const auto& [key, v] : terms_) r.terms_.emplace(key, v * c);
  return r;
}

CoeffFn CoeffFn::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power");
  CoeffFn r = constant(model_, GaussianRational::one());
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

CoeffFn CoeffFn::conjugate() const {
  CoeffFn r(model_);
  for (const auto& [key, c] : terms_) {
    CoeffKey ck;
    if (model_.kind == ModelKind::Chart) {
      ck = CoeffKey{key.b, key.a};  // conj(z^a zb^b) = z^b zb^a
    } else {
      ck.a.resize(key.a.size());
      ck.b.resize(key.b.size());
      for (size_t j = 0; j < key.a.size(); ++j) ck.a[j] = -key.a[j];
      for (size_t j = 0; j < key.b.size(); ++j) ck.b[j] = -key.b[j];
    }
    r.add_term(ck, c.conj());
  }
  return r;
}

CoeffFn CoeffFn::wirtinger(int j, bool bar) const {
  if (j < 0 || j >= model_.dim) throw std::invalid_argument("wirtinger index out of range");
  CoeffFn r(model_);
  for (const auto& [key, c] : terms_) {
    if (model_.kind == ModelKind::Chart) {
      const std::vector<int>& exps = bar ? key.b : key.a;
      if (exps[j] == 0) continue;
      CoeffKey dk = key;
      (bar ? dk.b : dk.a)[j] -= 1;
      r.add_term(dk, c * GaussianRational(exps[j]));
    } else {
      // d/dz e[k;l] = (i k + l) e, d/dzb e[k;l] = (i k - l) e (pi dropped).
      GaussianRational factor(bar ? -key.b[j] : key.b[j], key.a[j]);
      r.add_term(key, c * factor);
    }
  }
  return r;
}

std::complex<double> CoeffFn::evaluate(const SamplePoint& p) const {
  const int n = model_.dim;
  if ((int)p.coords.size() != 2 * n) throw std::invalid_argument("sample point arity mismatch");
  std::complex<double> total = 0.0;
  for (const auto& [key, c] : terms_) {
    std::complex<double> v = c.to_complex();
    if (model_.kind == ModelKind::Chart) {
      for (int j = 0; j < n; ++j) {
        std::complex<double> z(p.coords[2 * j], p.coords[2 * j + 1]);
        for (int e = 0; e < key.a[j]; ++e) v *= z;
        std::complex<double> zb = std::conj(z);
        for (int e = 0; e < key.b[j]; ++e) v *= zb;
      }
    } else {
      double phase = 0.0;
      for (int j = 0; j < n; ++j)
        phase += key.a[j] * p.coords[2 * j] + key.b[j] * p.coords[2 * j + 1];
      v *= std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi * phase));
    }
    total += v;
  }
  return total;
}

GaussianRational CoeffFn::integrate_torus() const {
  if (model_.kind != ModelKind::Torus) throw std::invalid_argument("integrate_torus on chart model");
  return constant_part();
}

CoeffFn CoeffFn::remap(Model target, const std::vector<int>& index_map) const {
  if (target.kind != model_.kind) throw std::invalid_argument("remap across model kinds");
  if ((int)index_map.size() != model_.dim) throw std::invalid_argument("remap arity mismatch");
  CoeffFn r(target);
  for (const auto& [key, c] : terms_) {
    CoeffKey nk{std::vector<int>(target.dim, 0), std::vector<int>(target.dim, 0)};
    for (int j = 0; j < model_.dim; ++j) {
      int t = index_map[j];
      if (t < 0 || t >= target.dim) throw std::invalid_argument("remap index out of range");
      nk.a[t] = key.a[j];
      nk.b[t] = key.b[j];
    }
    r.add_term(nk, c);
  }
  return r;
}

CoeffFn CoeffFn::substitute_affine(Model sub,
                                   const std::vector<std::vector<GaussianRational>>& cols,
                                   const std::vector<GaussianRational>& base) const {
  if (model_.kind != ModelKind::Chart || sub.kind != ModelKind::Chart)
    throw std::invalid_argument("substitute_affine is chart-only");
  const int n = model_.dim, m = sub.dim;
  if ((int)cols.size() != m || (int)base.size() != n)
    throw std::invalid_argument("substitution shape mismatch");
  // Affine images of each ambient coordinate and its conjugate.
  std::vector<CoeffFn> zi(n), zbi(n);
  for (int i = 0; i < n; ++i) {
    CoeffFn f = CoeffFn::constant(sub, base[i]);
    for (int a = 0; a < m; ++a)
      f += CoeffFn::coordinate(sub, a, false).scaled(cols[a][i]);
    zi[i] = f;
    zbi[i] = f.conjugate();
  }
  CoeffFn r(sub);
  for (const auto& [key, c] : terms_) {
    CoeffFn term = CoeffFn::constant(sub, c);
    for (int i = 0; i < n; ++i) {
      if (key.a[i]) term = term * zi[i].pow(key.a[i]);
      if (key.b[i]) term = term * zbi[i].pow(key.b[i]);
    }
    r += term;
  }
  return r;
}

CoeffFn CoeffFn::push_torus(Model sub, const std::vector<std::vector<GaussianRational>>& cols) const {
  if (model_.kind != ModelKind::Torus || sub.kind != ModelKind::Torus)
    throw std::invalid_argument("push_torus is torus-only");
  const int n = model_.dim, m = sub.dim;
  if ((int)cols.size() != m) throw std::invalid_argument("substitution shape mismatch");
  // Columns must be Gaussian integers for the map to respect the lattice.
  std::vector<std::vector<long>> U(m, std::vector<long>(n)), W(m, std::vector<long>(n));
  for (int a = 0; a < m; ++a) {
    if ((int)cols[a].size() != n) throw std::invalid_argument("substitution shape mismatch");
    for (int i = 0; i < n; ++i) {
      U[a][i] = q_to_long(cols[a][i].re, "torus direction");
      W[a][i] = q_to_long(cols[a][i].im, "torus direction");
    }
  }
  CoeffFn r(sub);
  for (const auto& [key, c] : terms_) {
    // z = W t with t = a + ib gives k'.a + l'.b with
    // k'_a = sum_i k_i Re W_ia + l_i Im W_ia, l'_a = sum_i -k_i Im W_ia + l_i Re W_ia.
    CoeffKey nk{std::vector<int>(m, 0), std::vector<int>(m, 0)};
    for (int a = 0; a < m; ++a) {
      long kk = 0, ll = 0;
      for (int i = 0; i < n; ++i) {
        kk += key.a[i] * U[a][i] + key.b[i] * W[a][i];
        ll += -key.a[i] * W[a][i] + key.b[i] * U[a][i];
      }
      nk.a[a] = (int)kk;
      nk.b[a] = (int)ll;
    }
    r.add_term(nk, c);
  }
  return r;
}

std::string scalar_str(const GaussianRational& c) {
  if (c.im == 0) return rational_str(c.re);
  if (c.re == 0) return rational_str(c.im) + "i";
  std::string im = c.im > 0 ? "+" + rational_str(c.im) : rational_str(c.im);
  return "(" + rational_str(c.re) + im + "i)";
}

std::string CoeffFn::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    std::string mono;
    if (model_.kind == ModelKind::Chart) {
      for (int j = 0; j < model_.dim; ++j) {
        if (key.a[j] > 0) {
          mono += (mono.empty() ? "" : "*") + std::string("z") + std::to_string(j + 1);
          if (key.a[j] > 1) mono += "^" + std::to_string(key.a[j]);
        }
      }
      for (int j = 0; j < model_.dim; ++j) {
        if (key.b[j] > 0) {
          mono += (mono.empty() ? "" : "*") + std::string("zb") + std::to_string(j + 1);
          if (key.b[j] > 1) mono += "^" + std::to_string(key.b[j]);
        }
      }
    } else {
      bool flat = true;
      for (int v : key.a) flat = flat && v == 0;
      for (int v : key.b) flat = flat && v == 0;
      if (!flat) {
        mono = "e[";
        for (int j = 0; j < model_.dim; ++j) mono += (j ? "," : "") + std::to_string(key.a[j]);
        mono += ";";
        for (int j = 0; j < model_.dim; ++j) mono += (j ? "," : "") + std::to_string(key.b[j]);
        mono += "]";
      }
    }
    if (!first) out << "+";
    first = false;
    if (mono.empty()) {
      out << scalar_str(c);
    } else if (c == GaussianRational::one()) {
      out << mono;
    } else {
      out << scalar_str(c) << "*" << mono;
    }
  }
  return out.str();
}

}  // namespace epc
