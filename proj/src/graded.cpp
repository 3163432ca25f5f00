#include "epc/graded.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace epc {

namespace {

int popcount(uint32_t m) { return std::popcount(m); }

void check_same_model(const Model& a, const Model& b) {
  if (!(a == b)) throw std::invalid_argument("GradedElement model mismatch");
}

// Anchor of a degree-1 generator of A acting on a coefficient function:
// a(Dz_i) = d/dz_i, a(dzb_j) = 0.
CoeffFn anchor_on(const GenRef& g, const CoeffFn& f) {
  switch (g.species) {
    case Gen::Dz:
      return f.wirtinger(g.index, false);
    case Gen::Fdzb:
      return CoeffFn::zero(f.model());
    default:
      throw std::invalid_argument("schouten: generator outside A = T^{1,0} (+) Lambda^{0,1}");
  }
}

}  // namespace

int FrameMono::degree() const { return popcount(P) + popcount(Pb) + popcount(Q) + popcount(Qb); }

int merge_inversions(uint32_t a, uint32_t b) {
  int inv = 0;
  uint32_t bb = b;
  while (bb) {
    int y = std::countr_zero(bb);
    bb &= bb - 1;
    inv += popcount((uint32_t)(((uint64_t)a) >> (y + 1)));
  }
  return inv & 1;
}

std::optional<std::pair<int, FrameMono>> wedge_mono(const FrameMono& m1, const FrameMono& m2) {
  if ((m1.P & m2.P) || (m1.Pb & m2.Pb) || (m1.Q & m2.Q) || (m1.Qb & m2.Qb)) return std::nullopt;
  // Koszul sign of sorting [P1 Pb1 Q1 Qb1 P2 Pb2 Q2 Qb2] into canonical order:
  // each block of m2 crosses the later blocks of m1, then merges with its mate.
  int c = 0;
  c += popcount(m2.P) * (popcount(m1.Pb) + popcount(m1.Q) + popcount(m1.Qb));
  c += merge_inversions(m1.P, m2.P);
  c += popcount(m2.Pb) * (popcount(m1.Q) + popcount(m1.Qb));
  c += merge_inversions(m1.Pb, m2.Pb);
  c += popcount(m2.Q) * popcount(m1.Qb);
  c += merge_inversions(m1.Q, m2.Q);
  c += merge_inversions(m1.Qb, m2.Qb);
  FrameMono r{m1.P | m2.P, m1.Pb | m2.Pb, m1.Q | m2.Q, m1.Qb | m2.Qb};
  return std::make_pair((c & 1) ? -1 : 1, r);
}

std::optional<std::pair<int, FrameMono>> contract_mono(const FrameMono& w, const FrameMono& form) {
  if (w.Q || w.Qb) throw std::invalid_argument("contract: left factor must be a polyvector");
  if (form.P || form.Pb) throw std::invalid_argument("contract: right factor must be a form");
  uint32_t A = w.P, B = w.Pb;
  if ((A & form.Q) != A || (B & form.Qb) != B) return std::nullopt;
  uint32_t C = form.Q & ~A, D = form.Qb & ~B;
  // <iota_W xi, X> = <xi, W ^ X> with X = Dz_C ^ Dzb_D; the sign is the Koszul
  // sign of W ^ X = Dz_A ^ Dzb_B ^ Dz_C ^ Dzb_D in canonical order.
  int c = popcount(B) * popcount(C) + merge_inversions(A, C) + merge_inversions(B, D);
  return std::make_pair((c & 1) ? -1 : 1, FrameMono{0, 0, C, D});
}

std::vector<GenRef> mono_generators(const FrameMono& m) {
  std::vector<GenRef> out;
  auto emit = [&out](uint32_t mask, Gen s) {
    while (mask) {
      int i = std::countr_zero(mask);
      mask &= mask - 1;
      out.push_back(GenRef{s, i});
    }
  };
  emit(m.P, Gen::Dz);
  emit(m.Pb, Gen::Dzb);
  emit(m.Q, Gen::Fdz);
  emit(m.Qb, Gen::Fdzb);
  return out;
}

std::string gen_name(Gen species, int index) {
  const char* base = nullptr;
  switch (species) {
    case Gen::Dz: base = "Dz"; break;
    case Gen::Dzb: base = "Dzb"; break;
    case Gen::Fdz: base = "dz"; break;
    case Gen::Fdzb: base = "dzb"; break;
  }
  return std::string(base) + std::to_string(index + 1);
}

GradedElement GradedElement::scalar(Model m, const CoeffFn& f) {
  GradedElement e(m);
  e.add_term(FrameMono{}, f);
  return e;
}

GradedElement GradedElement::term(Model m, const FrameMono& mono, const CoeffFn& f) {
  uint32_t all = mono.P | mono.Pb | mono.Q | mono.Qb;
  if (m.dim < 32 && (all >> m.dim)) throw std::invalid_argument("frame index out of range");
  GradedElement e(m);
  e.add_term(mono, f);
  return e;
}

GradedElement GradedElement::generator(Model m, Gen species, int index) {
  if (index < 0 || index >= m.dim) throw std::invalid_argument("frame index out of range");
  FrameMono mono;
  uint32_t bit = 1u << index;
  switch (species) {
    case Gen::Dz: mono.P = bit; break;
    case Gen::Dzb: mono.Pb = bit; break;
    case Gen::Fdz: mono.Q = bit; break;
    case Gen::Fdzb: mono.Qb = bit; break;
  }
  return term(m, mono, CoeffFn::constant(m, GaussianRational::one()));
}

void GradedElement::add_term(const FrameMono& mono, const CoeffFn& f) {
  if (f.is_zero()) return;
  auto it = terms_.find(mono);
  if (it == terms_.end()) {
    terms_.emplace(mono, f);
  } else {
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool GradedElement::is_homogeneous(int degree) const {
  for (const auto& [m, f] : terms_)
    if (m.degree() != degree) return false;
  return true;
}

bool GradedElement::is_polyvector_A() const {
  for (const auto& [m, f] : terms_)
    if (m.Pb || m.Q) return false;
  return true;
}

bool GradedElement::is_form() const {
  for (const auto& [m, f] : terms_)
    if (m.P || m.Pb) return false;
  return true;
}

bool GradedElement::is_section_Astar() const {
  for (const auto& [m, f] : terms_)
    if (m.P || m.Qb) return false;
  return true;
}

CoeffFn GradedElement::coefficient(const FrameMono& mono) const {
  auto it = terms_.find(mono);
  return it == terms_.end() ? CoeffFn::zero(model_) : it->second;
}

GradedElement GradedElement::graded_part(int degree) const {
  GradedElement r(model_);
  for (const auto& [m, f] : terms_)
    if (m.degree() == degree) r.terms_.emplace(m, f);
  return r;
}

GradedElement GradedElement::species_part(int p, int pb, int q, int qb) const {
  GradedElement r(model_);
  for (const auto& [m, f] : terms_) {
    if ((p >= 0 && popcount(m.P) != p) || (pb >= 0 && popcount(m.Pb) != pb)) continue;
    if ((q >= 0 && popcount(m.Q) != q) || (qb >= 0 && popcount(m.Qb) != qb)) continue;
    r.terms_.emplace(m, f);
  }
  return r;
}

GradedElement GradedElement::operator-() const {
  GradedElement r(model_);
  for (const auto& [m, f] : terms_) r.terms_.emplace(m, -f);
  return r;
}

GradedElement& GradedElement::operator+=(const GradedElement& o) {
  if (terms_.empty()) model_ = o.terms_.empty() ? model_ : o.model_;
  if (!o.terms_.empty() && !terms_.empty()) check_same_model(model_, o.model_);
  for (const auto& [m, f] : o.terms_) add_term(m, f);
  return *this;
}

GradedElement& GradedElement::operator-=(const GradedElement& o) { return *this += -o; }

GradedElement GradedElement::scaled(const GaussianRational& c) const {
  GradedElement r(model_);
  if (c.is_zero()) return r;
  for (const auto& [m, f] : terms_) r.terms_.emplace(m, f.scaled(c));
  return r;
}

GradedElement GradedElement::mul_fn(const CoeffFn& f) const {
  GradedElement r(model_);
  for (const auto& [m, g] : terms_) r.add_term(m, f * g);
  return r;
}

GradedElement GradedElement::conjugate() const {
  GradedElement r(model_);
  for (const auto& [m, f] : terms_) {
    // In-place conjugation gives the word Dzb_P Dz_Pb dzb_Q dz_Qb; restoring
    // canonical order crosses the two tangent blocks and the two form blocks.
    int c = popcount(m.P) * popcount(m.Pb) + popcount(m.Q) * popcount(m.Qb);
    FrameMono cm{m.Pb, m.P, m.Qb, m.Q};
    CoeffFn cf = f.conjugate();
    r.add_term(cm, (c & 1) ? -cf : cf);
  }
  return r;
}

GradedElement wedge(const GradedElement& x, const GradedElement& y) {
  if (x.is_zero() || y.is_zero()) return GradedElement::zero(x.is_zero() ? y.model() : x.model());
  check_same_model(x.model(), y.model());
  GradedElement r(x.model());
  for (const auto& [m1, f1] : x.terms()) {
    for (const auto& [m2, f2] : y.terms()) {
      auto w = wedge_mono(m1, m2);
      if (!w) continue;
      CoeffFn f = f1 * f2;
      r.add_term(w->second, w->first < 0 ? -f : f);
    }
  }
  return r;
}

GradedElement contract(const GradedElement& w, const GradedElement& xi) {
  if (w.is_zero() || xi.is_zero()) return GradedElement::zero(w.is_zero() ? xi.model() : w.model());
  check_same_model(w.model(), xi.model());
  GradedElement r(w.model());
  for (const auto& [mw, fw] : w.terms()) {
    for (const auto& [mx, fx] : xi.terms()) {
      auto c = contract_mono(mw, mx);
      if (!c) continue;
      CoeffFn f = fw * fx;
      r.add_term(c->second, c->first < 0 ? -f : f);
    }
  }
  return r;
}

GradedElement dolbeault(const GradedElement& x, bool bar) {
  GradedElement r(x.model());
  const int n = x.model().dim;
  for (const auto& [m, f] : x.terms()) {
    for (int j = 0; j < n; ++j) {
      CoeffFn df = f.wirtinger(j, bar);
      if (df.is_zero()) continue;
      FrameMono g;
      (bar ? g.Qb : g.Q) = 1u << j;
      auto w = wedge_mono(g, m);
      if (!w) continue;
      r.add_term(w->second, w->first < 0 ? -df : df);
    }
  }
  return r;
}

GradedElement clifford_act(const GradedElement& x, const GradedElement& lambda) {
  if (!lambda.is_form()) throw std::invalid_argument("clifford_act: lambda must be a form");
  if (x.is_zero() || lambda.is_zero())
    return GradedElement::zero(x.is_zero() ? lambda.model() : x.model());
  check_same_model(x.model(), lambda.model());
  GradedElement r(x.model());
  for (const auto& [mx, fx] : x.terms()) {
    FrameMono w{mx.P, mx.Pb, 0, 0};
    FrameMono xi{0, 0, mx.Q, mx.Qb};
    int wdeg = w.degree();
    int presign = ((wdeg * (wdeg - 1) / 2) & 1) ? -1 : 1;
    for (const auto& [ml, fl] : lambda.terms()) {
      auto wf = wedge_mono(xi, ml);
      if (!wf) continue;
      auto ct = contract_mono(w, wf->second);
      if (!ct) continue;
      int sign = presign * wf->first * ct->first;
      CoeffFn f = fx * fl;
      r.add_term(ct->second, sign < 0 ? -f : f);
    }
  }
  return r;
}

CoeffFn metric_E(const GradedElement& x, const GradedElement& y) {
  if (!x.is_homogeneous(1) || !y.is_homogeneous(1))
    throw std::invalid_argument("metric_E: degree-1 sections required");
  Model model = x.is_zero() ? y.model() : x.model();
  if (!x.is_zero() && !y.is_zero()) check_same_model(x.model(), y.model());
  const int n = model.dim;
  CoeffFn out = CoeffFn::zero(model);
  auto comp = [](const GradedElement& e, Gen s, int i) {
    FrameMono m;
    uint32_t bit = 1u << i;
    switch (s) {
      case Gen::Dz: m.P = bit; break;
      case Gen::Dzb: m.Pb = bit; break;
      case Gen::Fdz: m.Q = bit; break;
      case Gen::Fdzb: m.Qb = bit; break;
    }
    return e.coefficient(m);
  };
  for (int i = 0; i < n; ++i) {
    out += comp(x, Gen::Fdz, i) * comp(y, Gen::Dz, i);
    out += comp(x, Gen::Dz, i) * comp(y, Gen::Fdz, i);
    out += comp(x, Gen::Fdzb, i) * comp(y, Gen::Dzb, i);
    out += comp(x, Gen::Dzb, i) * comp(y, Gen::Fdzb, i);
  }
  return out.scaled(GaussianRational::from_fractions(1, 2, 0, 1));
}

namespace {

GradedElement elem_of(const Model& model, const CoeffFn& c, const std::vector<GenRef>& gens) {
  FrameMono m;
  for (const GenRef& g : gens) {
    uint32_t bit = 1u << g.index;
    switch (g.species) {
      case Gen::Dz: m.P |= bit; break;
      case Gen::Dzb: m.Pb |= bit; break;
      case Gen::Fdz: m.Q |= bit; break;
      case Gen::Fdzb: m.Qb |= bit; break;
    }
  }
  return GradedElement::term(model, m, c);
}

std::vector<GenRef> tail(const std::vector<GenRef>& g) {
  return std::vector<GenRef>(g.begin() + 1, g.end());
}

// [c1 G1, c2 G2] by structural recursion on the Leibniz rules; generator
// lists are canonical subsequences, so every wedge below resolves its own
// Koszul sign.
GradedElement schouten_term(const Model& model, const CoeffFn& c1, const std::vector<GenRef>& g1,
                            const CoeffFn& c2, const std::vector<GenRef>& g2) {
  const size_t p = g1.size(), q = g2.size();
  const CoeffFn one = CoeffFn::constant(model, GaussianRational::one());
  if (p == 0 && q == 0) return GradedElement::zero(model);
  if (p == 0) {
    // [f, v] = (-1)^q [v, f]
    GradedElement r = schouten_term(model, c2, g2, c1, g1);
    return (q & 1) ? -r : r;
  }
  if (p == 1) {
    const GenRef g = g1[0];
    if (q == 0) return GradedElement::scalar(model, c1 * anchor_on(g, c2));
    const GenRef h = g2[0];
    const std::vector<GenRef> k = tail(g2);
    // [c1 g, c2 h] = c1 a(g)(c2) h - c2 a(h)(c1) g
    GradedElement d1 = elem_of(model, c1 * anchor_on(g, c2), {h});
    d1 -= elem_of(model, c2 * anchor_on(h, c1), {g});
    GradedElement t1 = wedge(d1, elem_of(model, one, k));
    GradedElement t2 = wedge(elem_of(model, c2, {h}), schouten_term(model, c1, g1, one, k));
    return t1 + t2;
  }
  // [a ^ b, w] = a ^ [b, w] + (-1)^{|b| (|w|-1)} [a, w] ^ b with a = c1 g1[0].
  const GenRef g = g1[0];
  const std::vector<GenRef> rest = tail(g1);
  GradedElement t1 = wedge(elem_of(model, c1, {g}), schouten_term(model, one, rest, c2, g2));
  GradedElement t2 = wedge(schouten_term(model, c1, {g}, c2, g2), elem_of(model, one, rest));
  bool flip = ((p - 1) & 1) && ((q ? q - 1 : 1) & 1);  // (p-1)(q-1) odd; q=0 gives q-1 odd
  return t1 + (flip ? -t2 : t2);
}

}  // namespace

GradedElement schouten(const GradedElement& u, const GradedElement& v) {
  if (!u.is_polyvector_A() || !v.is_polyvector_A())
    throw std::invalid_argument("schouten: operands must be polyvectors of A");
  if (u.is_zero() || v.is_zero()) return GradedElement::zero(u.is_zero() ? v.model() : u.model());
  check_same_model(u.model(), v.model());
  GradedElement r(u.model());
  for (const auto& [m1, f1] : u.terms())
    for (const auto& [m2, f2] : v.terms())
      r += schouten_term(u.model(), f1, mono_generators(m1), f2, mono_generators(m2));
  return r;
}

GradedElement interior_H(const GradedElement& h2, const GradedElement& lambda) {
  if (!h2.is_polyvector_A() || !h2.is_homogeneous(2))
    throw std::invalid_argument("interior_H: H must have degree 2 in the algebroid");
  return -clifford_act(h2, lambda);
}

GradedElement bracket_del_iH(const GradedElement& h2, const GradedElement& lambda) {
  return dolbeault(interior_H(h2, lambda), false) - interior_H(h2, dolbeault(lambda, false));
}

GradedElement remap_element(const GradedElement& x, Model target, const std::vector<int>& index_map) {
  if (target.kind != x.model().kind) throw std::invalid_argument("remap_element: model kind mismatch");
  auto remap_mask = [&](uint32_t mask) {
    uint32_t out = 0;
    int prev = -1;
    for (int j = 0; j < x.model().dim; ++j) {
      if (!(mask >> j & 1u)) continue;
      int t = index_map.at(j);
      if (t <= prev || t >= target.dim)
        throw std::invalid_argument("remap_element: index map must be strictly increasing and in range");
      prev = t;
      out |= 1u << t;
    }
    return out;
  };
  GradedElement r(target);
  for (const auto& [m, f] : x.terms()) {
    FrameMono t{remap_mask(m.P), remap_mask(m.Pb), remap_mask(m.Q), remap_mask(m.Qb)};
    r.add_term(t, f.remap(target, index_map));
  }
  return r;
}

CoeffFn apply_vector_field(const GradedElement& v, const CoeffFn& g) {
  if (!v.is_homogeneous(1)) throw std::invalid_argument("apply_vector_field: degree-1 field required");
  CoeffFn r = CoeffFn::zero(g.model());
  for (const auto& [m, f] : v.terms()) {
    if (m.Q || m.Qb) throw std::invalid_argument("apply_vector_field: form legs are not a vector field");
    for (const GenRef& gen : mono_generators(m))
      r += f * g.wirtinger(gen.index, gen.species == Gen::Dzb);
  }
  return r;
}

CoeffFn pair_sections(const GradedElement& x, const GradedElement& y) {
  if (!x.is_homogeneous(1) || !y.is_homogeneous(1))
    throw std::invalid_argument("pair_sections: degree-1 sections required");
  const Model& m = x.model();
  CoeffFn r = CoeffFn::zero(m);
  auto mono_of = [](Gen s, int j) {
    FrameMono mono;
    uint32_t bit = 1u << j;
    if (s == Gen::Dz) mono.P = bit;
    else if (s == Gen::Dzb) mono.Pb = bit;
    else if (s == Gen::Fdz) mono.Q = bit;
    else mono.Qb = bit;
    return mono;
  };
  for (int j = 0; j < m.dim; ++j) {
    r += x.coefficient(mono_of(Gen::Dz, j)) * y.coefficient(mono_of(Gen::Fdz, j));
    r += x.coefficient(mono_of(Gen::Fdz, j)) * y.coefficient(mono_of(Gen::Dz, j));
    r += x.coefficient(mono_of(Gen::Dzb, j)) * y.coefficient(mono_of(Gen::Fdzb, j));
    r += x.coefficient(mono_of(Gen::Fdzb, j)) * y.coefficient(mono_of(Gen::Dzb, j));
  }
  return r;
}

std::string GradedElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, f] : terms_) {
    std::string mono;
    for (const GenRef& g : mono_generators(m)) {
      if (!mono.empty()) mono += "*";
      mono += gen_name(g.species, g.index);
    }
    if (!first) out << " + ";
    first = false;
    if (mono.empty()) {
      out << f.to_string();
    } else if (f == CoeffFn::constant(model_, GaussianRational::one())) {
      out << mono;
    } else if (f.terms().size() > 1) {
      out << "(" << f.to_string() << ")*" << mono;
    } else {
      out << f.to_string() << "*" << mono;
    }
  }
  return out.str();
}

}  // namespace epc
