#include "epc/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <thread>

namespace epc {

namespace {

int thread_cap() {
  const char* env = std::getenv("EPC_THREADS");
  if (!env) return 1;
  int v = std::atoi(env);
  return v > 0 ? v : 1;
}

template <class F>
void parallel_for(int count, F&& f) {
  int workers = std::min(thread_cap(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < count;) f(i);
    });
  for (auto& th : pool) th.join();
}

std::vector<std::vector<FrameMono>> degree_monos(const Model& m, ComplexKind kind) {
  int n = m.dim;
  uint32_t full = (1u << n) - 1u;
  std::vector<std::vector<FrameMono>> out(2 * n + 1);
  for (uint32_t x = 0; x <= full; ++x)
    for (uint32_t y = 0; y <= full; ++y) {
      if (kind == ComplexKind::LP) {
        int k = std::popcount(x) + std::popcount(y);
        out[k].push_back(FrameMono{x, 0, 0, y});  // Dz_x ^ dzb_y
      } else {
        int k = n - ((int)std::popcount(x) - (int)std::popcount(y));
        if (k < 0 || k > 2 * n) continue;
        out[k].push_back(FrameMono{0, 0, x, y});  // dz_x ^ dzb_y
      }
    }
  for (auto& v : out) std::sort(v.begin(), v.end());
  return out;
}

std::vector<CoeffKey> mode_list(const Model& m, int cutoff) {
  int n = m.dim;
  std::vector<CoeffKey> freqs;
  std::vector<int> v(2 * n, -cutoff);
  while (true) {
    CoeffKey key;
    key.a.assign(v.begin(), v.begin() + n);
    key.b.assign(v.begin() + n, v.end());
    freqs.push_back(std::move(key));
    int j = 0;
    while (j < 2 * n && ++v[j] > cutoff) v[j++] = -cutoff;
    if (j == 2 * n) break;
  }
  std::sort(freqs.begin(), freqs.end());
  return freqs;
}

// Dense block of the sparse differential for one mode, given the contiguous
// character-major layout.
QMatrix mode_block(const SparseQ& d, int mode, int rows_per_mode, int cols_per_mode) {
  QMatrix b(rows_per_mode, cols_per_mode);
  if (cols_per_mode == 0 || rows_per_mode == 0) return b;
  auto lo = d.entries.lower_bound({mode * rows_per_mode, 0});
  auto hi = d.entries.lower_bound({(mode + 1) * rows_per_mode, 0});
  for (auto it = lo; it != hi; ++it) {
    int c = it->first.second - mode * cols_per_mode;
    if (c < 0 || c >= cols_per_mode)
      throw std::logic_error("spectral: entry crosses a mode block in mode-diagonal layout");
    b.at(it->first.first - mode * rows_per_mode, c) = it->second;
  }
  return b;
}

}  // namespace

SpectralComplex assemble(const ExtendedPoisson& h, ComplexKind kind, int cutoff) {
  if (h.model.kind != ModelKind::Torus)
    throw std::invalid_argument("assemble: only the torus admits a finite Fourier truncation");
  if (cutoff < 0) throw std::invalid_argument("assemble: negative cutoff");
  SpectralComplex c;
  c.model = h.model;
  c.kind = kind;
  c.cutoff = cutoff;
  c.mode_diagonal = h.is_constant_coefficient();
  c.monos = degree_monos(h.model, kind);
  c.freqs = mode_list(h.model, cutoff);
  int n = h.model.dim;
  int degs = 2 * n + 1;
  c.spaces.resize(degs);
  c.flagged.assign(degs, 0);
  std::map<CoeffKey, int> freq_index;
  for (size_t i = 0; i < c.freqs.size(); ++i) freq_index[c.freqs[i]] = (int)i;
  std::vector<std::map<FrameMono, int>> mono_index(degs);
  for (int k = 0; k < degs; ++k) {
    for (size_t i = 0; i < c.monos[k].size(); ++i) mono_index[k][c.monos[k][i]] = (int)i;
    c.spaces[k].reserve(c.freqs.size() * c.monos[k].size());
    for (const CoeffKey& f : c.freqs)
      for (const FrameMono& m : c.monos[k]) c.spaces[k].push_back(BasisElem{m, f});
  }
  c.diffs.resize(degs);
  for (int k = 0; k < degs; ++k) {
    int target = k + 1;
    int rows = target < degs ? (int)c.spaces[target].size() : 0;
    c.diffs[k] = SparseQ(rows, (int)c.spaces[k].size());
    if (rows == 0) continue;
    int n_target_monos = (int)c.monos[target].size();
    for (int col = 0; col < (int)c.spaces[k].size(); ++col) {
      const BasisElem& e = c.spaces[k][col];
      GradedElement x = GradedElement::term(
          h.model, e.mono, CoeffFn::character(h.model, e.freq.a, e.freq.b));
      GradedElement y = kind == ComplexKind::LP ? twisted_delbar(h, x) : kb_differential(h, x);
      bool overflow = false;
      for (const auto& [mono, f] : y.terms()) {
        auto mit = mono_index[target].find(mono);
        if (mit == mono_index[target].end())
          throw std::logic_error("spectral: image monomial outside the target degree");
        for (const auto& [key, coeff] : f.terms()) {
          auto fit = freq_index.find(key);
          if (fit == freq_index.end()) {
            overflow = true;
            continue;
          }
          c.diffs[k].add(fit->second * n_target_monos + mit->second, col, coeff);
        }
      }
      if (overflow) ++c.flagged[k];
    }
  }
  if (c.mode_diagonal)
    for (int k = 0; k < degs; ++k)
      if (c.flagged[k] != 0)
        throw std::logic_error("spectral: constant-coefficient assembly flagged a column");
  return c;
}

std::vector<int> differential_ranks(const SpectralComplex& c) {
  int degs = (int)c.spaces.size();
  std::vector<int> ranks(degs, 0);
  for (int k = 0; k + 1 < degs; ++k) {
    if (!c.mode_diagonal) {
      ranks[k] = rank(c.diffs[k].dense());
      continue;
    }
    int rows_per_mode = (int)c.monos[k + 1].size();
    int cols_per_mode = (int)c.monos[k].size();
    int modes = (int)c.freqs.size();
    std::vector<int> per_mode(modes, 0);
    parallel_for(modes, [&](int g) {
      per_mode[g] = rank(mode_block(c.diffs[k], g, rows_per_mode, cols_per_mode));
    });
    for (int r : per_mode) ranks[k] += r;
  }
  return ranks;
}

std::vector<int> homology_dims(const SpectralComplex& c) {
  std::vector<int> ranks = differential_ranks(c);
  int degs = (int)c.spaces.size();
  std::vector<int> dims(degs, 0);
  for (int k = 0; k < degs; ++k) {
    dims[k] = (int)c.spaces[k].size() - ranks[k] - (k > 0 ? ranks[k - 1] : 0);
  }
  return dims;
}

HomologyReport homology_report(const ExtendedPoisson& h, ComplexKind kind, int cutoff) {
  SpectralComplex c = assemble(h, kind, cutoff);
  HomologyReport rep;
  rep.kind = kind;
  rep.cutoff = cutoff;
  rep.exact = c.mode_diagonal;
  rep.dims = homology_dims(c);
  for (const auto& s : c.spaces) rep.space_dims.push_back((int)s.size());
  rep.flagged = c.flagged;
  if (!rep.exact) {
    // heuristic mode: the truncation is not a subcomplex, so recompute one
    // cutoff higher and report whether the dimensions stabilized
    SpectralComplex c2 = assemble(h, kind, cutoff + 1);
    rep.dims_next = homology_dims(c2);
    rep.stabilized = rep.dims == rep.dims_next;
  }
  return rep;
}

namespace {

// Representatives of H_k for one mode: kernel vectors of d_k extending the
// column space of d_{k-1}, found by row-reducing [im | ker].
std::vector<std::vector<GaussianRational>> mode_representatives(const SpectralComplex& c, int k,
                                                                int mode) {
  int degs = (int)c.spaces.size();
  int nm = (int)c.monos[k].size();
  QMatrix dk = k + 1 < degs ? mode_block(c.diffs[k], mode, (int)c.monos[k + 1].size(), nm)
                            : QMatrix(0, nm);
  QMatrix ker = kernel_basis(dk);
  QMatrix im(nm, 0);
  if (k > 0) im = mode_block(c.diffs[k - 1], mode, nm, (int)c.monos[k - 1].size());
  QMatrix combined(nm, im.cols() + ker.cols());
  for (int r = 0; r < nm; ++r) {
    for (int j = 0; j < im.cols(); ++j) combined.at(r, j) = im.at(r, j);
    for (int j = 0; j < ker.cols(); ++j) combined.at(r, im.cols() + j) = ker.at(r, j);
  }
  std::vector<int> pivots = rref(combined);
  std::vector<std::vector<GaussianRational>> reps;
  for (int p : pivots) {
    if (p < im.cols()) continue;
    std::vector<GaussianRational> v(nm);
    for (int r = 0; r < nm; ++r) v[r] = ker.at(r, p - im.cols());
    reps.push_back(std::move(v));
  }
  return reps;
}

GradedElement rep_element(const SpectralComplex& c, int k, int mode,
                          const std::vector<GaussianRational>& v) {
  GradedElement x(c.model);
  CoeffFn chr = CoeffFn::character(c.model, c.freqs[mode].a, c.freqs[mode].b);
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    x += GradedElement::term(c.model, c.monos[k][i], chr.scaled(v[i]));
  }
  return x;
}

CoeffKey negate_key(const CoeffKey& key) {
  CoeffKey out = key;
  for (int& x : out.a) x = -x;
  for (int& x : out.b) x = -x;
  return out;
}

}  // namespace

PairingReport pairing_from(const SpectralComplex& kb, int degree) {
  int n = kb.model.dim;
  if (degree < 0 || degree > 2 * n) throw std::out_of_range("pairing: degree out of [0, 2n]");
  if (kb.kind != ComplexKind::KB) throw std::invalid_argument("pairing: KB complex required");
  if (!kb.mode_diagonal)
    throw std::invalid_argument("pairing: exact (constant-coefficient) mode required");
  int dual = 2 * n - degree;
  int modes = (int)kb.freqs.size();
  std::map<CoeffKey, int> freq_index;
  for (int g = 0; g < modes; ++g) freq_index[kb.freqs[g]] = g;

  std::vector<std::vector<std::vector<GaussianRational>>> reps_k(modes), reps_dual(modes);
  parallel_for(modes, [&](int g) {
    reps_k[g] = mode_representatives(kb, degree, g);
    if (dual == degree)
      reps_dual[g] = reps_k[g];
    else
      reps_dual[g] = mode_representatives(kb, dual, g);
  });

  std::vector<std::pair<int, int>> rows, cols;  // (mode, index within mode)
  for (int g = 0; g < modes; ++g) {
    for (size_t i = 0; i < reps_k[g].size(); ++i) rows.push_back({g, (int)i});
    for (size_t i = 0; i < reps_dual[g].size(); ++i) cols.push_back({g, (int)i});
  }

  PairingReport rep;
  rep.degree = degree;
  rep.dim_k = (int)rows.size();
  rep.dim_dual = (int)cols.size();
  rep.matrix = QMatrix((int)rows.size(), (int)cols.size());
  FrameMono top{0, 0, (1u << n) - 1u, (1u << n) - 1u};
  for (size_t r = 0; r < rows.size(); ++r) {
    int neg = freq_index.at(negate_key(kb.freqs[rows[r].first]));
    GradedElement zeta = rep_element(kb, degree, rows[r].first, reps_k[rows[r].first][rows[r].second]);
    for (size_t cidx = 0; cidx < cols.size(); ++cidx) {
      if (cols[cidx].first != neg) continue;  // the torus integral kills every other mode
      GradedElement eta = rep_element(kb, dual, cols[cidx].first, reps_dual[cols[cidx].first][cols[cidx].second]);
      rep.matrix.at((int)r, (int)cidx) = wedge(zeta, eta).coefficient(top).integrate_torus();
    }
  }
  rep.rank = rank(rep.matrix);
  rep.nondegenerate = rep.rank == rep.dim_k && rep.rank == rep.dim_dual;
  return rep;
}

PairingReport pairing_matrix(const ExtendedPoisson& h, int degree, int cutoff) {
  int n = h.model.dim;
  if (degree < 0 || degree > 2 * n) throw std::out_of_range("pairing: degree out of [0, 2n]");
  return pairing_from(assemble(h, ComplexKind::KB, cutoff), degree);
}

DualityReport duality_report(const ExtendedPoisson& h, int cutoff) {
  DualityReport rep;
  rep.cutoff = cutoff;
  SpectralComplex kb = assemble(h, ComplexKind::KB, cutoff);
  if (!kb.mode_diagonal)
    throw std::invalid_argument("duality_report: exact (constant-coefficient) mode required");
  SpectralComplex lp = assemble(h, ComplexKind::LP, cutoff);
  rep.kb_dims = homology_dims(kb);
  rep.lp_dims = homology_dims(lp);
  rep.unimodular = modular_residual(h, spinor_s(h.model)).is_zero();
  rep.elliptic = check_elliptic(h, default_grid(h.model, 5)).verdict;
  int n = h.model.dim;
  for (int k = 0; k <= 2 * n; ++k) {
    PairingReport p = pairing_from(kb, k);
    rep.pairing_ranks.push_back(p.rank);
    DualityRow dim_row{"dim H_" + std::to_string(k) + " = dim H_" + std::to_string(2 * n - k),
                       rep.kb_dims[k], rep.kb_dims[2 * n - k],
                       rep.kb_dims[k] == rep.kb_dims[2 * n - k]};
    rep.rows.push_back(dim_row);
    if (rep.elliptic) {
      rep.rows.push_back(DualityRow{"pairing rank = dim H_" + std::to_string(k), p.rank,
                                    rep.kb_dims[k], p.rank == rep.kb_dims[k]});
    }
    if (rep.unimodular) {
      rep.rows.push_back(DualityRow{"dim KB H_" + std::to_string(k) + " = dim LP H^" +
                                        std::to_string(2 * n - k),
                                    rep.kb_dims[k], rep.lp_dims[2 * n - k],
                                    rep.kb_dims[k] == rep.lp_dims[2 * n - k]});
    }
  }
  rep.all_pass = true;
  for (const DualityRow& row : rep.rows) rep.all_pass = rep.all_pass && row.pass;
  return rep;
}

}  // namespace epc
