#pragma once

#include <string>
#include <vector>

#include "epc/linalg.hpp"
#include "epc/spinor.hpp"

namespace epc {

enum class ComplexKind { LP, KB };

struct BasisElem {
  FrameMono mono;
  CoeffKey freq;
};

/*
 * Finite Fourier truncation of the Lichnerowicz-Poisson complex
 * (Gamma(Lambda^k A), delbar + [H,.]) or the Koszul-Brylinski complex
 * ((+)_{i-j=n-k} Omega^{i,j}, delbar + [del, iota_H]) on a torus.  Basis
 * elements are (monomial, character) pairs with all frequencies bounded by
 * the cutoff, ordered character-major so each mode occupies a contiguous
 * index range.  diffs[k] maps degree k to degree k+1 for k = 0..2n.
 *
 * Constant-coefficient H never shifts frequencies, so the truncation is an
 * honest subcomplex (mode_diagonal) and all ranks are exact.  Otherwise
 * columns whose image leaves the cutoff are flagged and only the in-range
 * part is recorded; results are heuristic.
 */
struct SpectralComplex {
  Model model;
  ComplexKind kind = ComplexKind::LP;
  int cutoff = 0;
  bool mode_diagonal = false;
  std::vector<std::vector<FrameMono>> monos;  // per degree
  std::vector<CoeffKey> freqs;                // shared mode list
  std::vector<std::vector<BasisElem>> spaces;
  std::vector<SparseQ> diffs;
  std::vector<int> flagged;  // per degree: columns with out-of-range image
};

SpectralComplex assemble(const ExtendedPoisson& h, ComplexKind kind, int cutoff);

// Ranks of the differentials and homology dimensions per degree.
std::vector<int> differential_ranks(const SpectralComplex& c);
std::vector<int> homology_dims(const SpectralComplex& c);

struct HomologyReport {
  ComplexKind kind = ComplexKind::LP;
  int cutoff = 0;
  bool exact = false;
  std::vector<int> dims;
  std::vector<int> space_dims;
  std::vector<int> flagged;
  std::vector<int> dims_next;  // heuristic mode: recomputed at cutoff+1
  bool stabilized = false;     // heuristic mode: dims == dims_next
};

HomologyReport homology_report(const ExtendedPoisson& h, ComplexKind kind, int cutoff);

struct PairingReport {
  int degree = 0;
  int dim_k = 0;
  int dim_dual = 0;
  QMatrix matrix;
  int rank = 0;
  bool nondegenerate = false;
};

// ELW duality pairing on KB homology: harmonic representatives of H_k and
// H_{2n-k} paired by the torus integral of the top component of the wedge.
PairingReport pairing_matrix(const ExtendedPoisson& h, int degree, int cutoff);
PairingReport pairing_from(const SpectralComplex& kb, int degree);

struct DualityRow {
  std::string label;
  int lhs = 0, rhs = 0;
  bool pass = false;
};

struct DualityReport {
  int cutoff = 0;
  std::vector<int> kb_dims;
  std::vector<int> lp_dims;
  std::vector<int> pairing_ranks;
  bool unimodular = false;
  bool elliptic = false;
  std::vector<DualityRow> rows;
  bool all_pass = false;
};

// Tabulates dim H_k vs dim H_{2n-k}, pairing nondegeneracy (asserted only in
// the elliptic case), and KB-vs-LP dimensions when the structure is
// unimodular for omega0 = dz_1 ^ ... ^ dz_n.
DualityReport duality_report(const ExtendedPoisson& h, int cutoff);

}  // namespace epc
