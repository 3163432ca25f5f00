#pragma once

#include <stdexcept>
#include <string>

#include "epc/geomrel.hpp"
#include "epc/mcstruct.hpp"

namespace epc {

// Anything wrong with an input file: unreadable, malformed, schema or
// convention violations.  The message names the offending key.
struct ProblemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProblemSpec {
  Model model;
  ExtendedPoisson h;
};

/*
 * Problem files are JSON:
 *
 *   {
 *     "manifold": {"model": "chart" | "torus", "dim": n},
 *     "H": {
 *       "pi":    {"i,j": expr, ...},   // coefficient of dz_i^dz_j, i < j
 *       "theta": {"p,q": expr, ...},   // coefficient of dz_p^dzb_q
 *       "omega": {"k,l": expr, ...}    // coefficient of dzb_k^dzb_l, k < l
 *     }
 *   }
 *
 * Expressions use the grammar of parse_expr in the declared model.  "H" and
 * its subtables may be omitted (zero structure).  Duplicate JSON keys and
 * unknown fields are rejected.
 */
ProblemSpec parse_problem(const std::string& text);
ProblemSpec load_problem(const std::string& path);

// Subspace files: {"basis": [[entry, ...], ...], "base": [entry, ...]?} with
// constant-expression entries; each inner list is one tangent column of
// length ambient.dim.  "base" is chart-only and optional.
LinearSubmanifold load_subspace(const std::string& path, Model ambient);

// Map files: {"matrix": [[entry, ...], ...], "translation": [entry, ...]?};
// matrix is target.dim rows by source.dim columns.
LinearHolomorphicMap load_map(const std::string& path, Model source, Model target);

}  // namespace epc
