#include "epc/api.hpp"

#include <stdexcept>

#include "epc/expr.hpp"
#include "epc/problem.hpp"
#include "epc/spectral.hpp"

namespace epc {

namespace {

using nlohmann::ordered_json;

ordered_json coeff_matrix_json(const CoeffMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : m) {
    ordered_json r = ordered_json::array();
    for (const auto& f : row) r.push_back(f.to_string());
    rows.push_back(std::move(r));
  }
  return rows;
}

ordered_json duality_json(const DualityReport& d) {
  ordered_json out;
  out["unimodular"] = d.unimodular;
  out["elliptic"] = d.elliptic;
  out["kb_dims"] = d.kb_dims;
  out["lp_dims"] = d.lp_dims;
  out["pairing_ranks"] = d.pairing_ranks;
  ordered_json rows = ordered_json::array();
  for (const auto& row : d.rows) {
    ordered_json r;
    r["label"] = row.label;
    r["lhs"] = row.lhs;
    r["rhs"] = row.rhs;
    r["pass"] = row.pass;
    rows.push_back(std::move(r));
  }
  out["rows"] = std::move(rows);
  out["all_pass"] = d.all_pass;
  return out;
}

}  // namespace

ApiResult api_check_mc(const std::string& input, bool verbose) {
  ProblemSpec spec = load_problem(input);
  McResiduals res = check_mc(spec.h);
  ApiResult out;
  out.report["command"] = "check-mc";
  out.report["input"] = input;
  if (verbose) {
    ordered_json structure;
    structure["pi"] = spec.h.pi.to_string();
    structure["theta"] = spec.h.theta.to_string();
    structure["omega"] = spec.h.omega.to_string();
    out.report["structure"] = std::move(structure);
  }
  ordered_json mc;
  ordered_json residuals;
  residuals["r_omega"] = res.r_omega.to_string();
  residuals["r_theta"] = res.r_theta.to_string();
  residuals["r_pi"] = res.r_pi.to_string();
  residuals["r_pipi"] = res.r_pipi.to_string();
  residuals["r_total"] = res.r_total.to_string();
  mc["residuals"] = std::move(residuals);
  mc["satisfied"] = res.satisfied;
  out.report["mc"] = std::move(mc);
  out.exit_code = res.satisfied ? 0 : 1;
  return out;
}

ApiResult api_d2(const std::string& input, int trials, unsigned long seed, int max_degree) {
  ProblemSpec spec = load_problem(input);
  if (trials < 1 || max_degree < 0) throw ProblemError("trials must be >= 1 and max-degree >= 0");
  D2Report rep = check_d2(spec.h, trials, seed, max_degree);
  ApiResult out;
  out.report["command"] = "d2";
  out.report["input"] = input;
  ordered_json d2;
  d2["trials"] = trials;
  d2["seed"] = seed;
  d2["max_degree"] = max_degree;
  d2["mc_satisfied"] = rep.mc_satisfied;
  d2["residual_zero"] = rep.residual_zero;
  d2["cases_run"] = rep.cases_run;
  d2["max_residual_terms"] = rep.max_residual_terms;
  d2["equivalent"] = rep.mc_satisfied == rep.residual_zero;
  if (!rep.residual_zero) d2["worst_residual"] = rep.worst_residual.to_string();
  out.report["d2"] = std::move(d2);
  out.exit_code = rep.residual_zero ? 0 : 1;
  return out;
}

ApiResult api_gc(const std::string& input, int grid) {
  ProblemSpec spec = load_problem(input);
  if (grid < 1) throw ProblemError("grid must be >= 1");
  GcReport rep = gc_criterion(spec.h, default_grid(spec.model, grid));
  ApiResult out;
  out.report["command"] = "gc";
  out.report["input"] = input;
  ordered_json gc;
  gc["exact"] = rep.exact;
  gc["composition"] = coeff_matrix_json(rep.composition);
  if (rep.exact) {
    gc["det"] = scalar_str(rep.det_exact);
  } else {
    ordered_json dets = ordered_json::array();
    for (const auto& d : rep.det_values) dets.push_back(ordered_json::array({d.real(), d.imag()}));
    gc["det_values"] = std::move(dets);
  }
  gc["verdict"] = rep.verdict;
  out.report["gc"] = std::move(gc);
  out.exit_code = rep.verdict ? 0 : 1;
  return out;
}

ApiResult api_ellipticity(const std::string& input, int grid) {
  ProblemSpec spec = load_problem(input);
  if (grid < 1) throw ProblemError("grid must be >= 1");
  std::vector<SamplePoint> points = default_grid(spec.model, grid);
  EllipticReport rep = check_elliptic(spec.h, points);
  ApiResult out;
  out.report["command"] = "ellipticity";
  out.report["input"] = input;
  ordered_json el;
  el["exact"] = rep.exact;
  el["expected_rank"] = rep.expected_rank;
  ordered_json pts = ordered_json::array();
  if (!rep.exact) {
    for (size_t i = 0; i < points.size(); ++i) {
      ordered_json p;
      p["coords"] = points[i].coords;
      p["rank"] = rep.ranks[i];
      p["degenerate"] = rep.ranks[i] < rep.expected_rank;
      pts.push_back(std::move(p));
    }
  }
  el["points"] = std::move(pts);
  if (rep.exact) el["rank"] = rep.ranks.at(0);
  el["verdict"] = rep.verdict;
  el["note"] = rep.note;
  out.report["elliptic"] = std::move(el);
  out.exit_code = rep.verdict ? 0 : 1;
  return out;
}

ApiResult api_homology(const std::string& input, const std::string& complex_kind, int cutoff) {
  ProblemSpec spec = load_problem(input);
  ComplexKind kind;
  if (complex_kind == "kb") {
    kind = ComplexKind::KB;
  } else if (complex_kind == "lp") {
    kind = ComplexKind::LP;
  } else {
    throw ProblemError("--complex must be kb or lp");
  }
  HomologyReport rep = homology_report(spec.h, kind, cutoff);
  ApiResult out;
  out.report["command"] = "homology";
  out.report["input"] = input;
  ordered_json hm;
  hm["complex"] = complex_kind;
  hm["cutoff"] = rep.cutoff;
  hm["exact"] = rep.exact;
  hm["dims"] = rep.dims;
  hm["space_dims"] = rep.space_dims;
  hm["flagged"] = rep.flagged;
  if (!rep.exact) {
    hm["dims_next"] = rep.dims_next;
    hm["stabilized"] = rep.stabilized;
  }
  out.report["homology"] = std::move(hm);
  // The duality ledger rides along whenever it is exactly computable.
  if (kind == ComplexKind::KB && rep.exact)
    out.report["duality"] = duality_json(duality_report(spec.h, cutoff));
  out.exit_code = 0;
  return out;
}

ApiResult api_pairing(const std::string& input, int degree, int cutoff) {
  ProblemSpec spec = load_problem(input);
  PairingReport rep = pairing_matrix(spec.h, degree, cutoff);
  ApiResult out;
  out.report["command"] = "pairing";
  out.report["input"] = input;
  ordered_json pr;
  pr["degree"] = rep.degree;
  pr["cutoff"] = cutoff;
  pr["dim"] = rep.dim_k;
  pr["dim_dual"] = rep.dim_dual;
  pr["rank"] = rep.rank;
  pr["nondegenerate"] = rep.nondegenerate;
  out.report["pairing"] = std::move(pr);
  out.exit_code = 0;
  return out;
}

ApiResult api_verify_main1(const std::string& input, int trials, unsigned long seed, int max_degree) {
  ProblemSpec spec = load_problem(input);
  if (trials < 1 || max_degree < 0) throw ProblemError("trials must be >= 1 and max-degree >= 0");
  Main1Report rep = verify_main1(spec.h, trials, seed, max_degree);
  ApiResult out;
  out.report["command"] = "verify-main1";
  out.report["input"] = input;
  ordered_json m1;
  m1["trials"] = trials;
  m1["seed"] = seed;
  m1["max_degree"] = max_degree;
  m1["mc_satisfied"] = rep.mc_satisfied;
  m1["residual_zero"] = rep.residual_zero;
  m1["cases_run"] = rep.cases_run;
  m1["max_residual_terms"] = rep.max_residual_terms;
  if (!rep.residual_zero) m1["worst_residual"] = rep.worst_residual.to_string();
  out.report["main1"] = std::move(m1);
  out.exit_code = rep.mc_satisfied && rep.residual_zero ? 0 : 1;
  return out;
}

ApiResult api_modular(const std::string& input, const std::string& form) {
  ProblemSpec spec = load_problem(input);
  CoeffFn coeff = [&] {
    try {
      return parse_expr(form, spec.model);
    } catch (const ParseError& e) {
      throw ProblemError(std::string("--form: ") + e.what());
    }
  }();
  FrameMono top{0, 0, (1u << spec.model.dim) - 1u, 0};
  GradedElement omega0 = GradedElement::term(spec.model, top, coeff);
  GradedElement res = modular_residual(spec.h, omega0);
  ApiResult out;
  out.report["command"] = "modular";
  out.report["input"] = input;
  ordered_json mod;
  mod["form"] = form;
  mod["residual"] = res.to_string();
  mod["unimodular"] = res.is_zero();
  out.report["modular"] = std::move(mod);
  out.exit_code = res.is_zero() ? 0 : 1;
  return out;
}

ApiResult api_coisotropic(const std::string& input, const std::string& subspace) {
  ProblemSpec spec = load_problem(input);
  LinearSubmanifold y = load_subspace(subspace, spec.model);
  CoisoReport rep = coisotropic_check(spec.h, y);
  SubalgebroidReport sub = subalgebroid_check(spec.h, y);
  ApiResult out;
  out.report["command"] = "coisotropic";
  out.report["input"] = input;
  out.report["subspace"] = subspace;
  ordered_json co;
  co["verdict"] = rep.coisotropic;
  ordered_json residuals = ordered_json::array();
  for (const auto& r : rep.residuals) {
    ordered_json e;
    e["u"] = r.u_label;
    e["v"] = r.v_label;
    e["value"] = r.restricted.to_string();
    residuals.push_back(std::move(e));
  }
  co["residuals"] = std::move(residuals);
  ordered_json sj;
  sj["precondition"] = sub.precondition;
  sj["anchor_ok"] = sub.anchor_ok;
  sj["bracket_ok"] = sub.bracket_ok;
  sj["verdict"] = sub.verdict;
  sj["failures"] = sub.failures;
  co["subalgebroid"] = std::move(sj);
  out.report["coisotropic"] = std::move(co);
  out.exit_code = rep.coisotropic ? 0 : 1;
  return out;
}

ApiResult api_poisson_map(const std::string& source, const std::string& target,
                          const std::string& matrix) {
  ProblemSpec h2 = load_problem(source);
  ProblemSpec h1 = load_problem(target);
  LinearHolomorphicMap f = load_map(matrix, h2.model, h1.model);
  PoissonMapReport rep = [&] {
    try {
      return poisson_map_check(h1.h, h2.h, f);
    } catch (const std::invalid_argument& e) {
      throw ProblemError(e.what());
    }
  }();
  ApiResult out;
  out.report["command"] = "poisson-map";
  out.report["source"] = source;
  out.report["target"] = target;
  out.report["matrix"] = matrix;
  ordered_json pm;
  pm["verdict"] = rep.verdict;
  ordered_json residuals;
  residuals["pi"] = coeff_matrix_json(rep.r_pi);
  residuals["omega"] = coeff_matrix_json(rep.r_omega);
  residuals["theta"] = coeff_matrix_json(rep.r_theta);
  pm["residuals"] = std::move(residuals);
  ordered_json graph;
  graph["checked"] = rep.graph_checked;
  graph["verdict"] = rep.graph_verdict;
  graph["agree"] = rep.agree;
  pm["graph"] = std::move(graph);
  out.report["poisson_map"] = std::move(pm);
  out.exit_code = rep.verdict && rep.agree ? 0 : 1;
  return out;
}

}  // namespace epc
