#include "epc/problem.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "epc/expr.hpp"
#include "json.hpp"

namespace epc {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProblemError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Parse with duplicate-key detection; nlohmann would silently keep the last
// occurrence otherwise.
json parse_json(const std::string& text) {
  std::vector<std::set<std::string>> scopes;
  auto cb = [&](int, json::parse_event_t event, json& parsed) {
    if (event == json::parse_event_t::object_start) {
      scopes.emplace_back();
    } else if (event == json::parse_event_t::object_end) {
      scopes.pop_back();
    } else if (event == json::parse_event_t::key) {
      if (!scopes.back().insert(parsed.get<std::string>()).second)
        throw ProblemError("duplicate key \"" + parsed.get<std::string>() + "\"");
    }
    return true;
  };
  try {
    return json::parse(text, cb);
  } catch (const json::exception& e) {
    throw ProblemError(std::string("malformed JSON: ") + e.what());
  }
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      throw ProblemError("unknown field \"" + item.key() + "\" in " + where);
}

std::pair<int, int> parse_index_pair(const std::string& key, int dim, const std::string& table) {
  size_t comma = key.find(',');
  auto bad = [&](const std::string& why) {
    return ProblemError(table + " key \"" + key + "\": " + why);
  };
  if (comma == std::string::npos) throw bad("expected \"i,j\"");
  int i = 0, j = 0;
  try {
    size_t used = 0;
    i = std::stoi(key.substr(0, comma), &used);
    if (used != comma) throw bad("expected \"i,j\"");
    j = std::stoi(key.substr(comma + 1), &used);
    if (used != key.size() - comma - 1) throw bad("expected \"i,j\"");
  } catch (const ProblemError&) {
    throw;
  } catch (const std::exception&) {
    throw bad("expected \"i,j\"");
  }
  if (i < 1 || i > dim || j < 1 || j > dim)
    throw bad("indices out of range 1.." + std::to_string(dim));
  return {i, j};
}

CoeffFn parse_entry(const json& value, Model m, const std::string& where) {
  if (!value.is_string()) throw ProblemError(where + ": expression must be a string");
  try {
    return parse_expr(value.get<std::string>(), m);
  } catch (const ParseError& e) {
    throw ProblemError(where + ": " + e.what());
  }
}

GradedElement load_table(const json& table, Model m, const std::string& name) {
  if (!table.is_object()) throw ProblemError("H." + name + " must be an object");
  GradedElement out = GradedElement::zero(m);
  std::set<std::pair<int, int>> seen;
  for (const auto& item : table.items()) {
    auto [i, j] = parse_index_pair(item.key(), m.dim, "H." + name);
    if (name != "theta" && i >= j)
      throw ProblemError("H." + name + " key \"" + item.key() +
                         "\": indices must satisfy i<j (each pair is stored once, on the "
                         "increasing key)");
    if (!seen.insert({i, j}).second)
      throw ProblemError("H." + name + ": duplicate entry for indices " + item.key());
    CoeffFn f = parse_entry(item.value(), m, "H." + name + "[" + item.key() + "]");
    FrameMono mono{0, 0, 0, 0};
    if (name == "pi") {
      mono.P = (1u << (i - 1)) | (1u << (j - 1));
    } else if (name == "theta") {
      mono.P = 1u << (i - 1);
      mono.Qb = 1u << (j - 1);
    } else {
      mono.Qb = (1u << (i - 1)) | (1u << (j - 1));
    }
    out = out + GradedElement::term(m, mono, f);
  }
  return out;
}

GaussianRational constant_entry(const json& value, Model m, const std::string& where) {
  CoeffFn f = parse_entry(value, m, where);
  if (!f.is_constant()) throw ProblemError(where + ": entry must be a constant");
  return f.constant_part();
}

std::vector<std::vector<GaussianRational>> load_vector_list(const json& arr, Model m, int length,
                                                            const std::string& where) {
  if (!arr.is_array()) throw ProblemError(where + " must be an array");
  std::vector<std::vector<GaussianRational>> out;
  for (size_t r = 0; r < arr.size(); ++r) {
    const json& row = arr[r];
    std::string slot = where + "[" + std::to_string(r) + "]";
    if (!row.is_array() || (int)row.size() != length)
      throw ProblemError(slot + " must be an array of length " + std::to_string(length));
    std::vector<GaussianRational> v;
    for (size_t c = 0; c < row.size(); ++c)
      v.push_back(constant_entry(row[c], m, slot + "[" + std::to_string(c) + "]"));
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<GaussianRational> load_point(const json& arr, Model m, int length, const std::string& where) {
  if (!arr.is_array() || (int)arr.size() != length)
    throw ProblemError(where + " must be an array of length " + std::to_string(length));
  std::vector<GaussianRational> out;
  for (size_t c = 0; c < arr.size(); ++c)
    out.push_back(constant_entry(arr[c], m, where + "[" + std::to_string(c) + "]"));
  return out;
}

}  // namespace

ProblemSpec parse_problem(const std::string& text) {
  json doc = parse_json(text);
  if (!doc.is_object()) throw ProblemError("problem file must be a JSON object");
  reject_unknown(doc, {"manifold", "H", "options"}, "the problem file");
  if (!doc.contains("manifold")) throw ProblemError("missing \"manifold\"");
  const json& mf = doc["manifold"];
  if (!mf.is_object()) throw ProblemError("\"manifold\" must be an object");
  reject_unknown(mf, {"model", "dim"}, "manifold");
  if (!mf.contains("model") || !mf["model"].is_string())
    throw ProblemError("manifold.model must be \"chart\" or \"torus\"");
  std::string kind = mf["model"].get<std::string>();
  Model m{};
  if (kind == "chart") {
    m.kind = ModelKind::Chart;
  } else if (kind == "torus") {
    m.kind = ModelKind::Torus;
  } else {
    throw ProblemError("manifold.model must be \"chart\" or \"torus\"");
  }
  if (!mf.contains("dim") || !mf["dim"].is_number_integer())
    throw ProblemError("manifold.dim must be an integer");
  m.dim = mf["dim"].get<int>();
  if (m.dim < 1 || m.dim > 16) throw ProblemError("manifold.dim must be between 1 and 16");

  GradedElement pi = GradedElement::zero(m), theta = GradedElement::zero(m),
                omega = GradedElement::zero(m);
  if (doc.contains("H")) {
    const json& h = doc["H"];
    if (!h.is_object()) throw ProblemError("\"H\" must be an object");
    reject_unknown(h, {"pi", "theta", "omega"}, "H");
    if (h.contains("pi")) pi = load_table(h["pi"], m, "pi");
    if (h.contains("theta")) theta = load_table(h["theta"], m, "theta");
    if (h.contains("omega")) omega = load_table(h["omega"], m, "omega");
  }
  if (doc.contains("options")) {
    if (!doc["options"].is_object()) throw ProblemError("\"options\" must be an object");
    reject_unknown(doc["options"], {}, "options");
  }
  return ProblemSpec{m, ExtendedPoisson(m, pi, theta, omega)};
}

ProblemSpec load_problem(const std::string& path) {
  try {
    return parse_problem(read_file(path));
  } catch (const ProblemError& e) {
    throw ProblemError(path + ": " + e.what());
  }
}

LinearSubmanifold load_subspace(const std::string& path, Model ambient) {
  try {
    json doc = parse_json(read_file(path));
    if (!doc.is_object()) throw ProblemError("subspace file must be a JSON object");
    reject_unknown(doc, {"basis", "base"}, "the subspace file");
    if (!doc.contains("basis")) throw ProblemError("missing \"basis\"");
    LinearSubmanifold y;
    y.ambient = ambient;
    y.basis = load_vector_list(doc["basis"], ambient, ambient.dim, "basis");
    if (doc.contains("base")) y.base = load_point(doc["base"], ambient, ambient.dim, "base");
    return y;
  } catch (const ProblemError& e) {
    throw ProblemError(path + ": " + e.what());
  }
}

LinearHolomorphicMap load_map(const std::string& path, Model source, Model target) {
  try {
    json doc = parse_json(read_file(path));
    if (!doc.is_object()) throw ProblemError("map file must be a JSON object");
    reject_unknown(doc, {"matrix", "translation"}, "the map file");
    if (!doc.contains("matrix")) throw ProblemError("missing \"matrix\"");
    LinearHolomorphicMap f;
    f.source = source;
    f.target = target;
    f.matrix = load_vector_list(doc["matrix"], source, source.dim, "matrix");
    if ((int)f.matrix.size() != target.dim)
      throw ProblemError("matrix needs " + std::to_string(target.dim) + " rows");
    if (doc.contains("translation"))
      f.translation = load_point(doc["translation"], source, target.dim, "translation");
    return f;
  } catch (const ProblemError& e) {
    throw ProblemError(path + ": " + e.what());
  }
}

}  // namespace epc
