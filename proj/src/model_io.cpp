#include "conerad/model_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace conerad {

namespace {

using nlohmann::json;

void check_keys(const json& node, const std::set<std::string>& allowed) {
  for (auto it = node.begin(); it != node.end(); ++it)
    if (!allowed.count(it.key()))
      throw std::invalid_argument("model config: unknown key \"" + it.key() +
                                  "\"");
}

double num(const json& node, const char* key) {
  if (!node.contains(key))
    throw std::invalid_argument(std::string("model config: missing key \"") +
                                key + "\"");
  if (!node[key].is_number())
    throw std::invalid_argument(std::string("model config: \"") + key +
                                "\" must be a number");
  return node[key].get<double>();
}

std::vector<double> num_list(const json& node, const char* key) {
  if (!node.contains(key) || !node[key].is_array())
    throw std::invalid_argument(std::string("model config: \"") + key +
                                "\" must be an array");
  std::vector<double> out;
  for (const auto& v : node[key]) {
    if (!v.is_number())
      throw std::invalid_argument(std::string("model config: \"") + key +
                                  "\" entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

ParsedModel parse_node(const json& node);

ParsedModel parse_inner(const json& node, const char* key) {
  if (!node.contains(key) || !node[key].is_object())
    throw std::invalid_argument(std::string("model config: \"") + key +
                                "\" must be a model object");
  return parse_node(node[key]);
}

MapExpr require_map(const ParsedModel& m, const char* where) {
  if (!m.map)
    throw std::invalid_argument(std::string("model config: ") + where +
                                " requires a homogeneous inner model (s = 0)");
  return *m.map;
}

ParsedModel parse_node(const json& node) {
  if (!node.is_object() || !node.contains("model") ||
      !node["model"].is_string())
    throw std::invalid_argument("model config: expected {\"model\": ...}");
  const std::string kind = node["model"].get<std::string>();
  ParsedModel out;

  if (kind == "linear") {
    check_keys(node, {"model", "matrix"});
    if (!node.contains("matrix") || !node["matrix"].is_array() ||
        node["matrix"].empty())
      throw std::invalid_argument("model config: linear needs a matrix");
    const std::size_t n = node["matrix"].size();
    Matrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& row = node["matrix"][i];
      if (!row.is_array() || row.size() != n)
        throw std::invalid_argument("model config: matrix must be square");
      for (std::size_t j = 0; j < n; ++j) a(i, j) = row[j].get<double>();
    }
    out.map = MapExpr::linear(std::move(a));
    out.dim = static_cast<int>(n);
    return out;
  }
  if (kind == "twosex") {
    check_keys(node, {"model", "pf", "pm", "bf", "bm"});
    TwoSexParams par{num(node, "pf"), num(node, "pm"), num(node, "bf"),
                     num(node, "bm")};
    out.map = MapExpr::two_sex(par.pf, par.pm, par.bf, par.bm);
    out.twosex = par;
    out.dim = 2;
    return out;
  }
  if (kind == "rank") {
    check_keys(node, {"model", "n", "p", "q", "beta", "s"});
    RankConfig cfg;
    cfg.n = static_cast<int>(num(node, "n"));
    cfg.q = num_list(node, "q");
    cfg.p = num_list(node, "p");
    cfg.s = node.contains("s") ? num(node, "s") : 0.0;
    if (node.contains("beta")) {
      if (!node["beta"].is_array())
        throw std::invalid_argument("model config: beta must be an array");
      for (const auto& e : node["beta"]) {
        if (!e.is_array() || e.size() != 3)
          throw std::invalid_argument(
              "model config: beta entries are [j, k, value]");
        cfg.beta.push_back({e[0].get<int>(), e[1].get<int>(),
                            e[2].get<double>()});
      }
    }
    out.rank = cfg;
    out.dim = cfg.n;
    if (cfg.s == 0.0) out.map = build_rank_model(cfg).map;
    return out;
  }
  if (kind == "scale") {
    check_keys(node, {"model", "alpha", "inner"});
    ParsedModel inner = parse_inner(node, "inner");
    out.map = MapExpr::scale(num(node, "alpha"), require_map(inner, "scale"));
    out.dim = inner.dim;
    return out;
  }
  if (kind == "power") {
    check_keys(node, {"model", "k", "inner"});
    ParsedModel inner = parse_inner(node, "inner");
    out.map = MapExpr::power(require_map(inner, "power"),
                             static_cast<int>(num(node, "k")));
    out.dim = inner.dim;
    return out;
  }
  if (kind == "compose") {
    check_keys(node, {"model", "outer", "inner"});
    ParsedModel outer = parse_inner(node, "outer");
    ParsedModel inner = parse_inner(node, "inner");
    out.map = MapExpr::compose(require_map(outer, "compose"),
                               require_map(inner, "compose"));
    out.dim = inner.dim;
    return out;
  }
  if (kind == "perturb") {
    check_keys(node, {"model", "eps", "u", "space", "inner"});
    ParsedModel inner = parse_inner(node, "inner");
    Point u = num_list(node, "u");
    const std::string space_name =
        node.contains("space") ? node["space"].get<std::string>() : "sup";
    SpaceSpec space{inner.dim, norm_kind_from_string(space_name)};
    out.map = MapExpr::perturb(require_map(inner, "perturb"),
                               num(node, "eps"), std::move(u), space);
    out.dim = inner.dim;
    return out;
  }
  throw std::invalid_argument("model config: unknown model \"" + kind + "\"");
}

}  // namespace

ParsedModel parse_model_json(const std::string& text) {
  json node;
  try {
    node = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("model config: ") + e.what());
  }
  return parse_node(node);
}

ParsedModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open model file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model_json(ss.str());
}

Point parse_vector(const std::string& text) {
  Point out;
  std::string token;
  std::stringstream ss(text);
  while (std::getline(ss, token, ',')) {
    std::size_t pos = 0;
    double v;
    try {
      v = std::stod(token, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("vector: bad entry \"" + token + "\"");
    }
    while (pos < token.size() && std::isspace(token[pos])) ++pos;
    if (pos != token.size())
      throw std::invalid_argument("vector: bad entry \"" + token + "\"");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("vector: empty");
  return out;
}

}  // namespace conerad
