#pragma once

#include <optional>
#include <string>

#include "conerad/map_expr.hpp"
#include "conerad/population.hpp"

namespace conerad {

/// A model parsed from the JSON config. Rank models keep their config so
/// the semiflow commands (dissipativity) can reach the saturation
/// parameter; the homogeneous MapExpr is present whenever s = 0.
struct ParsedModel {
  std::optional<MapExpr> map;
  std::optional<RankConfig> rank;
  std::optional<TwoSexParams> twosex;
  int dim = 0;
};

/// Parses the model config. Schemas (unknown keys rejected):
///   {"model":"linear","matrix":[[...],...]}
///   {"model":"twosex","pf":..,"pm":..,"bf":..,"bm":..}
///   {"model":"rank","n":..,"p":[..],"q":[..],"beta":[[j,k,value],..],"s":..}
///   {"model":"scale","alpha":..,"inner":{..}}
///   {"model":"power","k":..,"inner":{..}}
///   {"model":"compose","outer":{..},"inner":{..}}
///   {"model":"perturb","eps":..,"u":[..],"space":"sup|sum|euclid|bv",
///    "inner":{..}}
/// beta indices are 1-based.
ParsedModel parse_model_json(const std::string& text);
ParsedModel load_model_file(const std::string& path);

/// Comma-separated decimal list, the CLI wire format for vectors.
Point parse_vector(const std::string& text);

}  // namespace conerad
