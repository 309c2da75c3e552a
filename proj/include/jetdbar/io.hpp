#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "jetdbar/grid.hpp"
#include "jetdbar/multiindex.hpp"

namespace jetdbar {

/// Space file: {"n": 1, "M": [2], "ideal": ["t1^2", ...]}. kappa is the
/// length of M; the ideal defaults to <tau^(M+1)>.
struct SpaceConfig {
  SpaceShape shape;
  std::vector<MultiIndex> ideal;
  MonomialIdeal monomial_ideal() const;
  nlohmann::json to_json() const;
};
SpaceConfig space_from_json(const nlohmann::json& j);

/// Form file: {"dzb1": "<jet expression>", "dzb1^dzb2": "..."}. All keys must
/// name components of the same degree.
FormExpr form_from_json(const nlohmann::json& j, const SpaceShape& shape);
std::string component_tag(const std::vector<int>& component);

/// Values of a grid form on its valid points.
nlohmann::json grid_form_to_json(const GridJetForm& f);

nlohmann::json read_json_file(const std::string& path);
/// Comma-separated list of p values; "inf" for the sup norm.
std::vector<double> parse_p_list(const std::string& text);
std::string p_label(double p);

}  // namespace jetdbar
