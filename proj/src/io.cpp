#include "jetdbar/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "jetdbar/currents.hpp"
#include "jetdbar/parse.hpp"

namespace jetdbar {

namespace {

std::string mi_key(const MultiIndex& m) {
  std::string s;
  for (int j = 0; j < m.size(); ++j) s += (j ? "," : "") + std::to_string(m[j]);
  return s;
}

MultiIndex tau_exponent(const std::string& text, int kappa) {
  Poly p = parse_poly(text);
  if (p.terms().size() != 1) throw ParseError("ideal generator '" + text + "' is not a monomial", 0);
  const auto& [mono, c] = *p.terms().begin();
  std::vector<int> e(kappa, 0);
  int seen = 0;
  for (int j = 0; j < kappa; ++j) {
    e[j] = mono.exponent(Var{VarKind::Tau, j});
    seen += e[j];
  }
  if (seen != mono.degree()) throw ParseError("ideal generator '" + text + "' involves variables other than t1..tk", 0);
  return MultiIndex(e);
}

}  // namespace

MonomialIdeal SpaceConfig::monomial_ideal() const {
  if (ideal.empty()) return MonomialIdeal::complete_intersection(shape);
  return MonomialIdeal(shape, ideal);
}

nlohmann::json SpaceConfig::to_json() const {
  nlohmann::json j;
  j["n"] = shape.n;
  j["M"] = std::vector<int>(shape.M.entries().begin(), shape.M.entries().end());
  if (!ideal.empty()) j["ideal"] = monomial_ideal().to_string();
  return j;
}

SpaceConfig space_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("space file must be a JSON object", 0);
  if (!j.contains("n") || !j.contains("M")) throw ParseError("space file needs 'n' and 'M'", 0);
  int n = j.at("n").get<int>();
  auto caps = j.at("M").get<std::vector<int>>();
  if (caps.empty()) throw ParseError("'M' must list at least one cap", 0);
  SpaceConfig out;
  out.shape = SpaceShape::with_caps(n, MultiIndex(caps));
  if (j.contains("kappa") && j.at("kappa").get<int>() != out.shape.kappa)
    throw ParseError("'kappa' differs from the length of 'M'", 0);
  if (j.contains("ideal"))
    for (const auto& g : j.at("ideal")) out.ideal.push_back(tau_exponent(g.get<std::string>(), out.shape.kappa));
  return out;
}

std::string component_tag(const std::vector<int>& component) {
  std::string s;
  for (std::size_t k = 0; k < component.size(); ++k) s += (k ? "^dzb" : "dzb") + std::to_string(component[k] + 1);
  return s;
}

FormExpr form_from_json(const nlohmann::json& j, const SpaceShape& shape) {
  if (!j.is_object() || j.empty()) throw ParseError("form file must be a non-empty JSON object", 0);
  FormExpr out;
  int degree = -1;
  std::size_t pos = 0;
  for (const auto& [key, value] : j.items()) {
    FormExpr wedge(1);
    int q = 0;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, '^')) {
      if (part.rfind("dzb", 0) != 0) throw ParseError("unknown component tag '" + key + "'", pos);
      int axis = 0;
      try {
        axis = std::stoi(part.substr(3));
      } catch (const std::exception&) {
        throw ParseError("unknown component tag '" + key + "'", pos);
      }
      if (axis < 1 || axis > shape.n) throw ParseError("component '" + key + "' outside 1..n", pos);
      wedge = wedge * FormExpr::differential(VarKind::ZetaBar, axis - 1);
      ++q;
    }
    if (degree >= 0 && q != degree) throw ParseError("form components of different degrees", pos);
    degree = q;
    if (!value.is_string()) throw ParseError("component '" + key + "' must be a string expression", pos);
    RatFunc c = parse_rational(value.get<std::string>());
    out += FormExpr(c) * wedge;
    ++pos;
  }
  return out;
}

nlohmann::json grid_form_to_json(const GridJetForm& f) {
  const Grid& g = *f.grid;
  nlohmann::json j;
  j["grid"] = {{"n", g.n()}, {"points", g.points()}, {"radius", g.spec().radius}};
  j["degree"] = f.q;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (f.valid.empty() || f.valid[i]) idx.push_back(i);
  j["index"] = idx;
  nlohmann::json jets = nlohmann::json::object();
  for (std::size_t m = 0; m < f.jets.size(); ++m) {
    nlohmann::json comps = nlohmann::json::object();
    for (std::size_t c = 0; c < f.components.size(); ++c) {
      std::vector<double> re, im;
      for (auto i : idx) {
        re.push_back(f.data[m][c][i].real());
        im.push_back(f.data[m][c][i].imag());
      }
      comps[f.q == 0 ? "1" : component_tag(f.components[c])] = {{"re", re}, {"im", im}};
    }
    jets[mi_key(f.jets[m])] = comps;
  }
  j["jets"] = jets;
  return j;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), e.byte);
  }
}

std::vector<double> parse_p_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "inf") {
      out.push_back(kInf);
      continue;
    }
    std::size_t used = 0;
    double p = 0;
    try {
      p = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ParseError("bad p value '" + item + "'", 0);
    out.push_back(p);
  }
  if (out.empty()) throw std::invalid_argument("empty p list");
  return out;
}

std::string p_label(double p) {
  if (std::isinf(p)) return "inf";
  std::ostringstream os;
  os << p;
  return os.str();
}

}  // namespace jetdbar
