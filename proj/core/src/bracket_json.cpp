#include <cmath>
#include <fstream>
#include <set>
#include <tuple>

#include "bracketflow/io.hpp"

namespace bracketflow {

nlohmann::json bracket_to_json(const LieBracket& mu) {
  const auto& dec = mu.dec();
  const int d = dec.dim();
  nlohmann::json terms = nlohmann::json::array();
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const double v = mu.coeff(i, j, k);
        if (v != 0.0) terms.push_back({{"i", i}, {"j", j}, {"k", k}, {"c", v}});
      }
  return {{"q", dec.q}, {"n", dec.n}, {"terms", std::move(terms)}};
}

LieBracket bracket_from_json(const nlohmann::json& j) {
  require(j.is_object(), "bracket json: not an object");
  require(j.contains("q") && j["q"].is_number_integer(), "bracket json: missing integer 'q'");
  require(j.contains("n") && j["n"].is_number_integer(), "bracket json: missing integer 'n'");
  const int q = j["q"].get<int>();
  const int n = j["n"].get<int>();
  require(q >= 0 && n >= 1, "bracket json: need q >= 0 and n >= 1");
  const int d = q + n;

  LieBracket mu{Decomposition{q, n}};
  require(j.contains("terms") && j["terms"].is_array(), "bracket json: missing 'terms' array");
  std::set<std::tuple<int, int, int>> seen;
  for (const auto& term : j["terms"]) {
    require(term.is_object(), "bracket json: term is not an object");
    for (const char* key : {"i", "j", "k"})
      require(term.contains(key) && term[key].is_number_integer(),
              "bracket json: term needs integer 'i', 'j', 'k'");
    require(term.contains("c") && term["c"].is_number(), "bracket json: term needs number 'c'");
    const int i = term["i"].get<int>();
    const int jj = term["j"].get<int>();
    const int k = term["k"].get<int>();
    const double c = term["c"].get<double>();
    require(0 <= i && i < jj && jj < d, "bracket json: term needs 0 <= i < j < dim");
    require(0 <= k && k < d, "bracket json: term target out of range");
    require(std::isfinite(c), "bracket json: term coefficient must be finite");
    require(seen.insert({i, jj, k}).second, "bracket json: duplicate term");
    mu.set(i, jj, k, c);
  }
  return mu;
}

LieBracket read_bracket_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open bracket file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error("malformed JSON in " + path + ": " + e.what());
  }
  return bracket_from_json(j);
}

void write_bracket_file(const std::string& path, const LieBracket& mu) {
  std::ofstream out(path);
  require(out.good(), "cannot open output file: " + path);
  out << bracket_to_json(mu).dump(2) << "\n";
}

}  // namespace bracketflow
