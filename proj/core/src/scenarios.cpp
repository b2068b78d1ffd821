#include "bracketflow/scenarios.hpp"

#include <charconv>
#include <cstdlib>

namespace bracketflow {

LieBracket scenario_nosemi2(double a, double b, double c) {
  // Basis (X1, Y1, Z1, X2, Y2, Z2).
  LieBracket mu{Decomposition{0, 6}};
  mu.set(0, 1, 2, a);   // [X1,Y1] = a Z1
  mu.set(0, 3, 4, b);   // [X1,X2] = b Y2
  mu.set(0, 4, 3, -b);  // [X1,Y2] = -b X2
  mu.set(3, 4, 5, c);   // [X2,Y2] = c Z2
  return mu;
}

LieBracket scenario_dpnop(double a, double b, double c) {
  // Basis (Z | X1, X2, X3) with k = span(Z).
  LieBracket mu{Decomposition{1, 3}};
  mu.set(0, 1, 2, 1.0);  // [Z,X1] = X2
  mu.set(0, 2, 1, -1.0); // [Z,X2] = -X1
  mu.set(1, 2, 3, a);    // [X1,X2] = a X3 + b Z
  mu.set(1, 2, 0, b);
  mu.set(1, 3, 2, -c);   // [X3,X1] = c X2
  mu.set(2, 3, 1, c);    // [X2,X3] = c X1
  return mu;
}

LieBracket scenario_heisenberg() {
  LieBracket mu{Decomposition{0, 3}};
  mu.set(0, 1, 2, 1.0);  // [X1,X2] = X3
  return mu;
}

LieBracket scenario_abelian(int n) {
  require(n >= 1, "scenario_abelian: n must be positive");
  return LieBracket{Decomposition{0, n}};
}

std::vector<std::string> scenario_names() {
  return {"nosemi2", "dpnop", "heisenberg", "abelian"};
}

LieBracket make_scenario(const ScenarioSpec& spec) {
  std::vector<double> p = spec.params;
  auto want = [&](std::size_t count, std::initializer_list<double> defaults) {
    if (p.empty()) p.assign(defaults);
    require(p.size() == count, "scenario '" + spec.name + "': wrong parameter count");
  };
  if (spec.name == "nosemi2") {
    want(3, {1.0, 1.0, 1.0});
    return scenario_nosemi2(p[0], p[1], p[2]);
  }
  if (spec.name == "dpnop") {
    want(3, {1.0, -1.0, 1.0});
    return scenario_dpnop(p[0], p[1], p[2]);
  }
  if (spec.name == "heisenberg") {
    want(0, {});
    return scenario_heisenberg();
  }
  if (spec.name == "abelian") {
    want(1, {3.0});
    const double n = p[0];
    require(n == static_cast<int>(n) && n >= 1, "scenario 'abelian': n must be a positive integer");
    return scenario_abelian(static_cast<int>(n));
  }
  throw validation_error("unknown scenario '" + spec.name + "'");
}

ScenarioSpec parse_scenario(const std::string& text) {
  ScenarioSpec spec;
  const auto colon = text.find(':');
  spec.name = text.substr(0, colon);
  require(!spec.name.empty(), "empty scenario name");
  if (colon == std::string::npos) return spec;

  std::string rest = text.substr(colon + 1);
  require(!rest.empty(), "scenario '" + spec.name + "': empty parameter list");
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    auto comma = rest.find(',', pos);
    if (comma == std::string::npos) comma = rest.size();
    const std::string tok = rest.substr(pos, comma - pos);
    require(!tok.empty(), "scenario '" + spec.name + "': empty parameter");
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    require(end == tok.c_str() + tok.size(), "scenario '" + spec.name + "': bad number '" + tok + "'");
    spec.params.push_back(v);
    pos = comma + 1;
  }
  return spec;
}

}  // namespace bracketflow
