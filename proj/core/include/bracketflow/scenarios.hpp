#pragma once

#include <string>
#include <vector>

#include "bracketflow/bracket.hpp"

namespace bracketflow {

// Built-in example families. Every scenario passes check_membership.
//
// nosemi2(a,b,c): q=0, n=6, basis (X1,Y1,Z1,X2,Y2,Z2),
//   nu(X1,Y1)=aZ1, nu(X1,X2)=bY2, nu(X1,Y2)=-bX2, nu(X2,Y2)=cZ2.
// dpnop(a,b,c): q=1, n=3, basis (Z,X1,X2,X3),
//   nu(Z,X1)=X2, nu(Z,X2)=-X1, nu(X1,X2)=aX3+bZ, nu(X3,X1)=cX2, nu(X2,X3)=cX1.
// heisenberg: q=0, n=3, nu(X1,X2)=X3.
// abelian(n): q=0, zero bracket.
LieBracket scenario_nosemi2(double a, double b, double c);
LieBracket scenario_dpnop(double a, double b, double c);
LieBracket scenario_heisenberg();
LieBracket scenario_abelian(int n);

struct ScenarioSpec {
  std::string name;
  std::vector<double> params;
};

std::vector<std::string> scenario_names();

// Defaults: nosemi2 (1,1,1); dpnop (1,-1,1); abelian 3; heisenberg has none.
LieBracket make_scenario(const ScenarioSpec& spec);

// "name" or "name:p1,p2,...".
ScenarioSpec parse_scenario(const std::string& text);

}  // namespace bracketflow
