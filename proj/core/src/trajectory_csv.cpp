#include <charconv>
#include <ostream>
#include <string>

#include "bracketflow/curvature.hpp"
#include "bracketflow/io.hpp"

namespace bracketflow {

namespace {

// Shortest representation that parses back to the same double.
std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const FlowTrajectory& trajectory) {
  require(!trajectory.states.empty(), "trajectory csv: empty trajectory");
  const auto& dec = trajectory.states.front().mu.dec();
  const int d = dec.dim();

  os << "t,tau,c,R,ric_norm,mu_norm_k,mu_norm_p,jacobi_residual";
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = 0; k < d; ++k) os << ",c_" << i << "_" << j << "_" << k;
  os << "\n";

  for (const auto& s : trajectory.states) {
    const RicciData ric = ricci_operator(s.mu);
    const BracketNorms norms = bracket_norms(s.mu);
    os << fmt(s.t) << "," << fmt(s.tau) << "," << fmt(s.c) << "," << fmt(ric.scalar) << ","
       << fmt(ric.ric.norm()) << "," << fmt(norms.k_norm()) << "," << fmt(norms.p_norm())
       << "," << fmt(jacobi_residual(s.mu));
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        for (int k = 0; k < d; ++k) os << "," << fmt(s.mu.coeff(i, j, k));
    os << "\n";
  }
}

}  // namespace bracketflow
