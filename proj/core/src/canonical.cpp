#include "bracketflow/canonical.hpp"

#include <Eigen/Cholesky>

#include "bracketflow/membership.hpp"

namespace bracketflow {

CanonicalizeResult canonicalize_reductive(const LieBracket& mu) {
  const auto& dec = mu.dec();
  const int q = dec.q;
  const int n = dec.n;
  const int d = dec.dim();

  const auto report = check_membership(mu);
  require(report.k_subalgebra && report.k_action_on_p, "canonicalize_reductive: needs h1");

  if (q == 0) return {mu, LinearMap::identity(dec)};

  const Eigen::MatrixXd B = killing_form(mu);
  const Eigen::MatrixXd Bkk = B.topLeftCorner(q, q);
  Eigen::LLT<Eigen::MatrixXd> llt(-Bkk);
  require(llt.info() == Eigen::Success,
          "canonicalize_reductive: Killing form not negative definite on k");

  const Eigen::MatrixXd Bkp = B.topRightCorner(q, n);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(d, d);
  if (Bkp.cwiseAbs().maxCoeff() > 0.0)
    h.topRightCorner(q, n) = -llt.solve(Bkp);  // S = Bkk^{-1} Bkp

  const LinearMap map{dec, h};
  return {group_action(map, mu), map};
}

}  // namespace bracketflow
