#include "bracketflow/membership.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace bracketflow {

MembershipReport check_membership(const LieBracket& mu, double tolerance) {
  const auto& dec = mu.dec();
  const int d = dec.dim();
  MembershipReport rep;
  rep.tolerance = tolerance;
  rep.jacobi_residual = jacobi_residual(mu);

  // (h1) k a subalgebra, and k acts on p.
  for (int i = 0; i < dec.q; ++i)
    for (int j = 0; j < dec.q; ++j)
      for (int k = dec.q; k < d; ++k)
        if (std::abs(mu.coeff(i, j, k)) > tolerance) rep.k_subalgebra = false;
  for (int i = 0; i < dec.q; ++i)
    for (int j = dec.q; j < d; ++j)
      for (int k = 0; k < dec.q; ++k)
        if (std::abs(mu.coeff(i, j, k)) > tolerance) rep.k_action_on_p = false;

  // (h3) each ad Z|_p skew-symmetric.
  for (int z = 0; z < dec.q; ++z) {
    const Eigen::MatrixXd adz = mu.ad(z).bottomRightCorner(dec.n, dec.n);
    if ((adz + adz.transpose()).cwiseAbs().maxCoeff() > tolerance) rep.h3_skew = false;
  }

  // (h4) Z -> ad Z|_p injective: smallest singular value of the stacked map.
  if (dec.q > 0) {
    Eigen::MatrixXd stack(dec.n * dec.n, dec.q);
    for (int z = 0; z < dec.q; ++z) {
      const Eigen::MatrixXd adz = mu.ad(z).bottomRightCorner(dec.n, dec.n);
      stack.col(z) = Eigen::Map<const Eigen::VectorXd>(adz.data(), dec.n * dec.n);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stack);
    const double smin = svd.singularValues()[svd.singularValues().size() - 1];
    if (!(smin > tolerance)) rep.h4_faithful = false;
  }

  return rep;
}

}  // namespace bracketflow
