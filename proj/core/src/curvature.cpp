#include "bracketflow/curvature.hpp"

#include <cmath>

#include "curvature_detail.hpp"

namespace bracketflow {

namespace {

// Scale-relative sanity gates for direct callers. Integrators go through
// detail::ricci_operator_raw instead: their stage points drift off the
// admissible variety by design and the step controller handles that.
void check_loose_membership(const LieBracket& mu) {
  const auto& dec = mu.dec();
  const int q = dec.q;
  const int d = dec.dim();
  const double norm = bracket_norm(mu);

  require(jacobi_residual(mu) <= 1e-6 * (1.0 + norm * norm),
          "ricci_operator: Jacobi residual too large");

  double h1 = 0.0;
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const bool bad = dec.in_k(j) ? !dec.in_k(k) : dec.in_k(k);
        if (bad) h1 = std::max(h1, std::abs(mu.coeff(i, j, k)));
      }
  require(h1 <= 1e-6 * (1.0 + norm), "ricci_operator: k is not a reductive factor");

  for (int z = 0; z < q; ++z) {
    const Eigen::MatrixXd adz = mu.ad(z).bottomRightCorner(dec.n, dec.n);
    require((adz + adz.transpose()).cwiseAbs().maxCoeff() <= 1e-6 * (1.0 + norm),
            "ricci_operator: ad k|p is not skew-symmetric");
  }
}

}  // namespace

RicciData ricci_operator(const LieBracket& mu) {
  check_loose_membership(mu);
  return detail::ricci_operator_raw(mu);
}

double scalar_curvature(const LieBracket& mu) { return ricci_operator(mu).scalar; }

RicciData detail::ricci_operator_raw(const LieBracket& mu) {
  const auto& dec = mu.dec();
  const int q = dec.q;
  const int n = dec.n;
  const int d = dec.dim();

  Eigen::MatrixXd m_term(n, n);
  for (int x = q; x < d; ++x)
    for (int y = q; y <= x; ++y) {
      double s1 = 0.0;
      double s2 = 0.0;
      for (int i = q; i < d; ++i)
        for (int j = q; j < d; ++j) {
          s1 += mu.coeff(x, i, j) * mu.coeff(y, i, j);
          s2 += mu.coeff(i, j, x) * mu.coeff(i, j, y);
        }
      const double v = -0.5 * s1 + 0.25 * s2;
      m_term(x - q, y - q) = v;
      m_term(y - q, x - q) = v;
    }

  const Eigen::MatrixXd killing_p = killing_form(mu).bottomRightCorner(n, n);

  Eigen::VectorXd h_vec = Eigen::VectorXd::Zero(n);
  for (int x = q; x < d; ++x) {
    double tr = 0.0;
    for (int j = 0; j < d; ++j) tr += mu.coeff(x, j, j);
    h_vec(x - q) = tr;
  }
  Eigen::VectorXd h_global = Eigen::VectorXd::Zero(d);
  h_global.tail(n) = h_vec;
  const Eigen::MatrixXd ad_h_p = mu.ad(h_global).bottomRightCorner(n, n);

  RicciData data;
  data.m_term = std::move(m_term);
  data.killing_p = killing_p;
  data.mean_curvature = std::move(h_vec);
  data.ric = data.m_term - 0.5 * data.killing_p -
             0.5 * (ad_h_p + ad_h_p.transpose());
  data.scalar = data.ric.trace();
  data.ric_sq_trace = data.ric.squaredNorm();
  return data;
}

}  // namespace bracketflow
