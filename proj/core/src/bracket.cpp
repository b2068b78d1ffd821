#include "bracketflow/bracket.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace bracketflow {

namespace {

void require_same_shape(const LieBracket& a, const LieBracket& b) {
  require(a.dec() == b.dec(), "brackets live on different decompositions");
}

}  // namespace

double BracketNorms::norm() const { return std::sqrt(norm_sq); }
double BracketNorms::k_norm() const { return std::sqrt(k_sq); }
double BracketNorms::p_norm() const { return std::sqrt(p_sq); }

std::string to_string(TriState s) {
  switch (s) {
    case TriState::yes: return "yes";
    case TriState::no: return "no";
    default: return "unknown";
  }
}

Eigen::VectorXd LieBracket::apply(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  const int d = dim();
  require(x.size() == d && y.size() == d, "LieBracket::apply: dimension mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < d; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < d; ++j) {
      const double w = x[i] * y[j];
      if (w == 0.0) continue;
      for (int k = 0; k < d; ++k) out[k] += w * coeff(i, j, k);
    }
  }
  return out;
}

Eigen::MatrixXd LieBracket::ad(int i) const {
  const int d = dim();
  Eigen::MatrixXd m(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) m(k, j) = coeff(i, j, k);
  return m;
}

Eigen::MatrixXd LieBracket::ad(const Eigen::VectorXd& x) const {
  const int d = dim();
  require(x.size() == d, "LieBracket::ad: dimension mismatch");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i)
    if (x[i] != 0.0) m += x[i] * ad(i);
  return m;
}

double jacobi_residual(const LieBracket& mu) {
  const int d = mu.dim();
  double sq = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k) {
        const Eigen::VectorXd jac =
            mu.apply(Eigen::VectorXd::Unit(d, i), mu.apply_basis(j, k)) +
            mu.apply(Eigen::VectorXd::Unit(d, j), mu.apply_basis(k, i)) +
            mu.apply(Eigen::VectorXd::Unit(d, k), mu.apply_basis(i, j));
        sq += jac.squaredNorm();
      }
  return std::sqrt(sq);
}

BracketNorms bracket_norms(const LieBracket& mu) {
  const auto& dec = mu.dec();
  BracketNorms out;
  for (int i = dec.q; i < dec.dim(); ++i)
    for (int j = dec.q; j < dec.dim(); ++j) {
      if (i == j) continue;
      for (int k = 0; k < dec.dim(); ++k) {
        const double v = mu.coeff(i, j, k);
        if (dec.in_k(k))
          out.k_sq += v * v;
        else
          out.p_sq += v * v;
      }
    }
  out.norm_sq = out.k_sq + out.p_sq;
  return out;
}

double bracket_norm(const LieBracket& mu) { return bracket_norms(mu).norm(); }

BracketDot bracket_dot(const LieBracket& a, const LieBracket& b) {
  require_same_shape(a, b);
  const auto& dec = a.dec();
  BracketDot out;
  for (int i = dec.q; i < dec.dim(); ++i)
    for (int j = dec.q; j < dec.dim(); ++j) {
      if (i == j) continue;
      for (int k = 0; k < dec.dim(); ++k) {
        const double v = a.coeff(i, j, k) * b.coeff(i, j, k);
        (dec.in_k(k) ? out.k : out.p) += v;
      }
    }
  return out;
}

double bracket_distance(const LieBracket& a, const LieBracket& b) {
  require_same_shape(a, b);
  const auto& dec = a.dec();
  double sq = 0;
  for (int i = dec.q; i < dec.dim(); ++i)
    for (int j = dec.q; j < dec.dim(); ++j) {
      if (i == j) continue;
      for (int k = 0; k < dec.dim(); ++k) {
        const double v = a.coeff(i, j, k) - b.coeff(i, j, k);
        sq += v * v;
      }
    }
  return std::sqrt(sq);
}

LieBracket pi_action(const Eigen::MatrixXd& A, const LieBracket& mu) {
  const int d = mu.dim();
  require(A.rows() == d && A.cols() == d, "pi_action: dimension mismatch");
  LieBracket out(mu.dec());
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Eigen::VectorXd v = A * mu.apply_basis(i, j);
      for (int l = 0; l < d; ++l) {
        if (A(l, i) != 0.0) v -= A(l, i) * mu.apply_basis(l, j);
        if (A(l, j) != 0.0) v -= A(l, j) * mu.apply_basis(i, l);
      }
      for (int k = 0; k < d; ++k) out.set(i, j, k, v[k]);
    }
  return out;
}

LieBracket pi_action(const LinearMap& A, const LieBracket& mu) {
  require(A.dec == mu.dec(), "pi_action: decomposition mismatch");
  return pi_action(A.mat, mu);
}

LieBracket group_action(const Eigen::MatrixXd& h, const LieBracket& mu) {
  const int d = mu.dim();
  require(h.rows() == d && h.cols() == d, "group_action: dimension mismatch");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double smax = svd.singularValues()[0];
  const double smin = svd.singularValues()[d - 1];
  require(smin > 1e-12 * smax && smax > 0, "group_action: map is numerically singular");
  const Eigen::MatrixXd hinv = svd.solve(Eigen::MatrixXd::Identity(d, d));
  LieBracket out(mu.dec());
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const Eigen::VectorXd v = h * mu.apply(hinv.col(i), hinv.col(j));
      for (int k = 0; k < d; ++k) out.set(i, j, k, v[k]);
    }
  return out;
}

LieBracket group_action(const LinearMap& h, const LieBracket& mu) {
  require(h.dec == mu.dec(), "group_action: decomposition mismatch");
  return group_action(h.mat, mu);
}

LieBracket rescale(double c, const LieBracket& mu) {
  require(c != 0.0, "rescale: c must be nonzero; use flat_limit for the degenerate point");
  const auto& dec = mu.dec();
  LieBracket out = mu;
  for (int i = dec.q; i < dec.dim(); ++i)
    for (int j = i + 1; j < dec.dim(); ++j)
      for (int k = 0; k < dec.dim(); ++k) {
        const double w = dec.in_k(k) ? c * c : c;
        out.set(i, j, k, w * mu.coeff(i, j, k));
      }
  return out;
}

LieBracket flat_limit(const LieBracket& mu) {
  const auto& dec = mu.dec();
  LieBracket out = mu;
  for (int i = dec.q; i < dec.dim(); ++i)
    for (int j = i + 1; j < dec.dim(); ++j)
      for (int k = 0; k < dec.dim(); ++k) out.set(i, j, k, 0.0);
  return out;
}

Eigen::MatrixXd killing_form(const LieBracket& mu) {
  const int d = mu.dim();
  std::vector<Eigen::MatrixXd> ads(d);
  for (int i = 0; i < d; ++i) ads[i] = mu.ad(i);
  Eigen::MatrixXd B(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      const double v = (ads[i] * ads[j]).trace();
      B(i, j) = v;
      B(j, i) = v;
    }
  return B;
}

LieBracket unit_norm_representative(const LieBracket& mu) {
  const BracketNorms n = bracket_norms(mu);
  require(n.norm_sq > 0, "unit_norm_representative: zero bracket has no unit representative");
  double s;
  if (n.k_sq == 0) {
    s = 1.0 / n.p_norm();
  } else {
    // s^4 |mu_k|^2 + s^2 |mu_p|^2 = 1.
    const double u = (-n.p_sq + std::sqrt(n.p_sq * n.p_sq + 4.0 * n.k_sq)) / (2.0 * n.k_sq);
    s = std::sqrt(u);
  }
  return rescale(s, mu);
}

double bounded_norm_functional(const LieBracket& mu) {
  const BracketNorms n = bracket_norms(mu);
  return std::sqrt(n.k_norm()) + n.p_norm();
}

LieBracket unit_bounded_representative(const LieBracket& mu) {
  const double g = bounded_norm_functional(mu);
  require(g > 0, "unit_bounded_representative: zero bracket has no representative");
  // G(s.mu) = s G(mu) for s > 0.
  return rescale(1.0 / g, mu);
}

}  // namespace bracketflow
