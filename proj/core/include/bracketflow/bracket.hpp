#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bracketflow/linear_map.hpp"
#include "bracketflow/types.hpp"

namespace bracketflow {

// Structure constants c[i][j][k] of a skew bilinear map mu on g = k + p,
// mu(e_i, e_j) = sum_k c[i][j][k] e_k. Antisymmetry in (i,j) is enforced at
// the storage level: set() always writes the pair.
class LieBracket {
 public:
  LieBracket() = default;
  explicit LieBracket(Decomposition dec)
      : dec_(dec), c_(static_cast<size_t>(dec.dim()) * dec.dim() * dec.dim(), 0.0) {
    require(dec.q >= 0 && dec.n >= 1, "LieBracket: need q >= 0 and n >= 1");
  }

  const Decomposition& dec() const { return dec_; }
  int dim() const { return dec_.dim(); }

  double coeff(int i, int j, int k) const { return c_[idx(i, j, k)]; }

  void set(int i, int j, int k, double v) {
    require(i != j || v == 0.0, "LieBracket::set: diagonal entry must vanish");
    c_[idx(i, j, k)] = v;
    c_[idx(j, i, k)] = -v;
  }

  // mu(e_i, e_j) as a coordinate vector.
  Eigen::VectorXd apply_basis(int i, int j) const {
    Eigen::VectorXd out(dim());
    for (int k = 0; k < dim(); ++k) out[k] = coeff(i, j, k);
    return out;
  }

  Eigen::VectorXd apply(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  // Matrix of ad(e_i): column j is mu(e_i, e_j).
  Eigen::MatrixXd ad(int i) const;
  Eigen::MatrixXd ad(const Eigen::VectorXd& x) const;

  // Raw storage access for the integrator's packing.
  const std::vector<double>& raw() const { return c_; }
  std::vector<double>& raw() { return c_; }
  size_t idx(int i, int j, int k) const {
    return (static_cast<size_t>(i) * dim() + j) * dim() + k;
  }

 private:
  Decomposition dec_;
  std::vector<double> c_;
};

// Norms of the p x p restriction over ordered basis pairs, split by target:
// k_sq = |mu_k|^2, p_sq = |mu_p|^2, norm_sq = their sum.
struct BracketNorms {
  double norm_sq = 0;
  double k_sq = 0;
  double p_sq = 0;
  double norm() const;
  double k_norm() const;
  double p_norm() const;
};

// Frobenius norm of the Jacobiator over basis triples i<j<k.
double jacobi_residual(const LieBracket& mu);

BracketNorms bracket_norms(const LieBracket& mu);
double bracket_norm(const LieBracket& mu);

// <a, b> over the p x p slots (ordered pairs), split by target subspace.
struct BracketDot {
  double k = 0;
  double p = 0;
  double total() const { return k + p; }
};
BracketDot bracket_dot(const LieBracket& a, const LieBracket& b);

// Frobenius distance between the p x p restrictions (ordered pairs, all targets).
double bracket_distance(const LieBracket& a, const LieBracket& b);

// pi(A)mu = A mu(.,.) - mu(A.,.) - mu(.,A.) for A on all of g.
LieBracket pi_action(const Eigen::MatrixXd& A, const LieBracket& mu);
LieBracket pi_action(const LinearMap& A, const LieBracket& mu);

// h.mu = h mu(h^{-1}., h^{-1}.); rejects near-singular h.
LieBracket group_action(const Eigen::MatrixXd& h, const LieBracket& mu);
LieBracket group_action(const LinearMap& h, const LieBracket& mu);

// c.mu: identity on k x g, c^2 mu_k + c mu_p on p x p. c = 0 rejected;
// the degenerate flat limit has its own constructor below.
LieBracket rescale(double c, const LieBracket& mu);

// The 0.mu degenerate point: p x p slots zeroed, k x g kept.
LieBracket flat_limit(const LieBracket& mu);

// B[i][j] = tr(ad e_i ad e_j) on all of g.
Eigen::MatrixXd killing_form(const LieBracket& mu);

// Representative with |mu|_{pxp} = 1 under the rescaling action.
LieBracket unit_norm_representative(const LieBracket& mu);

// G(mu) = |mu_k|^{1/2} + |mu_p| (the bounded-normalization functional) and
// the representative with G = 1 under the rescaling action.
double bounded_norm_functional(const LieBracket& mu);
LieBracket unit_bounded_representative(const LieBracket& mu);

}  // namespace bracketflow
