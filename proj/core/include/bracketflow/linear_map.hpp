#pragma once

#include <Eigen/Dense>

#include "bracketflow/types.hpp"

namespace bracketflow {

// Endomorphism of g carried together with the splitting it refers to.
// Block structure (does it preserve k, vanish on k, act on p only) is a
// computed property of the matrix, never a stored claim.
struct LinearMap {
  Decomposition dec;
  Eigen::MatrixXd mat;  // (q+n) x (q+n)

  LinearMap() = default;
  LinearMap(Decomposition d, Eigen::MatrixXd m) : dec(d), mat(std::move(m)) {
    require(mat.rows() == dec.dim() && mat.cols() == dec.dim(),
            "LinearMap: matrix shape does not match decomposition");
  }

  static LinearMap identity(Decomposition d) {
    return {d, Eigen::MatrixXd::Identity(d.dim(), d.dim())};
  }

  // diag(I_q, hp) for an n x n block hp acting on p.
  static LinearMap from_p_block(Decomposition d, const Eigen::MatrixXd& hp) {
    require(hp.rows() == d.n && hp.cols() == d.n,
            "LinearMap: p-block shape does not match decomposition");
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d.dim(), d.dim());
    m.bottomRightCorner(d.n, d.n) = hp;
    return {d, std::move(m)};
  }

  Eigen::MatrixXd p_block() const { return mat.bottomRightCorner(dec.n, dec.n); }
  Eigen::MatrixXd k_block() const { return mat.topLeftCorner(dec.q, dec.q); }
  // Columns over k-inputs: A|_k as a map k -> g.
  Eigen::MatrixXd k_columns() const { return mat.leftCols(dec.q); }

  // A(k) inside k: the p-rows of the k-columns vanish.
  bool preserves_k(double tol = 1e-12) const {
    return dec.q == 0 || mat.bottomLeftCorner(dec.n, dec.q).cwiseAbs().maxCoeff() <= tol;
  }
  // A|_k = 0.
  bool vanishes_on_k(double tol = 1e-12) const {
    return dec.q == 0 || mat.leftCols(dec.q).cwiseAbs().maxCoeff() <= tol;
  }
  // Zero outside the bottom-right p x p block.
  bool p_block_only(double tol = 1e-12) const {
    if (dec.q == 0) return true;
    return mat.leftCols(dec.q).cwiseAbs().maxCoeff() <= tol &&
           mat.topRightCorner(dec.q, dec.n).cwiseAbs().maxCoeff() <= tol;
  }
};

}  // namespace bracketflow
