#pragma once

#include <Eigen/Dense>

#include "bracketflow/bracket.hpp"

namespace bracketflow {

// Ricci operator of the homogeneous space attached to mu, with its
// constituents, all in the fixed orthonormal p-basis:
//   Ric = M - B/2 - S(ad H|_p),
//   <M X,Y>  = -1/2 sum <mu_p(X,Xi),Xj><mu_p(Y,Xi),Xj>
//              +1/4 sum <mu_p(Xi,Xj),X><mu_p(Xi,Xj),Y>,
//   B        = Killing form restricted to p,
//   <H,X>    = tr ad X,  S(A) = (A + A^t)/2.
struct RicciData {
  Eigen::MatrixXd ric;             // n x n, symmetric
  Eigen::MatrixXd m_term;          // n x n, symmetric
  Eigen::MatrixXd killing_p;       // n x n, symmetric
  Eigen::VectorXd mean_curvature;  // n
  double scalar = 0;               // R = tr ric
  double ric_sq_trace = 0;         // tr ric^2
};

RicciData ricci_operator(const LieBracket& mu);
double scalar_curvature(const LieBracket& mu);

}  // namespace bracketflow
