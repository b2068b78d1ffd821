#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "bracketflow/bracket.hpp"
#include "bracketflow/linear_map.hpp"

namespace bracketflow {

// Least-squares certificate for a soliton equation. D is the minimum-norm
// minimizer over the relevant derivation space; accepted when
// residual <= 1e-8 (1 + |Ric|).
struct SolitonFit {
  double c = 0;
  LinearMap D;
  double residual = 0;
  bool accepted = false;
};

// Minimizes |Ric - cI - proj_p D|_p| over c and D in span of
// derivation_space(mu, k_to_k).
SolitonFit algebraic_soliton_fit(const LieBracket& mu);

// Minimizes |Ric - cI - (D_p + D_p^t)/2| over c and D in span of
// derivation_space(mu, k_annihilated) (Dk = 0).
SolitonFit semi_algebraic_fit(const LieBracket& mu);

enum class DiagonalMode { algebraic, trajectory };
enum class DiagonalVerdict { yes, no };

// algebraic mode: requires a passing semi_algebraic_fit and tests the
// commutator criterion [D_p, Ric] = 0 (equivalently normality of D_p).
// trajectory mode: integrates ricci_flow_P and tests pairwise commutators
// of P over a log-spaced grid in (0, t_end].
DiagonalVerdict ricci_flow_diagonal_check(const LieBracket& mu, DiagonalMode mode,
                                          double t_end = 5.0);

// Minimizes |bracket_flow_field(mu, r)| over the scalar r.
struct FixedPointResult {
  double r_star = 0;
  double residual = 0;
};
FixedPointResult fixed_point_residual(const LieBracket& mu);

// Grid times t in (0, t_max] with |e^{tA} - I|_F < epsilon for skew A on p;
// grid step epsilon / (4 |A|_F). When |A|_F t_max < epsilon every time
// qualifies and a coarse grid of 1000 times is returned.
std::vector<double> recurrence_times(const Eigen::MatrixXd& A, double epsilon, double t_max);

enum class DiagonalFlag { yes, no, not_applicable };

struct SolitonReport {
  std::optional<double> einstein_c;  // set when Ric = cI within tolerance
  bool flat = false;                 // Ric = 0 within tolerance
  SolitonFit algebraic;
  SolitonFit semi_algebraic;
  DiagonalFlag diagonal_flag = DiagonalFlag::not_applicable;
  bool normality_flag = false;   // [D_p, D_p^t] = 0 for the semi-algebraic D
  bool dt_in_der = false;        // |pi(D^t) mu| small for the semi-algebraic D
  bool dk_zero_check = false;    // |D|_k| small for the accepted algebraic D
  double scalar = 0;             // R
  double ric_sq_trace = 0;       // tr Ric^2
};

SolitonReport classify(const LieBracket& mu);

}  // namespace bracketflow
