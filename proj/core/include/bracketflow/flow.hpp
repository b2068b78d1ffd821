#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "bracketflow/bracket.hpp"
#include "bracketflow/curvature.hpp"
#include "bracketflow/integrator.hpp"
#include "bracketflow/linear_map.hpp"

namespace bracketflow {

enum class PolicyKind {
  unnormalized,
  fixed_r,
  bracket_norm_unit,     // keeps |mu|_{pxp} constant ("norm")
  bracket_norm_bounded,  // keeps |mu_k|^{1/2} + |mu_p| constant ("norm2")
  scalar_constant,       // keeps R constant ("scalar")
};

struct NormalizationPolicy {
  PolicyKind kind = PolicyKind::unnormalized;
  double r0 = 0.0;

  static NormalizationPolicy unnormalized() { return {}; }
  static NormalizationPolicy fixed_r(double r0) { return {PolicyKind::fixed_r, r0}; }
  static NormalizationPolicy bracket_norm_unit() { return {PolicyKind::bracket_norm_unit, 0}; }
  static NormalizationPolicy bracket_norm_bounded() {
    return {PolicyKind::bracket_norm_bounded, 0};
  }
  static NormalizationPolicy scalar_constant() { return {PolicyKind::scalar_constant, 0}; }
};

// d mu/dt with k x g rows identically zero and, on p x p,
//   d mu_k/dt = mu_k(Ric.,.) + mu_k(.,Ric.) + 2 r mu_k
//   d mu_p/dt = -pi_n(Ric) mu_p + r mu_p,
// i.e. -pi(diag(0, Ric + rI)) mu restricted to the evolving slots.
LieBracket bracket_flow_field(const LieBracket& mu, double r);

// The scalar r demanded by the policy at mu.
double normalization_r(const NormalizationPolicy& policy, const LieBracket& mu);

struct FlowState {
  double t = 0;
  double c = 1;    // cumulative rescaling, c' = r c
  double tau = 0;  // reparameterized (unnormalized) time, tau' = c^2
  LieBracket mu;
  std::optional<Eigen::MatrixXd> h;  // gauge on p, h' = -(Ric + rI) h
  std::optional<Eigen::MatrixXd> P;  // h^t h when the gauge is tracked
};

enum class Termination { reached_t_end, blow_up, converged, step_floor };

struct IntegrateOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double step_floor = 1e-14;
  double blow_up_norm = 1e8;
  long max_steps = 500000;
  double initial_step = 0.0;

  bool track_gauge = false;
  bool record_steps = true;  // record every accepted step, not only samples

  bool detect_convergence = false;
  double convergence_field_tol = 1e-10;
  double convergence_cauchy_tol = 1e-8;
  int convergence_window = 10;

  std::vector<double> sample_times;  // forced exact landings (values of t)
  std::optional<double> tau_stop;    // stop when tau crosses this value
};

struct FlowTrajectory {
  std::vector<FlowState> states;
  Termination termination = Termination::reached_t_end;
  NormalizationPolicy policy;

  const FlowState& front() const { return states.front(); }
  const FlowState& back() const { return states.back(); }
  // State recorded at time t (forced landings are exact); throws if absent.
  const FlowState& at_time(double t) const;
  std::optional<FlowState> state_at_tau(double tau, double tol) const;
};

FlowTrajectory integrate(const LieBracket& mu0, const NormalizationPolicy& policy, double t_end,
                         const IntegrateOptions& opts = {});

// Inner-product presentation P' = -2 P Ric(<P.,.>), P(0) = I, with the moved
// Ricci operator computed through the bracket: Ric(<P.,.>) = k^{-1} Ric_{k.mu0} k
// for any k with k^t k = P (the symmetric square root is used).
struct PState {
  double t = 0;
  Eigen::MatrixXd P;
};
std::vector<PState> ricci_flow_P(const LieBracket& mu0, double t_end,
                                 const IntegrateOptions& opts = {});

// Runs the bracket flow with gauge plus the P-flow and reports the sup over
// samples of |mu(t) - h~.mu0| and |P(t) - h^t h|.
struct EquivalenceReport {
  double sup_mu_dev = 0;
  double sup_P_dev = 0;
  int samples = 0;
};
EquivalenceReport equivalence_check(const LieBracket& mu0, double t_end,
                                    const IntegrateOptions& opts = {});

enum class OmegaVerdict { limit, divergent, undecided };

struct OmegaLimitOptions {
  double field_tol = 1e-10;
  double cauchy_tol = 1e-8;
  int window = 10;
};

struct OmegaLimitReport {
  OmegaVerdict verdict = OmegaVerdict::undecided;
  std::optional<LieBracket> limit;
  double tail_field_norm = 0;
  double tail_diameter = 0;
};

OmegaLimitReport omega_limit(const FlowTrajectory& trajectory, const OmegaLimitOptions& opts = {});

// Closed-form unnormalized solution through a semi-algebraic certificate
// (c, D): nu(t) = (-2ct+1)^{-1/2} . (diag(I, e^{sA} e^{-s D_p}) . mu0) with
// A = (D_p - D_p^t)/2 and s(t) = -(1/2c) ln(-2ct+1) (s = t when c = 0).
// The prefactor acts by the rescaling action. Requires the certificate to
// hold within tolerance and -2ct+1 > 0.
LieBracket closed_form_semi_algebraic(const LieBracket& mu0, double c, const LinearMap& D,
                                      double t);
// The F-normalized variant mu(t) = diag(I, e^{tA} e^{-t D_p}) . mu0.
LieBracket closed_form_semi_algebraic_normalized(const LieBracket& mu0, double c,
                                                 const LinearMap& D, double t);

}  // namespace bracketflow
