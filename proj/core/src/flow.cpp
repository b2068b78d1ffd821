#include "bracketflow/flow.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <utility>

#include "bracketflow/membership.hpp"
#include "curvature_detail.hpp"

namespace bracketflow {

namespace {

// ODE state layout: the independent bracket slots (i < j over p, every
// target), then c, tau, then vec(h) when the gauge is tracked. k x g rows of
// the bracket never enter the state, so they stay bit-exact.
struct Packing {
  Decomposition dec;
  bool gauge = false;

  int n_slots() const { return dec.n * (dec.n - 1) / 2 * dec.dim(); }
  int idx_c() const { return n_slots(); }
  int idx_tau() const { return n_slots() + 1; }
  int idx_h() const { return n_slots() + 2; }
  int size() const { return n_slots() + 2 + (gauge ? dec.n * dec.n : 0); }
};

void pack_pairs(const LieBracket& mu, Eigen::VectorXd& y) {
  const auto& dec = mu.dec();
  const int d = dec.dim();
  int s = 0;
  for (int i = dec.q; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = 0; k < d; ++k) y[s++] = mu.coeff(i, j, k);
}

LieBracket unpack_mu(const LieBracket& base, const Eigen::VectorXd& y) {
  LieBracket mu = base;
  const auto& dec = mu.dec();
  const int d = dec.dim();
  int s = 0;
  for (int i = dec.q; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = 0; k < d; ++k) mu.set(i, j, k, y[s++]);
  return mu;
}

// -pi(diag(0, Ric + rI)) mu on the evolving slots, Ric given.
LieBracket field_from_ric(const LieBracket& mu, const Eigen::MatrixXd& ric, double r) {
  const auto& dec = mu.dec();
  const int q = dec.q;
  const int n = dec.n;
  const int d = dec.dim();

  Eigen::MatrixXd a_ext = Eigen::MatrixXd::Zero(d, d);
  a_ext.bottomRightCorner(n, n) = ric;

  LieBracket out{dec};
  for (int i = q; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Eigen::VectorXd v = -(a_ext * mu.apply_basis(i, j));
      for (int l = 0; l < n; ++l) {
        const double ali = ric(l, i - q);
        const double alj = ric(l, j - q);
        if (ali != 0.0) v += ali * mu.apply_basis(q + l, j);
        if (alj != 0.0) v += alj * mu.apply_basis(i, q + l);
      }
      for (int k = 0; k < d; ++k) {
        const double w = v[k] + r * (dec.in_k(k) ? 2.0 : 1.0) * mu.coeff(i, j, k);
        if (w != 0.0) out.set(i, j, k, w);
      }
    }
  return out;
}

// r demanded by the policy, from precomputed curvature and zero-r field.
double policy_r_impl(const NormalizationPolicy& policy, const LieBracket& mu,
                     const RicciData& ric, const LieBracket& f0) {
  switch (policy.kind) {
    case PolicyKind::unnormalized:
      return 0.0;
    case PolicyKind::fixed_r:
      return policy.r0;
    case PolicyKind::scalar_constant: {
      if (std::abs(ric.scalar) <= 1e-13 * (1.0 + ric.ric_sq_trace))
        throw numerical_error("scalar normalization undefined: R = 0");
      return -ric.ric_sq_trace / ric.scalar;
    }
    case PolicyKind::bracket_norm_unit: {
      const BracketNorms norms = bracket_norms(mu);
      const double denom = 2.0 * norms.k_sq + norms.p_sq;
      if (denom == 0.0) return 0.0;
      return -bracket_dot(f0, mu).total() / denom;
    }
    case PolicyKind::bracket_norm_bounded: {
      const BracketNorms norms = bracket_norms(mu);
      const double total = norms.norm();
      if (total == 0.0) return 0.0;
      const BracketDot dots = bracket_dot(f0, mu);
      double g = 0.0;
      double a0 = 0.0;
      if (norms.k_norm() >= 1e-12 * total) {
        g += std::sqrt(norms.k_norm());
        a0 += dots.k / (2.0 * std::pow(norms.k_sq, 0.75));
      }
      if (norms.p_norm() >= 1e-12 * total) {
        g += norms.p_norm();
        a0 += dots.p / norms.p_norm();
      }
      if (g == 0.0) return 0.0;
      return -a0 / g;
    }
  }
  return 0.0;
}

FlowState state_from(const Packing& pk, const LieBracket& base, double t,
                     const Eigen::VectorXd& y) {
  FlowState s;
  s.t = t;
  s.c = y[pk.idx_c()];
  s.tau = y[pk.idx_tau()];
  s.mu = unpack_mu(base, y);
  if (pk.gauge) {
    const int n = pk.dec.n;
    Eigen::MatrixXd h = Eigen::Map<const Eigen::MatrixXd>(y.data() + pk.idx_h(), n, n);
    s.P = h.transpose() * h;
    s.h = std::move(h);
  }
  return s;
}

OdeRhs make_flow_rhs(const LieBracket& base, const NormalizationPolicy& policy,
                     const Packing& pk) {
  return [base, policy, pk](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    const LieBracket mu = unpack_mu(base, y);
    const RicciData ric = detail::ricci_operator_raw(mu);
    const LieBracket f0 = field_from_ric(mu, ric.ric, 0.0);
    const double r = policy_r_impl(policy, mu, ric, f0);

    dy.resize(y.size());
    const auto& dec = pk.dec;
    const int d = dec.dim();
    int s = 0;
    for (int i = dec.q; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          const double w = r * (dec.in_k(k) ? 2.0 : 1.0) * mu.coeff(i, j, k);
          dy[s++] = f0.coeff(i, j, k) + w;
        }
    const double c = y[pk.idx_c()];
    dy[pk.idx_c()] = r * c;
    dy[pk.idx_tau()] = c * c;
    if (pk.gauge) {
      const int n = dec.n;
      const Eigen::Map<const Eigen::MatrixXd> h(y.data() + pk.idx_h(), n, n);
      Eigen::Map<Eigen::MatrixXd> dh(dy.data() + pk.idx_h(), n, n);
      Eigen::MatrixXd gen = ric.ric;
      gen.diagonal().array() += r;
      dh = -gen * h;
    }
  };
}

double field_norm_from_slots(const Packing& pk, const Eigen::VectorXd& f) {
  return std::sqrt(2.0) * f.head(pk.n_slots()).norm();
}

// Lands on tau = target between the engine's last two accepted states by
// Newton iteration on single trial steps from the earlier state.
FlowState refine_tau_landing(const OdeRhs& rhs, const Packing& pk, const LieBracket& base,
                             const Dopri5& eng, double target, double atol, double rtol) {
  const double t0 = eng.t_prev();
  const Eigen::VectorXd& y0 = eng.y_prev();
  const Eigen::VectorXd& f0 = eng.f_prev();
  const double h_full = eng.t() - t0;
  const double lo = std::min(0.0, h_full);
  const double hi = std::max(0.0, h_full);

  const double tau0 = y0[pk.idx_tau()];
  const double c0 = y0[pk.idx_c()];
  double h = (target - tau0) / (c0 * c0);
  h = std::clamp(h, lo, hi);

  RkStepResult res;
  for (int it = 0; it < 10; ++it) {
    res = dopri5_step(rhs, t0, y0, f0, h, atol, rtol);
    const double tau_h = res.y_new[pk.idx_tau()];
    if (std::abs(tau_h - target) <= 1e-12 * std::max(1.0, std::abs(target))) break;
    const double ch = res.y_new[pk.idx_c()];
    h = std::clamp(h + (target - tau_h) / (ch * ch), lo, hi);
  }
  return state_from(pk, base, t0 + h, res.y_new);
}

std::vector<double> plan_targets(const std::vector<double>& samples, double t_end, double dir) {
  std::vector<double> targets;
  for (double s : samples)
    if (s * dir > 0.0 && (t_end - s) * dir > 0.0) targets.push_back(s);
  std::sort(targets.begin(), targets.end(),
            [dir](double a, double b) { return a * dir < b * dir; });
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  targets.push_back(t_end);
  return targets;
}

OdeOptions ode_options(const IntegrateOptions& opts) {
  OdeOptions oo;
  oo.rtol = opts.rtol;
  oo.atol = opts.atol;
  oo.step_floor = opts.step_floor;
  oo.initial_step = opts.initial_step;
  oo.max_steps = opts.max_steps;
  return oo;
}

}  // namespace

LieBracket bracket_flow_field(const LieBracket& mu, double r) {
  return field_from_ric(mu, ricci_operator(mu).ric, r);
}

double normalization_r(const NormalizationPolicy& policy, const LieBracket& mu) {
  if (policy.kind == PolicyKind::unnormalized) return 0.0;
  if (policy.kind == PolicyKind::fixed_r) return policy.r0;
  const RicciData ric = ricci_operator(mu);
  const LieBracket f0 = field_from_ric(mu, ric.ric, 0.0);
  return policy_r_impl(policy, mu, ric, f0);
}

const FlowState& FlowTrajectory::at_time(double t) const {
  for (const auto& s : states)
    if (s.t == t) return s;
  throw validation_error("no recorded state at the requested time");
}

std::optional<FlowState> FlowTrajectory::state_at_tau(double tau, double tol) const {
  const FlowState* best = nullptr;
  double best_gap = tol;
  for (const auto& s : states) {
    const double gap = std::abs(s.tau - tau);
    if (gap <= best_gap) {
      best_gap = gap;
      best = &s;
    }
  }
  if (!best) return std::nullopt;
  return *best;
}

FlowTrajectory integrate(const LieBracket& mu0, const NormalizationPolicy& policy, double t_end,
                         const IntegrateOptions& opts) {
  require(check_membership(mu0).passed(), "integrate: bracket fails membership checks");

  const Packing pk{mu0.dec(), opts.track_gauge};
  const int n = pk.dec.n;

  Eigen::VectorXd y0(pk.size());
  pack_pairs(mu0, y0);
  y0[pk.idx_c()] = 1.0;
  y0[pk.idx_tau()] = 0.0;
  if (pk.gauge)
    Eigen::Map<Eigen::MatrixXd>(y0.data() + pk.idx_h(), n, n) =
        Eigen::MatrixXd::Identity(n, n);

  FlowTrajectory traj;
  traj.policy = policy;
  traj.states.push_back(state_from(pk, mu0, 0.0, y0));
  if (t_end == 0.0) return traj;

  const double dir = t_end > 0.0 ? 1.0 : -1.0;
  const OdeRhs rhs = make_flow_rhs(mu0, policy, pk);
  Dopri5 eng(rhs, 0.0, std::move(y0), dir, ode_options(opts));

  std::deque<LieBracket> window;
  const auto targets = plan_targets(opts.sample_times, t_end, dir);

  auto record = [&](const FlowState& s) {
    if (!traj.states.empty() && traj.states.back().t == s.t) return;
    traj.states.push_back(s);
  };

  for (double target : targets) {
    while ((target - eng.t()) * dir > 0.0) {
      if (!eng.step_to(target)) {
        record(state_from(pk, mu0, eng.t(), eng.y()));
        traj.termination = Termination::step_floor;
        return traj;
      }
      const double t_now = eng.t();
      const double tau_now = eng.y()[pk.idx_tau()];

      if (opts.tau_stop && (tau_now - *opts.tau_stop) * dir >= 0.0) {
        record(refine_tau_landing(rhs, pk, mu0, eng, *opts.tau_stop, opts.atol, opts.rtol));
        traj.termination = Termination::reached_t_end;
        return traj;
      }

      const bool at_target = t_now == target;
      FlowState cur;
      bool have_cur = false;
      auto ensure_cur = [&] {
        if (!have_cur) {
          cur = state_from(pk, mu0, t_now, eng.y());
          have_cur = true;
        }
      };

      if (opts.record_steps || at_target) {
        ensure_cur();
        record(cur);
      }

      ensure_cur();
      if (bracket_norm(cur.mu) > opts.blow_up_norm) {
        record(cur);
        traj.termination = Termination::blow_up;
        return traj;
      }

      if (opts.detect_convergence) {
        window.push_back(cur.mu);
        if (static_cast<int>(window.size()) > opts.convergence_window) window.pop_front();
        if (static_cast<int>(window.size()) == opts.convergence_window &&
            field_norm_from_slots(pk, eng.f()) < opts.convergence_field_tol) {
          double diam = 0.0;
          for (std::size_t a = 0; a < window.size(); ++a)
            for (std::size_t b = a + 1; b < window.size(); ++b)
              diam = std::max(diam, bracket_distance(window[a], window[b]));
          if (diam < opts.convergence_cauchy_tol) {
            record(cur);
            traj.termination = Termination::converged;
            return traj;
          }
        }
      }
    }
  }
  traj.termination = Termination::reached_t_end;
  return traj;
}

std::vector<PState> ricci_flow_P(const LieBracket& mu0, double t_end,
                                 const IntegrateOptions& opts) {
  require(check_membership(mu0).passed(), "ricci_flow_P: bracket fails membership checks");
  const auto dec = mu0.dec();
  const int n = dec.n;

  OdeRhs rhs = [mu0, dec, n](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
    Eigen::MatrixXd P = Eigen::Map<const Eigen::MatrixXd>(y.data(), n, n);
    P = 0.5 * (P + P.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(P);
    const Eigen::VectorXd& lam = es.eigenvalues();
    const double lam_max = lam[n - 1];
    if (lam[0] <= 1e-13 * std::max(1.0, lam_max))
      throw numerical_error("ricci_flow_P: metric degenerated");
    const Eigen::MatrixXd root =
        es.eigenvectors() * lam.cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
    const Eigen::MatrixXd root_inv = es.eigenvectors() * lam.cwiseSqrt().cwiseInverse().asDiagonal() *
                                     es.eigenvectors().transpose();
    const LieBracket moved = group_action(LinearMap::from_p_block(dec, root), mu0);
    const Eigen::MatrixXd ric_ip = root_inv * detail::ricci_operator_raw(moved).ric * root;
    const Eigen::MatrixXd prod = P * ric_ip;
    dy.resize(y.size());
    Eigen::Map<Eigen::MatrixXd>(dy.data(), n, n) = -(prod + prod.transpose());
  };

  std::vector<PState> out;
  out.push_back({0.0, Eigen::MatrixXd::Identity(n, n)});
  if (t_end == 0.0) return out;

  Eigen::VectorXd y0(n * n);
  Eigen::Map<Eigen::MatrixXd>(y0.data(), n, n) = Eigen::MatrixXd::Identity(n, n);
  const double dir = t_end > 0.0 ? 1.0 : -1.0;
  Dopri5 eng(rhs, 0.0, std::move(y0), dir, ode_options(opts));

  for (double target : plan_targets(opts.sample_times, t_end, dir)) {
    while ((target - eng.t()) * dir > 0.0) {
      if (!eng.step_to(target)) return out;
      if (opts.record_steps || eng.t() == target) {
        Eigen::MatrixXd P = Eigen::Map<const Eigen::MatrixXd>(eng.y().data(), n, n);
        out.push_back({eng.t(), 0.5 * (P + P.transpose())});
      }
    }
  }
  return out;
}

EquivalenceReport equivalence_check(const LieBracket& mu0, double t_end,
                                    const IntegrateOptions& opts) {
  IntegrateOptions o = opts;
  o.track_gauge = true;
  o.record_steps = false;
  if (o.sample_times.empty()) {
    for (int i = 1; i <= 100; ++i) o.sample_times.push_back(t_end * i / 100.0);
  }
  const FlowTrajectory traj = integrate(mu0, NormalizationPolicy::unnormalized(), t_end, o);
  const std::vector<PState> pflow = ricci_flow_P(mu0, t_end, o);

  EquivalenceReport report;
  for (const auto& s : traj.states) {
    const PState* match = nullptr;
    for (const auto& ps : pflow)
      if (ps.t == s.t) {
        match = &ps;
        break;
      }
    if (!match || !s.h || !s.P) continue;
    const LieBracket transported =
        group_action(LinearMap::from_p_block(mu0.dec(), *s.h), mu0);
    report.sup_mu_dev = std::max(report.sup_mu_dev, bracket_distance(s.mu, transported));
    report.sup_P_dev = std::max(report.sup_P_dev, (match->P - *s.P).norm());
    ++report.samples;
  }
  return report;
}

OmegaLimitReport omega_limit(const FlowTrajectory& trajectory, const OmegaLimitOptions& opts) {
  OmegaLimitReport report;
  const auto& states = trajectory.states;
  if (states.empty()) return report;

  const int window = std::min<int>(opts.window, static_cast<int>(states.size()));
  for (int a = 0; a < window; ++a)
    for (int b = a + 1; b < window; ++b) {
      const auto& sa = states[states.size() - 1 - a];
      const auto& sb = states[states.size() - 1 - b];
      report.tail_diameter = std::max(report.tail_diameter, bracket_distance(sa.mu, sb.mu));
    }
  try {
    const double r = normalization_r(trajectory.policy, states.back().mu);
    report.tail_field_norm = bracket_norm(bracket_flow_field(states.back().mu, r));
  } catch (const numerical_error&) {
    report.tail_field_norm = std::numeric_limits<double>::quiet_NaN();
  }

  if (trajectory.termination == Termination::blow_up) {
    report.verdict = OmegaVerdict::divergent;
    return report;
  }
  if (trajectory.termination == Termination::converged ||
      (std::isfinite(report.tail_field_norm) && report.tail_field_norm < opts.field_tol &&
       window >= 2 && report.tail_diameter < opts.cauchy_tol)) {
    report.verdict = OmegaVerdict::limit;
    report.limit = states.back().mu;
    return report;
  }
  report.verdict = OmegaVerdict::undecided;
  return report;
}

namespace {

double full_tensor_norm(const LieBracket& mu) {
  const int d = mu.dec().dim();
  double sum = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const double v = mu.coeff(i, j, k);
        sum += 2.0 * v * v;
      }
  return std::sqrt(sum);
}

void check_certificate(const LieBracket& mu0, double c, const LinearMap& D) {
  require(D.dec == mu0.dec(), "closed form: mismatched decompositions");
  const Eigen::MatrixXd ric = ricci_operator(mu0).ric;
  const Eigen::MatrixXd dp = D.p_block();
  Eigen::MatrixXd dev = ric - 0.5 * (dp + dp.transpose());
  dev.diagonal().array() -= c;
  require(dev.norm() <= 1e-6 * (1.0 + ric.norm()),
          "closed form: (c, D) is not a soliton certificate for this bracket");
  const double der_dev = full_tensor_norm(pi_action(D, mu0));
  require(der_dev <= 1e-6 * (1.0 + bracket_norm(mu0) * (1.0 + D.mat.norm())),
          "closed form: D is not a derivation");
}

LieBracket gauge_part(const LieBracket& mu0, const LinearMap& D, double s) {
  const Eigen::MatrixXd dp = D.p_block();
  const Eigen::MatrixXd a = 0.5 * (dp - dp.transpose());
  const Eigen::MatrixXd m = (s * a).exp() * ((-s * dp).exp());
  return group_action(LinearMap::from_p_block(mu0.dec(), m), mu0);
}

}  // namespace

LieBracket closed_form_semi_algebraic(const LieBracket& mu0, double c, const LinearMap& D,
                                      double t) {
  check_certificate(mu0, c, D);
  const double arg = 1.0 - 2.0 * c * t;
  require(arg > 0.0, "closed form: time is outside the maximal interval");
  const double s = c == 0.0 ? t : -std::log1p(-2.0 * c * t) / (2.0 * c);
  return rescale(1.0 / std::sqrt(arg), gauge_part(mu0, D, s));
}

LieBracket closed_form_semi_algebraic_normalized(const LieBracket& mu0, double c,
                                                 const LinearMap& D, double t) {
  check_certificate(mu0, c, D);
  return gauge_part(mu0, D, t);
}

}  // namespace bracketflow
