#include "bracketflow/soliton.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

#include "bracketflow/curvature.hpp"
#include "bracketflow/derivations.hpp"
#include "bracketflow/flow.hpp"

namespace bracketflow {

namespace {

// Least squares Ric = c I + block(D) over c and the derivation span, with
// minimum-norm tie-breaking (the basis is Frobenius-orthonormal, so the
// coefficient norm is the certificate norm).
SolitonFit fit_over_space(const LieBracket& mu, DerivationConstraint constraint,
                          bool symmetrize) {
  const auto& dec = mu.dec();
  const int n = dec.n;
  const Eigen::MatrixXd ric = ricci_operator(mu).ric;
  const std::vector<LinearMap> ders = derivation_space(mu, constraint);
  const int m = static_cast<int>(ders.size());

  Eigen::MatrixXd a(n * n, 1 + m);
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
  a.col(0) = Eigen::Map<const Eigen::VectorXd>(eye.data(), n * n);
  for (int i = 0; i < m; ++i) {
    Eigen::MatrixXd block = ders[i].p_block();
    if (symmetrize) block = 0.5 * (block + block.transpose()).eval();
    a.col(1 + i) = Eigen::Map<const Eigen::VectorXd>(block.data(), n * n);
  }
  const Eigen::VectorXd b = Eigen::Map<const Eigen::VectorXd>(ric.data(), n * n);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  const Eigen::VectorXd x = svd.solve(b);

  SolitonFit fit;
  fit.c = x[0];
  Eigen::MatrixXd d_mat = Eigen::MatrixXd::Zero(dec.dim(), dec.dim());
  for (int i = 0; i < m; ++i) d_mat += x[1 + i] * ders[i].mat;
  fit.D = LinearMap{dec, std::move(d_mat)};
  fit.residual = (a * x - b).norm();
  fit.accepted = fit.residual <= 1e-8 * (1.0 + ric.norm());
  return fit;
}

}  // namespace

SolitonFit algebraic_soliton_fit(const LieBracket& mu) {
  return fit_over_space(mu, DerivationConstraint::k_to_k, false);
}

SolitonFit semi_algebraic_fit(const LieBracket& mu) {
  return fit_over_space(mu, DerivationConstraint::k_annihilated, true);
}

DiagonalVerdict ricci_flow_diagonal_check(const LieBracket& mu, DiagonalMode mode,
                                          double t_end) {
  if (mode == DiagonalMode::algebraic) {
    const SolitonFit fit = semi_algebraic_fit(mu);
    require(fit.accepted, "diagonal check: semi-algebraic fit did not pass");
    const Eigen::MatrixXd dp = fit.D.p_block();
    const Eigen::MatrixXd ric = ricci_operator(mu).ric;
    const double comm = (dp * ric - ric * dp).norm();
    return comm <= 1e-8 * (1.0 + dp.norm() * ric.norm()) ? DiagonalVerdict::yes
                                                         : DiagonalVerdict::no;
  }

  IntegrateOptions opts;
  opts.record_steps = false;
  for (int i = 0; i < 50; ++i)
    opts.sample_times.push_back(t_end * std::pow(10.0, -3.0 * (49 - i) / 49.0));
  const std::vector<PState> ps = ricci_flow_P(mu, t_end, opts);
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      const Eigen::MatrixXd comm = ps[i].P * ps[j].P - ps[j].P * ps[i].P;
      if (comm.norm() > 1e-8) return DiagonalVerdict::no;
    }
  return DiagonalVerdict::yes;
}

FixedPointResult fixed_point_residual(const LieBracket& mu) {
  const LieBracket f0 = bracket_flow_field(mu, 0.0);

  const auto& dec = mu.dec();
  LieBracket gen{dec};
  for (int i = dec.q; i < dec.dim(); ++i)
    for (int j = i + 1; j < dec.dim(); ++j)
      for (int k = 0; k < dec.dim(); ++k) {
        const double v = mu.coeff(i, j, k);
        if (v != 0.0) gen.set(i, j, k, (dec.in_k(k) ? 2.0 : 1.0) * v);
      }

  FixedPointResult out;
  const double gg = bracket_dot(gen, gen).total();
  out.r_star = gg == 0.0 ? 0.0 : -bracket_dot(f0, gen).total() / gg;

  double sq = 0.0;
  for (int i = dec.q; i < dec.dim(); ++i)
    for (int j = dec.q; j < dec.dim(); ++j) {
      if (i == j) continue;
      for (int k = 0; k < dec.dim(); ++k) {
        const double v = f0.coeff(i, j, k) + out.r_star * gen.coeff(i, j, k);
        sq += v * v;
      }
    }
  out.residual = std::sqrt(sq);
  return out;
}

std::vector<double> recurrence_times(const Eigen::MatrixXd& A, double epsilon, double t_max) {
  require(A.rows() == A.cols(), "recurrence_times: A must be square");
  require(epsilon > 0.0 && t_max > 0.0, "recurrence_times: need epsilon, t_max > 0");
  require((A + A.transpose()).norm() <= 1e-12, "recurrence_times: A must be skew-symmetric");

  const double a_norm = A.norm();
  std::vector<double> out;
  if (a_norm * t_max < epsilon) {
    // |e^{tA} - I| <= t |A| < epsilon everywhere; report a coarse grid.
    out.reserve(1000);
    for (int i = 1; i <= 1000; ++i) out.push_back(t_max * i / 1000.0);
    return out;
  }

  // |e^{tA} - I|^2 = sum_i 4 sin^2(w_i t / 2) over the frequencies w_i,
  // the square roots of the eigenvalues of -A^2 = A^t A.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A.transpose() * A);
  const Eigen::VectorXd omega = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();

  const double step = epsilon / (4.0 * a_norm);
  const double count = std::floor(t_max / step);
  if (count > 6e8) throw numerical_error("recurrence_times: grid too fine");
  const long total = static_cast<long>(count);
  const double eps_sq = epsilon * epsilon;
  for (long i = 1; i <= total; ++i) {
    const double t = step * static_cast<double>(i);
    double sq = 0.0;
    for (Eigen::Index w = 0; w < omega.size(); ++w) {
      const double s = std::sin(0.5 * omega[w] * t);
      sq += 4.0 * s * s;
    }
    if (sq < eps_sq) out.push_back(t);
  }
  return out;
}

SolitonReport classify(const LieBracket& mu) {
  SolitonReport rep;
  const RicciData ric = ricci_operator(mu);
  rep.scalar = ric.scalar;
  rep.ric_sq_trace = ric.ric_sq_trace;

  const auto& dec = mu.dec();
  const int n = dec.n;
  const double ric_norm = ric.ric.norm();
  const double mu_sq = bracket_norms(mu).norm_sq;
  rep.flat = ric_norm <= 1e-8 * (1.0 + mu_sq);

  Eigen::MatrixXd einstein_dev = ric.ric;
  einstein_dev.diagonal().array() -= ric.scalar / n;
  if (einstein_dev.norm() <= 1e-8 * (1.0 + ric_norm)) rep.einstein_c = ric.scalar / n;

  rep.algebraic = algebraic_soliton_fit(mu);
  rep.semi_algebraic = semi_algebraic_fit(mu);

  if (rep.semi_algebraic.accepted) {
    rep.diagonal_flag = ricci_flow_diagonal_check(mu, DiagonalMode::algebraic) ==
                                DiagonalVerdict::yes
                            ? DiagonalFlag::yes
                            : DiagonalFlag::no;
    const Eigen::MatrixXd dp = rep.semi_algebraic.D.p_block();
    const Eigen::MatrixXd comm = dp * dp.transpose() - dp.transpose() * dp;
    rep.normality_flag = comm.norm() <= 1e-8 * (1.0 + dp.squaredNorm());

    const LinearMap dt{dec, rep.semi_algebraic.D.mat.transpose()};
    const LieBracket pin = pi_action(dt, mu);
    double pin_sq = 0.0;
    for (int i = 0; i < dec.dim(); ++i)
      for (int j = i + 1; j < dec.dim(); ++j)
        for (int k = 0; k < dec.dim(); ++k) {
          const double v = pin.coeff(i, j, k);
          pin_sq += 2.0 * v * v;
        }
    rep.dt_in_der = std::sqrt(pin_sq) <=
                    1e-8 * (1.0 + bracket_norm(mu) * (1.0 + dt.mat.norm()));
  }

  if (rep.algebraic.accepted) {
    const double dk = dec.q > 0 ? rep.algebraic.D.mat.leftCols(dec.q).norm() : 0.0;
    rep.dk_zero_check = dk <= 1e-8;
  }
  return rep;
}

}  // namespace bracketflow
