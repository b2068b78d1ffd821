#include "support/test_support.hpp"

#include <cmath>

namespace bracketflow::testing {

LieBracket so3() {
  LieBracket mu(Decomposition{0, 3});
  mu.set(0, 1, 2, 1.0);
  mu.set(1, 2, 0, 1.0);
  mu.set(2, 0, 1, 1.0);
  return mu;
}

LieBracket so3k() {
  LieBracket mu(Decomposition{1, 2});
  mu.set(0, 1, 2, 1.0);
  mu.set(0, 2, 1, -1.0);
  mu.set(1, 2, 0, 1.0);
  return mu;
}

LieBracket filiform4() {
  LieBracket mu(Decomposition{0, 4});
  mu.set(0, 1, 2, 1.0);
  mu.set(0, 2, 3, 1.0);
  return mu;
}

Abc nosemi2_abc(const LieBracket& mu) {
  return {mu.coeff(0, 1, 2), mu.coeff(0, 3, 4), mu.coeff(3, 4, 5)};
}

Abc dpnop_abc(const LieBracket& mu) {
  return {mu.coeff(1, 2, 3), mu.coeff(1, 2, 0), mu.coeff(2, 3, 1)};
}

Abc nosemi2_closed(double t) {
  const double b = std::pow(3.0 * t + 1.0, -1.0 / 6.0);
  return {b * b * b, b, b * b * b};
}

Abc dpnop_closed(double t) {
  const double c = std::pow(3.0 * t + 1.0, 1.0 / 6.0);
  return {1.0 / (c * c * c), -1.0 / (c * c), c};
}

double h3_scale(double t) { return std::pow(3.0 * t + 1.0, -0.5); }

Eigen::MatrixXd h3_P(double t) {
  const double s = std::pow(3.0 * t + 1.0, 1.0 / 3.0);
  Eigen::Vector3d diag(s, s, 1.0 / s);
  return diag.asDiagonal();
}

double full_distance(const LieBracket& a, const LieBracket& b) {
  require(a.dec() == b.dec(), "full_distance: mismatched decompositions");
  const int d = a.dim();
  double acc = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const double v = a.coeff(i, j, k) - b.coeff(i, j, k);
        acc += 2.0 * v * v;
      }
  return std::sqrt(acc);
}

double full_norm(const LieBracket& mu) {
  return full_distance(mu, LieBracket(mu.dec()));
}

Eigen::VectorXd ric_oracle_nosemi2(double a, double b, double c) {
  (void)b;
  Eigen::VectorXd r(6);
  r << -0.5 * a * a, -0.5 * a * a, 0.5 * a * a, -0.5 * c * c, -0.5 * c * c, 0.5 * c * c;
  return r;
}

Eigen::VectorXd ric_oracle_dpnop(double a, double b, double c) {
  const double w = -0.5 * a * a + b + a * c;
  Eigen::VectorXd r(3);
  r << w, w, 0.5 * a * a;
  return r;
}

namespace {

bool entry_allowed(const Decomposition& dec, int row, int col, DerivationConstraint cons) {
  switch (cons) {
    case DerivationConstraint::full:
      return true;
    case DerivationConstraint::k_to_k:
      return !(dec.in_k(col) && !dec.in_k(row));
    case DerivationConstraint::k_zero_p_block:
      return !dec.in_k(col) && !dec.in_k(row);
    case DerivationConstraint::k_annihilated:
      return !dec.in_k(col);
  }
  return true;
}

}  // namespace

int derivation_dim_bruteforce(const LieBracket& mu, DerivationConstraint constraint) {
  const int d = mu.dim();
  std::vector<std::pair<int, int>> entries;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      if (entry_allowed(mu.dec(), r, c, constraint)) entries.emplace_back(r, c);

  Eigen::MatrixXd L(d * d * d, static_cast<int>(entries.size()));
  for (int col = 0; col < static_cast<int>(entries.size()); ++col) {
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(d, d);
    E(entries[col].first, entries[col].second) = 1.0;
    const LieBracket moved = pi_action(E, mu);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) L((i * d + j) * d + k, col) = moved.coeff(i, j, k);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(L);
  lu.setThreshold(1e-10);
  return static_cast<int>(entries.size()) - static_cast<int>(lu.rank());
}

double well_conditioned_param(Rng& rng) {
  const double v = positive_param(rng);
  return (rng() & 1u) ? v : -v;
}

double positive_param(Rng& rng) {
  std::uniform_real_distribution<double> mag(0.25, 1.75);
  return mag(rng);
}

Eigen::MatrixXd random_orthogonal(Rng& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

Eigen::MatrixXd random_perturbation(Rng& rng, int n, double scale) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) h(i, j) += scale * gauss(rng);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(h);
    if (svd.singularValues()(n - 1) > 0.2) return h;
  }
}

namespace {

LieBracket moved_scenario(Rng& rng, const LieBracket& base) {
  const auto& dec = base.dec();
  if (dec.q == 0) {
    if (rng() % 3 == 0) return base;
    return group_action(random_perturbation(rng, dec.dim()), base);
  }
  if (rng() % 3 == 0) return base;
  return group_action(LinearMap::from_p_block(dec, random_orthogonal(rng, dec.n)), base);
}

}  // namespace

// Isometric moves keep curvature conjugate, so soliton certificates survive.
LieBracket moved_orthogonal(Rng& rng, const LieBracket& base) {
  const auto& dec = base.dec();
  if (dec.q == 0) return group_action(random_orthogonal(rng, dec.dim()), base);
  return group_action(LinearMap::from_p_block(dec, random_orthogonal(rng, dec.n)), base);
}

LieBracket random_admissible(Rng& rng) {
  switch (rng() % 6) {
    case 0:
      return moved_scenario(rng, scenario_nosemi2(well_conditioned_param(rng),
                                                  well_conditioned_param(rng),
                                                  well_conditioned_param(rng)));
    case 1:
      return moved_scenario(
          rng, scenario_dpnop(well_conditioned_param(rng), well_conditioned_param(rng),
                              well_conditioned_param(rng)));
    case 2:
      return moved_scenario(rng, scenario_heisenberg());
    case 3:
      return moved_scenario(rng, scenario_abelian(2 + static_cast<int>(rng() % 3)));
    case 4:
      return moved_scenario(rng, so3());
    default:
      return moved_scenario(rng, so3k());
  }
}

LieBracket random_nilpotent_q0(Rng& rng) {
  const LieBracket base = (rng() & 1u) ? scenario_heisenberg() : filiform4();
  return moved_scenario(rng, rescale(positive_param(rng), base));
}

LieBracket random_soliton_generator(Rng& rng) {
  switch (rng() % 3) {
    case 0:
      // Any inner product on the Heisenberg algebra is a nilsoliton metric
      // (Milnor frames), so the full GL orbit qualifies.
      return moved_scenario(rng, rescale(positive_param(rng), scenario_heisenberg()));
    case 1:
      return moved_orthogonal(rng, scenario_dpnop(1, -1, 1));
    default:
      return moved_orthogonal(rng, rescale(positive_param(rng), so3()));
  }
}

}  // namespace bracketflow::testing
