#include "bracketflow/derivations.hpp"

#include <Eigen/SVD>
#include <utility>

namespace bracketflow {

namespace {

// Free entry positions (row, col) of the constrained subspace.
std::vector<std::pair<int, int>> free_entries(const Decomposition& dec,
                                              DerivationConstraint constraint) {
  const int d = dec.dim();
  std::vector<std::pair<int, int>> out;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      bool keep = true;
      switch (constraint) {
        case DerivationConstraint::full:
          break;
        case DerivationConstraint::k_to_k:
          keep = !(dec.in_k(c) && !dec.in_k(r));  // k-columns stay inside k
          break;
        case DerivationConstraint::k_zero_p_block:
          keep = !dec.in_k(c) && !dec.in_k(r);
          break;
        case DerivationConstraint::k_annihilated:
          keep = !dec.in_k(c);
          break;
      }
      if (keep) out.emplace_back(r, c);
    }
  return out;
}

}  // namespace

std::vector<LinearMap> derivation_space(const LieBracket& mu, DerivationConstraint constraint) {
  const auto& dec = mu.dec();
  const int d = dec.dim();
  const auto entries = free_entries(dec, constraint);
  const int m = static_cast<int>(entries.size());
  if (m == 0) return {};

  // Columns: pi(E_rc) mu on the independent slots i<j, all targets.
  const int rows = d * (d - 1) / 2 * d;
  Eigen::MatrixXd L(rows, m);
  for (int col = 0; col < m; ++col) {
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(d, d);
    E(entries[col].first, entries[col].second) = 1.0;
    const LieBracket t = pi_action(E, mu);
    int row = 0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        for (int k = 0; k < d; ++k) L(row++, col) = t.coeff(i, j, k);
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(L, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv[0] : 0.0;
  const double thresh = 1e-10 * smax;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > thresh) ++rank;

  std::vector<LinearMap> basis;
  basis.reserve(m - rank);
  for (int col = rank; col < m; ++col) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(d, d);
    for (int e = 0; e < m; ++e) A(entries[e].first, entries[e].second) = svd.matrixV()(e, col);
    basis.push_back(LinearMap{dec, std::move(A)});
  }
  return basis;
}

}  // namespace bracketflow
