#pragma once

#include <vector>

#include "bracketflow/bracket.hpp"
#include "bracketflow/linear_map.hpp"

namespace bracketflow {

// Constrained matrix subspaces for the derivation solve:
//   full            all of gl(q+n)
//   k_to_k          A(k) inside k (zero bottom-left block)
//   k_zero_p_block  block form [[0,0],[0,A_p]]
//   k_annihilated   A|_k = 0 (zero k-columns, p maps anywhere)
enum class DerivationConstraint { full, k_to_k, k_zero_p_block, k_annihilated };

// Orthonormal (Frobenius) basis of { A in subspace : pi(A)mu = 0 }.
std::vector<LinearMap> derivation_space(const LieBracket& mu, DerivationConstraint constraint);

}  // namespace bracketflow
