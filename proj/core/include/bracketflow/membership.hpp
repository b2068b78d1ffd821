#pragma once

#include "bracketflow/bracket.hpp"
#include "bracketflow/types.hpp"

namespace bracketflow {

// Membership report for the admissibility conditions on (mu, k+p):
// (h1) Jacobi + k a subalgebra acting on p; (h3) ad Z|_p skew for Z in k;
// (h4) the isotropy representation faithful. (h2), closedness of the
// isotropy subgroup, is not algorithmically decidable: always "unknown".
struct MembershipReport {
  double jacobi_residual = 0;
  bool k_subalgebra = true;
  bool k_action_on_p = true;
  bool h3_skew = true;
  bool h4_faithful = true;
  TriState h2_closed = TriState::unknown;
  double tolerance = 0;

  bool passed() const {
    return k_subalgebra && k_action_on_p && h3_skew && h4_faithful &&
           jacobi_residual <= tolerance;
  }
};

MembershipReport check_membership(const LieBracket& mu, double tolerance = 1e-8);

}  // namespace bracketflow
