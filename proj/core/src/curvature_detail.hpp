#pragma once

#include "bracketflow/curvature.hpp"

namespace bracketflow::detail {

// Curvature without the input sanity gates, for ODE right-hand sides: stage
// points of an adaptive step leave the Jacobi variety by O((h |f|/|mu|)^2)
// and rejected trial steps by much more, so gating there is wrong. Callers
// must have validated the initial bracket themselves.
RicciData ricci_operator_raw(const LieBracket& mu);

}  // namespace bracketflow::detail
