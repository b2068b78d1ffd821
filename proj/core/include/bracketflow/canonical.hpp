#pragma once

#include "bracketflow/bracket.hpp"
#include "bracketflow/linear_map.hpp"

namespace bracketflow {

struct CanonicalizeResult {
  LieBracket bracket;
  LinearMap h;
};

// Moves the complement of k to the Killing-orthogonal one: returns (h.mu, h)
// with B_{h.mu}(k, p) = 0 in the standard basis. Requires (h1) and B|_{kxk}
// negative definite (the numerical face of isotropy compactness).
CanonicalizeResult canonicalize_reductive(const LieBracket& mu);

}  // namespace bracketflow
