#pragma once

#include <stdexcept>
#include <string>

namespace bracketflow {

// Bad inputs (dimension mismatches, singular maps, malformed files, failed
// preconditions that a caller could have checked).
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Failures of the numerics themselves (loss of positive definiteness,
// undefined normalization, step-count explosions).
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TriState { yes, no, unknown };

std::string to_string(TriState s);

// Fixed splitting g = k + p. Basis indices 0..q-1 are the k-basis,
// q..q+n-1 the p-basis; both declared orthonormal for the norms in use.
struct Decomposition {
  int q = 0;
  int n = 0;

  int dim() const { return q + n; }
  bool in_k(int i) const { return i < q; }
  bool operator==(const Decomposition&) const = default;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw validation_error(msg);
}

}  // namespace bracketflow
