#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bracketflow::testing {

struct PropertyResult {
  std::string name;
  bool passed = true;
  double worst = 0;       // largest violation ratio seen (<= 1 means pass)
  std::string note;       // what failed, when it did
};

// Runs every registered invariant on `trials` seeded random well-conditioned
// inputs. A property passes when no trial violates its bound.
std::vector<PropertyResult> run_property_suite(std::uint64_t seed, int trials);

}  // namespace bracketflow::testing
