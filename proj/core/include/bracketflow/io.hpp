#pragma once

#include <nlohmann/json.hpp>
#include <iosfwd>
#include <string>

#include "bracketflow/bracket.hpp"
#include "bracketflow/flow.hpp"
#include "bracketflow/membership.hpp"
#include "bracketflow/soliton.hpp"

namespace bracketflow {

// Bracket file format:
//   { "q": int, "n": int, "terms": [ {"i": int, "j": int, "k": int, "c": float} ] }
// 0-based indices into the combined basis, i < j terms only; the reader
// completes antisymmetrically, the writer sorts terms lexicographically.
nlohmann::json bracket_to_json(const LieBracket& mu);
LieBracket bracket_from_json(const nlohmann::json& j);
LieBracket read_bracket_file(const std::string& path);
void write_bracket_file(const std::string& path, const LieBracket& mu);

// Trajectory CSV: t, tau, c, R, ric_norm, mu_norm_k, mu_norm_p,
// jacobi_residual, then one column c_i_j_k per structure constant (all i<j
// pairs, every target) in sorted key order. Header row mandatory; floats in
// shortest round-trip form.
void write_trajectory_csv(std::ostream& os, const FlowTrajectory& trajectory);

nlohmann::json membership_to_json(const MembershipReport& report);
nlohmann::json soliton_report_to_json(const SolitonReport& report);
nlohmann::json omega_report_to_json(const OmegaLimitReport& report);
nlohmann::json equivalence_report_to_json(const EquivalenceReport& report);

}  // namespace bracketflow
