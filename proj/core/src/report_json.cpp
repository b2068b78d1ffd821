#include <cmath>

#include "bracketflow/io.hpp"

namespace bracketflow {

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json fit_to_json(const SolitonFit& fit) {
  return {{"c", fit.c},
          {"residual", fit.residual},
          {"accepted", fit.accepted},
          {"D", matrix_to_json(fit.D.mat)}};
}

const char* diagonal_flag_name(DiagonalFlag flag) {
  switch (flag) {
    case DiagonalFlag::yes:
      return "yes";
    case DiagonalFlag::no:
      return "no";
    case DiagonalFlag::not_applicable:
      return "not_applicable";
  }
  return "not_applicable";
}

const char* verdict_name(OmegaVerdict v) {
  switch (v) {
    case OmegaVerdict::limit:
      return "limit";
    case OmegaVerdict::divergent:
      return "divergent";
    case OmegaVerdict::undecided:
      return "undecided";
  }
  return "undecided";
}

}  // namespace

nlohmann::json membership_to_json(const MembershipReport& report) {
  return {{"jacobi_residual", report.jacobi_residual},
          {"k_subalgebra", report.k_subalgebra},
          {"k_action_on_p", report.k_action_on_p},
          {"h3_skew", report.h3_skew},
          {"h4_faithful", report.h4_faithful},
          {"h2_closed", to_string(report.h2_closed)},
          {"tolerance", report.tolerance},
          {"passed", report.passed()}};
}

nlohmann::json soliton_report_to_json(const SolitonReport& report) {
  nlohmann::json j{{"flat", report.flat},
                   {"algebraic", fit_to_json(report.algebraic)},
                   {"semi_algebraic", fit_to_json(report.semi_algebraic)},
                   {"diagonal_flag", diagonal_flag_name(report.diagonal_flag)},
                   {"normality_flag", report.normality_flag},
                   {"dt_in_der", report.dt_in_der},
                   {"dk_zero_check", report.dk_zero_check},
                   {"scalar", report.scalar},
                   {"ric_sq_trace", report.ric_sq_trace}};
  j["einstein_c"] = report.einstein_c ? nlohmann::json(*report.einstein_c) : nlohmann::json();
  return j;
}

nlohmann::json omega_report_to_json(const OmegaLimitReport& report) {
  nlohmann::json j{{"verdict", verdict_name(report.verdict)},
                   {"tail_diameter", report.tail_diameter}};
  j["tail_field_norm"] =
      std::isfinite(report.tail_field_norm) ? nlohmann::json(report.tail_field_norm) : nlohmann::json();
  j["limit"] = report.limit ? bracket_to_json(*report.limit) : nlohmann::json();
  return j;
}

nlohmann::json equivalence_report_to_json(const EquivalenceReport& report) {
  return {{"sup_mu_dev", report.sup_mu_dev},
          {"sup_P_dev", report.sup_P_dev},
          {"samples", report.samples}};
}

}  // namespace bracketflow
