#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "support/test_support.hpp"

using namespace bracketflow;
using namespace bracketflow::testing;

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

bool identical(const LieBracket& a, const LieBracket& b) {
  if (!(a.dec() == b.dec())) return false;
  const int d = a.dec().dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        if (a.coeff(i, j, k) != b.coeff(i, j, k)) return false;
  return true;
}

}  // namespace

TEST_CASE("bracket json round-trips bit-exactly") {
  Rng rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    const LieBracket mu = random_admissible(rng);
    CHECK(identical(bracket_from_json(bracket_to_json(mu)), mu));
  }
}

TEST_CASE("bracket json shape") {
  const auto j = bracket_to_json(scenario_dpnop(1, -1, 1));
  CHECK(j["q"] == 1);
  CHECK(j["n"] == 3);
  REQUIRE(j["terms"].is_array());
  std::tuple<int, int, int> prev{-1, -1, -1};
  for (const auto& term : j["terms"]) {
    const std::tuple<int, int, int> key{term["i"].get<int>(), term["j"].get<int>(),
                                        term["k"].get<int>()};
    CHECK(term["i"].get<int>() < term["j"].get<int>());
    CHECK(term["c"].get<double>() != 0.0);
    CHECK(prev < key);
    prev = key;
  }
}

TEST_CASE("bracket files round-trip through disk") {
  const auto path =
      (std::filesystem::temp_directory_path() / "bracketflow_io_roundtrip.json").string();
  const LieBracket mu = scenario_nosemi2(0.25, -1.5, 1.0 / 3.0);
  write_bracket_file(path, mu);
  CHECK(identical(read_bracket_file(path), mu));
  std::filesystem::remove(path);
}

TEST_CASE("bracket reader rejects malformed input") {
  auto from_text = [](const std::string& text) {
    const auto path =
        (std::filesystem::temp_directory_path() / "bracketflow_io_bad.json").string();
    std::ofstream(path) << text;
    const LieBracket mu = read_bracket_file(path);
    std::filesystem::remove(path);
    return mu;
  };
  CHECK_THROWS_AS((void)from_text("{ not json"), validation_error);
  CHECK_THROWS_AS((void)from_text("[1, 2, 3]"), validation_error);
  CHECK_THROWS_AS((void)from_text(R"({"q": 0})"), validation_error);
  CHECK_THROWS_AS((void)from_text(R"({"q": 0.5, "n": 3, "terms": []})"), validation_error);
  CHECK_THROWS_AS((void)from_text(R"({"q": 0, "n": 0, "terms": []})"), validation_error);
  CHECK_THROWS_AS((void)from_text(R"({"q": 0, "n": 3, "terms": [{"i": 1, "j": 1, "k": 0, "c": 1}]})"),
                  validation_error);
  CHECK_THROWS_AS((void)from_text(R"({"q": 0, "n": 3, "terms": [{"i": 0, "j": 1, "k": 3, "c": 1}]})"),
                  validation_error);
  CHECK_THROWS_AS((void)from_text(R"({"q": 0, "n": 3, "terms": [{"i": 0, "j": 1, "k": 2, "c": "x"}]})"),
                  validation_error);
  CHECK_THROWS_AS(
      (void)from_text(
          R"({"q": 0, "n": 3, "terms": [{"i": 0, "j": 1, "k": 2, "c": 1}, {"i": 0, "j": 1, "k": 2, "c": 2}]})"),
      validation_error);
  CHECK_THROWS_AS((void)read_bracket_file("/nonexistent/bracketflow.json"), validation_error);
}

TEST_CASE("trajectory csv layout and round-trip precision") {
  auto opts = IntegrateOptions{};
  opts.record_steps = false;
  opts.sample_times = {0.5, 1.0};
  const auto traj =
      integrate(scenario_heisenberg(), NormalizationPolicy::unnormalized(), 2.0, opts);
  std::ostringstream os;
  write_trajectory_csv(os, traj);

  std::stringstream ss(os.str());
  std::string line;
  REQUIRE(std::getline(ss, line));
  const auto header = split(line);
  REQUIRE(header.size() == 8 + 9);  // d = 3: three i<j pairs, every target
  CHECK(header[0] == "t");
  CHECK(header[1] == "tau");
  CHECK(header[2] == "c");
  CHECK(header[3] == "R");
  CHECK(header[4] == "ric_norm");
  CHECK(header[5] == "mu_norm_k");
  CHECK(header[6] == "mu_norm_p");
  CHECK(header[7] == "jacobi_residual");
  CHECK(header[8] == "c_0_1_0");
  CHECK(header.back() == "c_1_2_2");

  std::size_t rows = 0;
  for (const auto& state : traj.states) {
    REQUIRE(std::getline(ss, line));
    const auto fields = split(line);
    REQUIRE(fields.size() == header.size());
    // Shortest round-trip formatting parses back to the exact double.
    CHECK(std::strtod(fields[0].c_str(), nullptr) == state.t);
    CHECK(std::strtod(fields[1].c_str(), nullptr) == state.tau);
    CHECK(std::strtod(fields[2].c_str(), nullptr) == state.c);
    CHECK(std::strtod(fields[3].c_str(), nullptr) ==
          doctest::Approx(scalar_curvature(state.mu)).epsilon(1e-15));
    CHECK(std::strtod(fields[10].c_str(), nullptr) == state.mu.coeff(0, 1, 2));
    ++rows;
  }
  CHECK(rows == traj.states.size());
  CHECK(!std::getline(ss, line));
}

TEST_CASE("report json shapes") {
  SUBCASE("membership") {
    const auto j = membership_to_json(check_membership(scenario_dpnop(1, -1, 1)));
    CHECK(j["passed"] == true);
    CHECK(j["h2_closed"] == "unknown");
    CHECK(j["jacobi_residual"].get<double>() <= 1e-12);
    CHECK(j["k_subalgebra"] == true);
    CHECK(j["k_action_on_p"] == true);
    CHECK(j["h3_skew"] == true);
    CHECK(j["h4_faithful"] == true);
    CHECK(j["tolerance"].is_number());
  }
  SUBCASE("soliton report") {
    const auto j = soliton_report_to_json(classify(scenario_heisenberg()));
    CHECK(j["einstein_c"].is_null());
    CHECK(j["flat"] == false);
    CHECK(j["diagonal_flag"] == "yes");
    CHECK(j["algebraic"]["accepted"] == true);
    CHECK(j["algebraic"]["c"].get<double>() == doctest::Approx(-1.5));
    CHECK(j["semi_algebraic"]["D"].size() == 3);
    CHECK(j["semi_algebraic"]["D"][0].size() == 3);
    CHECK(j["scalar"].get<double>() == doctest::Approx(-0.5));

    const auto je = soliton_report_to_json(classify(so3()));
    CHECK(je["einstein_c"].get<double>() == doctest::Approx(0.5));
  }
  SUBCASE("omega report") {
    IntegrateOptions o;
    o.detect_convergence = true;
    o.convergence_field_tol = 1e-7;
    o.convergence_cauchy_tol = 1e-6;
    const auto traj = integrate(scenario_nosemi2(1, 1, 1),
                                NormalizationPolicy::bracket_norm_unit(), 1e12, o);
    const auto j = omega_report_to_json(omega_limit(traj, {1e-7, 1e-6, 10}));
    CHECK(j["verdict"] == "limit");
    CHECK(j["limit"].is_object());
    CHECK(j["limit"]["n"] == 6);
    CHECK(j["tail_diameter"].get<double>() <= 1e-5);
    CHECK(j["tail_field_norm"].get<double>() <= 1e-7);

    const auto ju = omega_report_to_json(
        omega_limit(integrate(scenario_heisenberg(), NormalizationPolicy::unnormalized(), 1.0)));
    CHECK(ju["verdict"] == "undecided");
    CHECK(ju["limit"].is_null());
  }
  SUBCASE("equivalence report") {
    const auto j = equivalence_report_to_json(equivalence_check(scenario_heisenberg(), 2.0));
    CHECK(j["sup_mu_dev"].get<double>() <= 1e-6);
    CHECK(j["sup_P_dev"].get<double>() <= 1e-6);
    CHECK(j["samples"].get<int>() > 0);
  }
}
