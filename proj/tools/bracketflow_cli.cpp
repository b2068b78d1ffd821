#include <CLI11.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <bracketflow/bracketflow.hpp>
#include <bracketflow/io.hpp>

namespace bf = bracketflow;

namespace {

struct FlowFlags {
  std::string normalization = "none";
  double t_end = 10.0;
  double rtol = 1e-9;
  double atol = 1e-12;
  double step_floor = 1e-14;
  double blow_up = 1e8;
  int samples = 0;  // 0 = record every accepted step
};

void add_flow_flags(CLI::App* cmd, FlowFlags& f) {
  cmd->add_option("--normalization", f.normalization,
                  "none | fixed:R | norm | norm2 | scalar")
      ->capture_default_str();
  cmd->add_option("--t-end", f.t_end, "integration horizon")->capture_default_str();
  cmd->add_option("--rtol", f.rtol, "relative tolerance")->capture_default_str();
  cmd->add_option("--atol", f.atol, "absolute tolerance")->capture_default_str();
  cmd->add_option("--step-floor", f.step_floor, "minimum step size")->capture_default_str();
  cmd->add_option("--blow-up", f.blow_up, "bracket-norm blow-up threshold")
      ->capture_default_str();
  cmd->add_option("--samples", f.samples,
                  "record this many evenly spaced samples instead of every step");
}

bf::NormalizationPolicy parse_policy(const std::string& text) {
  if (text == "none") return bf::NormalizationPolicy::unnormalized();
  if (text == "norm") return bf::NormalizationPolicy::bracket_norm_unit();
  if (text == "norm2") return bf::NormalizationPolicy::bracket_norm_bounded();
  if (text == "scalar") return bf::NormalizationPolicy::scalar_constant();
  if (text.rfind("fixed:", 0) == 0) {
    char* end = nullptr;
    const std::string num = text.substr(6);
    const double r = std::strtod(num.c_str(), &end);
    bf::require(!num.empty() && end == num.c_str() + num.size(),
                "bad fixed normalization value '" + num + "'");
    return bf::NormalizationPolicy::fixed_r(r);
  }
  throw bf::validation_error("unknown normalization '" + text + "'");
}

bf::IntegrateOptions integrate_options(const FlowFlags& f) {
  bf::IntegrateOptions o;
  o.rtol = f.rtol;
  o.atol = f.atol;
  o.step_floor = f.step_floor;
  o.blow_up_norm = f.blow_up;
  if (f.samples > 0) {
    o.record_steps = false;
    for (int i = 1; i <= f.samples; ++i)
      o.sample_times.push_back(f.t_end * i / f.samples);
  }
  return o;
}

bf::LieBracket resolve_input(const std::string& input, const std::string& params_file) {
  if (!params_file.empty()) {
    std::ifstream in(params_file);
    bf::require(in.good(), "cannot open params file: " + params_file);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw bf::validation_error("malformed JSON in " + params_file + ": " + e.what());
    }
    bf::require(j.is_object() && j.contains("name") && j["name"].is_string(),
                "params file needs a 'name' string");
    bf::ScenarioSpec spec;
    spec.name = j["name"].get<std::string>();
    if (j.contains("params")) {
      bf::require(j["params"].is_array(), "params file 'params' must be an array");
      for (const auto& v : j["params"]) {
        bf::require(v.is_number(), "params file 'params' must hold numbers");
        spec.params.push_back(v.get<double>());
      }
    }
    return bf::make_scenario(spec);
  }
  bf::require(!input.empty(), "no bracket or scenario given");
  if (std::filesystem::exists(input)) return bf::read_bracket_file(input);
  return bf::make_scenario(bf::parse_scenario(input));
}

void write_json_output(const nlohmann::json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream os(out);
  bf::require(os.good(), "cannot open output file: " + out);
  os << j.dump(2) << "\n";
}

const char* termination_name(bf::Termination t) {
  switch (t) {
    case bf::Termination::reached_t_end:
      return "reached_t_end";
    case bf::Termination::blow_up:
      return "blow_up";
    case bf::Termination::converged:
      return "converged";
    case bf::Termination::step_floor:
      return "step_floor";
  }
  return "reached_t_end";
}

int run_flow(const bf::LieBracket& mu, const FlowFlags& flags, const std::string& out) {
  const auto traj =
      bf::integrate(mu, parse_policy(flags.normalization), flags.t_end, integrate_options(flags));
  if (out.empty()) {
    bf::write_trajectory_csv(std::cout, traj);
  } else {
    std::ofstream os(out);
    bf::require(os.good(), "cannot open output file: " + out);
    bf::write_trajectory_csv(os, traj);
  }
  std::cerr << "termination: " << termination_name(traj.termination)
            << "  states: " << traj.states.size() << "\n";
  return 0;
}

std::string sanitize(const std::string& name) {
  std::string out = name;
  for (char& c : out)
    if (c == ':' || c == ',' || c == '/' || c == '.') c = '_';
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the bracket flow on homogeneous spaces"};
  app.require_subcommand(1);

  std::string input;
  std::string params_file;
  std::string out;
  FlowFlags flags;

  auto* check = app.add_subcommand("check", "membership report for a bracket or scenario");
  check->add_option("input", input, "bracket JSON file or scenario (name:p1,p2,...)");
  check->add_option("--params-file", params_file, "scenario spec as JSON {name, params}");

  auto* flow = app.add_subcommand("flow", "integrate the bracket flow, write trajectory CSV");
  flow->add_option("input", input, "bracket JSON file or scenario");
  flow->add_option("--params-file", params_file, "scenario spec as JSON {name, params}");
  add_flow_flags(flow, flags);
  flow->add_option("--out", out, "CSV output path (default stdout)");

  auto* classify = app.add_subcommand("classify", "soliton classification report");
  classify->add_option("input", input, "bracket JSON file or scenario");
  classify->add_option("--params-file", params_file, "scenario spec as JSON {name, params}");
  classify->add_option("--out", out, "JSON output path (default stdout)");

  auto* limit = app.add_subcommand("limit", "run the flow and report the omega-limit verdict");
  limit->add_option("input", input, "bracket JSON file or scenario");
  limit->add_option("--params-file", params_file, "scenario spec as JSON {name, params}");
  add_flow_flags(limit, flags);
  double field_tol = 1e-10;
  double cauchy_tol = 1e-8;
  limit->add_option("--field-tol", field_tol, "field norm threshold")->capture_default_str();
  limit->add_option("--cauchy-tol", cauchy_tol, "tail diameter threshold")->capture_default_str();
  limit->add_option("--out", out, "JSON output path (default stdout)");

  auto* scenarios = app.add_subcommand("scenarios", "list built-in scenarios");

  auto* sweep = app.add_subcommand("sweep", "run flows for several scenarios concurrently");
  std::vector<std::string> sweep_inputs;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string out_dir = ".";
  sweep->add_option("inputs", sweep_inputs, "scenarios or bracket files")->required();
  sweep->add_option("--jobs", jobs, "concurrent runs")->capture_default_str();
  sweep->add_option("--out-dir", out_dir, "directory for the CSV files")->capture_default_str();
  add_flow_flags(sweep, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*check) {
      const auto report = bf::check_membership(resolve_input(input, params_file));
      std::cout << bf::membership_to_json(report).dump(2) << "\n";
      return report.passed() ? 0 : 1;
    }
    if (*flow) return run_flow(resolve_input(input, params_file), flags, out);
    if (*classify) {
      const auto report = bf::classify(resolve_input(input, params_file));
      write_json_output(bf::soliton_report_to_json(report), out);
      return 0;
    }
    if (*limit) {
      auto opts = integrate_options(flags);
      opts.detect_convergence = true;
      opts.convergence_field_tol = field_tol;
      opts.convergence_cauchy_tol = cauchy_tol;
      const auto traj = bf::integrate(resolve_input(input, params_file),
                                      parse_policy(flags.normalization), flags.t_end, opts);
      bf::OmegaLimitOptions oo;
      oo.field_tol = field_tol;
      oo.cauchy_tol = cauchy_tol;
      write_json_output(bf::omega_report_to_json(bf::omega_limit(traj, oo)), out);
      return 0;
    }
    if (*scenarios) {
      std::cout << "nosemi2:a,b,c    (default 1,1,1)\n"
                << "dpnop:a,b,c      (default 1,-1,1)\n"
                << "heisenberg\n"
                << "abelian:n        (default 3)\n";
      return 0;
    }
    if (*sweep) {
      std::filesystem::create_directories(out_dir);
      std::atomic<std::size_t> next{0};
      std::atomic<int> worst{0};
      std::mutex io_mutex;
      auto worker = [&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= sweep_inputs.size()) return;
          const std::string& name = sweep_inputs[i];
          int code = 0;
          std::string message;
          try {
            const auto mu = resolve_input(name, "");
            const auto traj = bf::integrate(mu, parse_policy(flags.normalization), flags.t_end,
                                            integrate_options(flags));
            const auto path =
                std::filesystem::path(out_dir) / (sanitize(name) + ".csv");
            std::ofstream os(path);
            bf::require(os.good(), "cannot open output file: " + path.string());
            bf::write_trajectory_csv(os, traj);
            message = termination_name(traj.termination);
          } catch (const bf::validation_error& e) {
            code = 1;
            message = e.what();
          } catch (const bf::numerical_error& e) {
            code = 2;
            message = e.what();
          }
          std::lock_guard<std::mutex> lock(io_mutex);
          std::cout << name << ": " << message << "\n";
          int prev = worst.load();
          while (prev < code && !worst.compare_exchange_weak(prev, code)) {
          }
        }
      };
      std::vector<std::thread> pool;
      for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
      return worst.load();
    }
  } catch (const bf::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const bf::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
