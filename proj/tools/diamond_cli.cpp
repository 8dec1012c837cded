// Command-line front end: bounds, sweep, capacity-check, simulate, example.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "diamond/diamond.hpp"
#include "diamond/report.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kReferenceMismatch = 1,
  kUsage = 2,
  kDomain = 3,
  kStructure = 4,
  kSimulation = 5,
  kIo = 6,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Text, Json, Csv };

Format parse_format(const std::string& s, Format fallback, bool csv_allowed) {
  if (s.empty()) return fallback;
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "csv") {
    if (!csv_allowed) throw UsageError("--format csv is only available for sweep");
    return Format::Csv;
  }
  throw UsageError("unknown --format '" + s + "' (expected text, json or csv)");
}

// --tol wins over DIAMOND_TOL, which wins over the library default.
diamond::Tolerances resolve_tolerances(const std::optional<double>& flag) {
  double tol = diamond::Tolerances{}.value;
  if (flag) {
    tol = *flag;
  } else if (const char* env = std::getenv("DIAMOND_TOL"); env && *env) {
    char* end = nullptr;
    tol = std::strtod(env, &end);
    if (end == env || *end != '\0') throw UsageError(std::string("DIAMOND_TOL is not a number: ") + env);
  }
  try {
    return diamond::Tolerances::uniform(tol);
  } catch (const diamond::DomainError&) {
    throw UsageError("tolerance must lie in (0, 1e-2), got " + std::to_string(tol));
  }
}

diamond::Decoder parse_decoder(const std::string& s) {
  if (s == "md" || s == "minimum-distance") return diamond::Decoder::MinimumDistance;
  if (s == "jt" || s == "joint-typicality") return diamond::Decoder::JointTypicality;
  throw UsageError("unknown --decoder '" + s + "' (expected minimum-distance or joint-typicality)");
}

struct Output {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  explicit Output(const std::string& path) {
    if (path.empty()) return;
    file.open(path, std::ios::out | std::ios::trunc);
    if (!file) throw IoError("cannot open output file '" + path + "'");
    stream = &file;
  }

  void finish() {
    stream->flush();
    if (!*stream) throw IoError("write to output failed");
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacity bounds and simulation for the Gaussian multiple access diamond channel"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<double> tol_flag;
  std::string format_name;
  std::string output_path;
  app.add_option("--tol", tol_flag, "Absolute tolerance on correlations and rates (overrides DIAMOND_TOL)");
  app.add_option("--format", format_name, "Output format: text, json or csv (csv for sweep only)");
  app.add_option("--output", output_path, "Write the report to PATH instead of stdout");

  double r1 = 0, r2 = 0, p1 = 0, p2 = 0;
  auto* bounds = app.add_subcommand("bounds", "Lower, upper and cut-set bounds for one channel");
  bounds->add_option("--r1", r1, "Rate of the link into relay 1 (bits)")->required();
  bounds->add_option("--r2", r2, "Rate of the link into relay 2 (bits)")->required();
  bounds->add_option("--p1", p1, "Power of relay 1 (SNR)")->required();
  bounds->add_option("--p2", p2, "Power of relay 2 (SNR)")->required();

  double sweep_p = 0;
  std::optional<double> r0_min, r0_max;
  int steps = 101;
  auto* sweep = app.add_subcommand("sweep", "Symmetric bounds over a range of link rates (CSV)");
  sweep->add_option("--p", sweep_p, "Relay power (SNR)")->required();
  sweep->add_option("--r0-min", r0_min, "First link rate (default: below the nontrivial range)");
  sweep->add_option("--r0-max", r0_max, "Last link rate (default: above the nontrivial range)");
  sweep->add_option("--steps", steps, "Number of rows, endpoints included")->capture_default_str();

  double cap_r0 = 0, cap_p = 0;
  auto* capacity = app.add_subcommand("capacity-check", "Meeting conditions and capacity for a symmetric channel");
  capacity->add_option("--r0", cap_r0, "Link rate (bits)")->required();
  capacity->add_option("--p", cap_p, "Relay power (SNR)")->required();

  diamond::SimConfig sim;
  sim.r1 = sim.r2 = 5.0 / 12.0;
  sim.p1 = sim.p2 = 3.0;
  sim.rho = 0.3;
  sim.trials = 2000;
  long long trials_arg = static_cast<long long>(sim.trials);
  std::string decoder_name = "minimum-distance";
  unsigned threads = 0;
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo run of the correlated random-coding scheme");
  simulate->add_option("--n", sim.n, "Blocklength")->capture_default_str();
  simulate->add_option("--r1", sim.r1, "Codebook rate of relay 1 (bits)")->capture_default_str();
  simulate->add_option("--r2", sim.r2, "Codebook rate of relay 2 (bits)")->capture_default_str();
  simulate->add_option("--p1", sim.p1, "Power of relay 1")->capture_default_str();
  simulate->add_option("--p2", sim.p2, "Power of relay 2")->capture_default_str();
  simulate->add_option("--rho", sim.rho, "Design correlation")->capture_default_str();
  simulate->add_option("--delta", sim.delta, "Typicality slack")->capture_default_str();
  simulate->add_option("--trials", trials_arg, "Number of trials")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
  simulate->add_option("--decoder", decoder_name, "minimum-distance or joint-typicality")->capture_default_str();
  simulate->add_option("--threads", threads, "Worker threads (0 = all); results do not depend on it");

  auto* example = app.add_subcommand("example", "Reproduce the r0 = 1.2, p = 3 worked example");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const auto tol = resolve_tolerances(tol_flag);

    if (*bounds) {
      const auto fmt = parse_format(format_name, Format::Text, false);
      const auto report = diamond::compute_bounds(diamond::ChannelParams(r1, r2, p1, p2), tol);
      Output out(output_path);
      if (fmt == Format::Json) {
        *out.stream << diamond::to_json(report).dump(2) << '\n';
      } else {
        diamond::write_text(*out.stream, report);
      }
      out.finish();
    } else if (*sweep) {
      const auto fmt = parse_format(format_name, Format::Csv, true);
      auto spec = diamond::default_sweep(sweep_p, steps);
      if (r0_min) spec.r0_min = *r0_min;
      if (r0_max) spec.r0_max = *r0_max;
      spec.tol = tol;
      try {
        spec.validate();
      } catch (const diamond::ArgumentError& e) {
        throw UsageError(e.what());
      }
      const auto rows = diamond::run_sweep(spec);
      Output out(output_path);
      if (fmt == Format::Json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : rows) arr.push_back(diamond::to_json(r));
        *out.stream << arr.dump(2) << '\n';
      } else {
        // Text and CSV are the same table for sweeps.
        diamond::write_sweep_csv(*out.stream, rows);
      }
      out.finish();
    } else if (*capacity) {
      const auto fmt = parse_format(format_name, Format::Text, false);
      const auto rep = diamond::capacity_check(diamond::SymmetricParams(cap_r0, cap_p), tol);
      Output out(output_path);
      if (fmt == Format::Json) {
        *out.stream << diamond::to_json(rep).dump(2) << '\n';
      } else {
        diamond::write_text(*out.stream, rep);
      }
      out.finish();
    } else if (*simulate) {
      const auto fmt = parse_format(format_name, Format::Text, false);
      if (trials_arg <= 0) throw UsageError("--trials must be positive");
      sim.trials = static_cast<std::uint64_t>(trials_arg);
      sim.decoder = parse_decoder(decoder_name);
      const auto result = diamond::run_trials(sim, threads);
      const auto predicted = diamond::predicted_pair_exponent(sim.r1, sim.r2, diamond::Rho(sim.rho));
      Output out(output_path);
      if (fmt == Format::Json) {
        nlohmann::json j{{"config", diamond::to_json(sim)},
                         {"result", diamond::to_json(result)},
                         {"predicted_rate", diamond::rate_json(predicted)}};
        *out.stream << j.dump(2) << '\n';
      } else {
        diamond::write_text(*out.stream, sim, result, predicted);
      }
      out.finish();
    } else if (*example) {
      const auto fmt = parse_format(format_name, Format::Text, false);
      const auto checks = diamond::example_checks(tol);
      const bool ok = diamond::example_passes(checks);
      Output out(output_path);
      if (fmt == Format::Json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : checks) {
          arr.push_back({{"name", c.name}, {"computed", c.computed}, {"reference", c.reference}, {"delta", c.delta()}});
        }
        *out.stream << nlohmann::json{{"r0", diamond::kExampleR0}, {"p", diamond::kExampleP}, {"checks", arr},
                                      {"pass", ok}}
                           .dump(2)
                    << '\n';
      } else {
        *out.stream << "r0 = " << diamond::fixed(diamond::kExampleR0) << "  p = " << diamond::fixed(diamond::kExampleP)
                    << '\n';
        for (const auto& c : checks) {
          char line[160];
          std::snprintf(line, sizeof line, "%-13s computed %.6f  reference %.4f  delta %.2e\n", c.name.c_str(),
                        c.computed, c.reference, c.delta());
          *out.stream << line;
        }
        *out.stream << (ok ? "all deltas <= 1e-3\n" : "MISMATCH: some delta exceeds 1e-3\n");
      }
      out.finish();
      return ok ? kOk : kReferenceMismatch;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const diamond::ArgumentError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const diamond::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const diamond::StructureError& e) {
    std::cerr << "numerical structure error: " << e.what() << '\n';
    return kStructure;
  } catch (const diamond::SimulationError& e) {
    std::cerr << "simulation error: " << e.what() << '\n';
    return kSimulation;
  }
  return kOk;
}
