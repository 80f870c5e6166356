// Command-line front end: run scenarios, the scalar demo, config checks and
// the built-in property checks.

#include "adpasmc/config.hpp"
#include "adpasmc/engine.hpp"
#include "adpasmc/output.hpp"
#include "adpasmc/selfcheck.hpp"
#include "adpasmc/signal.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>

namespace fs = std::filesystem;
using namespace adpasmc;

namespace {

enum ExitCode : int { kOk = 0, kConfigError = 1, kAborted = 2 };

struct CommonOptions {
  std::vector<std::string> overrides;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> decimate;

  std::vector<std::string> effective_overrides() const {
    std::vector<std::string> all = overrides;
    if (seed) all.push_back("seed=" + std::to_string(*seed));
    if (decimate) all.push_back("decimate=" + std::to_string(*decimate));
    return all;
  }
};

struct RunOutcome {
  std::string config_path;
  int code = kOk;
  std::string error;
  RunSummary summary;
  std::string csv_path, summary_path;
};

RunOutcome run_one(const std::string& path, const CommonOptions& opt) {
  RunOutcome outcome;
  outcome.config_path = path;
  ScenarioConfig cfg;
  try {
    cfg = load_scenario(path, opt.effective_overrides());
  } catch (const ConfigError& e) {
    outcome.code = kConfigError;
    outcome.error = e.what();
    return outcome;
  }
  try {
    fs::create_directories(opt.out_dir);
    outcome.csv_path = (fs::path(opt.out_dir) / (cfg.name + ".csv")).string();
    outcome.summary_path = (fs::path(opt.out_dir) / (cfg.name + ".summary")).string();
    CsvWriter csv(outcome.csv_path, StepRecord::columns(), cfg.decimate);
    outcome.summary = run_scenario(cfg, [&](const StepRecord& r) { csv.write(r.row()); });
    write_summary_file(outcome.summary_path, summary_fields(outcome.summary), describe(cfg));
  } catch (const std::exception& e) {
    outcome.code = kAborted;
    outcome.error = e.what();
    return outcome;
  }
  if (outcome.summary.status != "ok") {
    outcome.code = kAborted;
    outcome.error = "aborted at t=" + format_double(outcome.summary.abort_time) + ": " +
                    outcome.summary.abort_reason;
  }
  return outcome;
}

int cmd_run(const std::vector<std::string>& paths, const CommonOptions& opt, int jobs) {
  std::vector<RunOutcome> outcomes(paths.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < paths.size(); i = next++) outcomes[i] = run_one(paths[i], opt);
  };
  const int n_workers = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(paths.size(), 1)));
  std::vector<std::jthread> pool;
  for (int i = 1; i < n_workers; ++i) pool.emplace_back(worker);
  worker();
  pool.clear();

  int code = kOk;
  const bool any_ran = std::any_of(outcomes.begin(), outcomes.end(),
                                   [](const RunOutcome& o) { return o.code != kConfigError; });
  if (any_ran)
    std::printf("%-24s %-8s %14s %14s %14s %14s\n", "scenario", "status", "IAE", "IACM", "int|e_V|",
              "int T_x");
  for (const RunOutcome& o : outcomes) {
    code = std::max(code, o.code);
    if (o.code == kConfigError) {
      std::cerr << "error: " << o.error << '\n';
      continue;
    }
    const RunSummary& s = o.summary;
    std::printf("%-24s %-8s %14.6g %14.6g %14.6g %14.6g\n", s.name.c_str(), s.status.c_str(), s.iae,
                s.iacm, s.iae_v, s.int_thrust);
    if (o.code != kOk) std::cerr << "error: " << o.config_path << ": " << o.error << '\n';
    if (!o.csv_path.empty()) std::cout << "  wrote " << o.csv_path << ", " << o.summary_path << '\n';
  }
  return code;
}

int cmd_siso_demo(const std::string& path, const CommonOptions& opt) {
  SisoDemoConfig cfg;
  try {
    std::vector<std::string> overrides = opt.overrides;
    if (opt.decimate) overrides.push_back("decimate=" + std::to_string(*opt.decimate));
    cfg = load_siso_demo(path, overrides);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  try {
    fs::create_directories(opt.out_dir);
    const auto csv_path = (fs::path(opt.out_dir) / (cfg.name + ".csv")).string();
    const auto summary_path = (fs::path(opt.out_dir) / (cfg.name + ".summary")).string();
    const auto records = run_siso_demo(cfg.params, cfg.options);
    CsvWriter csv(csv_path, siso_columns(), cfg.decimate);
    for (const SisoRecord& r : records) csv.write(siso_row(r));
    const SisoSummary s = summarize_siso(records);
    write_summary_file(summary_path, summary_fields(s), describe(cfg));
    std::printf("%-24s %14s %14s %14s %14s\n", "scenario", "max|x|,t>=5", "max L_v", "r_v(15)",
                "max r_v,t<=10");
    std::printf("%-24s %14.6g %14.6g %14.6g %14.6g\n", cfg.name.c_str(), s.max_abs_x_after_5,
                s.max_lv, s.rv_at_15, s.max_rv_before_10);
    std::cout << "  wrote " << csv_path << ", " << summary_path << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kAborted;
  }
  return kOk;
}

int cmd_check(const std::string& path, const CommonOptions& opt, bool siso) {
  try {
    if (siso) {
      load_siso_demo(path, opt.overrides);
    } else {
      load_scenario(path, opt.effective_overrides());
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  std::cout << "ok: " << path << '\n';
  return kOk;
}

int cmd_selftest(std::uint64_t seed) {
  bool all = true;
  for (const CheckResult& c : run_property_checks(seed)) {
    std::printf("%s  %-60s worst=%.3g tol=%.3g\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                c.worst, c.tolerance);
    all = all && c.passed;
  }
  return all ? kOk : kAborted;
}

void add_common(CLI::App* app, CommonOptions& opt, bool with_seed) {
  app->add_option("--set", opt.overrides, "Override a config key, e.g. --set dt=2e-3 (repeatable)");
  app->add_option("--out", opt.out_dir, "Output directory for CSV and summary files")
      ->capture_default_str();
  if (with_seed) app->add_option("--seed", opt.seed, "Seed for the initial ADP weights");
  app->add_option("--decimate", opt.decimate, "Write every k-th record to the CSV")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Closed-loop simulation of adaptive sliding-mode UAV attitude and airspeed control"};
  app.require_subcommand(1);

  CommonOptions run_opt, siso_opt, check_opt;
  std::vector<std::string> run_paths;
  int jobs = 1;
  auto* run = app.add_subcommand("run", "Run one or more scenario configs");
  run->add_option("configs", run_paths, "Scenario config files")->required();
  add_common(run, run_opt, true);
  run->add_option("--jobs", jobs, "Run up to n configs in parallel")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string siso_path;
  auto* siso = app.add_subcommand("siso-demo", "Run the scalar sliding-mode benchmark");
  siso->add_option("config", siso_path, "Optional demo config file");
  add_common(siso, siso_opt, false);

  std::string check_path;
  bool check_siso = false;
  auto* check = app.add_subcommand("check", "Validate a config without simulating");
  check->add_option("config", check_path, "Config file")->required();
  check->add_option("--set", check_opt.overrides, "Override a config key (repeatable)");
  check->add_flag("--siso", check_siso, "Validate as a scalar demo config");

  std::uint64_t selftest_seed = 1;
  auto* selftest = app.add_subcommand("selftest", "Run the built-in algebraic property checks");
  selftest->add_option("--seed", selftest_seed, "Random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  if (*run) return cmd_run(run_paths, run_opt, jobs);
  if (*siso) return cmd_siso_demo(siso_path, siso_opt);
  if (*check) return cmd_check(check_path, check_opt, check_siso);
  return cmd_selftest(selftest_seed);
}
