// horoflow command-line driver.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or validation
// error, 3 numerical failure of a run.

#include <algorithm>
#include <atomic>
#include <cctype>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "horoflow/config.hpp"
#include "horoflow/curvature_functions.hpp"
#include "horoflow/errors.hpp"
#include "horoflow/io.hpp"
#include "horoflow/quermass.hpp"
#include "horoflow/suites.hpp"

namespace hf = horoflow;
namespace fs = std::filesystem;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

const std::vector<std::string> kConfigKeys = {
    "n",         "mode",        "F",        "k",           "N",        "shape",         "rho",
    "centerDistance", "amplitude", "frequency", "profile",  "cflFactor", "tMax",        "tolRound",
    "outputEvery", "snapshotEvery", "maxSteps", "resampleRatio", "normalizationTol", "outputDir", "runId",
    "seed",      "allowNonHoroConvex", "secondOrderStepper"};

int exit_code_for(const hf::Error& e) {
  switch (e.kind()) {
    case hf::ErrorKind::StepFailure:
    case hf::ErrorKind::OutsideGamma:
    case hf::ErrorKind::DegenerateCurve:
    case hf::ErrorKind::HemisphereViolation:
    case hf::ErrorKind::NotStarshaped:
    case hf::ErrorKind::NonMonotonic:
    case hf::ErrorKind::NotMeanConvex:
      return kExitNumerical;
    default:
      return kExitUsage;
  }
}

// Flags that mirror RunConfig keys, collected as raw strings and applied on
// top of an optional config file.
struct ConfigFlags {
  std::string configPath;
  std::map<std::string, std::string> values;

  void attach(CLI::App* app) {
    app->add_option("--config", configPath, "flat key = value run configuration")->check(CLI::ExistingFile);
    for (const auto& key : kConfigKeys) app->add_option("--" + key, values[key], "config key " + key);
  }

  hf::RunConfig resolve() const {
    hf::RunConfig c = hf::default_config();
    if (!configPath.empty()) c = hf::parse_config(hf::read_text_file(configPath), c);
    if (const auto it = values.find("shape"); it != values.end() && !it->second.empty()) {
      hf::set_config_value(c, "shape", it->second);
    }
    for (const auto& [key, value] : values) {
      if (key != "shape" && !value.empty()) hf::set_config_value(c, key, value);
    }
    return c;
  }
};

struct RunSummary {
  int exitCode = kExitPass;
  std::string line;
};

RunSummary execute_run(const hf::RunConfig& config) {
  RunSummary s;
  const std::string id = hf::run_id(config);
  try {
    hf::validate(config);
    const auto shape = hf::make_initial_shape(config);
    const auto traj = hf::run(hf::make_flow_params(config), shape.curve);
    const auto verdict = hf::run_verdict(config, traj);
    const auto out = hf::write_run_outputs(config, traj, verdict);
    const bool numerical =
        traj.reason == hf::TerminationReason::StepFailure || traj.reason == hf::TerminationReason::OutsideGamma;
    s.exitCode = numerical ? kExitNumerical : (verdict.all_pass() ? kExitPass : kExitCheckFailed);
    s.line = fmt::format("{}: {} after {} steps, t = {:.6g}, sigmaMin(0) = {:.6e}, verdict {} -> {}", id,
                         hf::to_string(traj.reason), traj.steps, traj.final.t, shape.sigmaMin,
                         verdict.all_pass() ? "PASS" : "FAIL", out.dir.string());
    if (!traj.message.empty()) s.line += fmt::format(" ({})", traj.message);
  } catch (const hf::Error& e) {
    s.exitCode = exit_code_for(e);
    s.line = fmt::format("{}: error: {}", id, e.what());
  }
  return s;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

int worst_exit(const std::vector<int>& codes) {
  // Numerical failures outrank validation errors, which outrank check failures.
  int worst = kExitPass;
  const auto rank = [](int c) { return c == kExitNumerical ? 3 : c == kExitUsage ? 2 : c; };
  for (int c : codes)
    if (rank(c) > rank(worst)) worst = c;
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"horoflow: locally constrained inverse curvature flow laboratory"};
  app.require_subcommand(1);

  ConfigFlags runFlags;
  auto* runCmd = app.add_subcommand("run", "run one flow and write series, snapshots and verdict");
  runFlags.attach(runCmd);

  ConfigFlags sweepFlags;
  std::vector<std::string> sweepConfigs, sweepSets;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* sweepCmd = app.add_subcommand("sweep", "run a grid of configurations concurrently");
  sweepFlags.attach(sweepCmd);
  sweepCmd->add_option("configs", sweepConfigs, "additional config files, one run each")->check(CLI::ExistingFile);
  sweepCmd->add_option("--set", sweepSets, "key=v1,v2,... grid axis (repeatable)");
  sweepCmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  hf::IdentityOptions idOpts;
  std::string idOut = hf::default_output_dir();
  auto* idCmd = app.add_subcommand("check-identities", "integral identity and inequality suites on the shape corpus");
  idCmd->add_option("--N", idOpts.N, "grid size")->check(CLI::Range(static_cast<std::size_t>(hf::kMinNodes), std::size_t{1} << 20));
  idCmd->add_option("--samples", idOpts.newtonSamples, "random samples for Newton-MacLaurin");
  idCmd->add_option("--seed", idOpts.seed, "random seed");
  idCmd->add_option("--tolerance", idOpts.minkowskiTol, "relative Hsiung-Minkowski tolerance");
  idCmd->add_option("--outputDir", idOut, "output directory");

  int tableN = 1;
  std::size_t tableSamples = 64;
  std::string tableOut, tableDir = hf::default_output_dir();
  auto* tableCmd = app.add_subcommand("sphere-table", "export quermassintegrals of centred spheres");
  tableCmd->add_option("--n", tableN, "dimension")->check(CLI::Range(1, 8));
  tableCmd->add_option("--samples", tableSamples, "rho_j = j (pi/2) / samples")->check(CLI::Range(2, 1 << 20));
  tableCmd->add_option("--out", tableOut, "output file (default outputDir/sphere-table-n<n>.csv)");
  tableCmd->add_option("--outputDir", tableDir, "output directory");

  int vfN = 3, vfK = 2;
  std::size_t vfSamples = 10000;
  std::uint64_t vfSeed = 1;
  double vfThreshold = 1e-8;
  std::string vfFunction = "quotient", vfDir = hf::default_output_dir();
  auto* vfCmd = app.add_subcommand("validate-f", "numerical checks of the structural assumptions on F");
  vfCmd->add_option("--n", vfN, "dimension")->check(CLI::Range(1, 8));
  vfCmd->add_option("--k", vfK, "quotient index");
  vfCmd->add_option("--samples", vfSamples, "random samples (>= 100)");
  vfCmd->add_option("--seed", vfSeed, "random seed");
  vfCmd->add_option("--threshold", vfThreshold, "violation threshold");
  vfCmd->add_option("--function", vfFunction, "quotient | max")->check(CLI::IsMember({"quotient", "max"}));
  vfCmd->add_option("--outputDir", vfDir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (runCmd->parsed()) {
      const auto s = execute_run(runFlags.resolve());
      std::cout << s.line << '\n';
      return s.exitCode;
    }

    if (sweepCmd->parsed()) {
      std::vector<hf::RunConfig> grid;
      const hf::RunConfig base = sweepFlags.resolve();
      if (sweepConfigs.empty()) {
        grid.push_back(base);
      } else {
        for (const auto& p : sweepConfigs) grid.push_back(hf::parse_config(hf::read_text_file(p), base));
      }
      for (const auto& axis : sweepSets) {
        const auto eq = axis.find('=');
        if (eq == std::string::npos) throw hf::Error(hf::ErrorKind::Parse, fmt::format("--set '{}': expected key=v1,v2", axis));
        const std::string key = axis.substr(0, eq);
        const auto values = split_list(axis.substr(eq + 1));
        std::vector<hf::RunConfig> next;
        for (const auto& c : grid) {
          for (const auto& value : values) {
            hf::RunConfig d = c;
            hf::set_config_value(d, key, value);
            d.runId.clear();
            next.push_back(std::move(d));
          }
        }
        grid = std::move(next);
      }

      std::vector<RunSummary> results(grid.size());
      std::atomic<std::size_t> cursor{0};
      const auto worker = [&] {
        for (std::size_t i = cursor++; i < grid.size(); i = cursor++) results[i] = execute_run(grid[i]);
      };
      std::vector<std::thread> pool;
      const unsigned count = std::min<unsigned>(jobs, static_cast<unsigned>(grid.size()));
      for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();

      std::vector<int> codes;
      for (const auto& r : results) {
        std::cout << r.line << '\n';
        codes.push_back(r.exitCode);
      }
      return worst_exit(codes);
    }

    if (idCmd->parsed()) {
      const auto report = hf::identity_suite(idOpts);
      const fs::path out = fs::path(idOut) / "identities" / "verdict.txt";
      hf::write_text_file(out, report.to_text());
      std::cout << report.to_text() << "written " << out.string() << '\n';
      return report.all_pass() ? kExitPass : kExitCheckFailed;
    }

    if (tableCmd->parsed()) {
      const auto table = hf::sphere_table(tableN, tableSamples);
      const fs::path out = tableOut.empty() ? fs::path(tableDir) / fmt::format("sphere-table-n{}.csv", tableN)
                                            : fs::path(tableOut);
      hf::write_text_file(out, table.to_text());
      std::cout << "written " << out.string() << '\n';
      return kExitPass;
    }

    if (vfCmd->parsed()) {
      const auto F = vfFunction == "max"
                         ? hf::CurvatureFunction::custom("max", [](std::span<const double> k) {
                             return *std::max_element(k.begin(), k.end());
                           })
                         : hf::CurvatureFunction::quotient(vfK);
      if (vfFunction == "quotient" && (vfK < 1 || vfK > vfN)) {
        throw hf::Error(hf::ErrorKind::Validation, fmt::format("k: {} outside 1..{}", vfK, vfN));
      }
      const auto report = hf::validate_assumptions(F, vfN, vfSamples, vfSeed, vfThreshold);
      std::string tag = F.label();
      std::replace_if(tag.begin(), tag.end(), [](unsigned char ch) { return !std::isalnum(ch); }, '-');
      const fs::path out = fs::path(vfDir) / fmt::format("validate-f-{}-n{}.txt", tag, vfN);
      hf::write_text_file(out, report.to_text());
      std::cout << report.to_text() << "written " << out.string() << '\n';
      return report.all_pass() ? kExitPass : kExitCheckFailed;
    }
  } catch (const hf::Error& e) {
    std::cerr << "horoflow: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "horoflow: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
