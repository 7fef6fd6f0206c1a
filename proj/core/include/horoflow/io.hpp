#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "horoflow/config.hpp"
#include "horoflow/flow.hpp"
#include "horoflow/verifier.hpp"

namespace horoflow {

/// Snapshot text: `n`, `N`, `t` lines, then `nodes` followed by N lines of
/// n + 2 ambient coordinates, all with 17 significant digits.
std::string snapshot_text(const Snapshot& snap);
void write_snapshot(const std::filesystem::path& path, const Snapshot& snap);
Snapshot parse_snapshot(std::istream& in, const std::string& source);
Snapshot read_snapshot(const std::filesystem::path& path);

/// Column names t, dt, W_0..W_{n+1}, sigmaMin, rMax, rMin, phiPrimeMin,
/// speedMax, hm_1..hm_n, kw_1..kw_n.
std::vector<std::string> series_header(int n);
std::vector<double> series_row(const DiagnosticsRecord& rec);
std::string series_text(const Trajectory& traj);

struct SeriesTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Index of a named column; throws Parse when absent.
  std::size_t column(const std::string& name) const;
};

SeriesTable parse_series(std::istream& in, const std::string& source);
SeriesTable read_series(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

struct RunOutputs {
  std::filesystem::path dir;
  std::filesystem::path config;
  std::filesystem::path series;
  std::filesystem::path snapshots;
  std::filesystem::path verdict;
};

/// outputDir/{run-id}/{config.txt, series.csv, snapshots/, verdict.txt}.
RunOutputs write_run_outputs(const RunConfig& config, const Trajectory& traj, const VerdictReport& verdict);

}  // namespace horoflow
