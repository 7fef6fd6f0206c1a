#include <cstdio>
#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "horoflow/config.hpp"
#include "horoflow/errors.hpp"
#include "horoflow/io.hpp"
#include "horoflow/shapes.hpp"
#include "horoflow/suites.hpp"

using namespace horoflow;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("horoflow-io-" + name);
  fs::remove_all(p);
  return p;
}

Snapshot parse(const std::string& text) {
  std::istringstream in(text);
  return parse_snapshot(in, "mem");
}

}  // namespace

TEST(Snapshot, BitExactRoundTrip) {
  for (int n : {1, 2, 4}) {
    const Snapshot s{0.125 + 1e-17, perturbed_sphere(n, 37, 0.7, 0.02, 2)};
    const auto text = snapshot_text(s);
    const auto back = parse(text);
    EXPECT_EQ(back.t, s.t);
    ASSERT_EQ(back.curve.n, n);
    ASSERT_EQ(back.curve.size(), s.curve.size());
    for (std::size_t i = 0; i < s.curve.size(); ++i) {
      for (int j = 0; j < 3; ++j) EXPECT_EQ(back.curve.nodes[i][j], s.curve.nodes[i][j]);
    }
    EXPECT_EQ(snapshot_text(back), text);
  }
}

TEST(Snapshot, Layout) {
  const auto text = snapshot_text({0.5, centered_sphere(2, 16, 0.5)});
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# horoflow snapshot");
  std::getline(in, line);
  EXPECT_EQ(line, "n 2");
  std::getline(in, line);
  EXPECT_EQ(line, "N 16");
  std::getline(in, line);
  EXPECT_EQ(line, "t 0.5");
  std::getline(in, line);
  EXPECT_EQ(line, "nodes");
  std::getline(in, line);
  std::istringstream row(line);
  int cols = 0;
  for (double x; row >> x;) ++cols;
  EXPECT_EQ(cols, 4);  // n + 2 ambient coordinates
}

TEST(Snapshot, ParseErrors) {
  EXPECT_THROW(parse("n 1\nN 2\nnodes\n"), Error);  // no t
  EXPECT_THROW(parse("n 1\nN 2\nt 0\nnodes\n0 0 1\n"), Error);  // short
  EXPECT_THROW(parse("n 1\nN 1\nt 0\nnodes\n0 1\n"), Error);  // columns
  EXPECT_THROW(parse("n 1\nN 1\nt zero\nnodes\n"), Error);
  EXPECT_THROW(parse("n 1\ncolor red\n"), Error);
  try {
    parse("n 1\nN 1\nt 0\nnodes\n0 0 2\n");
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
  }
  EXPECT_THROW(read_snapshot("/nonexistent/snap.txt"), Error);
}

TEST(Series, HeaderColumns) {
  const std::vector<std::string> one{"t",    "dt",   "W_0",         "W_1",      "W_2", "sigmaMin", "rMax",
                                     "rMin", "phiPrimeMin", "speedMax", "hm_1", "kw_1"};
  EXPECT_EQ(series_header(1), one);
  const auto two = series_header(2);
  EXPECT_EQ(two.size(), 2u + 4 + 5 + 2 + 2);
  EXPECT_EQ(two[5], "W_3");
  EXPECT_EQ(two.back(), "kw_2");
}

TEST(Series, RoundTripThroughText) {
  FlowParams p;
  p.maxSteps = 20;
  const auto traj = run(p, perturbed_sphere(1, 64, 0.6, 0.02, 2));
  const auto text = series_text(traj);
  std::istringstream in(text);
  const auto table = parse_series(in, "mem");
  EXPECT_EQ(table.header, series_header(1));
  ASSERT_EQ(table.rows.size(), traj.records.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) EXPECT_EQ(table.rows[i], series_row(traj.records[i]));
  EXPECT_EQ(table.column("W_1"), 3u);
  EXPECT_THROW(table.column("nope"), Error);
}

TEST(Series, ParseErrors) {
  std::istringstream empty("");
  EXPECT_THROW(parse_series(empty, "e"), Error);
  std::istringstream ragged("t,dt\n1,2\n3\n");
  EXPECT_THROW(parse_series(ragged, "r"), Error);
  std::istringstream wrong("x,dt\n1,2\n");
  EXPECT_THROW(parse_series(wrong, "w"), Error);
}

TEST(RunOutputs, DirectoryLayout) {
  RunConfig c = default_config();
  c.N = 64;
  c.shape = PerturbedSphere{0.6, 0.02, 2};
  c.outputDir = scratch("run").string();
  c.snapshotEvery = 100;
  const auto traj = run(c);
  const auto verdict = run_verdict(c, traj);
  const auto out = write_run_outputs(c, traj, verdict);
  EXPECT_EQ(out.dir, fs::path(c.outputDir) / run_id(c));
  EXPECT_TRUE(fs::exists(out.config));
  EXPECT_TRUE(fs::exists(out.series));
  EXPECT_TRUE(fs::exists(out.verdict));
  EXPECT_TRUE(fs::exists(out.snapshots / "snap-000000.txt"));
  EXPECT_EQ(parse_config(read_text_file(out.config)), c);
  char name[32];
  std::snprintf(name, sizeof name, "snap-%06zu.txt", traj.snapshots.size() - 1);
  const auto last = read_snapshot(out.snapshots / name);
  EXPECT_EQ(last.t, traj.final.t);
  EXPECT_EQ(read_series(out.series).rows.size(), traj.records.size());
  EXPECT_NE(read_text_file(out.verdict).find("overall PASS"), std::string::npos);
  fs::remove_all(c.outputDir);
}

TEST(TextFiles, IoErrors) {
  EXPECT_THROW(read_text_file("/nonexistent/file"), Error);
  try {
    write_text_file("/proc/forbidden/x.txt", "x");
    FAIL();
  } catch (const std::exception&) {
  }
}
