#include "horoflow/io.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "horoflow/errors.hpp"

namespace horoflow {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

double to_double(const std::string& v, const std::string& where) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE) {
    throw Error(ErrorKind::Parse, fmt::format("{}: '{}' is not a number", where, v));
  }
  return x;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

std::string snapshot_text(const Snapshot& snap) {
  const auto& c = snap.curve;
  std::string out = "# horoflow snapshot\n";
  out += fmt::format("n {}\nN {}\nt {:.17g}\nnodes\n", c.n, c.size(), snap.t);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto p = c.ambient(i);
    for (std::size_t j = 0; j < p.coords.size(); ++j) out += fmt::format("{}{:.17g}", j == 0 ? "" : " ", p.coords[j]);
    out += '\n';
  }
  return out;
}

void write_snapshot(const fs::path& path, const Snapshot& snap) { write_text_file(path, snapshot_text(snap)); }

Snapshot parse_snapshot(std::istream& in, const std::string& source) {
  std::string line;
  int lineNo = 0;
  int n = -1;
  long long N = -1;
  double t = 0.0;
  bool haveT = false;
  const auto where = [&] { return fmt::format("{}:{}", source, lineNo); };
  while (std::getline(in, line)) {
    ++lineNo;
    line = strip_cr(line);
    const auto w = words(line);
    if (w.empty() || w[0].starts_with('#')) continue;
    if (w[0] == "nodes") break;
    if (w.size() != 2) throw Error(ErrorKind::Parse, fmt::format("{}: expected 'key value'", where()));
    if (w[0] == "n") {
      n = static_cast<int>(to_double(w[1], where()));
    } else if (w[0] == "N") {
      N = static_cast<long long>(to_double(w[1], where()));
    } else if (w[0] == "t") {
      t = to_double(w[1], where());
      haveT = true;
    } else {
      throw Error(ErrorKind::Parse, fmt::format("{}: unknown field '{}'", where(), w[0]));
    }
  }
  if (n < 1 || N < 0 || !haveT) {
    throw Error(ErrorKind::Parse, fmt::format("{}: header needs n, N and t before 'nodes'", source));
  }
  std::vector<AmbientPoint> pts;
  pts.reserve(static_cast<std::size_t>(N));
  while (static_cast<long long>(pts.size()) < N && std::getline(in, line)) {
    ++lineNo;
    const auto w = words(strip_cr(line));
    if (w.empty()) continue;
    if (w.size() != static_cast<std::size_t>(n) + 2) {
      throw Error(ErrorKind::Parse, fmt::format("{}: expected {} coordinates, got {}", where(), n + 2, w.size()));
    }
    AmbientPoint p;
    for (const auto& x : w) p.coords.push_back(to_double(x, where()));
    pts.push_back(std::move(p));
  }
  if (static_cast<long long>(pts.size()) != N) {
    throw Error(ErrorKind::Parse, fmt::format("{}: expected {} nodes, found {}", source, N, pts.size()));
  }
  Snapshot snap;
  snap.t = t;
  try {
    snap.curve = ProfileCurve::from_ambient(n, pts);
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, fmt::format("{}: {}", source, e.what()));
  }
  return snap;
}

Snapshot read_snapshot(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open snapshot '{}'", path.string()));
  return parse_snapshot(in, path.string());
}

std::vector<std::string> series_header(int n) {
  std::vector<std::string> h{"t", "dt"};
  for (int k = 0; k <= n + 1; ++k) h.push_back(fmt::format("W_{}", k));
  for (const char* c : {"sigmaMin", "rMax", "rMin", "phiPrimeMin", "speedMax"}) h.emplace_back(c);
  for (int k = 1; k <= n; ++k) h.push_back(fmt::format("hm_{}", k));
  for (int k = 1; k <= n; ++k) h.push_back(fmt::format("kw_{}", k));
  return h;
}

std::vector<double> series_row(const DiagnosticsRecord& r) {
  std::vector<double> row{r.t, r.dt};
  row.insert(row.end(), r.W.begin(), r.W.end());
  for (double x : {r.sigmaMin, r.rMax, r.rMin, r.phiPrimeMin, r.speedMax}) row.push_back(x);
  row.insert(row.end(), r.hm.begin(), r.hm.end());
  row.insert(row.end(), r.kw.begin(), r.kw.end());
  return row;
}

std::string series_text(const Trajectory& traj) {
  std::string out;
  const auto header = series_header(traj.n);
  for (std::size_t j = 0; j < header.size(); ++j) out += (j ? "," : "") + header[j];
  out += '\n';
  for (const auto& r : traj.records) {
    const auto row = series_row(r);
    for (std::size_t j = 0; j < row.size(); ++j) out += fmt::format("{}{:.17g}", j ? "," : "", row[j]);
    out += '\n';
  }
  return out;
}

std::size_t SeriesTable::column(const std::string& name) const {
  for (std::size_t j = 0; j < header.size(); ++j)
    if (header[j] == name) return j;
  throw Error(ErrorKind::Parse, fmt::format("series has no column '{}'", name));
}

SeriesTable parse_series(std::istream& in, const std::string& source) {
  SeriesTable table;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    line = strip_cr(line);
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (table.header.empty()) {
      table.header = std::move(cells);
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw Error(ErrorKind::Parse, fmt::format("{}:{}: expected {} columns, got {}", source, lineNo,
                                                table.header.size(), cells.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& c : cells) row.push_back(to_double(c, fmt::format("{}:{}", source, lineNo)));
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw Error(ErrorKind::Parse, fmt::format("{}: empty series file", source));
  if (table.header.front() != "t") throw Error(ErrorKind::Parse, fmt::format("{}:1: header must start with t", source));
  return table;
}

SeriesTable read_series(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open series '{}'", path.string()));
  return parse_series(in, path.string());
}

void write_text_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, fmt::format("cannot write '{}'", path.string()));
  out << text;
  if (!out) throw Error(ErrorKind::Io, fmt::format("write to '{}' failed", path.string()));
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunOutputs write_run_outputs(const RunConfig& config, const Trajectory& traj, const VerdictReport& verdict) {
  RunOutputs o;
  o.dir = fs::path(config.outputDir) / run_id(config);
  o.config = o.dir / "config.txt";
  o.series = o.dir / "series.csv";
  o.snapshots = o.dir / "snapshots";
  o.verdict = o.dir / "verdict.txt";
  fs::create_directories(o.snapshots);
  write_text_file(o.config, serialize(config));
  write_text_file(o.series, series_text(traj));
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    write_snapshot(o.snapshots / fmt::format("snap-{:06d}.txt", i), traj.snapshots[i]);
  }
  write_text_file(o.verdict, verdict.to_text());
  return o;
}

}  // namespace horoflow
