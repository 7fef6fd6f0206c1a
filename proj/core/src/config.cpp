#include "horoflow/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <type_traits>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "horoflow/curvature_functions.hpp"
#include "horoflow/errors.hpp"
#include "horoflow/io.hpp"
#include "horoflow/shapes.hpp"
#include "horoflow/verifier.hpp"

namespace horoflow {

using std::numbers::pi;

std::string default_output_dir() {
  if (const char* env = std::getenv("HOROFLOW_OUTPUT_DIR"); env != nullptr && *env != '\0') return env;
  return "horoflow-out";
}

RunConfig default_config() {
  RunConfig c;
  c.outputDir = default_output_dir();
  return c;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE) {
    throw Error(ErrorKind::Parse, fmt::format("{}: '{}' is not a number", key, v));
  }
  return x;
}

long long parse_integer(const std::string& key, const std::string& v) {
  errno = 0;
  char* end = nullptr;
  const long long x = std::strtoll(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE) {
    throw Error(ErrorKind::Parse, fmt::format("{}: '{}' is not an integer", key, v));
  }
  return x;
}

std::size_t parse_count(const std::string& key, const std::string& v) {
  const long long x = parse_integer(key, v);
  if (x < 0) throw Error(ErrorKind::Parse, fmt::format("{}: must be nonnegative", key));
  return static_cast<std::size_t>(x);
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw Error(ErrorKind::Parse, fmt::format("{}: '{}' is not true/false", key, v));
}

std::string shape_name(const ShapeSpec& s) {
  switch (s.index()) {
    case 0: return "centered";
    case 1: return "off-center";
    case 2: return "perturbed";
    default: return "file";
  }
}

double* shape_rho(ShapeSpec& s) {
  if (auto* c = std::get_if<CenteredSphere>(&s)) return &c->rho;
  if (auto* c = std::get_if<OffCenterSphere>(&s)) return &c->rho;
  if (auto* c = std::get_if<PerturbedSphere>(&s)) return &c->rho;
  return nullptr;
}

template <class T>
T& shape_as(RunConfig& c, const std::string& key) {
  if (auto* p = std::get_if<T>(&c.shape)) return *p;
  throw Error(ErrorKind::Parse, fmt::format("{}: does not apply to shape '{}'", key, shape_name(c.shape)));
}

std::string fmt_double(double x) { return fmt::format("{:.17g}", x); }

}  // namespace

void set_config_value(RunConfig& c, const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "n") {
    c.n = static_cast<int>(parse_integer(key, v));
  } else if (key == "mode") {
    if (v == "curve") c.mode = Mode::Curve;
    else if (v == "axisymmetric") c.mode = Mode::Axisymmetric;
    else throw Error(ErrorKind::Parse, fmt::format("mode: '{}' is not curve/axisymmetric", v));
  } else if (key == "F") {
    if (v == "mean") c.k = 1;
    else if (v != "quotient") throw Error(ErrorKind::Parse, fmt::format("F: '{}' is not quotient/mean", v));
  } else if (key == "k") {
    c.k = static_cast<int>(parse_integer(key, v));
  } else if (key == "N") {
    c.N = parse_count(key, v);
  } else if (key == "shape") {
    if (v == "centered") c.shape = CenteredSphere{};
    else if (v == "off-center") c.shape = OffCenterSphere{};
    else if (v == "perturbed") c.shape = PerturbedSphere{};
    else if (v == "file") c.shape = ProfileFile{};
    else throw Error(ErrorKind::Parse, fmt::format("shape: '{}' is not centered/off-center/perturbed/file", v));
  } else if (key == "rho") {
    double* r = shape_rho(c.shape);
    if (r == nullptr) throw Error(ErrorKind::Parse, "rho: does not apply to shape 'file'");
    *r = parse_double(key, v);
  } else if (key == "centerDistance") {
    shape_as<OffCenterSphere>(c, key).centerDistance = parse_double(key, v);
  } else if (key == "amplitude") {
    shape_as<PerturbedSphere>(c, key).amplitude = parse_double(key, v);
  } else if (key == "frequency") {
    shape_as<PerturbedSphere>(c, key).frequency = static_cast<int>(parse_integer(key, v));
  } else if (key == "profile") {
    shape_as<ProfileFile>(c, key).path = v;
  } else if (key == "cflFactor") {
    c.cflFactor = parse_double(key, v);
  } else if (key == "tMax") {
    c.tMax = parse_double(key, v);
  } else if (key == "tolRound") {
    c.tolRound = parse_double(key, v);
  } else if (key == "outputEvery") {
    c.outputEvery = parse_count(key, v);
  } else if (key == "snapshotEvery") {
    c.snapshotEvery = parse_count(key, v);
  } else if (key == "maxSteps") {
    c.maxSteps = parse_count(key, v);
  } else if (key == "resampleRatio") {
    c.resampleRatio = parse_double(key, v);
  } else if (key == "normalizationTol") {
    c.normalizationTol = parse_double(key, v);
  } else if (key == "outputDir") {
    c.outputDir = v;
  } else if (key == "runId") {
    c.runId = v;
  } else if (key == "seed") {
    errno = 0;
    char* end = nullptr;
    const unsigned long long s = std::strtoull(v.c_str(), &end, 10);
    if (v.empty() || v[0] == '-' || v[0] == '+' || end != v.c_str() + v.size() || errno == ERANGE) {
      throw Error(ErrorKind::Parse, fmt::format("seed: '{}' is not a nonnegative 64-bit integer", v));
    }
    c.seed = s;
  } else if (key == "allowNonHoroConvex") {
    c.allowNonHoroConvex = parse_bool(key, v);
  } else if (key == "secondOrderStepper") {
    c.secondOrderStepper = parse_bool(key, v);
  } else {
    throw Error(ErrorKind::Parse, fmt::format("unknown key '{}'", key));
  }
}

std::string serialize(const RunConfig& c) {
  std::string out;
  const auto line = [&out](const char* key, const std::string& value) { out += fmt::format("{} = {}\n", key, value); };
  line("n", std::to_string(c.n));
  line("mode", c.mode == Mode::Curve ? "curve" : "axisymmetric");
  line("F", "quotient");
  line("k", std::to_string(c.k));
  line("N", std::to_string(c.N));
  line("shape", shape_name(c.shape));
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ProfileFile>) {
          line("profile", s.path);
        } else {
          line("rho", fmt_double(s.rho));
          if constexpr (std::is_same_v<T, OffCenterSphere>) line("centerDistance", fmt_double(s.centerDistance));
          if constexpr (std::is_same_v<T, PerturbedSphere>) {
            line("amplitude", fmt_double(s.amplitude));
            line("frequency", std::to_string(s.frequency));
          }
        }
      },
      c.shape);
  line("cflFactor", fmt_double(c.cflFactor));
  line("tMax", fmt_double(c.tMax));
  line("tolRound", fmt_double(c.tolRound));
  line("outputEvery", std::to_string(c.outputEvery));
  line("snapshotEvery", std::to_string(c.snapshotEvery));
  line("maxSteps", std::to_string(c.maxSteps));
  line("resampleRatio", fmt_double(c.resampleRatio));
  line("normalizationTol", fmt_double(c.normalizationTol));
  line("outputDir", c.outputDir);
  line("runId", c.runId);
  line("seed", std::to_string(c.seed));
  line("allowNonHoroConvex", c.allowNonHoroConvex ? "true" : "false");
  line("secondOrderStepper", c.secondOrderStepper ? "true" : "false");
  return out;
}

RunConfig parse_config(const std::string& text, const RunConfig& base) {
  struct Entry {
    std::string key, value;
    int line;
  };
  std::vector<Entry> entries;
  std::istringstream in(text);
  std::string raw;
  int lineNo = 0;
  while (std::getline(in, raw)) {
    ++lineNo;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::Parse, fmt::format("line {}: expected 'key = value'", lineNo));
    }
    entries.push_back({trim(body.substr(0, eq)), trim(body.substr(eq + 1)), lineNo});
  }
  RunConfig c = base;
  // The shape kind decides which parameter keys are legal, so it goes first.
  std::stable_partition(entries.begin(), entries.end(), [](const Entry& e) { return e.key == "shape"; });
  for (const auto& e : entries) {
    try {
      set_config_value(c, e.key, e.value);
    } catch (const Error& err) {
      throw Error(ErrorKind::Parse, fmt::format("line {}: {}", e.line, err.message()));
    }
  }
  return c;
}

void validate(const RunConfig& c) {
  const auto fail = [](const std::string& msg) { throw Error(ErrorKind::Validation, msg); };
  if (c.n < 1 || c.n > 8) fail(fmt::format("n: {} outside 1..8", c.n));
  if ((c.n == 1) != (c.mode == Mode::Curve)) fail("mode: curve mode is exactly n = 1, axisymmetric is n >= 2");
  if (c.k < 1 || c.k > c.n) fail(fmt::format("k: {} outside 1..{}", c.k, c.n));
  if (c.N < kMinNodes) fail(fmt::format("N: {} below the minimum {}", c.N, kMinNodes));
  const double half = 0.5 * pi;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ProfileFile>) {
          if (s.path.empty()) fail("profile: path is empty");
        } else {
          if (!(s.rho > 0.0) || !(s.rho < half)) fail(fmt::format("rho: {} outside (0, pi/2)", s.rho));
          if constexpr (std::is_same_v<T, OffCenterSphere>) {
            if (!(s.centerDistance >= 0.0)) fail("centerDistance: must be nonnegative");
            if (!(s.rho + s.centerDistance < half)) fail("rho, centerDistance: rho + centerDistance must be < pi/2");
          }
          if constexpr (std::is_same_v<T, PerturbedSphere>) {
            const double a = std::abs(s.amplitude);
            if (!std::isfinite(s.amplitude) || !(s.rho - a > 0.0) || !(s.rho + a < half)) {
              fail("amplitude: rho +- amplitude must stay inside (0, pi/2)");
            }
            if (s.frequency < 0) fail("frequency: must be nonnegative");
          }
        }
      },
      c.shape);
  if (!(c.cflFactor > 0.0) || !std::isfinite(c.cflFactor)) fail("cflFactor: must be positive");
  if (!(c.tMax > 0.0)) fail("tMax: must be positive");
  if (!(c.tolRound > 0.0)) fail("tolRound: must be positive");
  if (c.outputEvery < 1) fail("outputEvery: must be >= 1");
  if (c.maxSteps < 1) fail("maxSteps: must be >= 1");
  if (!(c.resampleRatio > 1.0)) fail("resampleRatio: must exceed 1");
  if (!(c.normalizationTol > 0.0)) fail("normalizationTol: must be positive");
}

std::string config_hash(const RunConfig& config) {
  RunConfig c = config;
  c.outputDir.clear();
  c.runId.clear();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : serialize(c)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

std::string run_id(const RunConfig& config) {
  return config.runId.empty() ? "run-" + config_hash(config) : config.runId;
}

CurvatureFunction make_function(const RunConfig& config) { return CurvatureFunction::quotient(config.k); }

FlowParams make_flow_params(const RunConfig& c) {
  FlowParams p;
  p.F = make_function(c);
  p.cflFactor = c.cflFactor;
  p.tMax = c.tMax;
  p.tolRound = c.tolRound;
  p.outputEvery = c.outputEvery;
  p.snapshotEvery = c.snapshotEvery;
  p.maxSteps = c.maxSteps;
  p.secondOrderStepper = c.secondOrderStepper;
  p.resampleRatio = c.resampleRatio;
  p.geometry.normalizationTol = c.normalizationTol;
  return p;
}

PreparedShape make_initial_shape(const RunConfig& c) {
  validate(c);
  PreparedShape out;
  out.curve = std::visit(
      [&](const auto& s) -> ProfileCurve {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CenteredSphere>) {
          return centered_sphere(c.n, c.N, s.rho);
        } else if constexpr (std::is_same_v<T, OffCenterSphere>) {
          return off_center_sphere(c.n, c.N, s.rho, s.centerDistance);
        } else if constexpr (std::is_same_v<T, PerturbedSphere>) {
          return perturbed_sphere(c.n, c.N, s.rho, s.amplitude, s.frequency);
        } else {
          auto snap = read_snapshot(s.path);
          if (snap.curve.n != c.n) {
            throw Error(ErrorKind::Validation,
                        fmt::format("profile: file has n = {}, config has n = {}", snap.curve.n, c.n));
          }
          if (snap.curve.size() != c.N) {
            throw Error(ErrorKind::Validation,
                        fmt::format("N: profile file has {} nodes, config has N = {}", snap.curve.size(), c.N));
          }
          return std::move(snap.curve);
        }
      },
      c.shape);
  GeometryOptions opts;
  opts.normalizationTol = c.normalizationTol;
  out.sigmaMin = horo_margin(build_geometry(out.curve, opts)).sigmaMin;
  out.horoConvex = out.sigmaMin >= -kHoroCertificateTol;
  if (!out.horoConvex && !c.allowNonHoroConvex) {
    throw Error(ErrorKind::NotHoroConvex,
                fmt::format("initial shape has sigmaMin = {:.6e}; set allowNonHoroConvex to run it anyway", out.sigmaMin));
  }
  return out;
}

Trajectory run(const RunConfig& config) {
  const auto shape = make_initial_shape(config);
  return run(make_flow_params(config), shape.curve);
}

}  // namespace horoflow
