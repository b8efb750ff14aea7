// lomax-records: simulate Lomax samples and records, estimate theta, tabulate
// the exact moments of the plug-in estimators and run the acceptance suite.
//
// Exit status: 0 success, 1 runtime or degenerate-data failure, 2 bad flags
// or malformed input.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lomax_records/lomax_records.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace lomax_records;

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr const char* kToolName = "lomax-records";

/// Bad flag values or malformed input: exit status 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Output was written, but the command still failed: exit status 1.
class SoftFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---- formatting -----------------------------------------------------------

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json json_number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

/// The manifest of a run. Written next to the data (<out>.manifest.json)
/// rather than inside it, so data files stay byte-identical across reruns.
json make_manifest(const std::string& command, json config, std::optional<std::uint64_t> seed, double seconds) {
  json m;
  m["tool"] = kToolName;
  m["version"] = kVersion;
  m["command"] = command;
  m["config"] = std::move(config);
  m["master_seed"] = seed ? json(*seed) : json(nullptr);
  m["duration_seconds"] = seconds;
  return m;
}

void write_manifest(const std::string& out_path, const std::string& manifest_path, const json& manifest) {
  std::string path = manifest_path;
  if (path.empty()) {
    if (out_path.empty() || out_path == "-") return;
    path = out_path + ".manifest.json";
  }
  write_output(path, manifest.dump(2) + "\n");
}

// ---- parsing --------------------------------------------------------------

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<long long> parse_integer(std::string_view s) {
  s = trim(s);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

/// "0,0.5,1" or "start:stop:step" (stop included up to rounding).
std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> grid;
  if (spec.find(':') != std::string::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw UsageError("--x-grid range must be start:stop:step, got '" + spec + "'");
    const auto a = parse_double(parts[0]);
    const auto b = parse_double(parts[1]);
    const auto h = parse_double(parts[2]);
    if (!a || !b || !h || !(*h > 0.0) || *b < *a) throw UsageError("bad --x-grid range '" + spec + "'");
    const auto n = static_cast<long long>(std::floor((*b - *a) / *h + 1e-9));
    if (n > 1'000'000) throw UsageError("--x-grid range has too many points");
    for (long long k = 0; k <= n; ++k) grid.push_back(*a + static_cast<double>(k) * *h);
  } else {
    for (auto part : split(spec, ',')) {
      const auto v = parse_double(part);
      if (!v) throw UsageError("bad --x-grid value '" + std::string(part) + "'");
      grid.push_back(*v);
    }
  }
  for (double x : grid) {
    if (!(x >= 0.0)) throw UsageError("--x-grid values must be >= 0");
  }
  return grid;
}

/// "3,5,8" or "a:b" or "a:b:step" of integers.
std::vector<long long> parse_int_list(const std::string& spec, const char* flag) {
  std::vector<long long> out;
  if (spec.find(':') != std::string::npos) {
    const auto parts = split(spec, ':');
    if (parts.size() < 2 || parts.size() > 3) throw UsageError(std::string(flag) + ": bad range '" + spec + "'");
    const auto a = parse_integer(parts[0]);
    const auto b = parse_integer(parts[1]);
    const auto h = parts.size() == 3 ? parse_integer(parts[2]) : std::optional<long long>(1);
    if (!a || !b || !h || *h <= 0 || *b < *a || (*b - *a) / *h > 1'000'000) {
      throw UsageError(std::string(flag) + ": bad range '" + spec + "'");
    }
    for (long long v = *a; v <= *b; v += *h) out.push_back(v);
  } else {
    for (auto part : split(spec, ',')) {
      const auto v = parse_integer(part);
      if (!v) throw UsageError(std::string(flag) + ": bad integer '" + std::string(part) + "'");
      out.push_back(*v);
    }
  }
  return out;
}

/// One observation per line; blank lines and lines starting with '#' skipped.
std::vector<double> read_observations(const std::string& path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path);
    if (!file) throw UsageError("cannot open input '" + path + "'");
    in = &file;
  }
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(*in, line)) {
    ++line_no;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto v = parse_double(t);
    if (!v) throw UsageError(path + ":" + std::to_string(line_no) + ": not a finite number: '" + std::string(t) + "'");
    values.push_back(*v);
  }
  if (values.empty()) throw UsageError("input '" + path + "' contains no observations");
  return values;
}

std::uint64_t resolve_seed(const CLI::Option* flag, std::uint64_t flag_value) {
  if (flag->count() > 0) return flag_value;
  if (const char* env = std::getenv("RECORD_LOMAX_SEED")) {
    const auto v = parse_integer(env);
    if (!v || *v < 0) throw UsageError(std::string("RECORD_LOMAX_SEED is not a nonnegative integer: '") + env + "'");
    return static_cast<std::uint64_t>(*v);
  }
  return kDefaultSeed;
}

LomaxParams params_from_flag(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw UsageError("--theta must be finite and > 0");
  return LomaxParams(theta);
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  bool sample = false;
  bool records = false;
  std::size_t n = 0;
  std::size_t m = 0;
  double theta = 1.0;
  std::uint64_t seed = kDefaultSeed;
  CLI::Option* seed_flag = nullptr;
  CLI::Option* n_flag = nullptr;
  CLI::Option* m_flag = nullptr;
  std::string out;
  std::string manifest;
  std::string format = "csv";
};

int run_simulate(const SimulateArgs& a) {
  const auto start = Clock::now();
  if (a.sample == a.records) throw UsageError("simulate: give exactly one of --sample or --records");
  if (a.sample && (a.n_flag->count() == 0 || a.m_flag->count() > 0)) throw UsageError("simulate --sample needs --n (not --m)");
  if (a.records && (a.m_flag->count() == 0 || a.n_flag->count() > 0)) throw UsageError("simulate --records needs --m (not --n)");
  const std::size_t count = a.sample ? a.n : a.m;
  if (count == 0) throw UsageError("simulate: count must be >= 1");
  const LomaxParams params = params_from_flag(a.theta);
  const std::uint64_t seed = resolve_seed(a.seed_flag, a.seed);

  // Replication 0 of the Monte Carlo engine uses the same stream, so these
  // rows are exactly what the engine sees first.
  std::vector<double> values;
  std::vector<double> logs;
  if (a.sample) {
    RandomStream rng(seed, stream_id(StreamDomain::SampleData, 0, 0));
    values = sample(count, params, rng);
  } else {
    RandomStream rng(seed, stream_id(StreamDomain::RecordData, 0, 0));
    const RecordSequence r = sample_records(count, params, rng);
    values.assign(r.values().begin(), r.values().end());
    logs.assign(r.log_excess().begin(), r.log_excess().end());
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw SoftFailure("simulate: a value overflows double precision (ln(1+x) > 709); reduce --m or --theta");
    }
  }

  std::string text;
  if (a.format == "csv") {
    text = a.sample ? "index,value\n" : "index,value,log1p_value\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
      text += std::to_string(i + 1) + "," + fmt17(values[i]);
      if (a.records) text += "," + fmt17(logs[i]);
      text += "\n";
    }
  } else {
    json j;
    j["kind"] = a.sample ? "sample" : "records";
    j["theta"] = a.theta;
    j["count"] = count;
    j["seed"] = seed;
    j["values"] = values;
    if (a.records) j["log1p_values"] = logs;
    text = j.dump(2) + "\n";
  }
  write_output(a.out, text);

  json config;
  config["kind"] = a.sample ? "sample" : "records";
  config["count"] = count;
  config["theta"] = a.theta;
  config["format"] = a.format;
  config["out"] = a.out.empty() ? "-" : a.out;
  write_manifest(a.out, a.manifest, make_manifest("simulate", config, seed, seconds_since(start)));
  return 0;
}

// ---- estimate -------------------------------------------------------------

struct EstimateArgs {
  std::string input;
  std::string mode = "sample";
  std::string out;
  std::string manifest;
};

int run_estimate(const EstimateArgs& a) {
  const auto start = Clock::now();
  const std::vector<double> data = read_observations(a.input);

  std::optional<EstimateReport> report;
  std::optional<std::vector<double>> extracted;
  if (a.mode == "sample") {
    for (double x : data) {
      if (x < 0.0) throw UsageError("estimate: sample observations must be >= 0");
    }
    report = mle_from_sample(data);
  } else {
    RecordSequence records = [&] {
      if (a.mode == "records") {
        try {
          return RecordSequence::from_values(data);
        } catch (const std::domain_error& e) {
          throw UsageError(std::string("estimate: input is not a record sequence: ") + e.what());
        }
      }
      return extract_upper_records(data);
    }();
    if (!records.nonnegative()) throw UsageError("estimate: record values must be >= 0");
    report = mle_from_records(records);
    if (a.mode == "extract-then-records") extracted.emplace(records.values().begin(), records.values().end());
  }

  json out;
  out["theta_hat"] = report->theta_hat;
  out["source"] = std::string(to_string(report->source));
  out["count"] = report->count;
  out["mode"] = a.mode;
  out["observations"] = data.size();
  if (extracted) out["records"] = *extracted;
  write_output(a.out, out.dump(2) + "\n");

  json config;
  config["input"] = a.input;
  config["mode"] = a.mode;
  config["out"] = a.out.empty() ? "-" : a.out;
  write_manifest(a.out, a.manifest, make_manifest("estimate", config, std::nullopt, seconds_since(start)));
  return 0;
}

// ---- analytic -------------------------------------------------------------

struct AnalyticArgs {
  double theta = 1.0;
  int m = 0;
  CLI::Option* m_flag = nullptr;
  std::string x_grid;
  std::string quantity;
  std::string form = "exact";
  std::string n_list;
  std::string i_list;
  std::string format = "csv";
  std::string out;
  std::string manifest;
};

struct GridRow {
  double x;
  double value;
  int terms;
  bool flagged;
};

GridRow evaluate_quantity(const std::string& q, bool finite_form, double x, const LomaxParams& p, int m) {
  auto from = [&](const SeriesResult& r) {
    const double v = finite_form ? r.finite_part : r.value;
    return GridRow{x, v, r.terms, r.cancellation_flag || !std::isfinite(v)};
  };
  if (q == "E-pdf") return from(expected_pdf_hat(x, p, m));
  if (q == "E-cdf") return from(expected_cdf_hat(x, p, m));
  if (q == "MSE-pdf") return from(mse_pdf_hat(x, p, m));
  if (q == "MSE-cdf") return from(mse_cdf_hat(x, p, m));
  if (q == "second-moment-pdf") return from(second_moment_pdf_hat(x, p, m));
  if (q == "second-moment-cdf") return from(second_moment_cdf_hat(x, p, m));
  if (q == "var-pdf") return from(variance_pdf_hat(x, p, m));
  // identity gap (1 - E[cdf_hat]) / E[pdf_hat] - theta (1 + x)
  if (m < 3) throw UsageError("--quantity " + q + " needs --m >= 3");
  const SeriesResult ef = expected_pdf_hat(x, p, m);
  const SeriesResult ec = expected_cdf_hat(x, p, m);
  const int terms = ef.terms + ec.terms;
  if (finite_form) {
    const double v = (1.0 - ec.finite_part) / ef.finite_part - p.theta() * (1.0 + x);
    return {x, v, terms, ef.cancellation_flag || ec.cancellation_flag || !std::isfinite(v)};
  }
  if (ef.cancellation_flag || ec.cancellation_flag || !(ef.value > 0.0)) return {x, std::nan(""), terms, true};
  return {x, asymptotic_identity_gap(x, p, m), terms, false};
}

int run_analytic(const AnalyticArgs& a) {
  const auto start = Clock::now();
  const LomaxParams params = params_from_flag(a.theta);
  const bool finite_form = a.form == "finite";
  json config;
  config["quantity"] = a.quantity;
  config["theta"] = a.theta;
  config["form"] = a.form;
  config["format"] = a.format;
  std::string text;
  bool all_flagged = false;

  if (a.quantity == "gamma-ratio") {
    if (a.n_list.empty() || a.i_list.empty()) throw UsageError("--quantity gamma-ratio needs --n and --i");
    const auto ns = parse_int_list(a.n_list, "--n");
    const auto is = parse_int_list(a.i_list, "--i");
    json rows = json::array();
    text = "n,i,ratio\n";
    for (long long n : ns) {
      for (long long i : is) {
        const double r = gamma_ratio(n, i);
        text += std::to_string(n) + "," + std::to_string(i) + "," + fmt17(r) + "\n";
        rows.push_back({{"n", n}, {"i", i}, {"ratio", json_number(r)}});
      }
    }
    config["n"] = a.n_list;
    config["i"] = a.i_list;
    if (a.format == "json") {
      json j;
      j["quantity"] = a.quantity;
      j["rows"] = rows;
      text = j.dump(2) + "\n";
    }
  } else {
    if (a.m_flag->count() == 0) throw UsageError("--quantity " + a.quantity + " needs --m");
    if (a.x_grid.empty()) throw UsageError("--quantity " + a.quantity + " needs --x-grid");
    const auto grid = parse_grid(a.x_grid);
    std::vector<GridRow> rows;
    for (double x : grid) rows.push_back(evaluate_quantity(a.quantity, finite_form, x, params, a.m));
    all_flagged = !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const GridRow& r) { return r.flagged; });
    config["m"] = a.m;
    config["x_grid"] = a.x_grid;
    if (a.format == "csv") {
      text = "x,value,terms,cancellation_flag\n";
      for (const auto& r : rows) {
        text += fmt17(r.x) + "," + fmt17(r.value) + "," + std::to_string(r.terms) + "," + (r.flagged ? "1" : "0") + "\n";
      }
    } else {
      json j;
      j["quantity"] = a.quantity;
      j["theta"] = a.theta;
      j["m"] = a.m;
      j["form"] = a.form;
      j["rows"] = json::array();
      for (const auto& r : rows) {
        j["rows"].push_back(
            {{"x", r.x}, {"value", json_number(r.value)}, {"terms", r.terms}, {"cancellation_flag", r.flagged}});
      }
      text = j.dump(2) + "\n";
    }
  }
  write_output(a.out, text);
  config["out"] = a.out.empty() ? "-" : a.out;
  write_manifest(a.out, a.manifest, make_manifest("analytic", config, std::nullopt, seconds_since(start)));
  if (all_flagged) throw SoftFailure("analytic: every grid point is cancellation-flagged");
  return 0;
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "fast";
  std::uint64_t seed = kDefaultSeed;
  CLI::Option* seed_flag = nullptr;
  std::size_t workers = 1;
  std::string format = "text";
  std::string out;
  std::string manifest;
};

int run_verify(const VerifyArgs& a) {
  const auto start = Clock::now();
  if (a.workers == 0) throw UsageError("--workers must be >= 1");
  const Suite suite = a.suite == "full" ? Suite::Full : Suite::Fast;
  const std::uint64_t seed = resolve_seed(a.seed_flag, a.seed);
  const VerificationReport report = run_verification(suite, seed, a.workers);

  std::string text;
  if (a.format == "text") {
    text = report.render_text();
  } else {
    json j;
    j["suite"] = a.suite;
    j["seed"] = seed;
    j["passed"] = report.all_passed();
    j["criteria"] = json::array();
    for (const auto& c : report.criteria) {
      j["criteria"].push_back({{"id", c.id}, {"title", c.title}, {"passed", c.passed}, {"details", c.details}});
    }
    text = j.dump(2) + "\n";
  }
  write_output(a.out, text);

  // Timings vary run to run, so they stay out of the report itself.
  json timings = json::array();
  for (const auto& t : report.timings) {
    timings.push_back({{"criterion", t.id}, {"seconds", t.seconds},
                       {"budget_seconds", t.budget_seconds > 0.0 ? json(t.budget_seconds) : json(nullptr)}});
  }
  json config;
  config["suite"] = a.suite;
  config["workers"] = a.workers;
  config["format"] = a.format;
  config["out"] = a.out.empty() ? "-" : a.out;
  config["timings"] = timings;
  const json manifest = make_manifest("verify", config, seed, seconds_since(start));
  if ((a.out.empty() || a.out == "-") && a.manifest.empty()) {
    for (const auto& t : report.timings) std::fprintf(stderr, "criterion %d: %.2f s\n", t.id, t.seconds);
  }
  write_manifest(a.out, a.manifest, manifest);
  return report.all_passed() ? 0 : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lomax upper-record estimation toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Simulate a Lomax sample or record sequence");
  auto* sample_flag = simulate->add_flag("--sample", sim.sample, "Simulate an i.i.d. sample of size --n");
  simulate->add_flag("--records", sim.records, "Simulate the first --m upper records")->excludes(sample_flag);
  sim.n_flag = simulate->add_option("--n", sim.n, "Sample size");
  sim.m_flag = simulate->add_option("--m", sim.m, "Number of records");
  simulate->add_option("--theta", sim.theta, "Lomax theta (> 0)")->capture_default_str();
  sim.seed_flag = simulate->add_option("--seed", sim.seed, "Master seed (default: $RECORD_LOMAX_SEED or 42)");
  simulate->add_option("--out", sim.out, "Output file (default: stdout)");
  simulate->add_option("--manifest", sim.manifest, "Manifest file (default: <out>.manifest.json)");
  simulate->add_option("--format", sim.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Estimate theta from a file of observations");
  estimate->add_option("--input", est.input, "Input file, one value per line, '#' comments ('-' for stdin)")->required();
  estimate->add_option("--mode", est.mode, "sample, records or extract-then-records")
      ->check(CLI::IsMember({"sample", "records", "extract-then-records"}))
      ->capture_default_str();
  estimate->add_option("--out", est.out, "Output file (default: stdout)");
  estimate->add_option("--manifest", est.manifest, "Manifest file (default: <out>.manifest.json)");

  AnalyticArgs ana;
  auto* analytic = app.add_subcommand("analytic", "Tabulate exact moments of the plug-in estimators");
  analytic->add_option("--theta", ana.theta, "Lomax theta (> 0)")->capture_default_str();
  ana.m_flag = analytic->add_option("--m", ana.m, "Number of records");
  analytic->add_option("--x-grid", ana.x_grid, "Comma list or start:stop:step");
  analytic
      ->add_option("--quantity", ana.quantity,
                   "E-pdf, E-cdf, MSE-pdf, MSE-cdf, second-moment-pdf, second-moment-cdf, var-pdf, identity-gap "
                   "(alias theorem4-gap) or gamma-ratio")
      ->check(CLI::IsMember({"E-pdf", "E-cdf", "MSE-pdf", "MSE-cdf", "second-moment-pdf", "second-moment-cdf",
                             "var-pdf", "identity-gap", "theorem4-gap", "gamma-ratio"}))
      ->required();
  analytic->add_option("--form", ana.form, "exact (with log remainder) or finite (truncated gamma sum only)")
      ->check(CLI::IsMember({"exact", "finite"}))
      ->capture_default_str();
  analytic->add_option("--n", ana.n_list, "gamma-ratio: n values (list or a:b[:step])");
  analytic->add_option("--i", ana.i_list, "gamma-ratio: i values (list or a:b[:step])");
  analytic->add_option("--format", ana.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  analytic->add_option("--out", ana.out, "Output file (default: stdout)");
  analytic->add_option("--manifest", ana.manifest, "Manifest file (default: <out>.manifest.json)");

  VerifyArgs ver;
  ver.workers = std::max(1u, std::thread::hardware_concurrency());
  auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
  verify->add_option("--suite", ver.suite, "fast or full")->check(CLI::IsMember({"fast", "full"}))->capture_default_str();
  ver.seed_flag = verify->add_option("--seed", ver.seed, "Master seed (default: $RECORD_LOMAX_SEED or 42)");
  verify->add_option("--workers", ver.workers, "Worker threads for Monte Carlo")->capture_default_str();
  verify->add_option("--format", ver.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  verify->add_option("--out", ver.out, "Output file (default: stdout)");
  verify->add_option("--manifest", ver.manifest, "Manifest file (default: <out>.manifest.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (estimate->parsed()) return run_estimate(est);
    if (analytic->parsed()) {
      if (ana.quantity == "theorem4-gap") ana.quantity = "identity-gap";
      return run_analytic(ana);
    }
    if (verify->parsed()) return run_verify(ver);
  } catch (const DegenerateEstimate& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::logic_error& e) {
    // invalid_argument / domain_error: the inputs were outside what the
    // command accepts
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
