// skewbeta: sampling, density evaluation, Householder and Prufer tables, and
// verification suites from the command line.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parameter error.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "skewbeta/chain.hpp"
#include "skewbeta/densities.hpp"
#include "skewbeta/ensembles.hpp"
#include "skewbeta/spectral.hpp"
#include "skewbeta/sturm.hpp"
#include "skewbeta/suites.hpp"
#include "skewbeta/transform.hpp"

#ifndef SKEWBETA_VERSION
#define SKEWBETA_VERSION "0.0.0"
#endif

namespace {

using namespace skewbeta;
using Vec = std::vector<double>;

constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string ensemble = "antisym-trid";
  int n = 4;
  double beta = 2.0;
  std::optional<double> a;
  int reps = 1000;
  int verify_reps = SuiteOptions{}.reps;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
  // verify
  std::string suite;
  double alpha = 1e-3;
  std::optional<double> tol_scale;
  // density / prufer
  std::string kind = "eigenvalues";
  std::string point;
  std::string given;
  std::string grid = "auto";

  [[nodiscard]] EnsembleSpec spec() const {
    const auto k = parse_ensemble_kind(ensemble);
    if (!k) throw UsageError("unknown ensemble '" + ensemble + "'");
    EnsembleSpec s{*k, n, beta, a};
    s.validate();
    return s;
  }

  [[nodiscard]] nlohmann::json to_json() const {
    nlohmann::json j;
    j["version"] = SKEWBETA_VERSION;
    j["command"] = command;
    j["seed"] = seed;
    j["ensemble"] = ensemble;
    j["n"] = n;
    j["beta"] = beta;
    j["a"] = a ? nlohmann::json(*a) : nlohmann::json(nullptr);
    j["reps"] = command == "verify" ? verify_reps : reps;
    if (!suite.empty()) j["suite"] = suite;
    if (command == "density") {
      j["kind"] = kind;
      j["point"] = point;
      if (!given.empty()) j["given"] = given;
    }
    if (command == "prufer") j["grid"] = grid;
    return j;
  }

  // One-line provenance header for CSV output.
  [[nodiscard]] std::string header() const {
    std::ostringstream os;
    os << "# skewbeta " << SKEWBETA_VERSION << " seed=" << seed << " config=" << to_json().dump();
    return os.str();
  }
};

/// A named-column table written as CSV (one header row) or JSON (same columns).
struct Table {
  std::vector<std::string> columns;
  std::vector<Vec> rows;
};

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

nlohmann::json number_json(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(format_number(v)); }

void write_table(std::ostream& os, const RunConfig& cfg, const Table& t, const std::string& note = "") {
  if (cfg.format == "json") {
    nlohmann::json j;
    j["meta"] = cfg.to_json();
    j["columns"] = t.columns;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : t.rows) {
      nlohmann::json row = nlohmann::json::array();
      for (double v : r) row.push_back(number_json(v));
      j["rows"].push_back(std::move(row));
    }
    os << j.dump(1) << '\n';
    return;
  }
  os << cfg.header() << '\n';
  if (!note.empty()) os << "# " << note << '\n';
  for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << t.columns[c];
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t c = 0; c < r.size(); ++c) os << (c ? "," : "") << format_number(r[c]);
    os << '\n';
  }
}

// Runs `body` against stdout or the --out file.
template <class F>
void with_output(const RunConfig& cfg, F&& body) {
  if (cfg.out.empty()) {
    body(std::cout);
    std::cout.flush();
    if (!std::cout) throw UsageError("failed writing to stdout");
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw UsageError("cannot open output file '" + cfg.out + "'");
  body(f);
  f.close();
  if (!f) throw UsageError("failed writing '" + cfg.out + "'");
}

Vec parse_list(const std::string& s, const char* what) {
  Vec v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("bad number in ") + what + ": '" + item + "'");
    }
  }
  return v;
}

// ---- sample ----

Vec spectrum_row(const SpectralData& sd) {
  Vec row(sd.lambda);
  row.insert(row.end(), sd.q.begin(), sd.q.end());
  if (sd.z) row.push_back(*sd.z);
  return row;
}

int cmd_sample(const RunConfig& cfg) {
  const auto spec = cfg.spec();
  if (cfg.reps < 1) throw UsageError("--reps must be at least 1");
  Table t;
  const int k = spec.n / 2;
  const bool singular = spec.kind == EnsembleKind::LaguerreBidiagonal || spec.kind == EnsembleKind::CMatrix;
  if (singular) {
    // Singular values of B (n columns) or C (k = n columns), descending.
    for (int i = 1; i <= spec.n; ++i) t.columns.push_back("sigma_" + std::to_string(i));
  } else {
    for (int i = 1; i <= k; ++i) t.columns.push_back("lambda_" + std::to_string(i));
    for (int i = 1; i <= k; ++i) t.columns.push_back("q_" + std::to_string(i));
    if (spec.n % 2 == 1) t.columns.push_back("z");
  }

  const RandomStream root(cfg.seed);
  t.rows.resize(static_cast<std::size_t>(cfg.reps));
  for (int r = 0; r < cfg.reps; ++r) {
    auto rs = root.split(static_cast<std::uint64_t>(r));
    Vec row;
    switch (spec.kind) {
      case EnsembleKind::AntisymTridiagonal:
        row = spectrum_row(positive_spectrum(build_antisym_tridiagonal(spec.n, spec.beta, rs)));
        break;
      case EnsembleKind::AntisymDenseGue:
        row = spectrum_row(positive_spectrum(householder_reduce(build_dense_antisym_gue(spec.n, rs))));
        break;
      case EnsembleKind::Chain:
        row = spectrum_row(chain_spectral_sample(spec.n, spec.beta, rs));
        break;
      case EnsembleKind::LaguerreMap:
        row = spectrum_row(positive_spectrum(laguerre_map_sample(spec.n, spec.beta, rs)));
        break;
      case EnsembleKind::LaguerreBidiagonal:
        row = positive_spectrum(tridiagonal_from_bidiagonal(build_laguerre_bidiagonal(spec.n, *spec.a, spec.beta, rs))).lambda;
        break;
      case EnsembleKind::CMatrix:
        row = positive_spectrum(tridiagonal_from_c_matrix(build_c_matrix(spec.n, spec.beta, rs))).lambda;
        break;
    }
    t.rows[static_cast<std::size_t>(r)] = std::move(row);
  }
  with_output(cfg, [&](std::ostream& os) { write_table(os, cfg, t); });
  return 0;
}

// ---- verify ----

int cmd_verify(const RunConfig& cfg) {
  if (cfg.tol_scale) {
    if (!(*cfg.tol_scale >= 0.0)) throw UsageError("--tol-scale must be nonnegative");
    ::setenv("SKEWBETA_TOL_OVERRIDE", format_number(*cfg.tol_scale).c_str(), 1);
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
  if (cfg.verify_reps < 100) throw UsageError("--reps must be at least 100 for verify");
  SuiteOptions opt;
  opt.seed = cfg.seed;
  opt.reps = cfg.verify_reps;
  opt.alpha = cfg.alpha;
  const auto report = run_suite(cfg.suite, opt);
  if (!report) {
    std::string known;
    for (const auto& s : suite_names()) known += " " + s;
    throw UsageError("unknown suite '" + cfg.suite + "'; known:" + known + " all");
  }
  with_output(cfg, [&](std::ostream& os) {
    if (cfg.format == "json") {
      auto j = report->to_json();
      j["meta"] = cfg.to_json();
      os << j.dump(1) << '\n';
      return;
    }
    os << cfg.header() << '\n' << "name,status,statistic,tolerance,p_value\n";
    for (const auto& c : report->cases)
      os << c.name << ',' << to_string(c.status) << ',' << format_number(c.statistic) << ','
         << format_number(c.tolerance) << ',' << (c.p_value ? format_number(*c.p_value) : "") << '\n';
  });
  for (const auto& c : report->cases)
    if (c.status == CaseStatus::Fail) std::cerr << "FAIL " << c.name << '\n';
  return report->passed() ? 0 : 1;
}

// ---- density ----

int cmd_density(const RunConfig& cfg) {
  const Vec x = parse_list(cfg.point, "--point");
  const Vec given = parse_list(cfg.given, "--given");
  LogDensityValue v;
  if (cfg.kind == "eigenvalues") {
    v = logpdf_positive_eigenvalues(x, cfg.n, cfg.beta);
  } else if (cfg.kind == "laguerre" || cfg.kind == "singular-values") {
    if (!cfg.a) throw UsageError("--a is required for the Laguerre densities");
    v = cfg.kind == "laguerre" ? logpdf_laguerre(x, cfg.n, *cfg.a, cfg.beta)
                               : logpdf_singular_values(x, cfg.n, *cfg.a, cfg.beta);
  } else if (cfg.kind == "border") {
    v = conditional_logpdf_up(x, given, cfg.n, cfg.beta);
  } else if (cfg.kind == "project") {
    v = conditional_logpdf_down(x, given, cfg.n, cfg.beta);
  } else if (cfg.kind == "dirichlet") {
    v = dirichlet_logpdf(x, given);
  } else {
    throw UsageError("unknown density kind '" + cfg.kind + "'");
  }
  Table t{{"log_density"}, {{v.log_value}}};
  with_output(cfg, [&](std::ostream& os) { write_table(os, cfg, t); });
  return 0;
}

// ---- prufer ----

Vec parse_grid(const std::string& s, double top) {
  std::string g = s == "auto" ? "0:" + format_number(1.5 * top) + ":200" : s;
  if (g.find(':') == std::string::npos) return parse_list(g, "--grid");
  std::replace(g.begin(), g.end(), ':', ',');
  const Vec parts = parse_list(g, "--grid");
  if (parts.size() != 3 || parts[2] < 2 || parts[2] != std::floor(parts[2]) || !(parts[1] > parts[0]))
    throw UsageError("--grid must be lo:hi:count with hi > lo and count >= 2, or a comma list");
  const int count = static_cast<int>(parts[2]);
  Vec grid(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) grid[static_cast<std::size_t>(i)] = parts[0] + (parts[1] - parts[0]) * i / (count - 1);
  return grid;
}

AntisymTridiagonal single_matrix(const RunConfig& cfg) {
  const auto spec = cfg.spec();
  auto rs = RandomStream(cfg.seed).split(0);
  switch (spec.kind) {
    case EnsembleKind::AntisymTridiagonal: return build_antisym_tridiagonal(spec.n, spec.beta, rs);
    case EnsembleKind::AntisymDenseGue: return householder_reduce(build_dense_antisym_gue(spec.n, rs));
    case EnsembleKind::LaguerreMap: return laguerre_map_sample(spec.n, spec.beta, rs);
    default: throw UsageError("prufer needs an anti-symmetric tridiagonal ensemble");
  }
}

int cmd_prufer(const RunConfig& cfg) {
  const auto t = single_matrix(cfg);
  const Vec grid = parse_grid(cfg.grid, positive_eigenvalues(t).front());
  const auto phases = prufer_phases(t, grid);
  Table tab;
  tab.columns.push_back("mu");
  for (int i = 2; i <= t.order() + 1; ++i) tab.columns.push_back("theta_" + std::to_string(i));
  for (const auto& p : phases) {
    Vec row{p.mu};
    row.insert(row.end(), p.theta.begin(), p.theta.end());
    tab.rows.push_back(std::move(row));
  }
  with_output(cfg, [&](std::ostream& os) { write_table(os, cfg, tab); });
  return 0;
}

// ---- householder ----

int cmd_householder(const RunConfig& cfg) {
  if (cfg.n < 2) throw UsageError("--n must be at least 2");
  auto rs = RandomStream(cfg.seed).split(0);
  const auto input = build_dense_antisym_gue(cfg.n, rs);
  const auto reduced = householder_reduce(input);
  const Eigen::MatrixXd before = input.matrix();
  const Eigen::MatrixXd after = reduced.dense();
  Table t;
  t.columns.push_back("matrix");
  t.columns.push_back("row");
  for (int c = 1; c <= cfg.n; ++c) t.columns.push_back("c" + std::to_string(c));
  for (int which = 0; which < 2; ++which) {
    const Eigen::MatrixXd& m = which == 0 ? before : after;
    for (int r = 0; r < cfg.n; ++r) {
      Vec row{static_cast<double>(which), static_cast<double>(r + 1)};
      for (int c = 0; c < cfg.n; ++c) row.push_back(m(r, c));
      t.rows.push_back(std::move(row));
    }
  }
  with_output(cfg, [&](std::ostream& os) {
    if (cfg.format == "json") {
      auto dump = [](const Eigen::MatrixXd& m) {
        nlohmann::json j = nlohmann::json::array();
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
          nlohmann::json row = nlohmann::json::array();
          for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
          j.push_back(std::move(row));
        }
        return j;
      };
      nlohmann::json j;
      j["meta"] = cfg.to_json();
      j["input"] = dump(before);
      j["reduced"] = dump(after);
      os << j.dump(1) << '\n';
      return;
    }
    write_table(os, cfg, t, "matrix 0 = input, 1 = reduced tridiagonal");
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anti-symmetric beta ensembles: sampling, densities and verification"};
  app.set_version_flag("--version", SKEWBETA_VERSION);
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Root seed")->capture_default_str();
    sub->add_option("--out", cfg.out, "Output file (default stdout)");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  };
  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--ensemble", cfg.ensemble,
                    "antisym-trid, antisym-dense-gue, chain, laguerre-map, laguerre-bidiag or c-matrix "
                    "(for c-matrix --n is the column count k)")
        ->capture_default_str();
    sub->add_option("--n", cfg.n, "Matrix order")->capture_default_str();
    sub->add_option("--beta", cfg.beta, "Repulsion exponent beta > 0")->capture_default_str();
    sub->add_option("--a", cfg.a, "Laguerre parameter a");
  };

  auto* sample = app.add_subcommand("sample", "Sample spectra (lambda, q, z) or singular values, one row per replicate");
  add_model(sample);
  add_common(sample);
  sample->add_option("--reps", cfg.reps, "Replicates")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Run a verification suite; exit 1 if any case fails");
  add_common(verify);
  verify->add_option("--suite", cfg.suite, "Suite name or 'all'")->required();
  verify->add_option("--reps", cfg.verify_reps, "Replicates per statistical case")->capture_default_str();
  verify->add_option("--alpha", cfg.alpha, "Per-case significance level")->capture_default_str();
  verify->add_option("--tol-scale", cfg.tol_scale, "Multiplier applied to every tolerance");

  auto* density = app.add_subcommand("density", "Evaluate a log-density (-inf off the support)");
  add_model(density);
  add_common(density);
  density->add_option("--kind", cfg.kind, "eigenvalues, laguerre, singular-values, border, project or dirichlet")
      ->capture_default_str();
  density->add_option("--point", cfg.point, "Comma-separated point, decreasing")->required();
  density->add_option("--given", cfg.given, "Conditioning eigenvalues (border, project) or Dirichlet parameters");

  auto* prufer = app.add_subcommand("prufer", "Prufer phases theta_2..theta_{n+1} of one sampled matrix on a mu grid");
  add_model(prufer);
  add_common(prufer);
  prufer->add_option("--grid", cfg.grid, "lo:hi:count, a comma list, or auto (0 to 1.5 lambda_max, 200 points)")
      ->capture_default_str();

  auto* householder = app.add_subcommand("householder", "Reduce one dense anti-symmetric GUE draw; print both matrices");
  householder->add_option("--n", cfg.n, "Matrix order")->capture_default_str();
  add_common(householder);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (cfg.command == "householder") {
      cfg.ensemble = "antisym-dense-gue";
      cfg.beta = 2.0;
    }
    if (cfg.command == "sample") return cmd_sample(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "density") return cmd_density(cfg);
    if (cfg.command == "prufer") return cmd_prufer(cfg);
    if (cfg.command == "householder") return cmd_householder(cfg);
  } catch (const std::exception& e) {
    // Bad parameters, I/O failures, and numerical failures of a single run.
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}
