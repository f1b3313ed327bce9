// Command-line front end: one subcommand per experiment, CSV or JSON output.
//
// Exit codes: 0 ok, 1 usage error, 2 numerical failure (JSON error record on stderr).

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bisteklov/bisteklov.hpp"
#include "bisteklov/io.hpp"
#include "bisteklov/verify/suite.hpp"

namespace {

using nlohmann::json;
using namespace bisteklov;

constexpr int kExitOk = 0, kExitUsage = 1, kExitNumeric = 2;
constexpr const char* kOutDirEnv = "BISTEKLOV_OUTPUT_DIR";

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  json meta = json::object();
};

std::string csv_cell(const Cell& c) {
  if (auto d = std::get_if<double>(&c)) return io::num(*d);
  if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
  if (auto b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  const auto& s = std::get<std::string>(c);
  return s.find_first_of(",\"") == std::string::npos ? s : "\"" + s + "\"";
}

json json_cell(const Cell& c) {
  return std::visit([](const auto& v) { return json(v); }, c);
}

std::string render(const Table& t, const std::string& format) {
  std::ostringstream out;
  if (format == "csv") {
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
      out << "\n";
    }
    return out.str();
  }
  json j = t.meta;
  j["rows"] = json::array();
  for (const auto& row : t.rows) {
    json o = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) o[t.columns[i]] = json_cell(row[i]);
    j["rows"].push_back(o);
  }
  return j.dump(2) + "\n";
}

struct RunConfig {
  std::string command;
  std::string format = "csv";
  std::string output;
  std::uint64_t seed = 1;
  ProblemParams params{2, 1.0};
};

// --output if given (relative paths land in $BISTEKLOV_OUTPUT_DIR when set), otherwise
// $BISTEKLOV_OUTPUT_DIR/<command>.<format>, otherwise stdout.
void emit(const RunConfig& cfg, const std::string& text) {
  namespace fs = std::filesystem;
  const char* dir = std::getenv(kOutDirEnv);
  fs::path target;
  if (!cfg.output.empty()) {
    target = cfg.output;
    if (dir && target.is_relative()) target = fs::path(dir) / target;
  } else if (dir && *dir) {
    target = fs::path(dir) / (cfg.command + "." + cfg.format);
  }
  if (target.empty()) {
    std::cout << text;
    return;
  }
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  std::ofstream f(target, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + target.string());
  f << text;
}

json base_meta(const RunConfig& cfg) {
  return {{"command", cfg.command}, {"dim", cfg.params.dim}, {"tau", cfg.params.tau}, {"seed", cfg.seed}};
}

Table run_spectrum(const RunConfig& cfg, int count) {
  Table t;
  t.meta = base_meta(cfg);
  t.columns = {"index", "l", "lambda", "multiplicity"};
  long long index = 1;
  for (const auto& e : enumerate_spectrum(cfg.params, count))
    for (int c = 0; c < e.used; ++c) t.rows.push_back({index++, static_cast<long long>(e.l), e.lambda, static_cast<long long>(e.multiplicity)});
  return t;
}

Table run_modes(const RunConfig& cfg, const std::vector<int>& ls, int points) {
  Table t;
  t.meta = base_meta(cfg);
  t.columns = {"l", "r", "R", "dR", "d2R", "d3R"};
  for (int l : ls) {
    const auto prof = mode_profile(cfg.params, l);
    for (int i = 0; i <= points; ++i) {
      const double r = static_cast<double>(i) / points;
      const auto v = prof.eval(r);
      t.rows.push_back({static_cast<long long>(l), r, v[0], v[1], v[2], v[3]});
    }
  }
  return t;
}

Table run_concentrate(const RunConfig& cfg, const std::vector<int>& ls, double mass, const std::vector<double>& eps) {
  Table t;
  t.meta = base_meta(cfg);
  t.meta["mass"] = mass;
  t.columns = {"l", "eps", "lambda", "target", "rel_error"};
  std::vector<std::future<std::vector<ConcentrationRow>>> jobs;
  for (int l : ls)
    jobs.push_back(std::async(std::launch::async, [&, l] {
      return concentration_experiment(l, cfg.params.dim, cfg.params.tau, mass, eps);
    }));
  for (std::size_t i = 0; i < ls.size(); ++i)
    for (const auto& r : jobs[i].get())
      t.rows.push_back({static_cast<long long>(ls[i]), r.eps, r.lambda, r.target, r.rel_error});
  return t;
}

Table run_rayleigh(const RunConfig& cfg, const std::string& kind, const std::vector<int>& ls,
                   const std::vector<double>& inner) {
  Table t;
  t.meta = base_meta(cfg);
  t.meta["kind"] = kind;
  if (kind == "annulus") {
    // Equal-area family b² − a² = 1 at τ = 0.
    t.meta["tau"] = 0.0;
    t.columns = {"a", "b", "numerator", "denominator", "quotient", "measure_normalized", "below_ball"};
    const double ball = tau0_eigenvalue(cfg.params.dim, 2);
    for (double a : inner) {
      const double b = cfg.params.dim == 2 ? std::sqrt(1.0 + a * a) : std::cbrt(1.0 + a * a * a);
      const auto q = annulus_trial_quotient(a, b, cfg.params.dim);
      t.rows.push_back({a, b, q.numerator, q.denominator, q.quotient, q.measure_normalized, q.measure_normalized < ball});
    }
    return t;
  }
  t.columns = {"l", "numerator", "denominator", "quotient", "lambda", "rel_diff"};
  for (int l : ls) {
    const auto q = rayleigh_quotient(mode_radial_profile(mode_profile(cfg.params, l)), l, cfg.params.dim,
                                     cfg.params.tau, {0.0, 1.0});
    const double lam = ball_eigenvalue(cfg.params, l);
    const double diff = lam == 0.0 ? std::abs(q.quotient) : std::abs(q.quotient - lam) / lam;
    t.rows.push_back({static_cast<long long>(l), q.numerator, q.denominator, q.quotient, lam, diff});
  }
  return t;
}

Table run_iso(const RunConfig& cfg, const std::vector<std::string>& files, bool corpus, bool match_area) {
  std::vector<verify::NamedPolygon> polys;
  for (const auto& f : files) {
    auto more = io::load_polygons(f);
    polys.insert(polys.end(), more.begin(), more.end());
  }
  if (corpus) {
    auto more = verify::polygon_corpus();
    polys.insert(polys.end(), more.begin(), more.end());
  }
  detail::require(!polys.empty(), "iso: no polygons given (use --polygons or --corpus)");
  if (match_area)
    for (auto& p : polys) p.poly = verify::with_area_pi(p.poly);
  std::vector<std::future<IsoReport>> jobs;
  for (const auto& p : polys)
    jobs.push_back(std::async(std::launch::async, [&p, tau = cfg.params.tau] { return isoperimetric_report(p.poly, tau); }));
  Table t;
  t.meta = base_meta(cfg);
  t.meta.erase("dim");
  t.columns = {"name"};
  std::istringstream hdr(io::iso_csv_header());
  std::string col;
  std::getline(hdr, col, ',');
  while (std::getline(hdr, col, ',')) t.columns.push_back(col);
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const auto r = jobs[i].get();
    t.rows.push_back({polys[i].name, r.tau, r.area, r.perimeter, r.boundary_centroid.x, r.boundary_centroid.y, r.moment2,
                      r.asymmetry, r.sym_diff_centered, r.c_constant, r.delta, r.moment_lhs, r.moment_rhs,
                      r.upper_bound, r.lambda2_ball, r.quantitative_bound, r.moment_inequality, r.ub_below_ball,
                      r.quantitative_holds});
  }
  return t;
}

Table run_hadamard(const RunConfig& cfg, const std::string& problem, const std::vector<int>& ls,
                   const std::vector<double>& taus, const std::vector<int>& ss, double h, int random_speeds) {
  detail::require(problem == "steklov" || problem == "neumann", "hadamard: --problem must be steklov or neumann");
  Table t;
  t.meta = base_meta(cfg);
  t.meta.erase("tau");
  t.meta["problem"] = problem;
  t.meta["step"] = h;
  t.columns = {"problem", "l", "tau", "s", "lambda", "speed", "derivative", "oracle", "rel_diff", "criticality"};
  struct Job {
    int l;
    double tau;
    int s;
  };
  std::vector<Job> grid;
  for (int l : ls)
    for (double tau : taus)
      for (int s : ss)
        if (s <= multiplicity(l, 2)) grid.push_back({l, tau, s});
  // Random volume-preserving speeds: Σ_{m=1..4} (a_m cos mθ + b_m sin mθ), seeded.
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::array<double, 8>> speeds(random_speeds);
  for (auto& c : speeds)
    for (double& x : c) x = gauss(rng);
  auto make_speed = [](const std::array<double, 8>& c) {
    return NormalSpeed{[c](double th) {
      double g = 0.0;
      for (int m = 1; m <= 4; ++m) g += c[2 * m - 2] * std::cos(m * th) + c[2 * m - 1] * std::sin(m * th);
      return g;
    }};
  };
  std::vector<std::future<std::vector<std::vector<Cell>>>> jobs;
  for (const auto& job : grid)
    jobs.push_back(std::async(std::launch::async, [&, job] {
      const auto m = problem == "steklov" ? steklov_multiplet(job.l, job.tau, job.s)
                                          : neumann_multiplet(job.l, job.tau, job.s);
      std::vector<std::vector<Cell>> rows;
      const double d = hadamard_derivative(m, NormalSpeed::constant(1.0));
      const double o = scaling_oracle(m, h);
      const double crit = criticality_check(m).max_deviation;
      rows.push_back({problem, static_cast<long long>(job.l), job.tau, static_cast<long long>(m.s), m.lambda,
                      std::string("dilation"), d, o, std::abs(d - o) / std::max(std::abs(o), 1e-300), crit});
      for (std::size_t k = 0; k < speeds.size(); ++k) {
        const double dv = hadamard_derivative(m, make_speed(speeds[k]));
        rows.push_back({problem, static_cast<long long>(job.l), job.tau, static_cast<long long>(m.s), m.lambda,
                        "random-" + std::to_string(k), dv, 0.0, std::abs(dv) / std::max(std::abs(d), 1e-300), crit});
      }
      return rows;
    }));
  for (auto& j : jobs)
    for (auto& row : j.get()) t.rows.push_back(std::move(row));
  return t;
}

int run_selftest(const RunConfig& cfg, bool timings) {
  auto results = verify::run_checks(verify::acceptance_checks());
  auto inv = verify::run_checks(verify::invariant_checks());
  results.insert(results.end(), inv.begin(), inv.end());
  int failed = 0;
  for (const auto& r : results) failed += !r.passed;
  std::ostringstream out;
  if (cfg.format == "json") {
    json j = {{"command", "selftest"}, {"passed", failed == 0}, {"failed", failed}, {"checks", json::array()}};
    for (const auto& r : results) {
      json c = {{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}};
      if (timings) c["seconds"] = r.seconds;
      j["checks"].push_back(c);
    }
    out << j.dump(2) << "\n";
  } else {
    for (auto r : results) {
      if (!timings) {
        r.seconds = 0.0;
        out << "[" << (r.passed ? "PASS" : "FAIL") << "] " << r.id << " " << r.name << ": " << r.detail << "\n";
      } else {
        out << verify::format_line(r) << "\n";
      }
    }
    out << (results.size() - failed) << "/" << results.size() << " checks passed\n";
  }
  emit(cfg, out.str());
  return failed == 0 ? kExitOk : kExitNumeric;
}

void error_record(const std::string& command, const std::string& code, const std::string& message) {
  const json j = {{"error", {{"command", command}, {"code", code}, {"message", message}}}};
  std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Biharmonic Steklov eigenvalue laboratory"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool with_problem) {
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output,-o", cfg.output, "output file (default stdout or $" + std::string(kOutDirEnv) + ")");
    sub->add_option("--seed", cfg.seed, "seed for randomized inputs");
    if (with_problem) {
      sub->add_option("--dim,-N", cfg.params.dim, "space dimension N >= 2")->check(CLI::Range(2, 64));
      sub->add_option("--tau", cfg.params.tau, "tension tau >= 0")->check(CLI::NonNegativeNumber);
    }
  };

  int count = 6;
  auto* spectrum = app.add_subcommand("spectrum", "ball Steklov spectrum with multiplicity");
  add_common(spectrum, true);
  spectrum->add_option("--count", count, "number of eigenvalues")->check(CLI::PositiveNumber);

  std::vector<int> mode_ls{1, 2, 3};
  int points = 20;
  auto* modes = app.add_subcommand("modes", "radial mode profiles R, R', R'', R''' on [0,1]");
  add_common(modes, true);
  modes->add_option("--l", mode_ls, "harmonic orders")->delimiter(',');
  modes->add_option("--points", points, "number of radial intervals")->check(CLI::PositiveNumber);

  std::vector<int> conc_ls{1};
  std::string mass_text = "auto";
  std::vector<double> eps{0.08, 0.04, 0.02, 0.01};
  auto* concentrate = app.add_subcommand("concentrate", "Neumann eigenvalues under boundary mass concentration");
  add_common(concentrate, true);
  concentrate->add_option("--l", conc_ls, "harmonic orders (>= 1)")->delimiter(',');
  concentrate->add_option("--mass", mass_text, "total mass M, or 'auto' for |dB|");
  concentrate->add_option("--eps", eps, "decreasing shell widths")->delimiter(',');

  std::string ray_kind = "annulus";
  std::vector<int> ray_ls{1, 2, 3, 4, 5};
  std::vector<double> inner{0.05, 0.1, 0.2, 0.3, 0.4, 0.5};
  auto* rayleigh = app.add_subcommand("rayleigh", "Rayleigh quotients: eigenmodes or the tau=0 annulus sweep");
  add_common(rayleigh, true);
  rayleigh->add_option("--kind", ray_kind, "annulus or mode")->check(CLI::IsMember({"annulus", "mode"}));
  rayleigh->add_option("--l", ray_ls, "harmonic orders (kind=mode)")->delimiter(',');
  rayleigh->add_option("--inner", inner, "inner radii (kind=annulus)")->delimiter(',');

  std::vector<std::string> poly_files;
  bool use_corpus = false, match_area = false;
  auto* iso = app.add_subcommand("iso", "isoperimetric report for polygons");
  add_common(iso, false);
  iso->add_option("--tau", cfg.params.tau, "tension tau > 0")->check(CLI::PositiveNumber);
  iso->add_option("--polygons", poly_files, "JSON polygon files")->delimiter(',');
  iso->add_flag("--corpus", use_corpus, "include the built-in polygon corpus");
  iso->add_flag("--match-area", match_area, "rescale every polygon to area pi");

  std::string problem = "steklov";
  std::vector<int> had_ls{1, 2, 3}, had_s{1, 2};
  std::vector<double> had_taus{0.5, 1.0, 5.0};
  double h = 1e-4;
  int random_speeds = 0;
  auto* hadamard = app.add_subcommand("hadamard", "shape derivatives, dilation oracle and criticality");
  add_common(hadamard, false);
  hadamard->add_option("--problem", problem, "steklov or neumann")->check(CLI::IsMember({"steklov", "neumann"}));
  hadamard->add_option("--l", had_ls, "harmonic orders")->delimiter(',');
  hadamard->add_option("--tau", had_taus, "tension values")->delimiter(',');
  hadamard->add_option("--s", had_s, "symmetric-function degrees")->delimiter(',');
  hadamard->add_option("--step", h, "finite-difference step in [1e-6, 1e-2]");
  hadamard->add_option("--random-speeds", random_speeds, "number of seeded volume-preserving speeds")
      ->check(CLI::NonNegativeNumber);

  bool timings = false;
  auto* selftest = app.add_subcommand("selftest", "acceptance criteria and module invariants");
  add_common(selftest, false);
  selftest->add_flag("--timings", timings, "include wall-clock times (output no longer reproducible)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const auto* sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  try {
    cfg.params.validate();
    Table t;
    if (sub == spectrum) {
      t = run_spectrum(cfg, count);
    } else if (sub == modes) {
      t = run_modes(cfg, mode_ls, points);
    } else if (sub == concentrate) {
      double mass = 0.0;
      if (mass_text == "auto") {
        mass = sphere_area(cfg.params.dim);
      } else {
        try {
          mass = std::stod(mass_text);
        } catch (const std::exception&) {
          std::cerr << "--mass: expected a number or 'auto'\n" << app.help();
          return kExitUsage;
        }
      }
      t = run_concentrate(cfg, conc_ls, mass, eps);
    } else if (sub == rayleigh) {
      t = run_rayleigh(cfg, ray_kind, ray_ls, inner);
    } else if (sub == iso) {
      t = run_iso(cfg, poly_files, use_corpus, match_area);
    } else if (sub == hadamard) {
      t = run_hadamard(cfg, problem, had_ls, had_taus, had_s, h, random_speeds);
    } else {
      return run_selftest(cfg, timings);
    }
    emit(cfg, render(t, cfg.format));
    return kExitOk;
  } catch (const Error& e) {
    error_record(cfg.command, to_string(e.code()), e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    error_record(cfg.command, "internal", e.what());
    return kExitNumeric;
  }
}
