#pragma once

// Front end for the radau-split tool. Kept in a header so the test suite can
// drive run() with an argument vector and captured streams.
//
//   radau-split tables   [--stages 2,3,4,5]
//   radau-split solve    --problem NAME[:P] [--stages S] [--backend B] [--inner NU] [--rtol R] [--atol A] [--h0 H]
//   radau-split workprec --problem NAME[:P] --ladder BASE,STEP,COUNT [--backend B1,B2] [--inner N1,N2]
//   radau-split region   [--stages S] [--backend split|crout-a] [--inner NU] [--grid RE0,RE1,IM0,IM1,NRE,NIM]
//
// Every command accepts --format csv|pretty and --out PATH; --config FILE
// reads options from an INI/TOML file ([solve], [workprec], ... sections).
// Flags given on the command line win over the file. Unknown keys are errors.
//
// CSV output starts with '#' lines (tool version, effective configuration)
// followed by one header row and the data rows. Exit codes: 0 success,
// 1 solver failure, 2 usage error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "radau/radau.hpp"

namespace radau::cli {

inline constexpr const char* kToolName = "radau-split";
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kSolverFailure = 1, kUsage = 2 };

enum class Format { Csv, Pretty };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tolerance ladder tol_i = 10^-(base + i*step), i = 0..count-1.
struct Ladder {
  double base = 4.0;
  double step = 0.25;
  unsigned count = 17;

  [[nodiscard]] std::vector<double> tolerances() const {
    std::vector<double> out;
    for (unsigned i = 0; i < count; ++i) out.push_back(std::pow(10.0, -(base + step * i)));
    return out;
  }
};

struct RunConfig {
  std::string command;
  std::vector<unsigned> stages;
  std::vector<Backend> backends;
  std::vector<unsigned> inners;
  std::string problem = "test_equation";
  std::optional<double> rtol;
  std::optional<double> atol;
  std::optional<double> h0;
  std::optional<Ladder> ladder;
  GridSpec grid;
  std::string out;
  Format format = Format::Csv;
};

inline Backend parse_backend(const std::string& name) {
  if (name == "full") return Backend::FullLu;
  if (name == "split") return Backend::SplitLowRank;
  if (name == "crout-a") return Backend::CroutOfA;
  throw UsageError("unknown backend '" + name + "' (expected full, split or crout-a)");
}

namespace detail {

inline std::string fmt(double v, int digits = 10) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

template <class T>
std::string join(const std::vector<T>& items) {
  std::ostringstream os;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) os << ',';
    if constexpr (std::is_same_v<T, Backend>) {
      os << to_string(items[i]);
    } else if constexpr (std::is_floating_point_v<T>) {
      os << fmt(items[i]);
    } else {
      os << items[i];
    }
  }
  return os.str();
}

/// Rows of strings rendered either as CSV or as an aligned text table.
struct TextTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& os, Format format) const {
    if (format == Format::Csv) {
      auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
        os << '\n';
      };
      line(header);
      for (const auto& r : rows) line(r);
      return;
    }
    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    for (const auto& r : rows)
      for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        os << (i ? "  " : "") << std::setw(static_cast<int>(width[i])) << cells[i];
      }
      os << '\n';
    };
    line(header);
    std::size_t total = 0;
    for (auto w : width) total += w + 2;
    os << std::string(total > 2 ? total - 2 : 0, '-') << '\n';
    for (const auto& r : rows) line(r);
  }
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

inline void write_metadata(std::ostream& os, Format format, const Metadata& meta) {
  if (format == Format::Csv) {
    os << "# " << kToolName << ' ' << kToolVersion << '\n';
    for (const auto& [k, v] : meta) os << "# " << k << " = " << v << '\n';
  } else {
    os << kToolName << ' ' << kToolVersion << '\n';
    for (const auto& [k, v] : meta) os << "  " << k << ": " << v << '\n';
    os << '\n';
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// tables

struct TableCell {
  std::string table;  // "abscissae", "amplification" or "averaged"
  unsigned s = 0;
  std::string scheme;
  std::string quantity;
  double value = 0.0;
  double reference = 0.0;

  [[nodiscard]] double deviation() const { return std::abs(value - reference); }
};

namespace detail {

struct AmplificationRef {
  double rho_tilde;
  double rho_star;
};
// Reference values to 4 decimals, s = 2..5.
inline constexpr AmplificationRef kCroutOfARef[4] = {
    {0.1500, 0.1837}, {0.1853, 0.3726}, {0.1728, 0.5064}, {0.1496, 0.6103}};
inline constexpr AmplificationRef kLowRankRef[4] = {
    {0.1498, 0.1835}, {0.1333, 0.3134}, {0.1174, 0.3826}, {0.0787, 0.3963}};
inline constexpr double kAveragedRef[4][5] = {{0.1498, 0.1835, 0.1498, 0.2020, 0.2020},
                                              {0.1407, 0.3378, 0.1513, 0.3984, 0.3440},
                                              {0.1316, 0.4363, 0.2169, 0.6643, 0.5172},
                                              {0.1200, 0.5841, 0.2959, 1.1141, 0.9945}};

}  // namespace detail

/// Every cell of the three reproduced tables for one s in 2..5, with its
/// reference value.
inline std::vector<TableCell> table_cells(unsigned s) {
  if (s < 2 || s > 5) throw UsageError("tables are available for s = 2..5");
  std::vector<TableCell> out;
  const std::string low(to_string(Scheme::LowRankSplit));
  const std::string crout(to_string(Scheme::CroutOfA));

  const auto tab = build_collocation(s);
  const auto aux = solve_aux(s, tab.c);
  const auto ref = aux_abscissae(s);
  for (unsigned i = 0; i < s; ++i) {
    out.push_back({"abscissae", s, low, "c_hat_" + std::to_string(i + 1), aux.c_hat[i], ref[i]});
  }
  out.push_back({"abscissae", s, low, "d", target_pivot(s), tabulated_pivot(s)});

  const auto& r1 = detail::kCroutOfARef[s - 2];
  const auto& r4 = detail::kLowRankRef[s - 2];
  const auto tri_a = scheme_factors(s, Scheme::CroutOfA);
  const auto tri_l = scheme_factors(s, Scheme::LowRankSplit);
  out.push_back({"amplification", s, crout, "rho_tilde", rho_tilde(tri_a.L, tri_a.U), r1.rho_tilde});
  out.push_back({"amplification", s, crout, "rho_star", rho_star(tri_a.L, tri_a.U).value, r1.rho_star});
  out.push_back({"amplification", s, low, "rho_tilde", rho_tilde(tri_l.L, tri_l.U), r4.rho_tilde});
  out.push_back({"amplification", s, low, "rho_star", rho_star(tri_l.L, tri_l.U).value, r4.rho_star});

  const auto avg_s = averaged_factors(tri_l.L, tri_l.U, s);
  const auto avg_1 = averaged_factors(tri_l.L, tri_l.U, 1);
  const auto& r3 = detail::kAveragedRef[s - 2];
  out.push_back({"averaged", s, low, "rho_tilde_s", avg_s.rho_tilde, r3[0]});
  out.push_back({"averaged", s, low, "rho_star_s", avg_s.rho_star, r3[1]});
  out.push_back({"averaged", s, low, "rho_tilde_1", avg_1.rho_tilde, r3[2]});
  out.push_back({"averaged", s, low, "rho_star_1", avg_1.rho_star, r3[3]});
  out.push_back({"averaged", s, low, "rho_inf_1", avg_1.rho_inf, r3[4]});
  return out;
}

inline int cmd_tables(const RunConfig& cfg, std::ostream& os) {
  detail::TextTable t{{"table", "s", "scheme", "quantity", "value", "reference", "deviation"}, {}};
  for (unsigned s : cfg.stages) {
    for (const auto& c : table_cells(s)) {
      const int digits = c.table == "abscissae" ? 17 : 6;
      t.rows.push_back({c.table, std::to_string(c.s), c.scheme, c.quantity, detail::fmt(c.value, digits),
                        detail::fmt(c.reference, digits), detail::fmt(c.deviation(), 3)});
    }
  }
  detail::write_metadata(os, cfg.format, {{"command", "tables"}, {"stages", detail::join(cfg.stages)}});
  t.write(os, cfg.format);
  return kOk;
}

// ---------------------------------------------------------------------------
// solve and workprec

struct RunOutcome {
  bool ok = false;
  std::string status = "ok";
  IntegrationResult result;
  double mescd = std::numeric_limits<double>::quiet_NaN();
  double seconds = 0.0;
};

/// One adaptive integration; solver errors are captured in the outcome.
inline RunOutcome run_once(const ProblemSpec& spec, unsigned s, Backend backend, unsigned inner, double rtol,
                           double atol, double h0) {
  const auto tab = build_collocation(s);
  const auto split = build_split(s);
  NewtonConfig nc;
  nc.backend = backend;
  nc.inner_sweeps = std::max(1u, inner);
  RunOutcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    out.result = integrate_adaptive(spec.problem, tab, split, spec.t_end, rtol, atol, h0, nc);
    out.ok = true;
  } catch (const Error& e) {
    out.status = std::string(to_string(e.code()));
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (out.ok) {
    if (const auto ref = spec.reference_at_end()) out.mescd = radau::mescd(out.result.y, *ref);
  }
  return out;
}

inline int cmd_solve(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  const auto spec = make_problem(cfg.problem);
  const unsigned s = cfg.stages.front();
  const Backend backend = cfg.backends.front();
  const unsigned inner = cfg.inners.front();
  const double rtol = cfg.rtol.value_or(1e-6);
  const double atol = cfg.atol.value_or(rtol);
  const double h0 = cfg.h0.value_or(spec.h0);

  const auto run = run_once(spec, s, backend, inner, rtol, atol, h0);
  if (!run.ok) {
    err << "error: integration of " << spec.problem.name << " failed: " << run.status << '\n';
    return kSolverFailure;
  }
  const auto& st = run.result.stats;
  detail::write_metadata(os, cfg.format,
                         {{"command", "solve"},
                          {"problem", cfg.problem},
                          {"stages", std::to_string(s)},
                          {"backend", std::string(to_string(backend))},
                          {"inner", std::to_string(inner)},
                          {"rtol", detail::fmt(rtol)},
                          {"atol", detail::fmt(atol)},
                          {"h0", detail::fmt(h0)},
                          {"t_end", detail::fmt(spec.t_end)}});
  detail::TextTable stats{{"t", "mescd", "steps", "accept", "reject", "feval", "jeval", "lu", "lu_dim"},
                          {{detail::fmt(run.result.t), detail::fmt(run.mescd, 4), std::to_string(st.steps),
                            std::to_string(st.accepted), std::to_string(st.rejected), std::to_string(st.f_evals),
                            std::to_string(st.jac_evals), std::to_string(st.lu_factorizations),
                            std::to_string(st.lu_dim_max)}}};
  stats.write(os, cfg.format);
  const auto ref = spec.reference_at_end();
  detail::TextTable state{{"index", "y", "reference"}, {}};
  for (std::size_t k = 0; k < run.result.y.size(); ++k) {
    state.rows.push_back({std::to_string(k), detail::fmt(run.result.y[k], 17),
                          ref ? detail::fmt((*ref)[k], 17) : std::string("nan")});
  }
  os << (cfg.format == Format::Csv ? "# final state\n" : "\nfinal state\n");
  state.write(os, cfg.format);
  return kOk;
}

struct WorkPrecRow {
  Backend backend = Backend::FullLu;
  unsigned inner = 0;  // 0 for the full backend, which has no inner sweeps
  double tol = 0.0;
  RunOutcome outcome;
};

/// Runs the ladder for every requested backend (and inner count for the
/// sweep backends). Rows are ordered by backend, then inner, then tolerance.
inline std::vector<WorkPrecRow> workprec_rows(const ProblemSpec& spec, unsigned s,
                                              const std::vector<Backend>& backends,
                                              const std::vector<unsigned>& inners, const Ladder& ladder,
                                              std::optional<double> h0) {
  std::vector<WorkPrecRow> rows;
  for (Backend b : backends) {
    const std::vector<unsigned> nus = b == Backend::FullLu ? std::vector<unsigned>{0} : inners;
    for (unsigned nu : nus) {
      for (double tol : ladder.tolerances()) {
        rows.push_back({b, nu, tol, run_once(spec, s, b, nu, tol, tol, h0.value_or(tol))});
      }
    }
  }
  return rows;
}

inline int cmd_workprec(const RunConfig& cfg, std::ostream& os) {
  if (!cfg.ladder) throw UsageError("workprec needs --ladder base,step,count");
  const auto spec = make_problem(cfg.problem);
  const unsigned s = cfg.stages.front();
  const auto rows = workprec_rows(spec, s, cfg.backends, cfg.inners, *cfg.ladder, cfg.h0);
  detail::write_metadata(os, cfg.format,
                         {{"command", "workprec"},
                          {"problem", cfg.problem},
                          {"stages", std::to_string(s)},
                          {"backend", detail::join(cfg.backends)},
                          {"inner", detail::join(cfg.inners)},
                          {"ladder", detail::fmt(cfg.ladder->base) + "," + detail::fmt(cfg.ladder->step) + "," +
                                         std::to_string(cfg.ladder->count)},
                          {"h0", cfg.h0 ? detail::fmt(*cfg.h0) : std::string("tol")}});
  detail::TextTable t{
      {"backend", "inner", "tol", "mescd", "cpu_seconds", "steps", "accept", "feval", "jeval", "lu", "status"}, {}};
  for (const auto& r : rows) {
    const auto& st = r.outcome.result.stats;
    t.rows.push_back({std::string(to_string(r.backend)), std::to_string(r.inner), detail::fmt(r.tol, 6),
                      detail::fmt(r.outcome.mescd, 4), detail::fmt(r.outcome.seconds, 4), std::to_string(st.steps),
                      std::to_string(st.accepted), std::to_string(st.f_evals), std::to_string(st.jac_evals),
                      std::to_string(st.lu_factorizations), r.outcome.status});
  }
  t.write(os, cfg.format);
  return kOk;
}

// ---------------------------------------------------------------------------
// region

inline Scheme scheme_for(Backend b) {
  switch (b) {
    case Backend::SplitLowRank: return Scheme::LowRankSplit;
    case Backend::CroutOfA: return Scheme::CroutOfA;
    case Backend::FullLu: break;
  }
  throw UsageError("region needs a splitting backend (split or crout-a)");
}

inline int cmd_region(const RunConfig& cfg, std::ostream& os) {
  const unsigned s = cfg.stages.front();
  const Scheme scheme = scheme_for(cfg.backends.front());
  const unsigned nu = cfg.inners.front();
  const auto tri = scheme_factors(s, scheme);
  const auto scan = convergence_region_scan(tri.L, tri.U, cfg.grid, nu);
  double overall = 0.0;
  for (const auto& p : scan.samples) overall = std::max(overall, p.rho);
  const auto& g = cfg.grid;
  detail::write_metadata(
      os, cfg.format,
      {{"command", "region"},
       {"stages", std::to_string(s)},
       {"scheme", std::string(to_string(scheme))},
       {"inner", nu == 0 ? std::string("0 (spectral radius)") : std::to_string(nu)},
       {"grid", detail::join(std::vector<double>{g.re_min, g.re_max, g.im_min, g.im_max}) + "," +
                    std::to_string(g.n_re) + "," + std::to_string(g.n_im)},
       {"max_rho", detail::fmt(overall, 6)},
       {"max_rho_left_half_plane", detail::fmt(scan.max_left_half_plane, 6)},
       {"contracts_on_left_half_plane", scan.contracts_on_left_half_plane() ? "yes" : "no"}});
  if (cfg.format == Format::Pretty) return kOk;
  detail::TextTable t{{"re", "im", "rho"}, {}};
  t.rows.reserve(scan.samples.size());
  for (const auto& p : scan.samples) {
    t.rows.push_back({detail::fmt(p.re, 8), detail::fmt(p.im, 8), detail::fmt(p.rho, 10)});
  }
  t.write(os, cfg.format);
  return kOk;
}

// ---------------------------------------------------------------------------
// argument handling

namespace detail {

struct RawOptions {
  std::vector<unsigned> stages;
  std::vector<std::string> backends;
  std::vector<unsigned> inners;
  std::string problem = "test_equation";
  std::optional<double> rtol, atol, h0;
  std::vector<double> ladder;
  std::vector<double> grid;
  std::string out;
  std::string format = "csv";
};

inline void add_common(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--stages", raw.stages, "number of stages s (comma list for tables)")->delimiter(',');
  sub->add_option("--format", raw.format, "csv or pretty")->check(CLI::IsMember({"csv", "pretty"}));
  sub->add_option("--out", raw.out, "write output to this file instead of stdout");
}

inline void add_solver(CLI::App* sub, RawOptions& raw, bool lists) {
  auto* b = sub->add_option("--backend", raw.backends, "full, split or crout-a");
  auto* n = sub->add_option("--inner", raw.inners, "inner sweeps per Newton iteration");
  if (lists) {
    b->delimiter(',');
    n->delimiter(',');
  } else {
    b->expected(1);
    n->expected(1);
  }
  sub->add_option("--problem", raw.problem, "problem as name[:p1,p2]");
  sub->add_option("--rtol", raw.rtol, "relative tolerance");
  sub->add_option("--atol", raw.atol, "absolute tolerance");
  sub->add_option("--h0", raw.h0, "initial step size");
}

inline RunConfig finish(const std::string& command, const RawOptions& raw) {
  RunConfig cfg;
  cfg.command = command;
  cfg.problem = raw.problem;
  cfg.rtol = raw.rtol;
  cfg.atol = raw.atol;
  cfg.h0 = raw.h0;
  cfg.out = raw.out;
  cfg.format = raw.format == "pretty" ? Format::Pretty : Format::Csv;

  cfg.stages = raw.stages;
  if (cfg.stages.empty()) cfg.stages = command == "tables" ? std::vector<unsigned>{2, 3, 4, 5} : std::vector<unsigned>{3};
  for (unsigned s : cfg.stages) {
    if (s < 2 || s > 5) throw UsageError("--stages must lie in 2..5");
  }
  if (command != "tables" && cfg.stages.size() != 1) throw UsageError("--stages takes a single value here");

  for (const auto& name : raw.backends) cfg.backends.push_back(parse_backend(name));
  if (cfg.backends.empty()) {
    cfg.backends = command == "workprec" ? std::vector<Backend>{Backend::FullLu, Backend::SplitLowRank}
                                         : std::vector<Backend>{Backend::SplitLowRank};
  }
  cfg.inners = raw.inners;
  if (cfg.inners.empty()) cfg.inners = {command == "region" ? 0u : 2u};
  if (command != "region") {
    for (unsigned nu : cfg.inners) {
      if (nu < 1) throw UsageError("--inner must be >= 1");
    }
  }

  auto positive = [](const std::optional<double>& v, const char* name) {
    if (v && !(*v > 0.0 && std::isfinite(*v))) throw UsageError(std::string(name) + " must be positive");
  };
  positive(cfg.rtol, "--rtol");
  positive(cfg.atol, "--atol");
  positive(cfg.h0, "--h0");

  if (!raw.ladder.empty()) {
    if (raw.ladder.size() != 3) throw UsageError("--ladder expects base,step,count");
    const double count = raw.ladder[2];
    if (!(count >= 1.0) || count != std::floor(count)) throw UsageError("--ladder count must be a positive integer");
    if (!std::isfinite(raw.ladder[0]) || !std::isfinite(raw.ladder[1])) throw UsageError("--ladder values must be finite");
    cfg.ladder = Ladder{raw.ladder[0], raw.ladder[1], static_cast<unsigned>(count)};
  }
  if (!raw.grid.empty()) {
    const auto& g = raw.grid;
    if (g.size() != 6) throw UsageError("--grid expects re_min,re_max,im_min,im_max,n_re,n_im");
    for (double v : g) {
      if (!std::isfinite(v)) throw UsageError("--grid values must be finite");
    }
    if (!(g[0] <= g[1] && g[2] <= g[3])) throw UsageError("--grid bounds must be ordered");
    if (!(g[4] >= 1.0 && g[5] >= 1.0) || g[4] != std::floor(g[4]) || g[5] != std::floor(g[5])) {
      throw UsageError("--grid counts must be positive integers");
    }
    cfg.grid = GridSpec{g[0], g[1], g[2], g[3], static_cast<unsigned>(g[4]), static_cast<unsigned>(g[5])};
  }
  return cfg;
}

}  // namespace detail

inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* os = &out;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) throw UsageError("cannot open output file '" + cfg.out + "'");
    os = &file;
  }
  if (cfg.command == "tables") return cmd_tables(cfg, *os);
  if (cfg.command == "solve") return cmd_solve(cfg, *os, err);
  if (cfg.command == "workprec") return cmd_workprec(cfg, *os);
  if (cfg.command == "region") return cmd_region(cfg, *os);
  throw UsageError("unknown command '" + cfg.command + "'");
}

/// Parses argv (argv[0] is the program name), runs the command and returns
/// the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Radau IIA integrator with a low-rank triangular splitting", kToolName};
  app.set_version_flag("--version", kToolVersion);
  app.set_config("--config", "", "read options from an INI/TOML file");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1, 1);

  detail::RawOptions raw;
  auto* tables = app.add_subcommand("tables", "reproduce the abscissae and amplification-factor tables");
  auto* solve = app.add_subcommand("solve", "integrate one problem and report statistics");
  auto* workprec = app.add_subcommand("workprec", "work-precision sweep over a tolerance ladder");
  auto* region = app.add_subcommand("region", "sample the inner-iteration contraction factor on a grid");
  for (auto* sub : {tables, solve, workprec, region}) detail::add_common(sub, raw);
  detail::add_solver(solve, raw, false);
  detail::add_solver(workprec, raw, true);
  workprec->add_option("--ladder", raw.ladder, "tolerance ladder base,step,count: tol_i = 10^-(base+i*step)")
      ->delimiter(',');
  region->add_option("--backend", raw.backends, "splitting to analyse: split or crout-a")->expected(1);
  region->add_option("--inner", raw.inners, "0 for the spectral radius, nu >= 1 for the nu-step average")
      ->expected(1);
  region->add_option("--grid", raw.grid, "re_min,re_max,im_min,im_max,n_re,n_im")->delimiter(',');
  for (auto* sub : {tables, solve, workprec, region}) sub->allow_config_extras(CLI::config_extras_mode::error);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return dispatch(detail::finish(command, raw), out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    switch (e.code()) {
      case ErrorCode::UnknownProblem:
      case ErrorCode::InvalidArgument:
      case ErrorCode::Unsupported:
        err << "usage error: " << e.what() << '\n';
        return kUsage;
      default:
        err << "error: " << e.what() << '\n';
        return kSolverFailure;
    }
  }
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{kToolName};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace radau::cli
