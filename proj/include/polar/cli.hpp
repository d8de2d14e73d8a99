#pragma once

// Command-line front end. Each subcommand builds a JSON report
// {config, results, pass, version}; `run_cli` handles parsing, output and exit codes.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "polar/bounds.hpp"
#include "polar/extremals.hpp"
#include "polar/io.hpp"
#include "polar/norms.hpp"
#include "polar/report.hpp"
#include "polar/types.hpp"

namespace polar::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kVerificationFailure = 1, kUsageError = 2 };

struct RunConfig {
  std::string subcommand;
  std::optional<Pattern> pattern;
  std::optional<double> p;
  std::optional<Field> field;
  std::optional<std::string> form_path;
  std::optional<std::string> extremal;
  std::uint64_t seed = 0;
  int restarts = 32;
  std::string format = "json";
  std::optional<std::string> out;
  bool parallel = false;
  int samples = 50;
  std::optional<int> m, d, k, n;
  int m_max = 200;
  bool chebyshev = false, asymptotic = false, markov = false;
  bool include_zero = false;
  double slack = kDefaultSlack;

  Field field_or_real() const { return field.value_or(Field::real); }
  OptimizerConfig optimizer() const {
    OptimizerConfig c;
    c.seed = seed;
    c.restarts = restarts;
    c.parallel = parallel;
    return c;
  }
};

struct CommandResult {
  io::json report;
  int exit_code = kOk;
};

inline Pattern parse_pattern(const std::string& s) {
  std::vector<int> ks;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    int k = 0;
    try {
      k = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("pattern: cannot parse '" + s + "'");
    }
    if (pos != tok.size() || k < 1) throw std::invalid_argument("pattern: cannot parse '" + s + "'");
    ks.push_back(k);
  }
  if (ks.empty() || s.back() == ',') throw std::invalid_argument("pattern: cannot parse '" + s + "'");
  return Pattern(ks);
}

/// Accepts a number >= 1, "inf" or "oo".
inline double parse_p(const std::string& s) {
  if (s == "inf" || s == "oo" || s == "Inf" || s == "infinity") return kInf;
  std::size_t pos = 0;
  double p = 0.0;
  try {
    p = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("p: cannot parse '" + s + "'");
  }
  if (pos != s.size() || !(p >= 1.0)) throw std::invalid_argument("p: expected a number >= 1 or inf, got '" + s + "'");
  return p;
}

/// Echo of every setting that affects results (the parallel flag and the output path do not).
inline io::json config_json(const RunConfig& c) {
  auto opt_int = [](const std::optional<int>& v) { return v ? io::json(*v) : io::json(nullptr); };
  return io::json{{"subcommand", c.subcommand},
                  {"pattern", c.pattern ? io::json(c.pattern->str()) : io::json(nullptr)},
                  {"p", c.p ? io::number(*c.p) : io::json(nullptr)},
                  {"field", c.field ? io::json(to_string(*c.field)) : io::json(nullptr)},
                  {"form", c.form_path ? io::json(*c.form_path) : io::json(nullptr)},
                  {"extremal", c.extremal ? io::json(*c.extremal) : io::json(nullptr)},
                  {"seed", c.seed},
                  {"restarts", c.restarts},
                  {"samples", c.samples},
                  {"m", opt_int(c.m)},
                  {"d", opt_int(c.d)},
                  {"k", opt_int(c.k)},
                  {"n", opt_int(c.n)},
                  {"m_max", c.m_max},
                  {"chebyshev", c.chebyshev},
                  {"asymptotic", c.asymptotic},
                  {"markov", c.markov},
                  {"include_zero", c.include_zero},
                  {"slack", io::number(c.slack)}};
}

inline io::json envelope(const RunConfig& c, io::json results, bool pass) {
  return io::json{{"config", config_json(c)}, {"results", std::move(results)}, {"pass", pass}, {"version", kVersion}};
}

// ---- subcommands ----

inline CommandResult cmd_bounds(const RunConfig& c) {
  if (!c.pattern) throw std::invalid_argument("bounds: --pattern is required");
  const Field field = c.field_or_real();
  io::json results = io::json::array();
  for (const auto& r : bounds::applicable_bounds(*c.pattern, c.p, field)) results.push_back(io::bound_json(r));
  if (field == Field::real) {
    results.push_back(io::bound_json(bounds::bound_real_best(*c.pattern)));
    if (c.p) results.push_back(io::bound_json(bounds::bound_real_lp_disjoint(*c.pattern, *c.p)));
  }
  results.push_back(io::bound_json(bounds::bound_best(*c.pattern, c.p, field)));
  return {envelope(c, std::move(results), true), kOk};
}

/// Named instance from --extremal; product uses --pattern (default 1,1), --p (default 1), --field.
inline ExtremalInstance make_extremal(const RunConfig& c) {
  const std::string& name = *c.extremal;
  auto fixed = [&](const ExtremalInstance& inst) {
    if (c.p && *c.p != inst.space.p) throw std::invalid_argument(name + ": p is fixed by the instance");
    if (c.pattern && !(*c.pattern == inst.pattern))
      throw std::invalid_argument(name + ": pattern is fixed to (" + inst.pattern.str() + ")");
    if (c.field && *c.field != inst.space.field) throw std::invalid_argument(name + ": field is fixed to real");
    return inst;
  };
  if (name == "product") return product_extremal(c.pattern.value_or(Pattern({1, 1})), c.p.value_or(1.0), c.field_or_real());
  if (name == "real44") return fixed(real44_form());
  if (name == "nonattaining") {
    auto inst = nonattaining_bilinear(c.n.value_or(9));
    return fixed(inst);
  }
  throw std::invalid_argument("unknown extremal '" + name + "' (expected product, real44, nonattaining)");
}

inline CommandResult cmd_estimate(const RunConfig& c) {
  if (c.form_path.has_value() == c.extremal.has_value())
    throw std::invalid_argument("estimate: give exactly one of --form and --extremal");
  const OptimizerConfig cfg = c.optimizer();
  io::json result;
  bool pass;
  if (c.form_path) {
    SymmetricForm form = io::read_form(*c.form_path);
    if (c.field == Field::complex) form = form.complexified();
    if (c.field == Field::real && !form.is_real()) throw std::invalid_argument("estimate: form file is complex");
    const Pattern pat = c.pattern.value_or(Pattern::ones(form.degree()));
    const SpaceSpec space(c.p.value_or(2.0), form.dim(), form.field());
    const auto rep = ratio_report(form, space, pat, cfg, c.slack);
    result = io::ratio_report_json(rep);
    pass = rep.pass;
  } else {
    const auto inst = make_extremal(c);
    const auto rep = ratio_report(inst.form, inst.space, inst.pattern, cfg, c.slack);
    result = io::ratio_report_json(rep);
    result["instance"] = inst.name;
    pass = rep.pass;
    if (inst.exact_ratio) {
      const bool ok = std::abs(rep.ratio - *inst.exact_ratio) <= inst.ratio_tolerance;
      result["exact_ratio"] = io::number(*inst.exact_ratio);
      result["ratio_tolerance"] = io::number(inst.ratio_tolerance);
      result["exact_pass"] = ok;
      pass = pass && ok;
    }
  }
  io::json results = io::json::array({result});
  return {envelope(c, std::move(results), pass), pass ? kOk : kVerificationFailure};
}

/// Random bound-dominance suite, or verify_instance when --extremal is given.
inline CommandResult cmd_verify(const RunConfig& c) {
  const OptimizerConfig cfg = c.optimizer();
  if (c.extremal) {
    const auto rep = verify_instance(make_extremal(c), cfg);
    io::json results = io::json::array({io::instance_report_json(rep)});
    return {envelope(c, std::move(results), rep.pass), rep.pass ? kOk : kVerificationFailure};
  }
  if (c.samples < 0) throw std::invalid_argument("verify: --samples must be >= 0");
  const int m = c.m.value_or(c.pattern ? c.pattern->m() : 3);
  const int d = c.d.value_or(3);
  const Pattern pat = c.pattern.value_or(Pattern::ones(m));
  if (pat.m() != m) throw std::invalid_argument("verify: pattern does not sum to m");
  const Field field = c.field_or_real();
  const SpaceSpec space(c.p.value_or(2.0), d, field);
  const auto best = bounds::bound_best(pat, space.p, field);

  io::json results = io::json::array();
  int passed = 0, failed = 0, skipped = 0;
  double max_ratio = 0.0;
  const int total = c.samples + (c.include_zero ? 1 : 0);
  for (int i = 0; i < total; ++i) {
    const bool zero = i == c.samples;
    const SymmetricForm form = zero ? make_form(m, d, field, {}) : random_form(m, d, field, c.seed, static_cast<std::uint64_t>(i));
    io::json row{{"index", i}};
    if (form.is_zero()) {
      row["status"] = "skipped";
      row["note"] = "degenerate";
      ++skipped;
      results.push_back(std::move(row));
      continue;
    }
    const auto rep = ratio_report(form, space, pat, cfg, c.slack);
    row["status"] = "measured";
    row["poly"] = io::number(rep.poly.value);
    row["mixed"] = io::number(rep.mixed.value);
    row["ratio"] = io::number(rep.ratio);
    row["pass"] = rep.pass;
    max_ratio = std::max(max_ratio, rep.ratio);
    (rep.pass ? passed : failed)++;
    results.push_back(std::move(row));
  }
  const bool pass = failed == 0;
  results.push_back(io::json{{"summary", true},
                             {"pattern", pat.str()},
                             {"space", io::space_json(space)},
                             {"bound_best", io::number(best.value)},
                             {"bound_source", best.source},
                             {"passed", passed},
                             {"failed", failed},
                             {"skipped", skipped},
                             {"max_ratio", io::number(max_ratio)}});
  return {envelope(c, std::move(results), pass), pass ? kOk : kVerificationFailure};
}

inline CommandResult cmd_table(const RunConfig& c) {
  const int chosen = int(c.chebyshev) + int(c.asymptotic) + int(c.markov);
  if (chosen != 1) throw std::invalid_argument("table: choose exactly one of --chebyshev, --asymptotic, --markov");
  io::json results = io::json::array();
  if (c.chebyshev) {
    if (!c.m) throw std::invalid_argument("table --chebyshev: --m is required");
    for (int k = 1; k <= *c.m; ++k) {
      const auto r = bounds::chebyshev_markov(*c.m, k);
      results.push_back(io::json{{"m", *c.m}, {"k", k}, {"value", io::number(r.value)}, {"log_value", io::number(r.log_value)}});
    }
  } else if (c.asymptotic) {
    const int n = c.n.value_or(2);
    if (c.m_max < n) throw std::invalid_argument("table --asymptotic: --m-max must be >= n");
    std::vector<int> ms;
    for (int m = n; m <= c.m_max; m += n) ms.push_back(m);
    if (ms.back() != c.m_max) ms.push_back(c.m_max);
    for (const auto& row : bounds::asymptotic_scan(n, ms, c.field_or_real()))
      results.push_back(io::json{{"m", row.m},
                                 {"pattern", row.pattern.str()},
                                 {"log_bound", io::number(row.log_bound)},
                                 {"bound", io::number(row.bound)},
                                 {"root", io::number(row.root)}});
  } else {
    if (!c.m || !c.k) throw std::invalid_argument("table --markov: --m and --k are required");
    if (c.field_or_real() == Field::real) {
      const auto r = bounds::real_markov_range(*c.m, *c.k);
      results.push_back(io::json{{"m", *c.m},
                                 {"k", *c.k},
                                 {"field", "real"},
                                 {"M_lower", io::number(r.M_lower)},
                                 {"M_upper", io::number(r.M_upper)},
                                 {"K_lower", io::number(r.K_lower)},
                                 {"K_upper", io::number(r.K_upper)},
                                 {"M_exact", io::optional_number(r.M_exact)}});
    } else {
      const auto [diag, full] = bounds::markov_complex_any(*c.k, *c.m);
      results.push_back(io::bound_json(diag));
      results.push_back(io::bound_json(full));
      if (c.p) results.push_back(io::bound_json(bounds::markov_complex_lp(*c.k, *c.m, *c.p)));
    }
  }
  return {envelope(c, std::move(results), true), kOk};
}

inline CommandResult cmd_extremal(const RunConfig& c) {
  if (!c.extremal) throw std::invalid_argument("extremal: --extremal is required");
  const auto inst = make_extremal(c);
  io::json r = io::instance_json(inst);
  r["form"] = io::form_json(inst.form);
  r["witness_value"] = io::number(instance_mixed_value(inst));
  return {envelope(c, io::json::array({r}), true), kOk};
}

inline CommandResult run(const RunConfig& c) {
  if (c.restarts < 1) throw std::invalid_argument("--restarts must be >= 1");
  if (c.subcommand == "bounds") return cmd_bounds(c);
  if (c.subcommand == "estimate") return cmd_estimate(c);
  if (c.subcommand == "verify") return cmd_verify(c);
  if (c.subcommand == "table") return cmd_table(c);
  if (c.subcommand == "extremal") return cmd_extremal(c);
  throw std::invalid_argument("unknown subcommand '" + c.subcommand + "'");
}

inline std::string render(const io::json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  if (format == "csv") return io::to_csv(report);
  if (format == "table") return io::to_table(report);
  throw std::invalid_argument("unknown format '" + format + "'");
}

// ---- argument parsing ----

/// Parses argv into a RunConfig. Throws CLI::ParseError or std::invalid_argument.
inline RunConfig parse_args(int argc, const char* const* argv, CLI::App& app) {
  RunConfig c;
  std::string pattern, p, field, form, extremal, out;
  std::optional<int> m, d, k, n;

  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--pattern", pattern, "block multiplicities, e.g. 2,1");
  app.add_option("--p", p, "exponent p >= 1, or inf/oo");
  app.add_option("--field", field, "real | complex");
  app.add_option("--form", form, "form JSON file");
  app.add_option("--extremal", extremal, "product | real44 | nonattaining");
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--restarts", c.restarts, "optimizer restarts");
  app.add_option("--format", c.format, "json | csv | table")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--out", out, "output path (default stdout)");
  app.add_flag("--parallel", c.parallel, "run restarts concurrently");
  app.add_option("--samples", c.samples, "random forms for verify");
  app.add_option("--m", m, "degree");
  app.add_option("--d", d, "dimension");
  app.add_option("--k", k, "derivative order / block count");
  app.add_option("--n", n, "number of blocks, or N for nonattaining");
  app.add_option("--m-max", c.m_max, "largest degree for --asymptotic");
  app.add_flag("--chebyshev", c.chebyshev, "Chebyshev derivative table");
  app.add_flag("--asymptotic", c.asymptotic, "balanced-pattern asymptotic table");
  app.add_flag("--markov", c.markov, "Markov constant ranges");
  app.add_flag("--include-zero", c.include_zero, "append the zero form to the verify suite");
  app.add_option("--slack", c.slack, "multiplicative slack for bound checks");
  const std::pair<const char*, const char*> subcommands[] = {
      {"bounds", "closed-form constants for a pattern"},
      {"estimate", "measure the polarization ratio of a form file or named extremal"},
      {"verify", "random bound-dominance suite, or exact checks for --extremal"},
      {"table", "Chebyshev, asymptotic or Markov tables"},
      {"extremal", "dump a named extremal instance"},
  };
  for (const auto& [name, help] : subcommands) app.add_subcommand(name, help);

  app.parse(argc, argv);

  c.subcommand = app.get_subcommands().front()->get_name();
  if (!pattern.empty()) c.pattern = parse_pattern(pattern);
  if (!p.empty()) c.p = parse_p(p);
  if (!field.empty()) c.field = parse_field(field);
  if (!form.empty()) c.form_path = form;
  if (!extremal.empty()) c.extremal = extremal;
  if (!out.empty()) c.out = out;
  c.m = m;
  c.d = d;
  c.k = k;
  c.n = n;
  return c;
}

/// Full CLI entry: parse, run, write output. Returns the process exit code.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Polarization constants and norm estimates for symmetric multilinear forms", "polar"};
  RunConfig cfg;
  try {
    cfg = parse_args(argc, argv, app);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  try {
    const auto result = run(cfg);
    const std::string text = render(result.report, cfg.format);
    if (cfg.out) {
      std::ofstream f(*cfg.out);
      if (!f) {
        err << "error: cannot write '" << *cfg.out << "'\n";
        return kUsageError;
      }
      f << text;
    } else {
      out << text;
    }
    return result.exit_code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace polar::cli
