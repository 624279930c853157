#include "strahler/commands.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "strahler/asymptotics.hpp"
#include "strahler/error.hpp"
#include "strahler/expect.hpp"
#include "strahler/sampler.hpp"
#include "strahler/tree.hpp"
#include "strahler/verify.hpp"

namespace strahler {

namespace {

constexpr int kDefaultVerifyMaxN = 12;

std::string mode_name(Mode m) { return m == Mode::exact ? "exact" : "float"; }

Cell exact_cell(const std::optional<Rational>& q) { return text_cell(q ? to_fraction_string(*q) : ""); }
Cell decimal_cell(double x) { return number_cell(format_decimal(x)); }
Cell int_cell(long long v) { return number_cell(std::to_string(v)); }

std::unique_ptr<ExpectationEngine> make_engine(const RunConfig& cfg, std::ostream& err) {
  EngineLimits limits;
  if (cfg.max_n) limits.exact_max_n = *cfg.max_n;
  auto engine = std::make_unique<ExpectationEngine>(limits);
  engine->set_warning_sink([&err](const std::string& msg) { err << "warning: " << msg << '\n'; });
  return engine;
}

void require_exact_ceiling(const ExpectationEngine& engine, int n) {
  if (n > engine.limits().exact_max_n) {
    throw LimitExceeded("n=" + std::to_string(n) + " exceeds the exact limit " +
                        std::to_string(engine.limits().exact_max_n));
  }
}

Value compute_expectation(ExpectationEngine& engine, const RunConfig& cfg, int n, int r, const Observable& f) {
  switch (cfg.mode) {
    case ModeChoice::exact:
      return Value::from_exact(engine.expectation_exact({n, r, f, Mode::exact}));
    case ModeChoice::floating:
      return Value::from_estimate(engine.expectation_float({n, r, f, Mode::floating}));
    case ModeChoice::automatic:
      break;
  }
  return engine.expectation({n, r, f, Mode::exact});
}

Value compute_ratio(ExpectationEngine& engine, const RunConfig& cfg, int n, int r, const Observable& f) {
  if (cfg.mode == ModeChoice::exact) require_exact_ceiling(engine, n);
  return engine.bifurcation_ratio(n, r, f, cfg.mode == ModeChoice::floating ? Mode::floating : Mode::exact);
}

double residual_of(const Value& v, const Rational& reference) {
  return v.exact ? to_double(*v.exact - reference) : v.approx - to_double(reference);
}

}  // namespace

std::vector<int> parse_grid(const std::string& text) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    int v = 0;
    const char* first = text.data() + start;
    const char* last = text.data() + end;
    auto [p, ec] = std::from_chars(first, last, v);
    if (first == last || ec != std::errc() || p != last) {
      throw std::invalid_argument("bad grid entry '" + text.substr(start, end - start) + "'");
    }
    if (v < 1) throw std::invalid_argument("grid values must be positive");
    if (!out.empty() && v <= out.back()) throw std::invalid_argument("grid must be strictly ascending");
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

Table cmd_expect(const RunConfig& cfg, std::ostream& err) {
  const Observable f = parse(cfg.f);
  const auto owner = make_engine(cfg, err);
  ExpectationEngine& engine = *owner;
  Table table{{"n", "r", "f", "mode", "exact", "decimal", "rel_error_bound"}, {}};
  for (const int n : cfg.ns) {
    const Value v = compute_expectation(engine, cfg, n, cfg.r, f);
    table.add_row({int_cell(n), int_cell(cfg.r), text_cell(f.text()), text_cell(mode_name(v.mode)), exact_cell(v.exact),
                   decimal_cell(v.approx), decimal_cell(v.rel_error_bound)});
  }
  return table;
}

Table cmd_ratio(const RunConfig& cfg, std::ostream& err) {
  const Observable f = parse(cfg.f);
  const auto owner = make_engine(cfg, err);
  ExpectationEngine& engine = *owner;
  const AsymptoticCoeffs init = initial_coeffs(f, engine);
  Table table{{"n", "r", "f", "mode", "exact", "decimal", "asymptotic", "asymptotic_decimal", "limit", "residual"}, {}};
  for (const int n : cfg.ns) {
    const Value v = compute_ratio(engine, cfg, n, cfg.r, f);
    const RatioAsymptotic asym = ratio_asymptotic(init, cfg.r, Rational(n));
    table.add_row({int_cell(n), int_cell(cfg.r), text_cell(f.text()), text_cell(mode_name(v.mode)), exact_cell(v.exact),
                   decimal_cell(v.approx), text_cell(to_fraction_string(asym.value)),
                   decimal_cell(to_double(asym.value)), text_cell(to_fraction_string(asym.limit)),
                   decimal_cell(residual_of(v, asym.value))});
  }
  return table;
}

Table cmd_dist(const RunConfig& cfg, std::ostream& err) {
  const auto owner = make_engine(cfg, err);
  ExpectationEngine& engine = *owner;
  Table table{{"n", "r", "s", "mode", "probability", "decimal"}, {}};
  for (const int n : cfg.ns) {
    bool exact = cfg.mode != ModeChoice::floating;
    if (exact && n > engine.limits().exact_max_n) {
      if (cfg.mode == ModeChoice::exact) require_exact_ceiling(engine, n);
      err << "warning: n=" << n << " exceeds the exact limit " << engine.limits().exact_max_n
          << "; using float mode\n";
      exact = false;
    }
    if (exact) {
      for (const auto& [s, p] : engine.distribution(n, cfg.r).probability) {
        table.add_row({int_cell(n), int_cell(cfg.r), int_cell(s), text_cell("exact"), text_cell(to_fraction_string(p)),
                       decimal_cell(to_double(p))});
      }
    } else {
      for (const auto& [s, p] : engine.distribution_float(n, cfg.r).probability) {
        table.add_row(
            {int_cell(n), int_cell(cfg.r), int_cell(s), text_cell("float"), text_cell(""), decimal_cell(p)});
      }
    }
  }
  return table;
}

Table cmd_sample(const RunConfig& cfg, std::ostream& err) {
  const Observable f = parse(cfg.f);
  const auto owner = make_engine(cfg, err);
  ExpectationEngine& engine = *owner;
  Table table{{"n", "r", "f", "trials", "seed", "mean", "stderr", "reference", "reference_decimal"}, {}};
  for (const int n : cfg.ns) {
    const MonteCarloReport report = monte_carlo({n, cfg.trials, cfg.seed, f, cfg.r, SamplingMethod::automatic});
    std::optional<Rational> reference;
    double reference_decimal = 0.0;
    if (n <= engine.limits().exact_max_n) {
      reference = engine.expectation_exact({n, cfg.r, f, Mode::exact});
      reference_decimal = to_double(*reference);
    } else {
      reference_decimal = engine.expectation_float({n, cfg.r, f, Mode::floating}).value;
    }
    table.add_row({int_cell(n), int_cell(cfg.r), text_cell(f.text()), int_cell(report.trials),
                   number_cell(std::to_string(cfg.seed)), decimal_cell(report.mean),
                   number_cell(report.stderr_of_mean ? format_decimal(*report.stderr_of_mean) : ""),
                   exact_cell(reference), decimal_cell(reference_decimal)});
  }
  return table;
}

Table cmd_enumerate(const RunConfig& cfg, std::ostream&) {
  const Observable f = parse(cfg.f);
  const int limit = cfg.max_n.value_or(kDefaultEnumerationLimit);
  Table table{{"n", "rank", "tree", "order", "profile", "f", "value"}, {}};
  for (const int n : cfg.ns) {
    long long rank = 0;
    for_each_tree(
        n,
        [&](const BinaryTree& t) {
          const BranchProfile profile = branch_counts(t);
          std::string counts;
          for (const auto c : profile.counts) counts += (counts.empty() ? "" : " ") + std::to_string(c);
          const Rational value = evaluate(f, profile.window(cfg.r, f.arity()));
          table.add_row({int_cell(n), int_cell(rank++), text_cell(encode(t)), int_cell(profile.max_order()),
                         text_cell(counts), text_cell(f.text()), text_cell(to_fraction_string(value))});
        },
        limit);
  }
  return table;
}

Table cmd_asympt(const RunConfig& cfg, std::ostream& err) {
  const Observable f = parse(cfg.f);
  const auto owner = make_engine(cfg, err);
  ExpectationEngine& engine = *owner;
  Quantity quantity;
  if (cfg.quantity == "expectation") {
    quantity = Quantity::expectation;
  } else if (cfg.quantity == "ratio") {
    quantity = Quantity::ratio;
  } else {
    throw std::invalid_argument("quantity must be expectation or ratio");
  }
  if (cfg.mode == ModeChoice::exact) require_exact_ceiling(engine, cfg.ns.back() + (quantity == Quantity::ratio));
  const Mode mode = cfg.mode == ModeChoice::floating ? Mode::floating : Mode::exact;
  const ConvergenceReport report = convergence_report(engine, f, cfg.r, cfg.ns, quantity, mode);
  Table table{{"n", "r", "f", "quantity", "k", "a1", "b1", "fitted", "mode", "exact", "decimal", "asymptotic",
               "asymptotic_decimal", "residual", "slope", "threshold", "converged"},
              {}};
  for (const auto& row : report.rows) {
    table.add_row({int_cell(row.n), int_cell(report.r), text_cell(f.text()), text_cell(cfg.quantity),
                   int_cell(report.init.k), text_cell(to_fraction_string(report.init.a1)),
                   text_cell(to_fraction_string(report.init.b1)), text_cell(report.init.fitted ? "true" : "false"),
                   text_cell(mode_name(row.exact.mode)), exact_cell(row.exact.exact), decimal_cell(row.exact.approx),
                   text_cell(to_fraction_string(row.asymptotic)), decimal_cell(to_double(row.asymptotic)),
                   decimal_cell(row.residual_zero ? 0.0 : row.residual),
                   number_cell(report.slope ? format_decimal(*report.slope) : ""), decimal_cell(report.threshold),
                   text_cell(report.converged ? "true" : "false")});
  }
  return table;
}

Table cmd_verify(const RunConfig& cfg, std::ostream& err, bool& all_passed) {
  VerifyConfig vc;
  vc.max_n = cfg.max_n.value_or(kDefaultVerifyMaxN);
  vc.corrupt = cfg.corrupt;
  Table table{{"id", "name", "status", "detail"}, {}};
  all_passed = true;
  run_acceptance(vc, [&](const CheckResult& res) {
    all_passed = all_passed && res.passed;
    err << res.id << ' ' << (res.passed ? "pass" : "FAIL") << '\n';
    table.add_row({text_cell(res.id), text_cell(res.name), text_cell(res.passed ? "pass" : "fail"),
                   text_cell(res.detail)});
  });
  return table;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Horton-Strahler statistics of uniform random binary trees"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Print help for every subcommand");

  RunConfig cfg;
  std::optional<int> n;
  std::string n_grid;
  std::string mode = "auto";
  std::string format;

  const std::map<std::string, std::string> about = {
      {"expect", "Expected value of an observable of consecutive branch counts"},
      {"ratio", "Generalized bifurcation ratio with its asymptotic expansion"},
      {"dist", "Distribution of the order-r branch count"},
      {"sample", "Monte Carlo estimate from uniformly sampled trees"},
      {"enumerate", "List every tree of a magnitude with its branch profile"},
      {"asympt", "Convergence of exact values towards the asymptotic expansion"},
      {"verify", "Run the acceptance suite"},
  };
  for (const char* name : {"expect", "ratio", "dist", "sample", "enumerate", "asympt", "verify"}) {
    CLI::App* sub = app.add_subcommand(name, about.at(name));
    sub->callback([&cfg, name] { cfg.subcommand = name; });
    auto* n_opt = sub->add_option("--n", n, "Tree magnitude")->check(CLI::PositiveNumber);
    auto* grid_opt = sub->add_option("--n-grid", n_grid, "Comma-separated ascending magnitudes");
    n_opt->excludes(grid_opt);
    sub->add_option("--r", cfg.r, "Base Strahler order")->check(CLI::PositiveNumber);
    sub->add_option("--f", cfg.f, "Observable, e.g. \"S1^2\" or \"S2/S1\"");
    sub->add_option("--mode", mode, "exact, float, or auto (exact with float fallback)")
        ->check(CLI::IsMember({"auto", "exact", "float"}));
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out_path, "Write the table to this file");
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--trials", cfg.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    sub->add_option("--max-n", cfg.max_n, "Exact (or enumeration) ceiling")->check(CLI::PositiveNumber);
    if (std::string(name) == "asympt") {
      sub->add_option("--quantity", cfg.quantity, "expectation or ratio")
          ->check(CLI::IsMember({"expectation", "ratio"}));
    }
    if (std::string(name) == "verify") {
      sub->add_option("--corrupt", cfg.corrupt, "Perturb one check (testing aid)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_code::usage;
  }

  try {
    if (!n_grid.empty()) {
      cfg.ns = parse_grid(n_grid);
    } else if (n) {
      cfg.ns = {*n};
    } else if (cfg.subcommand != "verify") {
      err << "error: --n or --n-grid is required\n";
      return exit_code::usage;
    }
    cfg.mode = mode == "exact" ? ModeChoice::exact : mode == "float" ? ModeChoice::floating : ModeChoice::automatic;
    const bool is_verify = cfg.subcommand == "verify";
    cfg.format = format.empty() ? (is_verify ? OutputFormat::json : OutputFormat::csv)
                                : (format == "json" ? OutputFormat::json : OutputFormat::csv);

    Table table;
    bool passed = true;
    if (cfg.subcommand == "expect") table = cmd_expect(cfg, err);
    if (cfg.subcommand == "ratio") table = cmd_ratio(cfg, err);
    if (cfg.subcommand == "dist") table = cmd_dist(cfg, err);
    if (cfg.subcommand == "sample") table = cmd_sample(cfg, err);
    if (cfg.subcommand == "enumerate") table = cmd_enumerate(cfg, err);
    if (cfg.subcommand == "asympt") table = cmd_asympt(cfg, err);
    if (is_verify) table = cmd_verify(cfg, err, passed);

    std::ostringstream rendered;
    if (cfg.format == OutputFormat::json) {
      write_json(table, rendered);
    } else {
      write_csv(table, rendered);
    }
    if (cfg.out_path.empty()) {
      out << rendered.str();
    } else {
      std::ofstream file(cfg.out_path, std::ios::binary | std::ios::trunc);
      file << rendered.str();
      if (!file) {
        err << "error: cannot write " << cfg.out_path << '\n';
        return exit_code::usage;
      }
    }
    return passed ? exit_code::ok : exit_code::verify_failed;
  } catch (const LimitExceeded& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::limit;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::usage;
  }
}

}  // namespace strahler
