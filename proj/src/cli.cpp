#include "confbessel/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string_view>
#include <variant>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "confbessel/bessel.hpp"
#include "confbessel/errors.hpp"
#include "confbessel/fracseries.hpp"
#include "confbessel/verify.hpp"

namespace confbessel::cli {

namespace {

using nlohmann::json;

constexpr std::string_view kCsvHeader = "x,value,terms_used,tail_estimate";

std::string num(double v) { return fmt::format("{:.17g}", v); }

// nlohmann writes NaN/inf as null; keep that explicit.
json json_number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw std::invalid_argument(fmt::format("'{}' is not a number", text));
  }
  return v;
}

Family parse_family(const std::string& s) {
  if (s == "J") return Family::J;
  if (s == "Jneg") return Family::Jneg;
  if (s == "y2zero") return Family::y2zero;
  if (s == "K") return Family::K;
  throw std::invalid_argument(fmt::format("unknown family '{}'", s));
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  if (s == "plain") return Format::plain;
  throw std::invalid_argument(fmt::format("unknown format '{}'", s));
}

Solution build_solution(const CliConfig& cfg) {
  const Alpha alpha(cfg.alpha);
  const BesselOrder order = BesselOrder::classify(cfg.order);
  switch (cfg.family) {
    case Family::J:
      if (cfg.order < 0.0) {
        throw DomainError("family J needs --order >= 0 (use Jneg for negative orders)");
      }
      return build_J(order.p(), alpha, cfg.terms);
    case Family::Jneg:
      if (cfg.order < 0.0) {
        throw DomainError("family Jneg takes the magnitude of the order, --order >= 0");
      }
      if (order.kind() == OrderKind::zero) {
        return reduce_negative_integer_order(0, alpha, cfg.terms);
      }
      if (order.kind() == OrderKind::positive_integer) {
        return reduce_negative_integer_order(order.m(), alpha, cfg.terms);
      }
      return build_J_neg(order.p(), alpha, cfg.terms);
    case Family::y2zero:
      return build_y2_zero(alpha, cfg.terms);
    case Family::K:
      if (order.kind() != OrderKind::positive_integer) {
        throw CaseError(fmt::format("family K needs an integer --order >= 1, got {}", cfg.order));
      }
      return build_K(order.m(), alpha, cfg.terms);
  }
  throw std::logic_error("unhandled family");
}

EvalResult evaluate(const Solution& s, double x) {
  return std::visit(
      [x](const auto& sol) -> EvalResult {
        if constexpr (std::is_same_v<std::decay_t<decltype(sol)>, FracSeries>) {
          return eval_series(sol, x);
        } else {
          return eval_log_solution(sol, x);
        }
      },
      s);
}

struct Row {
  double x;
  EvalResult result;
};

json row_json(const Row& r) {
  return json{{"x", json_number(r.x)},
              {"value", json_number(r.result.value)},
              {"terms_used", r.result.terms_used},
              {"tail_estimate", json_number(r.result.tail_estimate)}};
}

void write_rows(const std::vector<Row>& rows, Format format, std::ostream& out) {
  switch (format) {
    case Format::csv:
      out << kCsvHeader << '\n';
      for (const Row& r : rows) {
        out << num(r.x) << ',' << num(r.result.value) << ',' << r.result.terms_used << ','
            << num(r.result.tail_estimate) << '\n';
      }
      break;
    case Format::json:
      for (const Row& r : rows) {
        out << row_json(r).dump() << '\n';
      }
      break;
    case Format::plain:
      out << fmt::format("{:>24} {:>24} {:>10} {:>24}\n", "x", "value", "terms_used",
                         "tail_estimate");
      for (const Row& r : rows) {
        out << fmt::format("{:>24} {:>24} {:>10} {:>24}\n", num(r.x), num(r.result.value),
                           r.result.terms_used, num(r.result.tail_estimate));
      }
      break;
  }
}

json report_json(const CheckReport& r) {
  json grid = json::array();
  for (const GridPoint& g : r.grid) {
    grid.push_back(json{{"p", g.p},
                        {"alpha", g.alpha},
                        {"x", g.x ? json_number(*g.x) : json(nullptr)}});
  }
  return json{{"check_name", r.check_name},
              {"grid", std::move(grid)},
              {"max_abs_err", json_number(r.max_abs_err)},
              {"max_rel_err", json_number(r.max_rel_err)},
              {"tolerance", r.tolerance},
              {"mode", std::string(to_string(r.mode))},
              {"passed", r.passed}};
}

void write_reports(const std::vector<CheckReport>& reports, Format format, bool color,
                   std::ostream& out) {
  switch (format) {
    case Format::json:
      for (const CheckReport& r : reports) {
        out << report_json(r).dump() << '\n';
      }
      break;
    case Format::csv:
      out << "check_name,grid_size,max_abs_err,max_rel_err,tolerance,mode,passed\n";
      for (const CheckReport& r : reports) {
        out << r.check_name << ',' << r.grid.size() << ',' << num(r.max_abs_err) << ','
            << num(r.max_rel_err) << ',' << num(r.tolerance) << ',' << to_string(r.mode) << ','
            << (r.passed ? "true" : "false") << '\n';
      }
      break;
    case Format::plain: {
      std::size_t passed = 0;
      for (const CheckReport& r : reports) {
        const double err = r.mode == ErrorMode::absolute ? r.max_abs_err : r.max_rel_err;
        std::string status = r.passed ? "PASS" : "FAIL";
        if (color) {
          status = fmt::format("\x1b[{}m{}\x1b[0m", r.passed ? 32 : 31, status);
        }
        out << fmt::format("{} {:<28} {:<8} err={:<12.3e} tol={:.1e} points={}\n", status,
                           r.check_name, to_string(r.mode), err, r.tolerance, r.grid.size());
        passed += r.passed ? 1 : 0;
      }
      out << fmt::format("{}/{} checks passed\n", passed, reports.size());
      break;
    }
  }
}

// Runs body against --out when given, otherwise against out.
int with_output(const CliConfig& cfg, std::ostream& out, std::ostream& err,
                const std::function<int(std::ostream&)>& body) {
  if (!cfg.output_path) {
    return body(out);
  }
  std::ofstream file(*cfg.output_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open '" << *cfg.output_path << "' for writing\n";
    return kExitUsage;
  }
  const int status = body(file);
  file.flush();
  if (!file) {
    err << "error: failed writing '" << *cfg.output_path << "'\n";
    return kExitUsage;
  }
  return status;
}

void validate(const CliConfig& cfg) {
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) {
    throw DomainError(fmt::format("--alpha must lie in (0, 1], got {}", cfg.alpha));
  }
  if (cfg.terms < 1) {
    throw DomainError("--terms must be >= 1");
  }
  if (cfg.tolerance && !(*cfg.tolerance > 0.0)) {
    throw DomainError(fmt::format("--tolerance must be > 0, got {}", *cfg.tolerance));
  }
  if (cfg.x && cfg.range) {
    throw std::invalid_argument("--x and --range are mutually exclusive");
  }
}

std::vector<double> sample_points(const CliConfig& cfg) {
  if (cfg.range) {
    std::vector<double> xs = expand(*cfg.range);
    std::sort(xs.begin(), xs.end());
    return xs;
  }
  if (cfg.x) {
    return {*cfg.x};
  }
  throw std::invalid_argument("one of --x or --range is required");
}

std::vector<Row> tabulate(const CliConfig& cfg, const std::vector<double>& xs) {
  const Solution solution = build_solution(cfg);
  std::vector<Row> rows;
  rows.reserve(xs.size());
  for (double x : xs) {
    rows.push_back({x, evaluate(solution, x)});
  }
  return rows;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

std::string residual_name(const CliConfig& cfg) {
  switch (cfg.family) {
    case Family::J:
      return fmt::format("residual:J:p={}", cfg.order);
    case Family::Jneg:
      return fmt::format("residual:Jneg:p={}", cfg.order);
    case Family::y2zero:
      return "residual:y2zero";
    case Family::K:
      return fmt::format("residual:K:m={}", cfg.order);
  }
  return "residual";
}

}  // namespace

Range parse_range(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? first : text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
    throw std::invalid_argument(fmt::format("range '{}' is not start:stop:count", text));
  }
  const std::string_view view(text);
  Range r{};
  r.start = parse_double(view.substr(0, first));
  r.stop = parse_double(view.substr(first + 1, second - first - 1));
  const std::string_view count_text = view.substr(second + 1);
  long long count = 0;
  const auto [ptr, ec] =
      std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
  if (ec != std::errc{} || ptr != count_text.data() + count_text.size() || count < 1) {
    throw std::invalid_argument(fmt::format("range count '{}' must be an integer >= 1", count_text));
  }
  if (!std::isfinite(r.start) || !std::isfinite(r.stop)) {
    throw std::invalid_argument("range endpoints must be finite");
  }
  r.count = static_cast<std::size_t>(count);
  return r;
}

std::vector<double> expand(const Range& range) {
  std::vector<double> xs(range.count);
  for (std::size_t i = 0; i < range.count; ++i) {
    if (range.count == 1) {
      xs[i] = range.start;
    } else if (i + 1 == range.count) {
      xs[i] = range.stop;
    } else {
      xs[i] = range.start + (range.stop - range.start) * static_cast<double>(i) /
                                static_cast<double>(range.count - 1);
    }
  }
  return xs;
}

int run_eval(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(cfg);
    if (!cfg.x) {
      throw std::invalid_argument("eval needs --x");
    }
    const std::vector<Row> rows = tabulate(cfg, {*cfg.x});
    return with_output(cfg, out, err, [&](std::ostream& os) {
      const Row& r = rows.front();
      switch (cfg.format) {
        case Format::json:
          os << row_json(r).dump() << '\n';
          break;
        case Format::csv:
          write_rows(rows, Format::csv, os);
          break;
        case Format::plain:
          os << "x             = " << num(r.x) << '\n'
             << "value         = " << num(r.result.value) << '\n'
             << "terms_used    = " << r.result.terms_used << '\n'
             << "tail_estimate = " << num(r.result.tail_estimate) << '\n';
          break;
      }
      return kExitOk;
    });
  });
}

int run_table(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(cfg);
    const std::vector<Row> rows = tabulate(cfg, sample_points(cfg));
    return with_output(cfg, out, err, [&](std::ostream& os) {
      write_rows(rows, cfg.format, os);
      return kExitOk;
    });
  });
}

int run_check(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    validate(cfg);
    if (!is_suite_name(cfg.check_name)) {
      throw std::invalid_argument(fmt::format(
          "unknown check '{}' (expected residual, identities, halforder, scaling or all)",
          cfg.check_name));
    }
    SuiteOptions opts;
    opts.tolerance = cfg.tolerance;
    if (cfg.alpha_given) {
      opts.alphas = std::vector<double>{cfg.alpha};
    }
    if (cfg.x || cfg.range) {
      opts.xs = sample_points(cfg);
    }

    std::vector<CheckReport> reports;
    const bool single_residual =
        cfg.family_given && (cfg.check_name == "residual" || cfg.check_name == "all");
    if (single_residual) {
      const Solution solution = build_solution(cfg);
      const bool is_log = std::holds_alternative<LogSolution>(solution);
      std::vector<double> xs;
      if (opts.xs) {
        xs = *opts.xs;
      } else {
        const Range fallback{0.5, is_log ? 3.0 : 5.0, 9};
        xs = expand(fallback);
      }
      const double p = cfg.family == Family::y2zero ? 0.0 : cfg.order;
      CheckReport residual = residual_check(p, solution, xs, cfg.tolerance);
      residual.check_name = residual_name(cfg);
      reports.push_back(std::move(residual));
      if (cfg.check_name == "all") {
        for (std::string_view name : {"identities", "halforder", "scaling"}) {
          auto more = run_suite(name, opts);
          reports.insert(reports.end(), more.begin(), more.end());
        }
      }
    } else {
      reports = run_suite(cfg.check_name, opts);
    }

    const bool all_passed =
        std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed; });
    const int written = with_output(cfg, out, err, [&](std::ostream& os) {
      write_reports(reports, cfg.format, cfg.color && !cfg.output_path, os);
      return kExitOk;
    });
    if (written != kExitOk) {
      return written;
    }
    return all_passed ? kExitOk : kExitCheckFailed;
  });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color) {
  CLI::App app{"Conformable fractional Bessel functions: evaluate, tabulate, verify.",
               "confbessel"};
  app.require_subcommand(1);

  CliConfig cfg;
  cfg.color = color;
  std::string family = "J";
  std::string format;
  std::string range;
  double x = 0.0;
  double tolerance = 0.0;
  std::string output_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--family", family, "Solution family: J, Jneg, y2zero, K");
    sub->add_option("--order", cfg.order, "Order p (magnitude for Jneg)");
    sub->add_option("--alpha", cfg.alpha, "Conformable order alpha in (0, 1]");
    sub->add_option("--x", x, "Evaluation point x > 0");
    sub->add_option("--range", range, "Grid start:stop:count (inclusive, linear)");
    sub->add_option("--terms", cfg.terms, "Number of stored series coefficients");
    sub->add_option("--format", format, "Output format: csv, json, plain");
    sub->add_option("--tolerance", tolerance, "Override check tolerance");
    sub->add_option("--out", output_path, "Write output to this file");
  };

  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate one solution at one point");
  CLI::App* table_cmd = app.add_subcommand("table", "Tabulate a solution on a grid");
  CLI::App* check_cmd = app.add_subcommand("check", "Run verification checks");
  add_common(eval_cmd);
  add_common(table_cmd);
  add_common(check_cmd);
  check_cmd->add_option("--name", cfg.check_name,
                        "residual, identities, halforder, scaling or all");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) {
    argv.push_back(a.c_str());
  }

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  CLI::App* active = eval_cmd->parsed() ? eval_cmd : table_cmd->parsed() ? table_cmd : check_cmd;
  cfg.command = active == eval_cmd    ? Command::eval
                : active == table_cmd ? Command::table
                                      : Command::check;

  try {
    cfg.family = parse_family(family);
    cfg.family_given = active->count("--family") > 0;
    cfg.alpha_given = active->count("--alpha") > 0;
    if (active->count("--x") > 0) cfg.x = x;
    if (active->count("--range") > 0) cfg.range = parse_range(range);
    if (active->count("--tolerance") > 0) cfg.tolerance = tolerance;
    if (active->count("--out") > 0) cfg.output_path = output_path;
    if (active->count("--format") > 0) {
      cfg.format = parse_format(format);
    } else {
      cfg.format = cfg.command == Command::table ? Format::csv : Format::plain;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n' << active->help();
    return kExitUsage;
  }

  switch (cfg.command) {
    case Command::eval:
      return run_eval(cfg, out, err);
    case Command::table:
      return run_table(cfg, out, err);
    case Command::check:
      return run_check(cfg, out, err);
  }
  return kExitUsage;
}

}  // namespace confbessel::cli
