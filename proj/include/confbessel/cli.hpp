#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace confbessel::cli {

enum class Command { eval, table, check };
enum class Family { J, Jneg, y2zero, K };
enum class Format { csv, json, plain };

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct Range {
  double start;
  double stop;
  std::size_t count;
};

/// Parses "start:stop:count" (inclusive, linear spacing, count >= 1).
/// Throws std::invalid_argument on malformed input.
Range parse_range(const std::string& text);

std::vector<double> expand(const Range& range);

struct CliConfig {
  Command command = Command::eval;
  Family family = Family::J;
  double order = 0.0;
  double alpha = 1.0;
  bool alpha_given = false;
  bool family_given = false;
  std::optional<double> x;
  std::optional<Range> range;
  std::size_t terms = 60;
  Format format = Format::plain;
  std::optional<double> tolerance;
  std::optional<std::string> output_path;
  std::string check_name = "all";
  // Colored plain output; callers decide from isatty and NO_COLOR.
  bool color = false;
};

/// Runs the command line (args[0] is the program name) and returns the exit
/// status: 0 success, 1 a check failed, 2 usage or domain error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        bool color = false);

int run_eval(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_table(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_check(const CliConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace confbessel::cli
