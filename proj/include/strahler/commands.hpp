#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "strahler/table.hpp"

namespace strahler {

enum class ModeChoice { automatic, exact, floating };
enum class OutputFormat { csv, json };

struct RunConfig {
  std::string subcommand;
  std::vector<int> ns;  // strictly ascending
  int r = 1;
  std::string f = "S1";
  ModeChoice mode = ModeChoice::automatic;
  OutputFormat format = OutputFormat::csv;
  std::string out_path;
  std::uint64_t seed = 0;
  std::int64_t trials = 1000;
  std::optional<int> max_n;
  std::string quantity = "expectation";
  std::string corrupt;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verify_failed = 1;
inline constexpr int usage = 2;
inline constexpr int limit = 3;
}  // namespace exit_code

// "a,b,c" -> {a, b, c}; throws std::invalid_argument unless the values are
// strictly ascending positive integers.
std::vector<int> parse_grid(const std::string& text);

Table cmd_expect(const RunConfig& cfg, std::ostream& err);
Table cmd_ratio(const RunConfig& cfg, std::ostream& err);
Table cmd_dist(const RunConfig& cfg, std::ostream& err);
Table cmd_sample(const RunConfig& cfg, std::ostream& err);
Table cmd_enumerate(const RunConfig& cfg, std::ostream& err);
Table cmd_asympt(const RunConfig& cfg, std::ostream& err);
// Sets `all_passed`.
Table cmd_verify(const RunConfig& cfg, std::ostream& err, bool& all_passed);

// Full command line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace strahler
