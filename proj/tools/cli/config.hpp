#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pngtoda/height.hpp"

namespace png::cli {

// Bad configuration or flags; `where` is "file:line" or "--flag".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what) {}
};

struct RunConfig {
  std::string command;
  std::string initial = "narrow-wedge:0";  // preset name or JSON object text
  std::vector<double> ts{1.0};
  std::vector<double> xs{0.0};
  std::vector<long> rs;
  std::optional<std::pair<long, long>> r_range;  // inclusive, applied to every point
  std::vector<double> ss{1.0};                   // Painleve parameter
  std::string kind;
  std::string sampler = "lastpassage";
  long samples = 10000;
  std::uint64_t seed = 1;
  double step = 5e-3;
  double tolerance = 1e-8;
  double check_tolerance = 0.0;  // 0: command default
  long block_size = 60;
  long buffer = 40;
  std::string format = "csv";
  std::string output;  // empty: stdout
  int threads = 0;
  bool allow_unconverged = false;
  bool check = false;

  // Source line of every key read from a config file, for error messages.
  std::string source;
  std::map<std::string, int> lines;

  std::string where(const std::string& key) const;
  HeightFunction height() const;
  // Every r vector requested: rs alone, or the product of r_range over the points.
  std::vector<std::vector<long>> r_vectors() const;
  // Single levels for one-point tables: rs as given, or every r in r_range.
  std::vector<long> levels() const;
};

// Parses JSON config text; errors carry "source:line".
RunConfig parse_config(const std::string& text, const std::string& source);
RunConfig load_config(const std::string& path);

// Preset name, or a JSON object {left_value, pieces: [{at, value}], spikes: [{at, value}]}
// where heights are integers or "-inf".
HeightFunction parse_height(const std::string& spec);

std::vector<double> parse_doubles(const std::string& csv);
std::vector<long> parse_longs(const std::string& csv);
std::pair<long, long> parse_range(const std::string& text);

// Throws ConfigError on inconsistent settings.
void validate(const RunConfig& c);

}  // namespace png::cli
