#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace tailkit::cli {

enum class Command { hyper, linsys, ap, schur, rooted, sweep };
enum class Format { json, csv };
enum class Scale { log, linear };

struct RunConfig {
  Command command = Command::hyper;
  /// For sweeps: the command evaluated at every grid point.
  Command inner = Command::rooted;

  // Hypergraph problems.
  std::string hypergraph_path;
  std::string matrix_path;
  std::string system;  ///< "ap" or "schur" for the linsys command
  std::uint32_t N = 0;
  unsigned k = 3;
  std::optional<double> q;

  // Rooted problems.
  std::string graph_path;
  std::vector<unsigned> roots;  ///< 1-indexed, as on the command line
  unsigned n = 0;

  double p = 0.5;
  double t = 2.0;
  double p_min = 0.05;
  double p_max = 0.95;
  unsigned steps = 19;
  Scale scale = Scale::log;

  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::optional<unsigned> m_max;
  Format format = Format::json;
  /// true forces the enumeration oracles, false forbids them, empty runs
  /// them whenever they fit inside the guards.
  std::optional<bool> exact;
};

struct Report {
  nlohmann::ordered_json document;
  /// One CSV record per (p, t) evaluated.
  std::vector<std::vector<std::string>> rows;
  bool failed = false;
};

/// Throws tailkit::Error (or a subclass) for invalid configurations.
Report run(const RunConfig& config);

/// JSON or CSV text, byte-deterministic for a fixed report.
std::string emit(const Report& report, Format format);

/// Column names of the CSV rows.
const std::vector<std::string>& csv_header();

/// "%.12g", with "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double x);

}  // namespace tailkit::cli
