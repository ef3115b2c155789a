#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace gp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitInput = 3;

struct Tolerances {
  double kappa = 1e-8;
  double identity = 1e-12;
  double decay = 1e-10;
  double monotone = 1e-12;
};

/// Everything that determines a run. Serialized verbatim into every output.
struct RunConfig {
  std::string command;
  std::uint64_t seed = 1;
  int dim = 2;
  std::string element = "1"; // degree K, or "cr"
  int alpha = 1;             // 0: plain closure
  int rounds = 0;
  int cells = 1;
  std::string policy = "uniform";
  double fraction = 0.1;
  int max_marked = 0;
  std::string input;
  std::string output;
  Tolerances tol;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();

  [[nodiscard]] nlohmann::ordered_json to_json() const;
  /// FNV-1a of the compact serialization.
  [[nodiscard]] std::string hash() const;
  /// {"config":..., "config_hash":..., "version":..., "tolerances":...}
  [[nodiscard]] nlohmann::ordered_json header() const;
  /// Same content as comment lines for TSV files.
  [[nodiscard]] std::string tsv_header() const;
};

[[nodiscard]] std::uint64_t fnv1a(const std::string& s);
[[nodiscard]] std::string version();

} // namespace gp::cli
