#pragma once

// Run configuration of the command-line tool. Frequencies are linear (GHz,
// meaning omega / 2 pi) and times are in ns; conversion to angular units
// happens in the command layer.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace cavlat::cli {

/// Evenly spaced axis; a single value is a grid with count 1.
struct Grid {
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  static Grid point(double v) { return Grid{v, v, 1}; }
  /// "v" or "min:max:count".
  static Grid parse(std::string_view text);

  /// Throws ValidationError on count < 1, min > max or non-finite bounds.
  void validate(std::string_view name) const;
  std::vector<double> values() const;
  bool is_point() const noexcept { return count == 1 && min == max; }
};

struct LatticeConfig {
  /// "star", "chain" or "kagome".
  std::string kind = "chain";
  int l1 = 4;
  int l2 = 4;
  int n_sites = 6;
  /// "open" or "periodic".
  std::string boundary = "periodic";
};

struct TransmonConfig {
  double ej_max_ghz = 50.0;
  double ec_ghz = 0.25;
  double flux_over_phi0 = 0.0;
};

struct RunConfig {
  std::string command;
  /// Resonators per star; defaults to the star size of the lattice.
  std::optional<int> n;
  double omega_r_ghz = 9.0;
  std::optional<Grid> omega_a_ghz;
  std::optional<Grid> f_ghz;
  LatticeConfig lattice;
  TransmonConfig transmon;
  Grid times_ns{0.0, 100.0, 101};
  /// "full", "effective" or "compare" (dynamics only).
  std::string model = "effective";
  int initial_site = 0;
  std::array<int, 2> k_grid{32, 32};
  std::optional<double> target_j_ghz;
  /// Empty writes to the output stream.
  std::string output;
  /// "csv" or "json".
  std::string format = "csv";
  int precision = 12;
};

inline constexpr std::array<std::string_view, 6> kCommands{
    "coupling-sweep", "star-verify", "spectrum", "bands", "dynamics", "tune"};

/// Builds a config from the JSON schema. Unknown keys and wrong types throw
/// ValidationError.
RunConfig config_from_json(const nlohmann::json& j);

/// Reads and parses a JSON config file.
nlohmann::json load_json_file(const std::string& path);

}  // namespace cavlat::cli
