#include "cavlat_cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "cavlat/errors.hpp"

namespace cavlat::cli {

namespace {

using nlohmann::json;

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw ValidationError("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return v;
}

int parse_int(std::string_view text, std::string_view what) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw ValidationError("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return v;
}

void check_keys(const json& obj, const std::set<std::string>& allowed, std::string_view where) {
  if (!obj.is_object()) throw ValidationError(std::string(where) + " must be a JSON object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ValidationError("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

double get_number(const json& j, std::string_view key) {
  if (!j.is_number()) throw ValidationError(std::string(key) + " must be a number");
  return j.get<double>();
}

int get_int(const json& j, std::string_view key) {
  if (!j.is_number_integer()) throw ValidationError(std::string(key) + " must be an integer");
  return j.get<int>();
}

std::string get_string(const json& j, std::string_view key) {
  if (!j.is_string()) throw ValidationError(std::string(key) + " must be a string");
  return j.get<std::string>();
}

Grid get_grid(const json& j, std::string_view key) {
  Grid g;
  if (j.is_number()) {
    g = Grid::point(j.get<double>());
  } else if (j.is_string()) {
    g = Grid::parse(j.get<std::string>());
  } else if (j.is_array() && j.size() == 3) {
    g = Grid{get_number(j[0], key), get_number(j[1], key), get_int(j[2], key)};
  } else if (j.is_object()) {
    check_keys(j, {"min", "max", "count"}, key);
    if (!j.contains("min") || !j.contains("max") || !j.contains("count")) {
      throw ValidationError(std::string(key) + " grid needs min, max and count");
    }
    g = Grid{get_number(j["min"], key), get_number(j["max"], key), get_int(j["count"], key)};
  } else {
    throw ValidationError(std::string(key) +
                          " must be a number, \"min:max:count\", [min, max, count] or an object");
  }
  g.validate(key);
  return g;
}

}  // namespace

Grid Grid::parse(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  Grid g;
  if (parts.size() == 1) {
    g = point(parse_double(parts[0], "grid value"));
  } else if (parts.size() == 3) {
    g = Grid{parse_double(parts[0], "grid min"), parse_double(parts[1], "grid max"),
             parse_int(parts[2], "grid count")};
  } else {
    throw ValidationError("grid must be 'v' or 'min:max:count', got '" + std::string(text) + "'");
  }
  return g;
}

void Grid::validate(std::string_view name) const {
  std::ostringstream os;
  if (count < 1) {
    os << name << ": grid count must be >= 1";
  } else if (!std::isfinite(min) || !std::isfinite(max)) {
    os << name << ": grid bounds must be finite";
  } else if (min > max) {
    os << name << ": grid min must not exceed max";
  } else if (count == 1 && min != max) {
    os << name << ": a single-point grid needs min == max";
  } else {
    return;
  }
  throw ValidationError(os.str());
}

std::vector<double> Grid::values() const {
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = count == 1 ? min : min + (max - min) * i / (count - 1);
  }
  return out;
}

RunConfig config_from_json(const json& j) {
  check_keys(j,
             {"command", "n", "omega_r_ghz", "omega_a_ghz", "f_ghz", "lattice", "transmon",
              "times_ns", "model", "initial_site", "k_grid", "target_j_ghz", "output", "format",
              "precision"},
             "config");
  RunConfig c;
  if (j.contains("command")) c.command = get_string(j["command"], "command");
  if (j.contains("n")) c.n = get_int(j["n"], "n");
  if (j.contains("omega_r_ghz")) c.omega_r_ghz = get_number(j["omega_r_ghz"], "omega_r_ghz");
  if (j.contains("omega_a_ghz")) c.omega_a_ghz = get_grid(j["omega_a_ghz"], "omega_a_ghz");
  if (j.contains("f_ghz")) c.f_ghz = get_grid(j["f_ghz"], "f_ghz");
  if (j.contains("lattice")) {
    const json& l = j["lattice"];
    check_keys(l, {"kind", "l1", "l2", "n_sites", "boundary"}, "lattice");
    if (l.contains("kind")) c.lattice.kind = get_string(l["kind"], "lattice.kind");
    if (l.contains("l1")) c.lattice.l1 = get_int(l["l1"], "lattice.l1");
    if (l.contains("l2")) c.lattice.l2 = get_int(l["l2"], "lattice.l2");
    if (l.contains("n_sites")) c.lattice.n_sites = get_int(l["n_sites"], "lattice.n_sites");
    if (l.contains("boundary")) c.lattice.boundary = get_string(l["boundary"], "lattice.boundary");
  }
  if (j.contains("transmon")) {
    const json& t = j["transmon"];
    check_keys(t, {"ej_max_ghz", "ec_ghz", "flux_over_phi0"}, "transmon");
    if (t.contains("ej_max_ghz")) c.transmon.ej_max_ghz = get_number(t["ej_max_ghz"], "ej_max_ghz");
    if (t.contains("ec_ghz")) c.transmon.ec_ghz = get_number(t["ec_ghz"], "ec_ghz");
    if (t.contains("flux_over_phi0")) {
      c.transmon.flux_over_phi0 = get_number(t["flux_over_phi0"], "flux_over_phi0");
    }
  }
  if (j.contains("times_ns")) c.times_ns = get_grid(j["times_ns"], "times_ns");
  if (j.contains("model")) c.model = get_string(j["model"], "model");
  if (j.contains("initial_site")) c.initial_site = get_int(j["initial_site"], "initial_site");
  if (j.contains("k_grid")) {
    const json& k = j["k_grid"];
    if (k.is_number_integer()) {
      c.k_grid = {k.get<int>(), k.get<int>()};
    } else if (k.is_array() && k.size() == 2) {
      c.k_grid = {get_int(k[0], "k_grid"), get_int(k[1], "k_grid")};
    } else {
      throw ValidationError("k_grid must be an integer or [n1, n2]");
    }
  }
  if (j.contains("target_j_ghz")) c.target_j_ghz = get_number(j["target_j_ghz"], "target_j_ghz");
  if (j.contains("output")) c.output = get_string(j["output"], "output");
  if (j.contains("format")) c.format = get_string(j["format"], "format");
  if (j.contains("precision")) c.precision = get_int(j["precision"], "precision");
  return c;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace cavlat::cli
