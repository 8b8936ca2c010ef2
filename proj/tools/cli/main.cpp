#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cavlat/errors.hpp"
#include "cavlat_cli/commands.hpp"
#include "cavlat_cli/config.hpp"

namespace {

using nlohmann::json;

/// Grid flags stay strings so "v" and "min:max:count" both pass through.
json grid_json(const std::string& text) { return json(text); }

}  // namespace

int main(int argc, char** argv) {
  using namespace cavlat::cli;

  CLI::App app{"Resonator lattices coupled through ancilla qubits."};
  app.footer(
      "Commands: coupling-sweep, star-verify, spectrum, bands, dynamics, tune.\n"
      "Grids are 'v' or 'min:max:count'. Flags override values from --config.\n"
      "Exit codes: 0 success, 2 invalid input, 3 tolerance failure, 4 target out of range.");

  std::string command;
  std::string config_path;
  std::optional<int> n, l1, l2, n_sites, initial_site, precision, k1, k2;
  std::optional<double> omega_r, ej_max, ec, flux, target_j;
  std::optional<std::string> omega_a, f, times, kind, boundary, model, output, format;

  app.add_option("command", command, "Command to run");
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--n", n, "Resonators per star");
  app.add_option("--omega-r-ghz", omega_r, "Resonator frequency (GHz)");
  app.add_option("--omega-a-ghz", omega_a, "Ancilla frequency or grid (GHz)");
  app.add_option("--f-ghz", f, "Resonator-ancilla coupling or grid (GHz)");
  app.add_option("--lattice", kind, "star, chain or kagome");
  app.add_option("--l1", l1, "Kagome cells along a1");
  app.add_option("--l2", l2, "Kagome cells along a2");
  app.add_option("--n-sites", n_sites, "Chain resonators");
  app.add_option("--boundary", boundary, "open or periodic");
  app.add_option("--ej-max-ghz", ej_max, "Maximum Josephson energy (GHz)");
  app.add_option("--ec-ghz", ec, "Charging energy (GHz)");
  app.add_option("--flux-over-phi0", flux, "Flux in units of the flux quantum");
  app.add_option("--times-ns", times, "Time grid (ns)");
  app.add_option("--model", model, "full, effective or compare");
  app.add_option("--initial-site", initial_site, "Initially excited site");
  app.add_option("--k1", k1, "Momentum points along b1");
  app.add_option("--k2", k2, "Momentum points along b2");
  app.add_option("--target-j-ghz", target_j, "Target effective coupling (GHz)");
  app.add_option("--output", output, "Output path (default: stdout)");
  app.add_option("--format", format, "csv or json");
  app.add_option("--precision", precision, "Significant digits in CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    json cfg = config_path.empty() ? json::object() : load_json_file(config_path);
    if (!cfg.is_object()) throw cavlat::ValidationError("config file must hold a JSON object");
    json patch = json::object();
    if (!command.empty()) patch["command"] = command;
    if (n) patch["n"] = *n;
    if (omega_r) patch["omega_r_ghz"] = *omega_r;
    if (omega_a) patch["omega_a_ghz"] = grid_json(*omega_a);
    if (f) patch["f_ghz"] = grid_json(*f);
    if (kind) patch["lattice"]["kind"] = *kind;
    if (l1) patch["lattice"]["l1"] = *l1;
    if (l2) patch["lattice"]["l2"] = *l2;
    if (n_sites) patch["lattice"]["n_sites"] = *n_sites;
    if (boundary) patch["lattice"]["boundary"] = *boundary;
    if (ej_max) patch["transmon"]["ej_max_ghz"] = *ej_max;
    if (ec) patch["transmon"]["ec_ghz"] = *ec;
    if (flux) patch["transmon"]["flux_over_phi0"] = *flux;
    if (times) patch["times_ns"] = grid_json(*times);
    if (model) patch["model"] = *model;
    if (initial_site) patch["initial_site"] = *initial_site;
    if (k1 || k2) {
      json base = cfg.contains("k_grid") ? cfg["k_grid"] : json::array({32, 32});
      if (base.is_number_integer()) base = json::array({base, base});
      if (k1) base[0] = *k1;
      if (k2) base[1] = *k2;
      patch["k_grid"] = base;
    }
    if (target_j) patch["target_j_ghz"] = *target_j;
    if (output) patch["output"] = *output;
    if (format) patch["format"] = *format;
    if (precision) patch["precision"] = *precision;
    cfg.merge_patch(patch);

    const RunConfig config = config_from_json(cfg);
    if (config.command.empty()) {
      std::cerr << "no command given\n" << app.help();
      return kExitValidation;
    }
    return run_command(config, std::cout, std::cerr);
  } catch (const cavlat::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  }
}
