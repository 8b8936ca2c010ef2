#include "cavlat_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>

#include "cavlat/dynamics.hpp"
#include "cavlat/errors.hpp"
#include "cavlat/lattice.hpp"
#include "cavlat/star_transform.hpp"
#include "cavlat/transmon.hpp"
#include "cavlat_cli/format.hpp"

namespace cavlat::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDefaultDetuningGhz = 1.0;
constexpr double kDefaultCouplingGhz = 0.1;
constexpr double kConservationTolerance = 1e-10;
constexpr double kAgreementTolerance = 1e-10;

double to_angular(double ghz) { return kTwoPi * ghz; }
double to_ghz(double angular) { return angular / kTwoPi; }

/// Either a file named by config.output or the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*file_) throw ValidationError("cannot open output file '" + path + "' for writing");
    os_ = file_.get();
  }
  std::ostream& stream() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

void write_table(const RunConfig& c, std::ostream& out, const Table& table) {
  Sink sink(c.output, out);
  if (c.format == "json") {
    write_json_rows(sink.stream(), table, c.precision);
  } else {
    write_csv(sink.stream(), table, c.precision);
  }
}

void write_json(const RunConfig& c, std::ostream& out, const ojson& doc) {
  Sink sink(c.output, out);
  sink.stream() << doc.dump(2) << '\n';
}

double point_value(const std::optional<Grid>& g, double fallback, std::string_view name) {
  if (!g) return fallback;
  if (!g->is_point()) throw ValidationError(std::string(name) + " must be a single value here");
  return g->min;
}

bool is_star(const RunConfig& c) { return c.lattice.kind == "star"; }

Boundary parse_boundary(const std::string& s) {
  if (s == "open") return Boundary::open;
  if (s == "periodic") return Boundary::periodic;
  throw ValidationError("lattice.boundary must be 'open' or 'periodic', got '" + s + "'");
}

LatticeSpec lattice_spec(const RunConfig& c) {
  const Boundary b = parse_boundary(c.lattice.boundary);
  if (c.lattice.kind == "chain") return LatticeSpec::chain(c.lattice.n_sites, b);
  if (c.lattice.kind == "kagome") return LatticeSpec::kagome(c.lattice.l1, c.lattice.l2, b);
  throw ValidationError("lattice.kind must be 'star', 'chain' or 'kagome', got '" + c.lattice.kind +
                        "'");
}

int star_size(const RunConfig& c) {
  if (c.lattice.kind == "chain") return c.n.value_or(2);
  if (c.lattice.kind == "kagome") return c.n.value_or(3);
  return c.n.value_or(3);
}

/// Star parameters in angular units.
StarParams star_params(const RunConfig& c, int n) {
  const double wa = point_value(c.omega_a_ghz, c.omega_r_ghz + kDefaultDetuningGhz, "omega_a_ghz");
  const double f = point_value(c.f_ghz, kDefaultCouplingGhz, "f_ghz");
  return StarParams::uniform(n, to_angular(c.omega_r_ghz), to_angular(wa), to_angular(f));
}

/// Resonator-only model of one star: every pair bonded with J, on-site eps_r.
HermitianMatrix effective_star(const StarParams& p) {
  const DressedStar d = dress_star(p).dressed;
  RealMatrix h = RealMatrix::Constant(p.n, p.n, d.J);
  h.diagonal().setConstant(d.eps_r);
  return HermitianMatrix::from_real(h);
}

void require_model(const RunConfig& c, std::initializer_list<std::string_view> allowed) {
  if (std::find(allowed.begin(), allowed.end(), c.model) == allowed.end()) {
    throw ValidationError("model '" + c.model + "' is not supported by " + c.command);
  }
}

/// Hamiltonian (angular units) selected by lattice.kind and model.
HermitianMatrix selected_hamiltonian(const RunConfig& c) {
  const StarParams p = star_params(c, star_size(c));
  if (is_star(c)) return c.model == "full" ? build_star_hamiltonian(p) : effective_star(p);
  const LatticeModel full = build_lattice(lattice_spec(c), p);
  return c.model == "full" ? full.hamiltonian : effective_from_full(full).hamiltonian;
}

int cmd_coupling_sweep(const RunConfig& c, std::ostream& out) {
  const int n = c.n.value_or(3);
  const Grid wa_grid = c.omega_a_ghz.value_or(Grid{c.omega_r_ghz, c.omega_r_ghz + 2.0, 21});
  const Grid f_grid = c.f_ghz.value_or(Grid{0.0, 0.3, 31});
  Table t{{"omega_a_ghz", "f_ghz", "delta_ghz", "j_n_ghz"}, {}};
  for (double f : f_grid.values()) {
    for (double wa : wa_grid.values()) {
      const double delta = wa - c.omega_r_ghz;
      const double j = to_ghz(effective_coupling(n, to_angular(f), to_angular(wa) - to_angular(c.omega_r_ghz)));
      t.rows.push_back({wa, f, delta, j});
    }
  }
  write_table(c, out, t);
  return kExitOk;
}

ojson check_entry(double value, double tolerance, bool asserted) {
  ojson e;
  e["value"] = value;
  e["tolerance"] = tolerance;
  e["asserted"] = asserted;
  e["pass"] = !asserted || value <= tolerance;
  return e;
}

int cmd_star_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const int n = c.n.value_or(3);
  const StarParams p = star_params(c, n);
  const HermitianMatrix h = build_star_hamiltonian(p);
  const auto [transformed, d] = dress_star(p);

  ojson report;
  report["command"] = "star-verify";
  report["n"] = n;
  report["omega_r_ghz"] = to_ghz(p.omega_r);
  report["omega_a_ghz"] = to_ghz(p.omega_a);
  report["f_ghz"] = to_ghz(p.uniform_coupling());
  report["delta_ghz"] = to_ghz(d.delta);
  report["theta"] = d.theta;
  report["j_ghz"] = to_ghz(d.J);
  report["j_closed_form_ghz"] = to_ghz(d.J_closed_form);
  report["eps_r_ghz"] = to_ghz(d.eps_r);
  report["eps_r_closed_form_ghz"] = to_ghz(d.eps_r_closed_form);
  report["eps_a_ghz"] = to_ghz(d.eps_a);
  report["eps_a_closed_form_ghz"] = to_ghz(d.eps_a_closed_form);
  if (d.derived) {
    report["omega_r_prime_ghz"] = to_ghz(d.derived->omega_r_prime);
    report["omega_a_prime_ghz"] = to_ghz(d.derived->omega_a_prime);
  } else {
    report["omega_r_prime_ghz"] = nullptr;
    report["omega_a_prime_ghz"] = nullptr;
  }

  ojson checks;
  checks["decoupling_residual_ghz"] = check_entry(
      to_ghz(d.decoupling_residual), to_ghz(1e-10 * h.frobenius_norm()), true);
  checks["coupling_uniformity_ghz"] =
      check_entry(to_ghz(d.coupling_spread), kAgreementTolerance, true);
  checks["j_agreement_ghz"] =
      check_entry(to_ghz(std::abs(d.J - d.J_closed_form)), kAgreementTolerance, true);
  checks["eps_a_agreement_ghz"] =
      check_entry(to_ghz(std::abs(d.eps_a - d.eps_a_closed_form)), kAgreementTolerance, true);
  // The closed-form resonator level is exact only up to two resonators.
  checks["eps_r_agreement_ghz"] =
      check_entry(to_ghz(std::abs(d.eps_r - d.eps_r_closed_form)), kAgreementTolerance, n <= 2);
  checks["trace_preservation_ghz"] =
      check_entry(to_ghz(std::abs(transformed.trace() - h.trace())), kAgreementTolerance, true);
  bool pass = true;
  for (const auto& [_, entry] : checks.items()) pass = pass && entry["pass"].get<bool>();
  report["checks"] = checks;
  report["pass"] = pass;
  write_json(c, out, report);
  if (!pass) {
    err << "star-verify: at least one asserted tolerance failed\n";
    return kExitTolerance;
  }
  return kExitOk;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out) {
  require_model(c, {"full", "effective"});
  const RealVector ev = eig_hermitian(selected_hamiltonian(c)).eigenvalues;
  Table t{{"index", "energy_ghz"}, {}};
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    t.rows.push_back({static_cast<double>(i), to_ghz(ev(i))});
  }
  write_table(c, out, t);
  return kExitOk;
}

int cmd_bands(const RunConfig& c, std::ostream& out) {
  require_model(c, {"full", "effective"});
  if (is_star(c)) throw ValidationError("bands needs lattice.kind 'chain' or 'kagome'");
  const LatticeSpec spec = lattice_spec(c);
  if (spec.boundary != Boundary::periodic) throw ValidationError("bands needs a periodic lattice");
  const StarParams p = star_params(c, star_size(c));
  const LatticeModel full = build_lattice(spec, p);
  const LatticeModel model = c.model == "full" ? full : effective_from_full(full);
  const KGrid grid{c.k_grid[0], spec.kind == LatticeKind::chain ? 1 : c.k_grid[1]};
  if (grid.n1 < 1 || grid.n2 < 1) throw ValidationError("k_grid counts must be >= 1");
  const auto table = band_structure(model, grid);

  Table t{{"kx", "ky", "band", "energy_ghz"}, {}};
  t.rows.reserve(table.size());
  for (const auto& row : table) {
    t.rows.push_back(
        {row.k_cartesian.x(), row.k_cartesian.y(), static_cast<double>(row.band), to_ghz(row.energy)});
  }
  write_table(c, out, t);

  if (!c.output.empty()) {
    const double tol = 1e-9 * std::abs(to_ghz(effective_coupling(p.n, p.uniform_coupling(), p.detuning())));
    ojson summary;
    summary["command"] = "bands";
    summary["kind"] = std::string(to_string(spec.kind));
    summary["model"] = c.model;
    summary["k_grid"] = {grid.n1, grid.n2};
    summary["flat_band_tolerance_ghz"] = tol;
    ojson bands = ojson::array();
    std::optional<int> flat;
    double flat_energy = 0.0;
    const auto ranges = band_ranges(table);
    for (std::size_t b = 0; b < ranges.size(); ++b) {
      const double lo = to_ghz(ranges[b].first);
      const double hi = to_ghz(ranges[b].second);
      bands.push_back({{"band", b}, {"min_ghz", lo}, {"max_ghz", hi}, {"spread_ghz", hi - lo}});
      if (!flat && hi - lo <= tol) {
        flat = static_cast<int>(b);
        flat_energy = 0.5 * (lo + hi);
      }
    }
    summary["bands"] = bands;
    summary["flat_band"] = flat.has_value();
    summary["flat_band_index"] = flat ? ojson(*flat) : ojson(nullptr);
    summary["flat_band_energy_ghz"] = flat ? ojson(flat_energy) : ojson(nullptr);
    std::ofstream side(c.output + ".summary.json", std::ios::binary | std::ios::trunc);
    if (!side) throw ValidationError("cannot write band summary next to '" + c.output + "'");
    side << summary.dump(2) << '\n';
  }
  return kExitOk;
}

bool conserved(const ObservableTrace& trace, std::ostream& err) {
  double worst = 0.0;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    worst = std::max({worst, std::abs(trace.norm[i] - 1.0), std::abs(trace.excitation[i] - 1.0)});
  }
  if (worst > kConservationTolerance) {
    err << "dynamics: norm / excitation drift " << format_number(worst, 3) << " exceeds "
        << format_number(kConservationTolerance, 3) << '\n';
    return false;
  }
  return true;
}

int cmd_dynamics(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_model(c, {"full", "effective", "compare"});
  const std::vector<double> times_ns = c.times_ns.values();
  Table t;
  t.header.push_back("time_ns");
  bool ok = true;

  if (c.model == "compare") {
    if (is_star(c)) throw ValidationError("model 'compare' needs lattice.kind 'chain' or 'kagome'");
    const LatticeSpec spec = lattice_spec(c);
    const StarParams p = star_params(c, star_size(c));
    const auto dim = static_cast<Eigen::Index>(build_lattice(spec, p).dim());
    if (c.initial_site < 0 || c.initial_site >= dim) {
      throw ValidationError("initial_site is outside the model");
    }
    const auto result =
        compare_full_effective(spec, p, StateVector::basis_state(dim, c.initial_site), times_ns);
    ok = conserved(result.full, err) && conserved(result.effective, err);
    for (Eigen::Index s = 0; s < dim; ++s) t.header.push_back("pop_" + std::to_string(s));
    t.header.push_back("norm");
    t.header.push_back("deviation");
    for (std::size_t i = 0; i < times_ns.size(); ++i) {
      std::vector<double> row{times_ns[i]};
      for (Eigen::Index s = 0; s < dim; ++s) {
        row.push_back(result.full.populations(static_cast<Eigen::Index>(i), s));
      }
      row.push_back(result.full.norm[i]);
      row.push_back(result.deviation[i]);
      t.rows.push_back(std::move(row));
    }
  } else {
    const HermitianMatrix h = selected_hamiltonian(c);
    const Eigen::Index dim = h.dim();
    if (c.initial_site < 0 || c.initial_site >= dim) {
      throw ValidationError("initial_site is outside the model");
    }
    // Angular GHz times ns gives the dimensionless phase directly.
    const auto trace = evolve(h, StateVector::basis_state(dim, c.initial_site), times_ns);
    ok = conserved(trace, err);
    for (Eigen::Index s = 0; s < dim; ++s) t.header.push_back("pop_" + std::to_string(s));
    t.header.push_back("norm");
    for (std::size_t i = 0; i < times_ns.size(); ++i) {
      std::vector<double> row{times_ns[i]};
      for (Eigen::Index s = 0; s < dim; ++s) {
        row.push_back(trace.populations(static_cast<Eigen::Index>(i), s));
      }
      row.push_back(trace.norm[i]);
      t.rows.push_back(std::move(row));
    }
  }
  write_table(c, out, t);
  return ok ? kExitOk : kExitTolerance;
}

int cmd_tune(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const int n = c.n.value_or(3);
  const double f = point_value(c.f_ghz, kDefaultCouplingGhz, "f_ghz");
  const TransmonParams device{to_angular(c.transmon.ej_max_ghz), to_angular(c.transmon.ec_ghz), 0.0,
                              1.0};
  if (!c.target_j_ghz) {
    // Forward direction: coupling at transmon.flux_over_phi0.
    const TransmonParams at = device.with_flux(c.transmon.flux_over_phi0);
    ojson result;
    result["flux_over_phi0"] = c.transmon.flux_over_phi0;
    result["omega_a_ghz"] = to_ghz(qubit_frequency(at));
    result["j_ghz"] = to_ghz(coupling_at_flux(at, n, to_angular(f), to_angular(c.omega_r_ghz)));
    write_json(c, out, result);
    return kExitOk;
  }
  const double target = *c.target_j_ghz;
  double flux = 0.0;
  try {
    flux = flux_for_coupling(to_angular(target), n, to_angular(f), to_angular(c.omega_r_ghz), device);
  } catch (const RangeError& e) {
    const double lo = to_ghz(e.lower());
    const double hi = to_ghz(e.upper());
    const std::string message = "target J = " + format_number(target, c.precision) +
                                " GHz is outside the achievable interval [" +
                                format_number(lo, c.precision) + ", " +
                                format_number(hi, c.precision) + "] GHz";
    ojson payload;
    payload["error"] = "range";
    payload["message"] = message;
    payload["target_j_ghz"] = target;
    payload["achievable_interval_ghz"] = {lo, hi};
    write_json(c, out, payload);
    err << "tune: " << message << '\n';
    return kExitRange;
  }
  const double achieved =
      to_ghz(coupling_at_flux(device.with_flux(flux), n, to_angular(f), to_angular(c.omega_r_ghz)));
  ojson result;
  result["target_j_ghz"] = target;
  result["flux_over_phi0"] = flux;
  result["achieved_j_ghz"] = achieved;
  result["residual"] = std::abs(achieved - target);
  write_json(c, out, result);
  return kExitOk;
}

void validate_common(const RunConfig& c) {
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end()) {
    throw ValidationError("unknown command '" + c.command + "'");
  }
  if (c.format != "csv" && c.format != "json") {
    throw ValidationError("format must be 'csv' or 'json'");
  }
  if (c.precision < 1 || c.precision > 17) throw ValidationError("precision must lie in [1, 17]");
  if (!(c.omega_r_ghz > 0.0) || !std::isfinite(c.omega_r_ghz)) {
    throw ValidationError("omega_r_ghz must be positive and finite");
  }
  if (c.omega_a_ghz) c.omega_a_ghz->validate("omega_a_ghz");
  if (c.f_ghz) c.f_ghz->validate("f_ghz");
  c.times_ns.validate("times_ns");
}

}  // namespace

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate_common(config);
    const std::string& cmd = config.command;
    if (cmd == "coupling-sweep") return cmd_coupling_sweep(config, out);
    if (cmd == "star-verify") return cmd_star_verify(config, out, err);
    if (cmd == "spectrum") return cmd_spectrum(config, out);
    if (cmd == "bands") return cmd_bands(config, out);
    if (cmd == "dynamics") return cmd_dynamics(config, out, err);
    return cmd_tune(config, out, err);
  } catch (const RangeError& e) {
    err << "range error: " << e.what() << '\n';
    return kExitRange;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ConsistencyError& e) {
    err << "tolerance failure: " << e.what() << '\n';
    return kExitTolerance;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace cavlat::cli
