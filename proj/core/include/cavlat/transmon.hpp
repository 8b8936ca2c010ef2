#pragma once

// Flux control of a transmon ancilla:
//   E_J(Phi)  = E_J,max |cos(pi Phi / Phi0)|
//   omega_a   = sqrt(8 E_J E_C)
//   J_n       = effective_coupling(n, f, omega_a - omega_r)

namespace cavlat {

struct TransmonParams {
  double ej_max = 1.0;
  double ec = 1.0;
  double flux = 0.0;
  double flux_quantum = 1.0;

  /// ej_max > 0, ec > 0, flux_quantum > 0, flux / flux_quantum in [0, 1/2].
  void validate() const;
  double reduced_flux() const noexcept { return flux / flux_quantum; }
  TransmonParams with_flux(double new_flux) const;
};

double josephson_energy(const TransmonParams& params);

/// Leading-order transmon frequency sqrt(8 E_J E_C) (no -E_C correction).
double qubit_frequency(const TransmonParams& params);

/// Forward chain flux -> J_n at the flux stored in `params`.
double coupling_at_flux(const TransmonParams& params, int n, double f, double omega_r);

/// Achievable J interval [lower, upper] on one detuning branch.
struct CouplingInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool empty = true;
};

/// Interval reachable with delta >= 0 (J <= 0) or delta < 0 (J > 0) for
/// flux in [0, Phi0/2].
CouplingInterval achievable_coupling(int n, double f, double omega_r, const TransmonParams& params,
                                     bool positive_detuning);

/// Flux Phi in [0, Phi0/2] with effective_coupling(n, f, omega_a(Phi) - omega_r)
/// = target_J, found by bisection on the branch whose sign matches the target.
/// Throws RangeError carrying the achievable interval when out of reach, and
/// ValidationError for invalid parameters.
double flux_for_coupling(double target_J, int n, double f, double omega_r,
                         const TransmonParams& params);

}  // namespace cavlat
