#include "cavlat/transmon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "cavlat/errors.hpp"
#include "cavlat/star_transform.hpp"

namespace cavlat {

namespace {

void validate_device(const TransmonParams& p) {
  if (!(p.ej_max > 0.0) || !std::isfinite(p.ej_max)) {
    throw ValidationError("TransmonParams: ej_max must be positive and finite");
  }
  if (!(p.ec > 0.0) || !std::isfinite(p.ec)) {
    throw ValidationError("TransmonParams: ec must be positive and finite");
  }
  if (!(p.flux_quantum > 0.0) || !std::isfinite(p.flux_quantum)) {
    throw ValidationError("TransmonParams: flux_quantum must be positive and finite");
  }
}

double frequency_at(const TransmonParams& p, double x) {
  return std::sqrt(8.0 * p.ej_max * std::abs(std::cos(std::numbers::pi * x)) * p.ec);
}

double coupling_at(const TransmonParams& p, double x, int n, double f, double omega_r) {
  return effective_coupling(n, f, frequency_at(p, x) - omega_r);
}

/// Reduced flux where omega_a = omega_r, or nothing when omega_a(0) < omega_r.
std::optional<double> resonance_flux(const TransmonParams& p, double omega_r) {
  const double ratio = omega_r * omega_r / (8.0 * p.ej_max * p.ec);
  if (ratio > 1.0) return std::nullopt;
  return std::acos(ratio) / std::numbers::pi;
}

struct Branch {
  double x_lo;
  double x_hi;
  CouplingInterval range;
};

Branch branch(int n, double f, double omega_r, const TransmonParams& p, bool positive_detuning) {
  const auto x_res = resonance_flux(p, omega_r);
  const double j_max = f / std::sqrt(static_cast<double>(n));
  Branch b{0.0, 0.5, {}};
  if (positive_detuning) {
    if (!x_res) return b;
    b.x_hi = *x_res;
    b.range = {-j_max, coupling_at(p, 0.0, n, f, omega_r), false};
  } else {
    b.x_lo = x_res.value_or(0.0);
    const double upper = x_res ? j_max : coupling_at(p, 0.0, n, f, omega_r);
    b.range = {coupling_at(p, 0.5, n, f, omega_r), upper, false};
  }
  return b;
}

[[noreturn]] void out_of_range(double target, const CouplingInterval& range) {
  std::ostringstream os;
  os << "flux_for_coupling: target J = " << target << " is outside the achievable interval ["
     << range.lower << ", " << range.upper << "]";
  throw RangeError(os.str(), range.lower, range.upper);
}

}  // namespace

void TransmonParams::validate() const {
  validate_device(*this);
  const double x = reduced_flux();
  if (!(x >= 0.0 && x <= 0.5)) {
    std::ostringstream os;
    os << "TransmonParams: flux / flux_quantum must lie in [0, 1/2], got " << x;
    throw ValidationError(os.str());
  }
}

TransmonParams TransmonParams::with_flux(double new_flux) const {
  TransmonParams p = *this;
  p.flux = new_flux;
  return p;
}

double josephson_energy(const TransmonParams& params) {
  params.validate();
  return params.ej_max * std::abs(std::cos(std::numbers::pi * params.reduced_flux()));
}

double qubit_frequency(const TransmonParams& params) {
  return std::sqrt(8.0 * josephson_energy(params) * params.ec);
}

double coupling_at_flux(const TransmonParams& params, int n, double f, double omega_r) {
  return effective_coupling(n, f, qubit_frequency(params) - omega_r);
}

CouplingInterval achievable_coupling(int n, double f, double omega_r, const TransmonParams& params,
                                     bool positive_detuning) {
  validate_device(params);
  if (n < 1 || !(f >= 0.0)) throw ValidationError("achievable_coupling: need n >= 1 and f >= 0");
  return branch(n, f, omega_r, params, positive_detuning).range;
}

double flux_for_coupling(double target_J, int n, double f, double omega_r,
                         const TransmonParams& params) {
  validate_device(params);
  if (n < 1) throw ValidationError("flux_for_coupling: n must be >= 1");
  if (!(f >= 0.0) || !std::isfinite(f)) {
    throw ValidationError("flux_for_coupling: f must be non-negative and finite");
  }
  if (!(omega_r > 0.0) || !std::isfinite(omega_r)) {
    throw ValidationError("flux_for_coupling: omega_r must be positive and finite");
  }
  if (!std::isfinite(target_J)) throw ValidationError("flux_for_coupling: target must be finite");

  if (f == 0.0) {
    if (target_J == 0.0) return 0.0;
    out_of_range(target_J, {0.0, 0.0, false});
  }

  const Branch neg = branch(n, f, omega_r, params, true);
  const Branch pos = branch(n, f, omega_r, params, false);
  if (target_J == 0.0) {
    // J_n vanishes only at infinite detuning.
    const double lower = neg.range.empty ? pos.range.lower : neg.range.lower;
    out_of_range(target_J, {lower, pos.range.upper, false});
  }

  const Branch& b = target_J < 0.0 ? neg : pos;
  if (b.range.empty) out_of_range(target_J, (target_J < 0.0 ? pos : neg).range);
  const bool open_top = target_J > 0.0 && resonance_flux(params, omega_r).has_value();
  if (target_J < b.range.lower || target_J > b.range.upper ||
      (open_top && target_J >= b.range.upper)) {
    out_of_range(target_J, b.range);
  }

  // J decreases monotonically with flux on either branch.
  double lo = b.x_lo;
  double hi = b.x_hi;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (coupling_at(params, mid, n, f, omega_r) > target_J) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double r_lo = std::abs(coupling_at(params, lo, n, f, omega_r) - target_J);
  const double r_hi = std::abs(coupling_at(params, hi, n, f, omega_r) - target_J);
  const double x = r_lo <= r_hi ? lo : hi;
  const double residual = std::min(r_lo, r_hi);
  if (!(residual < 1e-10 * std::abs(target_J))) {
    std::ostringstream os;
    os << "flux_for_coupling: bisection residual " << residual << " exceeds tolerance";
    throw ConsistencyError(os.str());
  }
  return x * params.flux_quantum;
}

}  // namespace cavlat
