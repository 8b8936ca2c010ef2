#include "cavlat/star_transform.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "cavlat/errors.hpp"

namespace cavlat {

StarParams StarParams::uniform(int n, double omega_r, double omega_a, double f) {
  StarParams p;
  p.n = n;
  p.omega_r = omega_r;
  p.omega_a = omega_a;
  p.couplings.assign(static_cast<std::size_t>(std::max(n, 0)), f);
  return p;
}

void StarParams::validate() const {
  if (n < 1) {
    throw ValidationError("StarParams: resonator count n must be >= 1, got " + std::to_string(n));
  }
  if (couplings.size() != static_cast<std::size_t>(n)) {
    std::ostringstream os;
    os << "StarParams: expected " << n << " couplings, got " << couplings.size();
    throw ValidationError(os.str());
  }
  if (!std::isfinite(omega_r) || !std::isfinite(omega_a)) {
    throw ValidationError("StarParams: frequencies must be finite");
  }
  for (double f : couplings) {
    if (!std::isfinite(f) || f < 0.0) {
      std::ostringstream os;
      os << "StarParams: couplings must be finite and non-negative, got " << f;
      throw ValidationError(os.str());
    }
  }
}

bool StarParams::is_uniform() const noexcept {
  return std::adjacent_find(couplings.begin(), couplings.end(), std::not_equal_to<>()) ==
         couplings.end();
}

double StarParams::uniform_coupling() const {
  if (couplings.empty() || !is_uniform()) {
    throw ValidationError("StarParams: closed forms require identical couplings f_p = f");
  }
  return couplings.front();
}

int BasisLabel::excitation_number() const {
  int total = 0;
  for (int np : photons) total += np;
  return total + static_cast<int>(std::lround(ancilla_sz + 0.5));
}

std::vector<BasisLabel> single_excitation_basis(int n) {
  if (n < 1) throw ValidationError("single_excitation_basis: n must be >= 1");
  std::vector<BasisLabel> basis;
  basis.reserve(static_cast<std::size_t>(n) + 1);
  for (int p = 0; p < n; ++p) {
    BasisLabel label;
    label.photons.assign(static_cast<std::size_t>(n), 0);
    label.photons[static_cast<std::size_t>(p)] = 1;
    label.ancilla_sz = -0.5;
    basis.push_back(std::move(label));
  }
  BasisLabel ancilla;
  ancilla.photons.assign(static_cast<std::size_t>(n), 0);
  ancilla.ancilla_sz = 0.5;
  basis.push_back(std::move(ancilla));
  return basis;
}

HermitianMatrix build_star_hamiltonian(const StarParams& params) {
  params.validate();
  const int n = params.n;
  RealMatrix h = RealMatrix::Zero(n + 1, n + 1);
  for (int p = 0; p < n; ++p) {
    h(p, p) = params.omega_r - 0.5 * params.omega_a;
    h(p, n) = -params.couplings[static_cast<std::size_t>(p)];
    h(n, p) = h(p, n);
  }
  h(n, n) = 0.5 * params.omega_a;
  return HermitianMatrix::from_real(h);
}

HermitianMatrix excitation_number_matrix(int n) {
  if (n < 1) throw ValidationError("excitation_number_matrix: n must be >= 1");
  const auto basis = single_excitation_basis(n);
  RealMatrix ne = RealMatrix::Zero(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    ne(i, i) = basis[static_cast<std::size_t>(i)].excitation_number();
  }
  return HermitianMatrix::from_real(ne);
}

double decoupling_angle(int n, double f, double delta) {
  if (n < 1) throw ValidationError("decoupling_angle: n must be >= 1");
  if (f < 0.0) throw ValidationError("decoupling_angle: coupling must be non-negative");
  const double root_n = std::sqrt(static_cast<double>(n));
  // atan2 with a non-negative second argument is arctan(2 sqrt(n) f / delta)
  // on its principal branch; at delta = 0 it returns pi/2 (sgn(0) = +1).
  const double two_phi = std::atan2(sign_nonnegative(delta) * 2.0 * root_n * f, std::abs(delta));
  return two_phi / (2.0 * root_n);
}

ComplexMatrix decoupling_generator(int n, double theta) {
  if (n < 1) throw ValidationError("decoupling_generator: n must be >= 1");
  ComplexMatrix m = ComplexMatrix::Zero(n + 1, n + 1);
  for (int p = 0; p < n; ++p) {
    m(p, n) = -theta;  // a_p^dagger sigma^-: ancilla -> resonator p
    m(n, p) = theta;   // sigma^+ a_p
  }
  return m;
}

UnitaryMatrix closed_form_U(int n, double theta) {
  if (n < 1) throw ValidationError("closed_form_U: n must be >= 1");
  const double nn = static_cast<double>(n);
  const double phi = std::sqrt(nn) * theta;
  const double c = std::cos(phi);
  const double s = std::sin(phi) / std::sqrt(nn);

  RealMatrix u = RealMatrix::Constant(n + 1, n + 1, (c - 1.0) / nn);
  for (int p = 0; p < n; ++p) {
    u(p, p) = (nn - 1.0 + c) / nn;
    u(p, n) = -s;
    u(n, p) = s;
  }
  u(n, n) = c;
  return UnitaryMatrix(u.cast<Complex>());
}

double effective_coupling(int n, double f, double delta) {
  if (n < 1) throw ValidationError("effective_coupling: n must be >= 1");
  if (f < 0.0) throw ValidationError("effective_coupling: coupling must be non-negative");
  if (f == 0.0) return 0.0;
  // (delta - s R)(delta + s R) = -4 n f^2, so this equals (delta - s R)/(2n)
  // without the cancellation between delta and R when |delta| >> f.
  const double root = std::sqrt(delta * delta + 4.0 * n * f * f);
  return -2.0 * f * f / (delta + sign_nonnegative(delta) * root);
}

double ancilla_energy_closed_form(int n, double f, double delta, double omega_r) {
  return 0.5 * sign_nonnegative(delta) * std::sqrt(delta * delta + 4.0 * n * f * f) +
         0.5 * omega_r;
}

double resonator_energy_closed_form(int n, double f, double delta, double omega_r) {
  return -(delta + sign_nonnegative(delta) * std::sqrt(delta * delta + 4.0 * n * f * f)) /
             (2.0 * n) +
         0.5 * omega_r;
}

DerivedFrequencies derived_frequencies(double eps_r, double eps_a, int n) {
  if (n < 2) {
    throw ValidationError("derived_frequencies: relations are singular for n < 2");
  }
  const double nm1 = static_cast<double>(n - 1);
  return DerivedFrequencies{
      -(eps_r + eps_a) / nm1,
      -(n * eps_r - (n - 2) * eps_a) / nm1,
  };
}

DressingResult dress_star(const StarParams& params) {
  params.validate();
  const double f = params.uniform_coupling();
  const int n = params.n;
  const double delta = params.detuning();

  const HermitianMatrix h = build_star_hamiltonian(params);
  const double theta = decoupling_angle(n, f, delta);
  const UnitaryMatrix u = closed_form_U(n, theta);
  HermitianMatrix t = similarity_transform(h, u);

  // Column n of U is the image of the bare ancilla; it has to stay the state
  // with the largest ancilla overlap or the labels have swapped branches.
  const double ancilla_overlap = std::abs(u(n, n));
  for (int p = 0; p < n; ++p) {
    if (std::abs(u(n, p)) > ancilla_overlap + 1e-12) {
      throw ConsistencyError("dress_star: transformed ancilla label swapped with a resonator");
    }
  }

  DressedStar d;
  d.delta = delta;
  d.theta = theta;
  d.J_closed_form = effective_coupling(n, f, delta);
  d.eps_r_closed_form = resonator_energy_closed_form(n, f, delta, params.omega_r);
  d.eps_a_closed_form = ancilla_energy_closed_form(n, f, delta, params.omega_r);

  double residual = 0.0;
  for (int p = 0; p < n; ++p) residual = std::max(residual, std::abs(t(p, n)));
  d.decoupling_residual = residual;
  if (residual >= 1e-10 * h.frobenius_norm()) {
    std::ostringstream os;
    os << "dress_star: ancilla not decoupled, residual " << residual;
    throw ConsistencyError(os.str());
  }

  double eps_sum = 0.0;
  double eps_min = std::numeric_limits<double>::infinity();
  double eps_max = -eps_min;
  double j_sum = 0.0;
  double j_min = std::numeric_limits<double>::infinity();
  double j_max = -j_min;
  for (int p = 0; p < n; ++p) {
    const double e = t(p, p).real();
    eps_sum += e;
    eps_min = std::min(eps_min, e);
    eps_max = std::max(eps_max, e);
    for (int q = 0; q < n; ++q) {
      if (q == p) continue;
      const double j = t(p, q).real();
      j_sum += j;
      j_min = std::min(j_min, j);
      j_max = std::max(j_max, j);
    }
  }
  d.eps_r = eps_sum / n;
  d.eps_r_spread = eps_max - eps_min;
  d.eps_a = t(n, n).real();
  if (n >= 2) {
    d.J = j_sum / (static_cast<double>(n) * (n - 1));
    d.coupling_spread = j_max - j_min;
    d.derived = derived_frequencies(d.eps_r, d.eps_a, n);
  } else {
    d.J = d.J_closed_form;
  }
  return DressingResult{std::move(t), d};
}

Spectrum star_spectrum(const StarParams& params) {
  return eig_hermitian(build_star_hamiltonian(params));
}

}  // namespace cavlat
