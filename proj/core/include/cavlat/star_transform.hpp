#pragma once

// One ancilla qubit coupled to n resonators, restricted to the sector with a
// single excitation, and the unitary that removes the ancilla from it.
//
// Basis order (size n + 1): states 0..n-1 hold one photon in resonator p with
// the ancilla down; state n has no photons and the ancilla up.

#include <optional>
#include <vector>

#include "cavlat/operator_core.hpp"

namespace cavlat {

/// Physical parameters of one star: n resonators around a single ancilla.
struct StarParams {
  int n = 1;
  double omega_r = 0.0;
  double omega_a = 0.0;
  /// One non-negative coupling f_p per resonator.
  std::vector<double> couplings;

  static StarParams uniform(int n, double omega_r, double omega_a, double f);

  /// Throws ValidationError on n < 1, couplings.size() != n, negative or
  /// non-finite values.
  void validate() const;

  double detuning() const noexcept { return omega_a - omega_r; }
  bool is_uniform() const noexcept;
  /// The common coupling; requires is_uniform().
  double uniform_coupling() const;
};

/// One basis state of the single-excitation sector.
struct BasisLabel {
  /// Photon numbers N_rp, one per resonator.
  std::vector<int> photons;
  /// Ancilla s_z eigenvalue, -1/2 or +1/2.
  double ancilla_sz = -0.5;

  int excitation_number() const;
};

std::vector<BasisLabel> single_excitation_basis(int n);

/// Derived pseudo-spin frequencies of the tight-binding form.
struct DerivedFrequencies {
  double omega_r_prime = 0.0;
  double omega_a_prime = 0.0;
};

/// Effective parameters of a decoupled star.
struct DressedStar {
  double delta = 0.0;
  double theta = 0.0;
  /// Resonator-resonator coupling read from the transformed matrix (closed form for n = 1).
  double J = 0.0;
  /// Resonator diagonal of the transformed matrix.
  double eps_r = 0.0;
  /// Ancilla diagonal of the transformed matrix.
  double eps_a = 0.0;
  /// Absent for n = 1, where the relations are singular.
  std::optional<DerivedFrequencies> derived;

  /// Closed-form references, reported next to the exact values.
  double J_closed_form = 0.0;
  double eps_r_closed_form = 0.0;
  double eps_a_closed_form = 0.0;

  /// Largest |transformed(p, ancilla)| over resonators p.
  double decoupling_residual = 0.0;
  /// Spread (max - min) of the resonator-block off-diagonals and diagonals.
  double coupling_spread = 0.0;
  double eps_r_spread = 0.0;
};

struct DressingResult {
  HermitianMatrix transformed;
  DressedStar dressed;
};

/// sgn with sgn(0) = +1.
inline double sign_nonnegative(double x) noexcept { return x < 0.0 ? -1.0 : 1.0; }

HermitianMatrix build_star_hamiltonian(const StarParams& params);

/// Number operator N_e restricted to the sector; the identity.
HermitianMatrix excitation_number_matrix(int n);

/// Angle with tan(2 sqrt(n) theta) = 2 sqrt(n) f / delta, taking the principal
/// branch 2 sqrt(n) theta in (-pi/2, pi/2] and pi/(4 sqrt(n)) at resonance.
double decoupling_angle(int n, double f, double delta);

/// Anti-Hermitian generator M = -theta sum_p (a_p^dagger sigma^- - sigma^+ a_p).
ComplexMatrix decoupling_generator(int n, double theta);

/// exp(decoupling_generator(n, theta)) in closed form.
UnitaryMatrix closed_form_U(int n, double theta);

/// Exact decoupling of a uniform star. Throws ValidationError for nonuniform
/// couplings and ConsistencyError if the residual coupling to the ancilla
/// exceeds 1e-10 ||H||_F.
DressingResult dress_star(const StarParams& params);

/// Spectrum of the bare star; the only route for nonuniform couplings.
Spectrum star_spectrum(const StarParams& params);

/// J_n = (delta - sgn(delta) sqrt(delta^2 + 4 n f^2)) / (2n).
double effective_coupling(int n, double f, double delta);

/// Closed-form ancilla level: omega_r/2 + sgn(delta) sqrt(delta^2 + 4 n f^2) / 2.
double ancilla_energy_closed_form(int n, double f, double delta, double omega_r);

/// Closed-form resonator level -(delta + sgn(delta) R)/(2n) + omega_r/2. Agrees
/// with the exact transformed diagonal only for n = 2; for n >= 3 the exact
/// value is omega_r/2 - delta/2 + J_n.
double resonator_energy_closed_form(int n, double f, double delta, double omega_r);

/// omega'_r = -(eps_r + eps_a)/(n-1), omega'_a = -(n eps_r - (n-2) eps_a)/(n-1).
/// Throws ValidationError for n < 2.
DerivedFrequencies derived_frequencies(double eps_r, double eps_a, int n);

}  // namespace cavlat
