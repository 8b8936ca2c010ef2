#pragma once

#include <optional>
#include <vector>

#include "cavlat/lattice.hpp"
#include "cavlat/operator_core.hpp"
#include "cavlat/star_transform.hpp"

namespace cavlat {

/// Normalised state; throws ValidationError if | ||psi|| - 1 | >= 1e-12.
class StateVector {
 public:
  explicit StateVector(ComplexVector amplitudes);

  static StateVector basis_state(Eigen::Index dim, Eigen::Index index);

  Eigen::Index dim() const noexcept { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }

 private:
  ComplexVector amplitudes_;
};

struct ObservableTrace {
  std::vector<double> times;
  /// Row per time sample, column per basis state.
  RealMatrix populations;
  std::vector<double> norm;
  /// <psi(t)| N_e |psi(t)>.
  std::vector<double> excitation;
};

/// psi(t) = V exp(-i lambda t) V^dagger psi0, reusing one diagonalisation.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const HermitianMatrix& h);

  ComplexVector apply(const ComplexVector& psi, double t) const;
  Eigen::Index dim() const noexcept { return spectrum_.size(); }

 private:
  Spectrum spectrum_;
};

/// Propagates psi0 to every sample time. `excitation` defaults to the identity,
/// which is N_e on every single-excitation model in this library.
ObservableTrace evolve(const HermitianMatrix& h, const StateVector& psi0,
                       const std::vector<double>& times,
                       const std::optional<HermitianMatrix>& excitation = std::nullopt);

struct DeviationTrace {
  std::vector<double> times;
  /// || P_full(resonators, t) - P_eff(t) ||_2 per sample.
  std::vector<double> deviation;
  double max_deviation = 0.0;
  ObservableTrace full;
  ObservableTrace effective;
};

/// Evolves psi0 (full-model basis, resonator support only) under the full
/// lattice and under effective_from_full of it, and compares the resonator
/// populations. Throws ValidationError if psi0 touches an ancilla.
DeviationTrace compare_full_effective(const LatticeSpec& spec, const StarParams& params,
                                      const StateVector& psi0, const std::vector<double>& times);

/// n evenly spaced samples on [t0, t1]; a single sample at t0 when n = 1.
std::vector<double> linspace(double t0, double t1, int n);

}  // namespace cavlat
