#include "cavlat/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cavlat/errors.hpp"

namespace cavlat {

StateVector::StateVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw ValidationError("StateVector: empty state");
  const double norm = amplitudes_.norm();
  if (!(std::abs(norm - 1.0) < 1e-12)) {
    std::ostringstream os;
    os << "StateVector: state must be normalised, ||psi|| = " << norm;
    throw ValidationError(os.str());
  }
}

StateVector StateVector::basis_state(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) throw ValidationError("StateVector: basis index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

SpectralPropagator::SpectralPropagator(const HermitianMatrix& h) : spectrum_(eig_hermitian(h)) {}

ComplexVector SpectralPropagator::apply(const ComplexVector& psi, double t) const {
  if (psi.size() != dim()) {
    throw ValidationError("SpectralPropagator: state dimension does not match the Hamiltonian");
  }
  ComplexVector c = spectrum_.eigenvectors.adjoint() * psi;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    c(i) *= std::polar(1.0, -spectrum_.eigenvalues(i) * t);
  }
  return spectrum_.eigenvectors * c;
}

ObservableTrace evolve(const HermitianMatrix& h, const StateVector& psi0,
                       const std::vector<double>& times,
                       const std::optional<HermitianMatrix>& excitation) {
  if (psi0.dim() != h.dim()) {
    std::ostringstream os;
    os << "evolve: state dimension " << psi0.dim() << " vs Hamiltonian dimension " << h.dim();
    throw ValidationError(os.str());
  }
  if (excitation && excitation->dim() != h.dim()) {
    throw ValidationError("evolve: excitation operator dimension mismatch");
  }
  for (double t : times) {
    if (!std::isfinite(t)) throw ValidationError("evolve: sample times must be finite");
  }

  const SpectralPropagator u(h);
  ObservableTrace trace;
  trace.times = times;
  trace.populations.resize(static_cast<Eigen::Index>(times.size()), h.dim());
  trace.norm.reserve(times.size());
  trace.excitation.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const ComplexVector psi = u.apply(psi0.amplitudes(), times[k]);
    trace.populations.row(static_cast<Eigen::Index>(k)) = psi.cwiseAbs2().transpose();
    trace.norm.push_back(psi.norm());
    trace.excitation.push_back(excitation ? psi.dot(excitation->matrix() * psi).real()
                                          : psi.squaredNorm());
  }
  return trace;
}

DeviationTrace compare_full_effective(const LatticeSpec& spec, const StarParams& params,
                                      const StateVector& psi0, const std::vector<double>& times) {
  const LatticeModel full = build_lattice(spec, params);
  const LatticeModel effective = effective_from_full(full);
  if (psi0.dim() != static_cast<Eigen::Index>(full.dim())) {
    throw ValidationError("compare_full_effective: psi0 must live in the full-model basis");
  }
  const auto n_res = static_cast<Eigen::Index>(full.resonator_count());
  const auto n_anc = static_cast<Eigen::Index>(full.ancilla_count());
  if (n_anc > 0 && psi0.amplitudes().tail(n_anc).cwiseAbs().maxCoeff() > 0.0) {
    throw ValidationError("compare_full_effective: psi0 has ancilla support");
  }

  DeviationTrace out;
  out.times = times;
  out.full = evolve(full.hamiltonian, psi0, times);
  out.effective = evolve(effective.hamiltonian, StateVector(psi0.amplitudes().head(n_res)), times);
  out.deviation.reserve(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    const double d =
        (out.full.populations.row(row).head(n_res) - out.effective.populations.row(row)).norm();
    out.deviation.push_back(d);
    out.max_deviation = std::max(out.max_deviation, d);
  }
  return out;
}

std::vector<double> linspace(double t0, double t1, int n) {
  if (n < 1) throw ValidationError("linspace: need at least one sample");
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = n == 1 ? t0 : t0 + (t1 - t0) * i / (n - 1);
  }
  return out;
}

}  // namespace cavlat
