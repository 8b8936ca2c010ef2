#pragma once

// xy-model spin Hamiltonians on the full 2^m space.
//
// Basis convention: site p is bit p of the state index, bit set = spin up =
// one photon. H = (omega'_r / 2) sum_p sigma^z_p + sum_bonds J (s+_p s-_q + s-_p s+_q),
// so a single up spin hops between bonded sites with amplitude exactly J.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/SparseCore>

#include "cavlat/lattice.hpp"
#include "cavlat/operator_core.hpp"

namespace cavlat {

/// Largest m accepted by build_xy.
inline constexpr int kMaxSpins = 14;
/// Largest m for which a dense copy of the spin Hamiltonian is produced.
inline constexpr int kMaxDenseSpins = 12;

struct SpinBond {
  std::size_t p = 0;
  std::size_t q = 0;
  double J = 0.0;
};

struct SpinHamiltonian {
  int m = 0;
  std::vector<SpinBond> bonds;
  double field = 0.0;
  /// Real symmetric 2^m x 2^m matrix; the xy Hamiltonian has no complex entries.
  Eigen::SparseMatrix<double> matrix;

  std::size_t dim() const noexcept { return std::size_t{1} << m; }
  /// Dense copy; throws ValidationError above kMaxDenseSpins.
  HermitianMatrix dense() const;
};

/// Throws ValidationError for m outside [1, kMaxSpins], out-of-range or
/// self bonds, and duplicate bonds.
SpinHamiltonian build_xy(int m, const std::vector<SpinBond>& bonds, double omega_r_prime);

/// Same, with one coupling J on every listed pair.
SpinHamiltonian build_xy(int m, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                         double J, double omega_r_prime);

/// Bonds of an effective lattice model, carrying the model's hopping.
std::vector<SpinBond> spin_bonds(const LatticeModel& effective);

/// ||[H, S^z_total]||_F.
double sz_commutator_norm(const SpinHamiltonian& h);

struct SectorProjection {
  int k_up = 0;
  /// Spin-space indices of the sector states, ascending.
  std::vector<std::uint32_t> states;
  HermitianMatrix matrix = HermitianMatrix::identity(1);
};

/// Restriction of H to states with k_up spins up. Throws ValidationError for
/// k_up outside [0, m].
SectorProjection project_sector(const SpinHamiltonian& h, int k_up);

/// max |P - H_tb - c I| where P is the single-up-spin projection and c the
/// mean diagonal offset between them. Throws ValidationError on shape mismatch.
double sector_equivalence(const SpinHamiltonian& h, const LatticeModel& tight_binding);

}  // namespace cavlat
