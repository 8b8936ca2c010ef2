#include "cavlat/spin_xy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <sstream>

#include "cavlat/errors.hpp"

namespace cavlat {

namespace {

int popcount(std::uint32_t x) { return std::popcount(x); }

}  // namespace

HermitianMatrix SpinHamiltonian::dense() const {
  if (m > kMaxDenseSpins) {
    std::ostringstream os;
    os << "SpinHamiltonian: dense copy limited to m <= " << kMaxDenseSpins << ", got " << m;
    throw ValidationError(os.str());
  }
  return HermitianMatrix::from_real(RealMatrix(matrix));
}

SpinHamiltonian build_xy(int m, const std::vector<SpinBond>& bonds, double omega_r_prime) {
  if (m < 1 || m > kMaxSpins) {
    std::ostringstream os;
    os << "build_xy: spin count must be in [1, " << kMaxSpins << "], got " << m;
    throw ValidationError(os.str());
  }
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& b : bonds) {
    if (b.p >= static_cast<std::size_t>(m) || b.q >= static_cast<std::size_t>(m) || b.p == b.q) {
      std::ostringstream os;
      os << "build_xy: invalid bond (" << b.p << ", " << b.q << ") for m = " << m;
      throw ValidationError(os.str());
    }
    if (!seen.insert(std::minmax(b.p, b.q)).second) {
      std::ostringstream os;
      os << "build_xy: duplicate bond (" << b.p << ", " << b.q << ")";
      throw ValidationError(os.str());
    }
  }

  SpinHamiltonian h;
  h.m = m;
  h.bonds = bonds;
  h.field = omega_r_prime;

  const std::uint32_t dim = std::uint32_t{1} << m;
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(dim) * (bonds.size() + 1));
  for (std::uint32_t s = 0; s < dim; ++s) {
    const int up = popcount(s);
    entries.emplace_back(s, s, 0.5 * omega_r_prime * (2 * up - m));
    for (const auto& b : bonds) {
      const bool up_p = (s >> b.p) & 1U;
      const bool up_q = (s >> b.q) & 1U;
      if (up_p != up_q && b.J != 0.0) {
        const std::uint32_t flipped = s ^ ((1U << b.p) | (1U << b.q));
        entries.emplace_back(flipped, s, b.J);
      }
    }
  }
  h.matrix.resize(dim, dim);
  h.matrix.setFromTriplets(entries.begin(), entries.end());
  return h;
}

SpinHamiltonian build_xy(int m, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                         double J, double omega_r_prime) {
  std::vector<SpinBond> bonds;
  bonds.reserve(pairs.size());
  for (const auto& [p, q] : pairs) bonds.push_back(SpinBond{p, q, J});
  return build_xy(m, bonds, omega_r_prime);
}

std::vector<SpinBond> spin_bonds(const LatticeModel& effective) {
  if (effective.flavor != Flavor::effective) {
    throw ValidationError("spin_bonds: expected an effective (resonator-only) model");
  }
  std::vector<SpinBond> bonds;
  bonds.reserve(effective.bonds.size());
  for (const auto& b : effective.bonds) bonds.push_back(SpinBond{b.p, b.q, b.amplitude});
  return bonds;
}

double sz_commutator_norm(const SpinHamiltonian& h) {
  // S^z is diagonal: [H, S^z]_ij = H_ij (S^z_j - S^z_i).
  double sum = 0.0;
  for (int col = 0; col < h.matrix.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(h.matrix, col); it; ++it) {
      const double dsz = 0.5 * (2 * popcount(static_cast<std::uint32_t>(it.col())) -
                                2 * popcount(static_cast<std::uint32_t>(it.row())));
      const double c = it.value() * dsz;
      sum += c * c;
    }
  }
  return std::sqrt(sum);
}

SectorProjection project_sector(const SpinHamiltonian& h, int k_up) {
  if (k_up < 0 || k_up > h.m) {
    std::ostringstream os;
    os << "project_sector: k_up must be in [0, " << h.m << "], got " << k_up;
    throw ValidationError(os.str());
  }
  SectorProjection sector;
  sector.k_up = k_up;
  const std::uint32_t dim = std::uint32_t{1} << h.m;
  std::vector<std::int64_t> position(dim, -1);
  for (std::uint32_t s = 0; s < dim; ++s) {
    if (popcount(s) == k_up) {
      position[s] = static_cast<std::int64_t>(sector.states.size());
      sector.states.push_back(s);
    }
  }
  const auto n = static_cast<Eigen::Index>(sector.states.size());
  RealMatrix block = RealMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto col = static_cast<Eigen::Index>(sector.states[static_cast<std::size_t>(j)]);
    for (Eigen::SparseMatrix<double>::InnerIterator it(h.matrix, col); it; ++it) {
      const std::int64_t i = position[static_cast<std::size_t>(it.row())];
      if (i >= 0) block(i, j) += it.value();
    }
  }
  sector.matrix = HermitianMatrix::from_real(block);
  return sector;
}

double sector_equivalence(const SpinHamiltonian& h, const LatticeModel& tight_binding) {
  const auto m = static_cast<Eigen::Index>(h.m);
  if (tight_binding.hamiltonian.dim() != m) {
    std::ostringstream os;
    os << "sector_equivalence: " << m << " spins vs tight-binding dimension "
       << tight_binding.hamiltonian.dim();
    throw ValidationError(os.str());
  }
  // Single-up-spin states 1 << p are already in site order p = 0..m-1.
  const SectorProjection single = project_sector(h, 1);
  const ComplexMatrix diff = single.matrix.matrix() - tight_binding.hamiltonian.matrix();
  // Midpoint of the diagonal offsets: exact when they are all equal.
  const RealVector d = diff.diagonal().real();
  const double offset = 0.5 * (d.minCoeff() + d.maxCoeff());
  return (diff - offset * ComplexMatrix::Identity(m, m)).cwiseAbs().maxCoeff();
}

}  // namespace cavlat
