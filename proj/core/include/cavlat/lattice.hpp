#pragma once

// Resonator lattices whose resonators are coupled through ancilla qubits.
//
// Both geometries are built from "stars": one ancilla plus the resonators it
// couples. A chain link is a 2-resonator star, a Kagome triangle a 3-resonator
// star. The full model keeps the ancillas in the single-excitation sector; the
// effective model drops them and bonds every resonator pair inside a star with
// the hopping J_n.
//
// Kagome geometry (lattice constant 1 = two bond lengths):
//   a1 = (1, 0), a2 = (1/2, sqrt(3)/2)
//   a = (0, 0), b = (1/4, -sqrt(3)/4), c = (-1/4, -sqrt(3)/4)
//   up star   in cell (i, j): a(i, j), b(i, j), c(i, j)
//   down star in cell (i, j): b(i, j), a(i+1, j-1), c(i+1, j)
// Ancillas sit at the triangle centroids, so they form the honeycomb lattice.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "cavlat/operator_core.hpp"
#include "cavlat/star_transform.hpp"

namespace cavlat {

enum class LatticeKind { chain, kagome };
enum class Boundary { open, periodic };
enum class Flavor { full, effective };
enum class SiteRole { resonator, ancilla };

std::string_view to_string(LatticeKind kind);
std::string_view to_string(Boundary boundary);
std::string_view to_string(Flavor flavor);

using CellIndex = std::array<int, 2>;

struct LatticeSpec {
  LatticeKind kind = LatticeKind::chain;
  /// Chain: l1 = N resonators, l2 = 1. Kagome: l1 x l2 unit cells.
  int l1 = 1;
  int l2 = 1;
  Boundary boundary = Boundary::open;

  static LatticeSpec chain(int n_sites, Boundary boundary);
  static LatticeSpec kagome(int l1, int l2, Boundary boundary);

  /// Extents >= 1; periodic chain needs N >= 3, periodic Kagome L1, L2 >= 2.
  void validate() const;

  int cell_count() const noexcept { return l1 * l2; }
  /// Resonators per unit cell (1 chain, 3 Kagome).
  int resonators_per_cell() const noexcept;
  /// Resonators per star (2 chain, 3 Kagome).
  int star_size() const noexcept;
};

/// On-site energy and hopping of the resonator-only model.
struct EffectiveParams {
  double hopping = 0.0;
  double onsite = 0.0;
};

struct Site {
  SiteRole role = SiteRole::resonator;
  CellIndex cell{0, 0};
  /// Index into the unit-cell layout: chain {r, q}, Kagome {a, b, c, up, down}.
  int sublattice = 0;
};

std::string_view sublattice_name(LatticeKind kind, int sublattice);

struct Bond {
  std::size_t p = 0;
  std::size_t q = 0;
  double amplitude = 0.0;
};

/// Real-space model. Resonators are always numbered first, in cell-major
/// order; ancillas (full flavor only) follow.
struct LatticeModel {
  LatticeSpec spec;
  Flavor flavor = Flavor::effective;
  std::vector<Site> sites;
  std::vector<Bond> bonds;
  std::vector<double> onsite;
  HermitianMatrix hamiltonian = HermitianMatrix::identity(1);
  std::variant<StarParams, EffectiveParams> params;

  std::size_t dim() const noexcept { return sites.size(); }
  std::size_t resonator_count() const noexcept;
  std::size_t ancilla_count() const noexcept { return dim() - resonator_count(); }
  /// Number of bonds touching each site.
  std::vector<int> degrees() const;
  std::optional<std::size_t> find_site(SiteRole role, CellIndex cell, int sublattice) const;
};

LatticeModel build_chain(const LatticeSpec& spec, const StarParams& params);
LatticeModel build_chain(const LatticeSpec& spec, const EffectiveParams& params);
LatticeModel build_kagome(const LatticeSpec& spec, const StarParams& params);
LatticeModel build_kagome(const LatticeSpec& spec, const EffectiveParams& params);

/// Dispatches on spec.kind.
LatticeModel build_lattice(const LatticeSpec& spec, const StarParams& params);
LatticeModel build_lattice(const LatticeSpec& spec, const EffectiveParams& params);

/// Effective model of a uniform full model: hopping J_n of the star size,
/// on-site energy the exact single-star resonator level, bonds mapped star by
/// star from the ancillas of `full`.
LatticeModel effective_from_full(const LatticeModel& full);

/// Momentum as Bloch phases (k . a1, k . a2), each in [0, 2 pi).
using Momentum = std::array<double, 2>;
using Translation = std::array<int, 2>;

/// Periodic model as translation blocks: H(k) = sum_t B_t exp(i k . t), with
/// (B_t)_{ab} the amplitude from sublattice a in cell 0 to sublattice b in cell t.
struct BlochModel {
  LatticeKind kind = LatticeKind::chain;
  Flavor flavor = Flavor::effective;
  int cell_dim = 1;
  std::map<Translation, ComplexMatrix> blocks;
  /// Columns are the reciprocal vectors b1, b2 (b_i . a_j = 2 pi delta_ij).
  Eigen::Matrix2d reciprocal;

  HermitianMatrix at(const Momentum& k) const;
  /// Cartesian momentum for a pair of Bloch phases.
  Eigen::Vector2d cartesian(const Momentum& k) const;
};

/// Throws ValidationError for open-boundary models.
BlochModel bloch_model(const LatticeModel& model);
HermitianMatrix bloch_hamiltonian(const LatticeModel& model, const Momentum& k);

/// Uniform grid k_i = 2 pi m_i / n_i, m_i = 0..n_i-1.
struct KGrid {
  int n1 = 1;
  int n2 = 1;
  std::vector<Momentum> points() const;
};

struct BandPoint {
  Momentum k{0.0, 0.0};
  Eigen::Vector2d k_cartesian = Eigen::Vector2d::Zero();
  int band = 0;
  double energy = 0.0;
};

/// Rows ordered by k (grid order, n2 fastest) then ascending band.
std::vector<BandPoint> band_structure(const LatticeModel& model, const KGrid& grid);

/// Per-band (min, max) over a band table.
std::vector<std::pair<double, double>> band_ranges(const std::vector<BandPoint>& table);

}  // namespace cavlat
