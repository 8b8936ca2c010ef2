#include "cavlat/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <utility>

#include "cavlat/errors.hpp"

namespace cavlat {

namespace {

struct StarMember {
  int sublattice;
  Translation shift;
};

struct StarTemplate {
  int ancilla_sublattice;
  std::vector<StarMember> members;
};

constexpr int kChainResonator = 0;
constexpr int kChainAncilla = 1;
constexpr int kKagomeA = 0;
constexpr int kKagomeB = 1;
constexpr int kKagomeC = 2;
constexpr int kKagomeUp = 3;
constexpr int kKagomeDown = 4;

const std::vector<StarTemplate>& star_templates(LatticeKind kind) {
  static const std::vector<StarTemplate> chain{
      {kChainAncilla, {{kChainResonator, {0, 0}}, {kChainResonator, {1, 0}}}},
  };
  static const std::vector<StarTemplate> kagome{
      {kKagomeUp, {{kKagomeA, {0, 0}}, {kKagomeB, {0, 0}}, {kKagomeC, {0, 0}}}},
      {kKagomeDown, {{kKagomeB, {0, 0}}, {kKagomeA, {1, -1}}, {kKagomeC, {1, 0}}}},
  };
  return kind == LatticeKind::chain ? chain : kagome;
}

int wrap(int x, int period) { return ((x % period) + period) % period; }

class ResonatorIndexer {
 public:
  explicit ResonatorIndexer(const LatticeSpec& spec) : spec_(spec) {}

  /// Index of the resonator, or nothing if the cell lies outside an open lattice.
  std::optional<std::size_t> operator()(CellIndex cell, int sublattice) const {
    if (spec_.boundary == Boundary::periodic) {
      cell = {wrap(cell[0], spec_.l1), wrap(cell[1], spec_.l2)};
    } else if (cell[0] < 0 || cell[0] >= spec_.l1 || cell[1] < 0 || cell[1] >= spec_.l2) {
      return std::nullopt;
    }
    const auto cell_id = static_cast<std::size_t>(cell[0] * spec_.l2 + cell[1]);
    return cell_id * static_cast<std::size_t>(spec_.resonators_per_cell()) +
           static_cast<std::size_t>(sublattice);
  }

 private:
  LatticeSpec spec_;
};

/// A star placed in the lattice: ancilla position plus existing members,
/// each with its position p inside the template.
struct PlacedStar {
  CellIndex origin;
  int ancilla_sublattice;
  std::vector<std::pair<int, std::size_t>> members;
};

std::vector<PlacedStar> place_stars(const LatticeSpec& spec) {
  const ResonatorIndexer index(spec);
  const bool periodic = spec.boundary == Boundary::periodic;
  // Open lattices also get stars anchored one cell outside, so partial
  // triangles along the edges keep their bonds.
  const int lo = periodic ? 0 : -1;
  const int hi1 = periodic ? spec.l1 : spec.l1 + 1;
  const int hi2 = periodic ? spec.l2 : spec.l2 + 1;

  std::vector<PlacedStar> stars;
  for (int i = lo; i < hi1; ++i) {
    for (int j = lo; j < hi2; ++j) {
      for (const auto& tmpl : star_templates(spec.kind)) {
        PlacedStar star{{i, j}, tmpl.ancilla_sublattice, {}};
        for (std::size_t p = 0; p < tmpl.members.size(); ++p) {
          const auto& m = tmpl.members[p];
          if (auto site = index({i + m.shift[0], j + m.shift[1]}, m.sublattice)) {
            star.members.emplace_back(static_cast<int>(p), *site);
          }
        }
        if (star.members.size() >= 2) stars.push_back(std::move(star));
      }
    }
  }
  return stars;
}

std::vector<Site> resonator_sites(const LatticeSpec& spec) {
  std::vector<Site> sites;
  sites.reserve(static_cast<std::size_t>(spec.cell_count() * spec.resonators_per_cell()));
  for (int i = 0; i < spec.l1; ++i) {
    for (int j = 0; j < spec.l2; ++j) {
      for (int s = 0; s < spec.resonators_per_cell(); ++s) {
        sites.push_back(Site{SiteRole::resonator, {i, j}, s});
      }
    }
  }
  return sites;
}

void check_bonds(const std::vector<Bond>& bonds, std::size_t dim) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& b : bonds) {
    if (b.p == b.q || b.p >= dim || b.q >= dim) {
      throw ConsistencyError("lattice: bond endpoints must be distinct valid sites");
    }
    if (!seen.insert(std::minmax(b.p, b.q)).second) {
      std::ostringstream os;
      os << "lattice: duplicate bond between sites " << b.p << " and " << b.q;
      throw ConsistencyError(os.str());
    }
  }
}

HermitianMatrix assemble(const std::vector<double>& onsite, const std::vector<Bond>& bonds) {
  const auto dim = static_cast<Eigen::Index>(onsite.size());
  RealMatrix h = RealMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) h(i, i) = onsite[static_cast<std::size_t>(i)];
  for (const auto& b : bonds) {
    const auto p = static_cast<Eigen::Index>(b.p);
    const auto q = static_cast<Eigen::Index>(b.q);
    h(p, q) += b.amplitude;
    h(q, p) += b.amplitude;
  }
  return HermitianMatrix::from_real(h);
}

void check_full_params(const LatticeSpec& spec, const StarParams& params) {
  params.validate();
  if (params.n != spec.star_size()) {
    std::ostringstream os;
    os << "lattice: " << to_string(spec.kind) << " stars couple " << spec.star_size()
       << " resonators, StarParams has n = " << params.n;
    throw ValidationError(os.str());
  }
}

LatticeModel build_full(const LatticeSpec& spec, const StarParams& params) {
  spec.validate();
  check_full_params(spec, params);

  LatticeModel model;
  model.spec = spec;
  model.flavor = Flavor::full;
  model.params = params;
  model.sites = resonator_sites(spec);
  model.onsite.assign(model.sites.size(), params.omega_r - 0.5 * params.omega_a);

  for (const auto& star : place_stars(spec)) {
    const std::size_t ancilla = model.sites.size();
    model.sites.push_back(Site{SiteRole::ancilla, star.origin, star.ancilla_sublattice});
    model.onsite.push_back(0.5 * params.omega_a);
    for (const auto& [p, site] : star.members) {
      model.bonds.push_back(Bond{ancilla, site, -params.couplings[static_cast<std::size_t>(p)]});
    }
  }
  check_bonds(model.bonds, model.sites.size());
  model.hamiltonian = assemble(model.onsite, model.bonds);
  return model;
}

LatticeModel build_effective(const LatticeSpec& spec, const EffectiveParams& params) {
  spec.validate();
  if (!std::isfinite(params.hopping) || !std::isfinite(params.onsite)) {
    throw ValidationError("lattice: effective parameters must be finite");
  }

  LatticeModel model;
  model.spec = spec;
  model.flavor = Flavor::effective;
  model.params = params;
  model.sites = resonator_sites(spec);
  model.onsite.assign(model.sites.size(), params.onsite);

  for (const auto& star : place_stars(spec)) {
    for (std::size_t x = 0; x < star.members.size(); ++x) {
      for (std::size_t y = x + 1; y < star.members.size(); ++y) {
        model.bonds.push_back(Bond{star.members[x].second, star.members[y].second, params.hopping});
      }
    }
  }
  check_bonds(model.bonds, model.sites.size());
  model.hamiltonian = assemble(model.onsite, model.bonds);
  return model;
}

void add_block(std::map<Translation, ComplexMatrix>& blocks, int cell_dim, Translation t, int a,
               int b, double amplitude) {
  auto [it, inserted] = blocks.try_emplace(t, ComplexMatrix::Zero(cell_dim, cell_dim));
  it->second(a, b) += amplitude;
}

}  // namespace

std::string_view to_string(LatticeKind kind) {
  return kind == LatticeKind::chain ? "chain" : "kagome";
}

std::string_view to_string(Boundary boundary) {
  return boundary == Boundary::open ? "open" : "periodic";
}

std::string_view to_string(Flavor flavor) {
  return flavor == Flavor::full ? "full" : "effective";
}

std::string_view sublattice_name(LatticeKind kind, int sublattice) {
  static constexpr std::string_view chain[] = {"r", "q"};
  static constexpr std::string_view kagome[] = {"a", "b", "c", "up", "down"};
  if (kind == LatticeKind::chain && sublattice >= 0 && sublattice < 2) return chain[sublattice];
  if (kind == LatticeKind::kagome && sublattice >= 0 && sublattice < 5) return kagome[sublattice];
  throw ValidationError("sublattice_name: index out of range");
}

LatticeSpec LatticeSpec::chain(int n_sites, Boundary boundary) {
  return LatticeSpec{LatticeKind::chain, n_sites, 1, boundary};
}

LatticeSpec LatticeSpec::kagome(int l1, int l2, Boundary boundary) {
  return LatticeSpec{LatticeKind::kagome, l1, l2, boundary};
}

void LatticeSpec::validate() const {
  if (l1 < 1 || l2 < 1) {
    throw ValidationError("LatticeSpec: extents must be >= 1");
  }
  if (kind == LatticeKind::chain) {
    if (l2 != 1) throw ValidationError("LatticeSpec: a chain has l2 = 1");
    if (boundary == Boundary::periodic && l1 < 3) {
      throw ValidationError("LatticeSpec: periodic chain needs N >= 3");
    }
  } else if (boundary == Boundary::periodic && (l1 < 2 || l2 < 2)) {
    throw ValidationError("LatticeSpec: periodic Kagome needs L1, L2 >= 2");
  }
}

int LatticeSpec::resonators_per_cell() const noexcept {
  return kind == LatticeKind::chain ? 1 : 3;
}

int LatticeSpec::star_size() const noexcept { return kind == LatticeKind::chain ? 2 : 3; }

std::size_t LatticeModel::resonator_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      sites.begin(), sites.end(), [](const Site& s) { return s.role == SiteRole::resonator; }));
}

std::vector<int> LatticeModel::degrees() const {
  std::vector<int> deg(sites.size(), 0);
  for (const auto& b : bonds) {
    ++deg[b.p];
    ++deg[b.q];
  }
  return deg;
}

std::optional<std::size_t> LatticeModel::find_site(SiteRole role, CellIndex cell,
                                                   int sublattice) const {
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const auto& s = sites[i];
    if (s.role == role && s.cell == cell && s.sublattice == sublattice) return i;
  }
  return std::nullopt;
}

LatticeModel build_chain(const LatticeSpec& spec, const StarParams& params) {
  if (spec.kind != LatticeKind::chain) throw ValidationError("build_chain: spec is not a chain");
  return build_full(spec, params);
}

LatticeModel build_chain(const LatticeSpec& spec, const EffectiveParams& params) {
  if (spec.kind != LatticeKind::chain) throw ValidationError("build_chain: spec is not a chain");
  return build_effective(spec, params);
}

LatticeModel build_kagome(const LatticeSpec& spec, const StarParams& params) {
  if (spec.kind != LatticeKind::kagome) {
    throw ValidationError("build_kagome: spec is not a Kagome lattice");
  }
  return build_full(spec, params);
}

LatticeModel build_kagome(const LatticeSpec& spec, const EffectiveParams& params) {
  if (spec.kind != LatticeKind::kagome) {
    throw ValidationError("build_kagome: spec is not a Kagome lattice");
  }
  return build_effective(spec, params);
}

LatticeModel build_lattice(const LatticeSpec& spec, const StarParams& params) {
  return spec.kind == LatticeKind::chain ? build_chain(spec, params) : build_kagome(spec, params);
}

LatticeModel build_lattice(const LatticeSpec& spec, const EffectiveParams& params) {
  return spec.kind == LatticeKind::chain ? build_chain(spec, params) : build_kagome(spec, params);
}

LatticeModel effective_from_full(const LatticeModel& full) {
  if (full.flavor != Flavor::full) {
    throw ValidationError("effective_from_full: input is not a full model");
  }
  const auto& star = std::get<StarParams>(full.params);
  if (!star.is_uniform()) {
    throw ValidationError("effective_from_full: full model has nonuniform couplings");
  }
  const double f = star.uniform_coupling();
  const EffectiveParams params{
      effective_coupling(star.n, f, star.detuning()),
      dress_star(star).dressed.eps_r,
  };

  LatticeModel eff;
  eff.spec = full.spec;
  eff.flavor = Flavor::effective;
  eff.params = params;
  const std::size_t n_res = full.resonator_count();
  eff.sites.assign(full.sites.begin(), full.sites.begin() + static_cast<std::ptrdiff_t>(n_res));
  eff.onsite.assign(n_res, params.onsite);

  // Every ancilla becomes all-to-all hopping among its resonators.
  std::map<std::size_t, std::vector<std::size_t>> stars;
  for (const auto& b : full.bonds) {
    const bool p_anc = full.sites[b.p].role == SiteRole::ancilla;
    const bool q_anc = full.sites[b.q].role == SiteRole::ancilla;
    if (p_anc == q_anc) {
      throw ConsistencyError("effective_from_full: bond does not join a resonator to an ancilla");
    }
    stars[p_anc ? b.p : b.q].push_back(p_anc ? b.q : b.p);
  }
  for (const auto& [ancilla, members] : stars) {
    for (std::size_t x = 0; x < members.size(); ++x) {
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        eff.bonds.push_back(Bond{members[x], members[y], params.hopping});
      }
    }
  }
  check_bonds(eff.bonds, eff.sites.size());
  eff.hamiltonian = assemble(eff.onsite, eff.bonds);
  return eff;
}

HermitianMatrix BlochModel::at(const Momentum& k) const {
  ComplexMatrix h = ComplexMatrix::Zero(cell_dim, cell_dim);
  for (const auto& [t, block] : blocks) {
    h += std::polar(1.0, k[0] * t[0] + k[1] * t[1]) * block;
  }
  return HermitianMatrix(std::move(h));
}

Eigen::Vector2d BlochModel::cartesian(const Momentum& k) const {
  return reciprocal * Eigen::Vector2d(k[0], k[1]) / (2.0 * std::numbers::pi);
}

BlochModel bloch_model(const LatticeModel& model) {
  const LatticeSpec& spec = model.spec;
  if (spec.boundary != Boundary::periodic) {
    throw ValidationError("bloch_model: requires a periodic lattice");
  }
  const int n_res = spec.resonators_per_cell();
  const auto& templates = star_templates(spec.kind);

  BlochModel bm;
  bm.kind = spec.kind;
  bm.flavor = model.flavor;
  bm.cell_dim = model.flavor == Flavor::full ? n_res + static_cast<int>(templates.size()) : n_res;

  Eigen::Matrix2d direct;
  if (spec.kind == LatticeKind::chain) {
    direct << 1.0, 0.0, 0.0, 1.0;
  } else {
    direct << 1.0, 0.5, 0.0, std::sqrt(3.0) / 2.0;
  }
  bm.reciprocal = 2.0 * std::numbers::pi * direct.inverse().transpose();

  bm.blocks.emplace(Translation{0, 0}, ComplexMatrix::Zero(bm.cell_dim, bm.cell_dim));
  if (model.flavor == Flavor::effective) {
    const auto& p = std::get<EffectiveParams>(model.params);
    for (int s = 0; s < n_res; ++s) add_block(bm.blocks, bm.cell_dim, {0, 0}, s, s, p.onsite);
    for (const auto& tmpl : templates) {
      for (std::size_t x = 0; x < tmpl.members.size(); ++x) {
        for (std::size_t y = x + 1; y < tmpl.members.size(); ++y) {
          const auto& mx = tmpl.members[x];
          const auto& my = tmpl.members[y];
          const Translation t{my.shift[0] - mx.shift[0], my.shift[1] - mx.shift[1]};
          add_block(bm.blocks, bm.cell_dim, t, mx.sublattice, my.sublattice, p.hopping);
          add_block(bm.blocks, bm.cell_dim, {-t[0], -t[1]}, my.sublattice, mx.sublattice,
                    p.hopping);
        }
      }
    }
  } else {
    const auto& p = std::get<StarParams>(model.params);
    for (int s = 0; s < n_res; ++s) {
      add_block(bm.blocks, bm.cell_dim, {0, 0}, s, s, p.omega_r - 0.5 * p.omega_a);
    }
    for (const auto& tmpl : templates) {
      add_block(bm.blocks, bm.cell_dim, {0, 0}, tmpl.ancilla_sublattice, tmpl.ancilla_sublattice,
                0.5 * p.omega_a);
      for (std::size_t x = 0; x < tmpl.members.size(); ++x) {
        const auto& m = tmpl.members[x];
        const double amp = -p.couplings[x];
        add_block(bm.blocks, bm.cell_dim, m.shift, tmpl.ancilla_sublattice, m.sublattice, amp);
        add_block(bm.blocks, bm.cell_dim, {-m.shift[0], -m.shift[1]}, m.sublattice,
                  tmpl.ancilla_sublattice, amp);
      }
    }
  }
  return bm;
}

HermitianMatrix bloch_hamiltonian(const LatticeModel& model, const Momentum& k) {
  return bloch_model(model).at(k);
}

std::vector<Momentum> KGrid::points() const {
  if (n1 < 1 || n2 < 1) throw ValidationError("KGrid: grid must contain at least one point");
  std::vector<Momentum> ks;
  ks.reserve(static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2));
  for (int m1 = 0; m1 < n1; ++m1) {
    for (int m2 = 0; m2 < n2; ++m2) {
      ks.push_back({2.0 * std::numbers::pi * m1 / n1, 2.0 * std::numbers::pi * m2 / n2});
    }
  }
  return ks;
}

std::vector<BandPoint> band_structure(const LatticeModel& model, const KGrid& grid) {
  const BlochModel bm = bloch_model(model);
  std::vector<BandPoint> table;
  for (const auto& k : grid.points()) {
    const Spectrum s = eig_hermitian(bm.at(k));
    const Eigen::Vector2d kc = bm.cartesian(k);
    for (Eigen::Index b = 0; b < s.size(); ++b) {
      table.push_back(BandPoint{k, kc, static_cast<int>(b), s.eigenvalues(b)});
    }
  }
  return table;
}

std::vector<std::pair<double, double>> band_ranges(const std::vector<BandPoint>& table) {
  std::vector<std::pair<double, double>> ranges;
  for (const auto& row : table) {
    const auto b = static_cast<std::size_t>(row.band);
    if (b >= ranges.size()) ranges.resize(b + 1, {row.energy, row.energy});
    ranges[b].first = std::min(ranges[b].first, row.energy);
    ranges[b].second = std::max(ranges[b].second, row.energy);
  }
  return ranges;
}

}  // namespace cavlat
