#include "doctest.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>

#include "cavlat/errors.hpp"
#include "cavlat/spin_xy.hpp"
#include "oracles.hpp"

using namespace cavlat;

namespace {

std::vector<double> sorted(const RealVector& v) {
  std::vector<double> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("two spins: singlet-triplet-like spectrum") {
  const double j = 0.3, w = 1.1;
  const SpinHamiltonian h = build_xy(2, {{0, 1}}, j, w);
  // |00> -> -w, |11> -> +w, (|01> +- |10>)/sqrt2 -> +-J.
  const auto ev = sorted(eig_hermitian(h.dense()).eigenvalues);
  const std::vector<double> expected{-w, -j, j, w};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(ev[i] - expected[i]) < 1e-15);
  const RealMatrix d = h.dense().matrix().real();
  CHECK(d(1, 2) == j);
  CHECK(d(2, 1) == j);
}

TEST_CASE("zero coupling: Zeeman ladder") {
  const int m = 5;
  const double w = 0.8;
  const SpinHamiltonian h = build_xy(m, std::vector<SpinBond>{}, w);
  CHECK(h.matrix.nonZeros() == 32);
  for (std::uint32_t s = 0; s < 32; ++s) {
    const int up = std::popcount(s);
    CHECK(h.matrix.coeff(s, s) == doctest::Approx(0.5 * w * (2 * up - m)).epsilon(1e-15));
  }
}

TEST_CASE("xy Hamiltonian matches the Pauli-string construction") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int m = 6;
  std::vector<SpinBond> bonds;
  std::vector<oracle::PairBond> pauli_bonds;
  for (int p = 0; p < m; ++p) {
    for (int q = p + 1; q < m; ++q) {
      if ((p + q) % 2 == 0) continue;
      const double j = u(rng);
      bonds.push_back({static_cast<std::size_t>(p), static_cast<std::size_t>(q), j});
      pauli_bonds.push_back({p, q, j});
    }
  }
  const double w = u(rng);
  const SpinHamiltonian h = build_xy(m, bonds, w);
  const oracle::Mat reference = oracle::xy_from_pauli_strings(m, pauli_bonds, w);
  CHECK((h.dense().matrix() - reference).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("total S^z is conserved") {
  const auto chain =
      build_chain(LatticeSpec::chain(8, Boundary::periodic), EffectiveParams{0.2, 0.0});
  const SpinHamiltonian h = build_xy(8, spin_bonds(chain), 0.9);
  CHECK(sz_commutator_norm(h) < 1e-13);
}

TEST_CASE("single-up-spin sector equals the tight-binding model") {
  const double j = -0.07, w = 0.4;
  const auto kagome =
      build_kagome(LatticeSpec::kagome(2, 2, Boundary::open), EffectiveParams{j, 0.0});
  const int m = static_cast<int>(kagome.dim());
  REQUIRE(m <= kMaxDenseSpins);
  const SpinHamiltonian h = build_xy(m, spin_bonds(kagome), w);
  CHECK(sector_equivalence(h, kagome) < 1e-14);

  const SectorProjection one = project_sector(h, 1);
  CHECK(one.states.size() == static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < one.states.size(); ++i) {
    CHECK(one.states[i] == (std::uint32_t{1} << i));
  }
  // Offset is (w/2)(2 - m) on every diagonal entry.
  CHECK(std::abs(one.matrix(0, 0).real() - 0.5 * w * (2 - m)) < 1e-15);

  const auto zero_j = build_chain(LatticeSpec::chain(5, Boundary::open), EffectiveParams{0.0, 0.0});
  CHECK(sector_equivalence(build_xy(5, spin_bonds(zero_j), w), zero_j) == 0.0);

  const auto wrong = build_chain(LatticeSpec::chain(4, Boundary::open), EffectiveParams{j, 0.0});
  CHECK_THROWS_AS(sector_equivalence(h, wrong), ValidationError);
}

TEST_CASE("sectors partition the spectrum") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int m = 2; m <= 8; ++m) {
    std::vector<SpinBond> bonds;
    for (int p = 0; p + 1 < m; ++p) {
      bonds.push_back({static_cast<std::size_t>(p), static_cast<std::size_t>(p + 1), u(rng)});
    }
    const SpinHamiltonian h = build_xy(m, bonds, u(rng));
    std::vector<double> from_sectors;
    std::size_t states = 0;
    for (int k = 0; k <= m; ++k) {
      const SectorProjection s = project_sector(h, k);
      states += s.states.size();
      for (auto st : s.states) CHECK(std::popcount(st) == k);
      const RealVector ev = eig_hermitian(s.matrix).eigenvalues;
      from_sectors.insert(from_sectors.end(), ev.data(), ev.data() + ev.size());
    }
    CHECK(states == h.dim());
    std::sort(from_sectors.begin(), from_sectors.end());
    const auto full = sorted(eig_hermitian(h.dense()).eigenvalues);
    for (std::size_t i = 0; i < full.size(); ++i) CHECK(std::abs(full[i] - from_sectors[i]) < 1e-12);
  }
}

TEST_CASE("spin model guards") {
  CHECK_THROWS_AS(build_xy(0, std::vector<SpinBond>{}, 0.0), ValidationError);
  CHECK_THROWS_AS(build_xy(kMaxSpins + 1, std::vector<SpinBond>{}, 0.0), ValidationError);
  CHECK_THROWS_AS(build_xy(3, {{0, 3}}, 0.1, 0.0), ValidationError);
  CHECK_THROWS_AS(build_xy(3, {{1, 1}}, 0.1, 0.0), ValidationError);
  CHECK_THROWS_AS(build_xy(3, {{0, 1}, {1, 0}}, 0.1, 0.0), ValidationError);
  CHECK_THROWS_AS(project_sector(build_xy(3, {{0, 1}}, 0.1, 0.0), 4), ValidationError);

  const SpinHamiltonian big = build_xy(kMaxDenseSpins + 1, {{0, 1}}, 0.1, 0.0);
  CHECK(big.dim() == (std::size_t{1} << (kMaxDenseSpins + 1)));
  CHECK_THROWS_AS((void)big.dense(), ValidationError);

  const auto full = build_chain(LatticeSpec::chain(3, Boundary::open), StarParams::uniform(2, 5, 6, 0.1));
  CHECK_THROWS_AS(spin_bonds(full), ValidationError);
}
