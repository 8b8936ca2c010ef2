#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "cavlat/dynamics.hpp"
#include "cavlat/errors.hpp"
#include "oracles.hpp"

using namespace cavlat;

TEST_CASE("StateVector validation") {
  ComplexVector v(2);
  v << 1.0, 1.0;
  CHECK_THROWS_AS(StateVector{v}, ValidationError);
  v /= std::sqrt(2.0);
  CHECK_NOTHROW(StateVector{v});
  CHECK_THROWS_AS(StateVector::basis_state(3, 3), ValidationError);
  CHECK(StateVector::basis_state(3, 2).amplitudes()(2) == Complex(1.0));
}

TEST_CASE("eigenstates are stationary") {
  std::mt19937_64 rng(17);
  const HermitianMatrix h(oracle::random_hermitian(6, rng));
  const Spectrum s = eig_hermitian(h);
  const StateVector psi(s.eigenvectors.col(3));
  const auto trace = evolve(h, psi, linspace(0.0, 20.0, 41));
  for (Eigen::Index t = 0; t < trace.populations.rows(); ++t) {
    CHECK((trace.populations.row(t) - trace.populations.row(0)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("two coupled sites: Rabi transfer sin^2(J t)") {
  const double j = 0.21, d = 3.0;
  RealMatrix m(2, 2);
  m << d, j, j, d;
  const auto times = linspace(0.0, 30.0, 301);
  const auto trace = evolve(HermitianMatrix::from_real(m), StateVector::basis_state(2, 0), times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double s = std::sin(j * times[i]);
    CHECK(std::abs(trace.populations(static_cast<Eigen::Index>(i), 1) - s * s) < 1e-12);
  }
}

TEST_CASE("resonant two-resonator star: transfer through the ancilla") {
  const double f = 0.1;
  const HermitianMatrix h = build_star_hamiltonian(StarParams::uniform(2, 5.0, 5.0, f));
  const auto times = linspace(0.0, 100.0, 201);
  const auto trace = evolve(h, StateVector::basis_state(3, 0), times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double c = std::cos(std::sqrt(2.0) * f * times[i]);
    CHECK(std::abs(trace.populations(static_cast<Eigen::Index>(i), 1) - (1 - c) * (1 - c) / 4) <
          1e-12);
  }
}

TEST_CASE("norm and excitation number are conserved; propagation composes") {
  const auto model = build_kagome(LatticeSpec::kagome(2, 2, Boundary::open),
                                  StarParams::uniform(3, 5.0, 5.4, 0.12));
  const auto dim = static_cast<Eigen::Index>(model.dim());
  const auto times = linspace(0.0, 50.0, 26);
  const auto trace = evolve(model.hamiltonian, StateVector::basis_state(dim, 1), times,
                            HermitianMatrix::identity(dim));
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(std::abs(trace.norm[i] - 1.0) < 1e-12);
    CHECK(std::abs(trace.excitation[i] - 1.0) < 1e-12);
    CHECK(std::abs(trace.populations.row(static_cast<Eigen::Index>(i)).sum() - 1.0) < 1e-12);
  }

  const SpectralPropagator prop(model.hamiltonian);
  const ComplexVector psi0 = StateVector::basis_state(dim, 1).amplitudes();
  const ComplexVector direct = prop.apply(psi0, 7.5);
  const ComplexVector composed = prop.apply(prop.apply(psi0, 3.0), 4.5);
  CHECK((direct - composed).norm() < 1e-12);
  const ComplexMatrix series =
      oracle::expm_series(Complex(0, -0.5) * model.hamiltonian.matrix() / 10.0, 40);
  ComplexVector stepped = psi0;
  for (int k = 0; k < 10; ++k) stepped = series * stepped;
  CHECK((prop.apply(psi0, 0.5) - stepped).norm() < 1e-12);
}

TEST_CASE("linspace") {
  const auto t = linspace(1.0, 2.0, 5);
  REQUIRE(t.size() == 5);
  CHECK(t.front() == 1.0);
  CHECK(t.back() == 2.0);
  CHECK(t[2] == doctest::Approx(1.5));
  CHECK(linspace(3.0, 4.0, 1) == std::vector<double>{3.0});
  CHECK_THROWS_AS(linspace(0.0, 1.0, 0), ValidationError);
}

TEST_CASE("full vs effective dynamics") {
  const auto spec = LatticeSpec::chain(6, Boundary::periodic);
  const auto psi0 = StateVector::basis_state(12, 0);

  const auto decoupled =
      compare_full_effective(spec, StarParams::uniform(2, 5.0, 6.0, 0.0), psi0, linspace(0, 50, 11));
  CHECK(decoupled.max_deviation < 1e-14);

  double prev = 0.0;
  for (double ratio : {0.1, 0.05, 0.025}) {
    const StarParams star = StarParams::uniform(2, 5.0, 6.0, ratio);
    const double j = std::abs(effective_coupling(2, ratio, 1.0));
    const auto result =
        compare_full_effective(spec, star, psi0, linspace(0.0, 2 * std::numbers::pi / j, 201));
    CHECK(result.deviation.size() == 201);
    CHECK(result.full.populations.cols() == 12);
    CHECK(result.effective.populations.cols() == 6);
    if (prev > 0.0) CHECK(result.max_deviation < prev / 3.0);
    prev = result.max_deviation;
  }

  CHECK_THROWS_AS(compare_full_effective(spec, StarParams::uniform(2, 5, 6, 0.1),
                                         StateVector::basis_state(12, 8), linspace(0, 1, 3)),
                  ValidationError);
}
