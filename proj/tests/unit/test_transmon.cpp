#include "doctest.h"

#include <cmath>
#include <numbers>

#include "cavlat/errors.hpp"
#include "cavlat/star_transform.hpp"
#include "cavlat/transmon.hpp"
#include "oracles.hpp"

using namespace cavlat;

namespace {

const TransmonParams kDevice{50.0, 0.25, 0.0, 1.0};
constexpr double kOmegaR = 9.0;
constexpr double kF = 0.1;
constexpr int kN = 3;

double resonance_x() { return std::acos(kOmegaR * kOmegaR / (8 * 50.0 * 0.25)) / std::numbers::pi; }

}  // namespace

TEST_CASE("transmon frequency and Josephson energy") {
  CHECK(qubit_frequency(kDevice) == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(josephson_energy(kDevice.with_flux(0.5)) < 1e-14);
  CHECK(qubit_frequency(kDevice.with_flux(1.0 / 3.0)) ==
        doctest::Approx(std::sqrt(8 * 25.0 * 0.25)).epsilon(1e-14));
  const TransmonParams scaled{50.0, 0.25, 0.25 * 2.5, 2.5};
  CHECK(qubit_frequency(scaled) == doctest::Approx(qubit_frequency(kDevice.with_flux(0.25))));
  CHECK(std::abs(qubit_frequency(kDevice.with_flux(resonance_x())) - kOmegaR) < 1e-12);

  CHECK_THROWS_AS(josephson_energy(kDevice.with_flux(0.6)), ValidationError);
  CHECK_THROWS_AS(josephson_energy(kDevice.with_flux(-0.1)), ValidationError);
  CHECK_THROWS_AS(qubit_frequency(TransmonParams{-1.0, 0.25, 0.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(qubit_frequency(TransmonParams{1.0, 0.0, 0.0, 1.0}), ValidationError);
}

TEST_CASE("coupling at flux follows the effective-coupling formula") {
  for (double x : {0.0, 0.1, 0.2, 0.3, 0.45}) {
    const double wa = std::sqrt(8 * 50.0 * std::abs(std::cos(std::numbers::pi * x)) * 0.25);
    CHECK(std::abs(coupling_at_flux(kDevice.with_flux(x), kN, kF, kOmegaR) -
                   oracle::j_literal(kN, kF, wa - kOmegaR)) < 1e-14);
  }
}

TEST_CASE("coupling decreases with flux on both branches") {
  const double xr = resonance_x();
  double prev = coupling_at_flux(kDevice, kN, kF, kOmegaR);
  for (int i = 1; i <= 200; ++i) {
    const double x = 0.5 * i / 200;
    const double j = coupling_at_flux(kDevice.with_flux(x), kN, kF, kOmegaR);
    if (x < xr || (x > xr && 0.5 * (i - 1) / 200 > xr)) CHECK(j < prev);
    prev = j;
  }
}

TEST_CASE("flux_for_coupling inverts the forward map") {
  const double xr = resonance_x();
  int checked = 0;
  for (int i = 0; i < 50; ++i) {
    const double x = 0.05 + 0.44 * i / 49;
    if (std::abs(x - xr) < 1e-3) continue;
    const double target = coupling_at_flux(kDevice.with_flux(x), kN, kF, kOmegaR);
    const double flux = flux_for_coupling(target, kN, kF, kOmegaR, kDevice);
    CHECK(std::abs(flux - x) < 1e-9);
    CHECK(std::abs(coupling_at_flux(kDevice.with_flux(flux), kN, kF, kOmegaR) - target) <
          1e-10 * std::abs(target));
    ++checked;
  }
  CHECK(checked >= 49);

  const TransmonParams scaled{50.0, 0.25, 0.0, 2.0};
  const double target = coupling_at_flux(kDevice.with_flux(0.2), kN, kF, kOmegaR);
  CHECK(std::abs(flux_for_coupling(target, kN, kF, kOmegaR, scaled) - 0.4) < 2e-9);
}

TEST_CASE("flux_for_coupling: endpoints and bound |J| <= f / sqrt(n)") {
  const double j0 = coupling_at_flux(kDevice, kN, kF, kOmegaR);
  CHECK(flux_for_coupling(j0, kN, kF, kOmegaR, kDevice) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(flux_for_coupling(0.0, kN, 0.0, kOmegaR, kDevice) == 0.0);

  const double bound = kF / std::sqrt(3.0);
  for (int i = 0; i <= 100; ++i) {
    const double x = 0.5 * i / 100;
    CHECK(std::abs(coupling_at_flux(kDevice.with_flux(x), kN, kF, kOmegaR)) <= bound * (1 + 1e-15));
  }
}

TEST_CASE("flux_for_coupling: unreachable targets raise RangeError with the interval") {
  try {
    (void)flux_for_coupling(-0.08, kN, kF, kOmegaR, kDevice);
    FAIL("expected RangeError");
  } catch (const RangeError& e) {
    CHECK(e.lower() == doctest::Approx(-kF / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(e.upper() == doctest::Approx(oracle::j_literal(kN, kF, 1.0)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(flux_for_coupling(0.08, kN, kF, kOmegaR, kDevice), RangeError);
  CHECK_THROWS_AS(flux_for_coupling(0.0, kN, kF, kOmegaR, kDevice), RangeError);
  CHECK_THROWS_AS(flux_for_coupling(0.01, kN, 0.0, kOmegaR, kDevice), RangeError);
  // Between J(flux = 0) and zero on the negative branch.
  CHECK_THROWS_AS(flux_for_coupling(0.5 * oracle::j_literal(kN, kF, 1.0), kN, kF, kOmegaR, kDevice),
                  RangeError);
  CHECK_THROWS_AS(flux_for_coupling(-0.01, 0, kF, kOmegaR, kDevice), ValidationError);
  CHECK_THROWS_AS(flux_for_coupling(-0.01, kN, -kF, kOmegaR, kDevice), ValidationError);

  const auto neg = achievable_coupling(kN, kF, kOmegaR, kDevice, true);
  const auto pos = achievable_coupling(kN, kF, kOmegaR, kDevice, false);
  CHECK_FALSE(neg.empty);
  CHECK_FALSE(pos.empty);
  CHECK(neg.upper < 0.0);
  CHECK(pos.lower > 0.0);
}
