#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "ramanqc/error.hpp"
#include "ramanqc/units.hpp"

using namespace ramanqc;
using namespace ramanqc::units;

TEST_CASE("length: 309 nm in bohr") {
  // 309 / 0.0529177210903 = 5839.2537
  CHECK(to_internal({309e-9, Dimension::Length}) == doctest::Approx(5839.2537).epsilon(1e-7));
}

TEST_CASE("zero converts to zero for every dimension") {
  for (int d = 0; d <= static_cast<int>(Dimension::SpectralDensityB); ++d) {
    CHECK(to_internal({0.0, static_cast<Dimension>(d)}) == 0.0);
  }
}

TEST_CASE("atomic unit of time") {
  CHECK(from_internal(1.0, Dimension::Time).value == doctest::Approx(2.4189e-17).epsilon(1e-4));
}

TEST_CASE("Bohr magneton is one half internally") {
  CHECK(from_internal(0.5, Dimension::MagneticMoment).value ==
        doctest::Approx(9.274e-24).epsilon(1e-4));
  CHECK(to_internal({si::kBohrMagneton, Dimension::MagneticMoment}) ==
        doctest::Approx(0.5).epsilon(1e-15));
  // Consistency of the CODATA set: mu_B = E_h / (2 B_au), hbar = E_h t_au.
  CHECK(si::kHartreeEnergy / (2.0 * si::kAtomicMagneticField) ==
        doctest::Approx(si::kBohrMagneton).epsilon(1e-9));
  CHECK(si::kHartreeEnergy * si::kAtomicTime == doctest::Approx(si::kHbar).epsilon(1e-9));
}

TEST_CASE("energy in a.u. to angular frequency") {
  // 1.523e-14 * 4.1341e16 rad/s
  const double w = from_internal(1.523e-14, Dimension::AngularFrequency).value;
  CHECK(w == doctest::Approx(629.6).epsilon(1e-3));
}

TEST_CASE("1 MHz ordinary -> internal -> angular form") {
  const double internal = to_internal({1e6, Dimension::OrdinaryFrequency});
  const double w = from_internal(internal, Dimension::AngularFrequency).value;
  CHECK(std::abs(w - kTwoPi * 1e6) <= 1e-15 * kTwoPi * 1e6);
}

TEST_CASE("round trip to 1e-12 for random values of every dimension") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-40, 40);
  for (int d = 0; d <= static_cast<int>(Dimension::SpectralDensityB); ++d) {
    for (int i = 0; i < 500; ++i) {
      const double v = mant(rng) * std::pow(10.0, expo(rng));
      const auto dim = static_cast<Dimension>(d);
      const double back = from_internal(to_internal({v, dim}), dim).value;
      CHECK(std::abs(back - v) <= 1e-12 * std::abs(v));
    }
  }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(to_internal({std::numeric_limits<double>::infinity(), Dimension::Length}), Error);
  try {
    from_internal(std::nan(""), Dimension::Energy);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonFinite);
  }
  try {
    si_per_internal(static_cast<Dimension>(99));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedDimension);
  }
  CHECK(dimension_from_string("spectral_density_B") == Dimension::SpectralDensityB);
  CHECK_THROWS_AS(dimension_from_string("volume"), Error);
}
