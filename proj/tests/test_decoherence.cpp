#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <vector>

#include "ramanqc/decoherence.hpp"
#include "ramanqc/error.hpp"
#include "ramanqc/fft.hpp"
#include "ramanqc/units.hpp"

using namespace ramanqc;
using namespace ramanqc::decoherence;
using cd = std::complex<double>;

namespace {

lattice::LatticeParams optimal_a() {
  const double alpha = units::rad_per_s(units::kTwoPi * 1e7);
  return lattice::LatticeParams::from_alpha(
      lattice::AtomSpecies::aluminum(), alpha,
      lattice::optimal_detuning(alpha, lattice::CoupledPair::A));
}

// Second-order perturbation theory for an OU field:
// p(t) = 2 mu^2 sigma^2 Re[t/a - (1 - e^{-a t})/a^2], a = 1/tau_c - i gap.
double ou_perturbative(double mu, double sigma, double tc, double gap, double t) {
  const cd a{1.0 / tc, -gap};
  const cd v = t / a - (1.0 - std::exp(-a * t)) / (a * a);
  return 2.0 * mu * mu * sigma * sigma * v.real();
}

// Averaged two-sided periodogram dt/N |sum x_n e^{-i w_k n dt}|^2.
std::vector<double> periodogram(const NoiseModel& m, double dt, std::size_t n, int seeds) {
  Fft fft(n);
  std::vector<double> acc(n, 0.0);
  std::vector<cd> buf(n);
  for (int s = 0; s < seeds; ++s) {
    const auto x = noise_realization(m, dt, n, derive_seed(99, static_cast<std::uint64_t>(s)));
    for (std::size_t i = 0; i < n; ++i) buf[i] = x[i];
    fft.forward(buf);
    for (std::size_t i = 0; i < n; ++i) acc[i] += std::norm(buf[i]) * dt / static_cast<double>(n);
  }
  for (double& a : acc) a /= seeds;
  return acc;
}

double bin_average(const std::vector<double>& p, double domega, double w) {
  const auto k = static_cast<std::size_t>(std::llround(w / domega));
  double s = 0.0;
  for (std::size_t j = k - 20; j <= k + 20; ++j) s += p[j];
  return s / 41.0;
}

}  // namespace

TEST_CASE("OU spectral density") {
  const auto m = NoiseModel::ornstein_uhlenbeck(2.0, 0.5);
  CHECK(spectral_density(m, 0.0) == doctest::Approx(2.0 * 4.0 * 0.5));
  CHECK(spectral_density(m, 2.0) == doctest::Approx(2.0 * 4.0 * 0.5 / (1.0 + 1.0)));
  CHECK(spectral_density(m, -2.0) == spectral_density(m, 2.0));
  // (1/2 pi) int S dw = sigma^2 (trapezoid over a wide range plus tail 2 sigma^2 / (pi tau w))
  double integral = 0.0;
  const double wmax = 2000.0, dw = 1e-3;
  for (double w = -wmax; w < wmax; w += dw) {
    integral += 0.5 * (spectral_density(m, w) + spectral_density(m, w + dw)) * dw;
  }
  integral += 2.0 * 2.0 * 4.0 / (0.5 * wmax);
  CHECK(integral / units::kTwoPi == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("band-limited and tabulated spectra") {
  const auto b = NoiseModel::band_limited_white(1.5, 10.0);
  CHECK(spectral_density(b, 3.0) == doctest::Approx(std::numbers::pi * 2.25 / 10.0));
  CHECK(spectral_density(b, 11.0) == 0.0);
  CHECK(b.correlation_time() == doctest::Approx(0.1));

  const auto t = NoiseModel::tabulated({{1.0, 1.0}, {10.0, 100.0}, {100.0, 1.0}});
  CHECK(spectral_density(t, 1.0) == doctest::Approx(1.0));
  CHECK(spectral_density(t, std::sqrt(10.0)) == doctest::Approx(10.0));
  CHECK(spectral_density(t, -10.0) == doctest::Approx(100.0));
  try {
    spectral_density(t, 1000.0);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutOfRange);
  }
  CHECK_THROWS_AS(NoiseModel::tabulated({{2.0, 1.0}, {1.0, 1.0}}).validate(), Error);
  CHECK_THROWS_AS(NoiseModel::ornstein_uhlenbeck(1.0, 0.0).validate(), Error);
}

TEST_CASE("coupling, gap and tau1") {
  const auto p = optimal_a();
  const double mu = coupling_mu(p, lattice::CoupledPair::A);
  CHECK(std::abs(mu) == doctest::Approx(4.0 / 3.0 * units::kBohrMagneton).epsilon(1e-14));
  CHECK(std::abs(coupling_mu(p, lattice::CoupledPair::B)) == doctest::Approx(std::abs(mu)));
  CHECK(branch_gap(p) == doctest::Approx(p.alpha() / (5.0 * std::numbers::sqrt3)));

  const auto m = NoiseModel::ornstein_uhlenbeck(1.0, 1.0);
  CHECK(tau1(0.5, m, 1.0) == doctest::Approx(1.0 / (0.25 * 1.0)));
  try {
    tau1(0.5, NoiseModel::band_limited_white(1.0, 0.5), 1.0);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Singular);
  }
  auto e = excitation_probability(1.0, 100.0);
  CHECK(e.probability == doctest::Approx(0.01));
  CHECK(e.perturbative);
  e = excitation_probability(50.0, 100.0);
  CHECK_FALSE(e.perturbative);
  CHECK(excitation_probability(500.0, 100.0).probability == 1.0);
}

TEST_CASE("shielding threshold for a 10 s coherence") {
  const auto p = optimal_a();
  const double mu = coupling_mu(p, lattice::CoupledPair::A);
  const auto s = shielding_requirement(mu, branch_gap(p), units::seconds(10.0));
  // 1 / (|mu| sqrt(T)) with mu = (4/3) mu_B, in T/sqrt(Hz)
  CHECK(amplitude_to_si(s.amplitude) == doctest::Approx(2.69693e-12).epsilon(1e-5));
  CHECK(std::abs(amplitude_to_si(s.amplitude) - 3e-12) <= 0.2 * 3e-12);
  // White noise at exactly that level gives tau1 = 10 s.
  const double S = s.amplitude * s.amplitude;
  CHECK(units::to_seconds(1.0 / (mu * mu * S)) == doctest::Approx(10.0).epsilon(1e-12));
  // (3e-12 T)^2/Hz gives 8.08 s
  const double amp = 3e-12 / amplitude_to_si(1.0);
  CHECK(units::to_seconds(1.0 / (mu * mu * amp * amp)) == doctest::Approx(8.0816).epsilon(1e-4));
}

TEST_CASE("OU realizations: stationarity and correlation") {
  const double tc = 1.0;
  const double sigma = 1.3;
  const auto m = NoiseModel::ornstein_uhlenbeck(sigma, tc);
  const double dt = tc / 20;
  const auto x = noise_realization(m, dt, 2'000'000, 5);
  double mean = 0.0, var = 0.0, lag = 0.0;
  const std::size_t k = 20;  // one tau_c
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    var += (x[i] - mean) * (x[i] - mean);
    if (i + k < x.size()) lag += (x[i] - mean) * (x[i + k] - mean);
  }
  var /= static_cast<double>(x.size());
  lag /= static_cast<double>(x.size() - k);
  CHECK(std::abs(mean) < 0.02 * sigma);
  CHECK(var == doctest::Approx(sigma * sigma).epsilon(0.02));
  CHECK(lag / var == doctest::Approx(std::exp(-1.0)).epsilon(0.03));
}

TEST_CASE("periodogram matches the OU spectral density") {
  const double tc = 1.0;
  const auto m = NoiseModel::ornstein_uhlenbeck(1.0, tc);
  const double dt = tc / 50;
  const std::size_t n = 1u << 14;
  const auto p = periodogram(m, dt, n, 400);
  const double domega = units::kTwoPi / (dt * static_cast<double>(n));
  for (double w : {0.5, 1.0, 3.0, 10.0}) {
    const double est = bin_average(p, domega, w / tc);
    CHECK(std::abs(est / spectral_density(m, w / tc) - 1.0) < 0.05);
  }
}

TEST_CASE("periodogram of band-limited noise") {
  const double cutoff = 5.0;
  const auto m = NoiseModel::band_limited_white(1.0, cutoff);
  const double dt = m.correlation_time() / 20;
  const std::size_t n = 1u << 14;
  const auto p = periodogram(m, dt, n, 200);
  const double domega = units::kTwoPi / (dt * static_cast<double>(n));
  for (double w : {1.0, 2.5, 4.0}) {
    CHECK(std::abs(bin_average(p, domega, w) / spectral_density(m, w) - 1.0) < 0.05);
  }
  CHECK(bin_average(p, domega, 3 * cutoff) < 1e-6 * spectral_density(m, 1.0));
  const auto x = noise_realization(m, dt, 1u << 16, 1);
  const double var = std::inner_product(x.begin(), x.end(), x.begin(), 0.0) / x.size();
  CHECK(var == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("realizations: determinism and guards") {
  const auto m = NoiseModel::ornstein_uhlenbeck(1.0, 1.0);
  CHECK(noise_realization(m, 0.05, 1000, 42) == noise_realization(m, 0.05, 1000, 42));
  CHECK(noise_realization(m, 0.05, 1000, 42) != noise_realization(m, 0.05, 1000, 43));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  for (double v : noise_realization(NoiseModel::ornstein_uhlenbeck(0.0, 1.0), 0.05, 100, 3)) {
    CHECK(v == 0.0);
  }
  try {
    noise_realization(m, 0.2, 10, 1);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnderResolved);
  }
  CHECK_THROWS_AS(noise_realization(NoiseModel::tabulated({{1.0, 1.0}, {2.0, 1.0}}), 0.01, 10, 1),
                  Error);
}

TEST_CASE("Monte Carlo: zero noise gives no flips") {
  const auto c = monte_carlo_decoherence(1.0, 1.0, NoiseModel::ornstein_uhlenbeck(0.0, 1.0), 20.0,
                                         4, 7, {.n_samples = 10});
  for (double v : c.mean) CHECK(v == 0.0);
}

TEST_CASE("Monte Carlo follows perturbation theory in three regimes") {
  const double gap = 1.0, mu = 1.0;
  for (double x : {0.1, 1.0, 10.0}) {
    const double tc = x / gap;
    const double tf = 400.0 * std::max(tc, 1.0 / gap);
    const double S_unit = 2.0 * tc / (1.0 + x * x);
    const double sigma = std::sqrt(0.01 / (mu * mu * S_unit * tf));
    const auto m = NoiseModel::ornstein_uhlenbeck(sigma, tc);
    const auto c = monte_carlo_decoherence(gap, mu, m, tf, 400, 2024, {.n_samples = 40});
    int outliers = 0;
    for (std::size_t j = 1; j < c.time.size(); ++j) {
      const double ref = ou_perturbative(mu, sigma, tc, gap, c.time[j]);
      if (std::abs(c.mean[j] - ref) > 4.0 * c.std_error[j] + 0.02 * ref) ++outliers;
    }
    CHECK(outliers == 0);
    const double rate = fitted_rate(c, tf / 4);
    const double analytic = 1.0 / tau1(mu, m, gap);
    CHECK(std::abs(rate / analytic - 1.0) < 0.15);
  }
}

TEST_CASE("Monte Carlo is independent of thread count") {
  const auto m = NoiseModel::ornstein_uhlenbeck(0.01, 1.0);
  const auto a = monte_carlo_decoherence(1.0, 1.0, m, 20.0, 8, 5, {.n_samples = 10, .threads = 1});
  const auto b = monte_carlo_decoherence(1.0, 1.0, m, 20.0, 8, 5, {.n_samples = 10, .threads = 3});
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("suppression at large gap") {
  // Same field noise, gap far beyond 1/tau_c: S(gap) falls as 1/gap^2.
  const auto m = NoiseModel::ornstein_uhlenbeck(1.0, 1.0);
  CHECK(tau1(1.0, m, 100.0) / tau1(1.0, m, 10.0) == doctest::Approx(10001.0 / 101.0));
}

TEST_CASE("Monte Carlo guards") {
  const auto m = NoiseModel::ornstein_uhlenbeck(1.0, 1.0);
  CHECK_THROWS_AS(monte_carlo_decoherence(1.0, 1.0, m, 5.0, 4, 1), Error);    // t < 10 tau_c
  CHECK_THROWS_AS(monte_carlo_decoherence(1.0, 1.0, m, 100.0, 4, 1), Error);  // p > 0.1
  try {
    monte_carlo_decoherence(1.0, 1e-3, m, 100.0, 4, 1, {.max_steps = 10});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StepBudget);
  }
}

TEST_CASE("report for the default profile") {
  const auto p = optimal_a();
  const auto r = decoherence_report(p, NoiseModel::ornstein_uhlenbeck(units::tesla(1e-9), units::seconds(1e-3)),
                                    units::seconds(10.0));
  CHECK(amplitude_to_si(r.shielding_threshold) == doctest::Approx(2.69693e-12).epsilon(1e-5));
  CHECK(units::to_seconds(r.tau2) == doctest::Approx(1.88167e-7).epsilon(1e-5));
  CHECK(r.tau1 > 0.0);
}
