#include "ramanqc/decoherence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <thread>

#include "ramanqc/error.hpp"
#include "ramanqc/fft.hpp"
#include "ramanqc/gates.hpp"
#include "ramanqc/motional.hpp"
#include "ramanqc/units.hpp"

namespace ramanqc::decoherence {

namespace {

using cplx = std::complex<double>;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

// Exact discretization of an OU process with stationary start.
class OuStream {
 public:
  OuStream(const NoiseModel& model, double dt, std::uint64_t seed)
      : rng_(seed),
        decay_(std::exp(-dt / model.tau_c)),
        kick_(model.sigma * std::sqrt(1.0 - decay_ * decay_)),
        value_(model.sigma * gauss_(rng_)) {}

  double current() const { return value_; }
  double next() {
    value_ = decay_ * value_ + kick_ * gauss_(rng_);
    return value_;
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
  double decay_;
  double kick_;
  double value_;
};

std::vector<double> band_limited_realization(const NoiseModel& model, double dt, std::size_t n,
                                             std::uint64_t seed) {
  const std::size_t m = next_pow2(std::max<std::size_t>(n, 2));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> x(m);
  for (auto& v : x) v = gauss(rng);

  Fft fft(m);
  fft.forward(x);
  const double dw = units::kTwoPi / (static_cast<double>(m) * dt);
  for (std::size_t j = 0; j < m; ++j) {
    const double k = j < m / 2 ? double(j) : double(j) - double(m);
    x[j] *= std::sqrt(spectral_density(model, k * dw) / dt);
  }
  fft.inverse(x);
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = x[j].real();
  return out;
}

void require_realizable(const NoiseModel& model, double dt) {
  model.validate();
  if (model.kind == NoiseKind::Tabulated) {
    throw Error(ErrorKind::InvalidArgument, "noise: tabulated spectra cannot be synthesized");
  }
  if (!(dt > 0.0)) throw Error(ErrorKind::InvalidArgument, "noise: dt must be positive");
  if (dt > model.correlation_time() / 10.0) {
    throw Error(ErrorKind::UnderResolved,
                "noise: dt exceeds a tenth of the correlation time");
  }
}

}  // namespace

void NoiseModel::validate() const {
  if (!(sigma >= 0.0) && kind != NoiseKind::Tabulated) {
    throw Error(ErrorKind::InvalidArgument, "noise.sigma must be >= 0");
  }
  switch (kind) {
    case NoiseKind::OrnsteinUhlenbeck:
      if (!(tau_c > 0.0)) throw Error(ErrorKind::InvalidArgument, "noise.tau_c must be > 0");
      break;
    case NoiseKind::BandLimitedWhite:
      if (!(cutoff > 0.0)) throw Error(ErrorKind::InvalidArgument, "noise.cutoff must be > 0");
      break;
    case NoiseKind::Tabulated:
      if (table.size() < 2) {
        throw Error(ErrorKind::InvalidArgument, "noise.table needs at least two points");
      }
      for (std::size_t i = 0; i < table.size(); ++i) {
        if (!(table[i].first > 0.0) || !(table[i].second > 0.0)) {
          throw Error(ErrorKind::InvalidArgument, "noise.table entries must be positive");
        }
        if (i > 0 && !(table[i].first > table[i - 1].first)) {
          throw Error(ErrorKind::InvalidArgument, "noise.table frequencies must increase");
        }
      }
      break;
  }
}

double NoiseModel::correlation_time() const {
  switch (kind) {
    case NoiseKind::OrnsteinUhlenbeck: return tau_c;
    case NoiseKind::BandLimitedWhite: return 1.0 / cutoff;
    case NoiseKind::Tabulated: break;
  }
  return 0.0;
}

NoiseModel NoiseModel::ornstein_uhlenbeck(double sigma, double tau_c) {
  NoiseModel m;
  m.kind = NoiseKind::OrnsteinUhlenbeck;
  m.sigma = sigma;
  m.tau_c = tau_c;
  return m;
}

NoiseModel NoiseModel::band_limited_white(double sigma, double cutoff) {
  NoiseModel m;
  m.kind = NoiseKind::BandLimitedWhite;
  m.sigma = sigma;
  m.cutoff = cutoff;
  return m;
}

NoiseModel NoiseModel::tabulated(std::vector<std::pair<double, double>> table) {
  NoiseModel m;
  m.kind = NoiseKind::Tabulated;
  m.table = std::move(table);
  return m;
}

double spectral_density(const NoiseModel& model, double omega) {
  const double w = std::abs(omega);
  switch (model.kind) {
    case NoiseKind::OrnsteinUhlenbeck: {
      const double x = w * model.tau_c;
      return 2.0 * model.sigma * model.sigma * model.tau_c / (1.0 + x * x);
    }
    case NoiseKind::BandLimitedWhite:
      // Flat on [-cutoff, cutoff] with (1/2 pi) * 2 cutoff * S0 = sigma^2.
      return w <= model.cutoff ? std::numbers::pi * model.sigma * model.sigma / model.cutoff
                               : 0.0;
    case NoiseKind::Tabulated: {
      const auto& t = model.table;
      if (t.empty() || w < t.front().first || w > t.back().first) {
        throw Error(ErrorKind::OutOfRange, "spectral_density: frequency outside the table");
      }
      auto hi = std::lower_bound(t.begin(), t.end(), w,
                                 [](const auto& e, double v) { return e.first < v; });
      if (hi->first == w) return hi->second;
      auto lo = hi - 1;
      const double f = std::log(w / lo->first) / std::log(hi->first / lo->first);
      return std::exp(std::log(lo->second) + f * std::log(hi->second / lo->second));
    }
  }
  return 0.0;
}

double coupling_mu(const lattice::AtomSpecies& species, const lattice::DressedState& plus,
                   const lattice::DressedState& minus) {
  cplx s{0.0, 0.0};
  for (int i = 0; i < 2; ++i) {
    const double mu_m = -species.lande_g * units::kBohrMagneton * 0.5 * plus.twice_m[i];
    s += std::conj(minus.amplitudes[i]) * mu_m * plus.amplitudes[i];
  }
  return s.real();
}

double coupling_mu(const lattice::LatticeParams& p, lattice::CoupledPair pair) {
  lattice::LatticeParams q = p;
  q.raman_detuning = lattice::optimal_detuning(p.alpha(), pair);
  const auto states = lattice::dressed_states(q, pair, 0.0);
  return coupling_mu(p.species, states[0], states[1]);
}

double branch_gap(const lattice::LatticeParams& p) {
  return std::abs(p.alpha()) / (5.0 * std::numbers::sqrt3);
}

double tau1(double mu, const NoiseModel& model, double gap) {
  const double s = spectral_density(model, gap);
  const double rate = mu * mu * s;
  if (!(rate > 0.0)) {
    throw Error(ErrorKind::Singular, "tau1: mu^2 S(gap) is zero, tau1 is infinite");
  }
  return 1.0 / rate;
}

ExcitationProbability excitation_probability(double t, double tau1) {
  if (!(t >= 0.0) || !(tau1 > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "excitation_probability: need t >= 0, tau1 > 0");
  }
  const double p = t / tau1;
  return {std::min(p, 1.0), p <= 0.1};
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ (index * 0xd1b54a32d192ed03ULL));
}

std::vector<double> noise_realization(const NoiseModel& model, double dt, std::size_t n_samples,
                                      std::uint64_t seed) {
  require_realizable(model, dt);
  if (model.kind == NoiseKind::BandLimitedWhite) {
    return band_limited_realization(model, dt, n_samples, seed);
  }
  std::vector<double> out;
  out.reserve(n_samples);
  if (n_samples == 0) return out;
  OuStream ou(model, dt, seed);
  out.push_back(ou.current());
  while (out.size() < n_samples) out.push_back(ou.next());
  return out;
}

MonteCarloCurve monte_carlo_decoherence(double gap, double mu, const NoiseModel& model,
                                        double t_final, int n_ensemble, std::uint64_t seed,
                                        const MonteCarloOptions& options) {
  model.validate();
  if (model.kind == NoiseKind::Tabulated) {
    throw Error(ErrorKind::InvalidArgument, "monte_carlo: tabulated spectra cannot be sampled");
  }
  if (n_ensemble < 2 || options.n_samples < 1 || !(t_final > 0.0)) {
    throw Error(ErrorKind::InvalidArgument,
                "monte_carlo: need n_ensemble >= 2, n_samples >= 1, t_final > 0");
  }
  const double tc = model.correlation_time();
  if (t_final < 10.0 * tc) {
    throw Error(ErrorKind::InvalidArgument, "monte_carlo: t_final must be >= 10 tau_c");
  }
  const double expected = mu * mu * spectral_density(model, gap) * t_final;
  if (expected > 0.1) {
    throw Error(ErrorKind::InvalidArgument,
                "monte_carlo: expected p(t_final) = " + std::to_string(expected) +
                    " leaves the perturbative regime (> 0.1)");
  }

  double h_max = tc / 20.0;
  if (gap > 0.0) h_max = std::min(h_max, 0.1 / gap);
  const double sample_dt = t_final / options.n_samples;
  const long long substeps = static_cast<long long>(std::ceil(sample_dt / h_max));
  const long long n_steps = substeps * options.n_samples;
  if (n_steps > options.max_steps) {
    throw Error(ErrorKind::StepBudget,
                "monte_carlo: " + std::to_string(n_steps) + " RK4 steps exceed the budget of " +
                    std::to_string(options.max_steps));
  }
  const double h = t_final / static_cast<double>(n_steps);
  const std::size_t n_points = static_cast<std::size_t>(options.n_samples) + 1;

  std::vector<std::vector<double>> results(static_cast<std::size_t>(n_ensemble));

  auto run_one = [&](int r) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(r));
    // Field samples at half-step spacing: B_j = B(j h / 2).
    std::vector<double> table;
    std::optional<OuStream> ou;
    if (model.kind == NoiseKind::BandLimitedWhite) {
      table = band_limited_realization(model, 0.5 * h, static_cast<std::size_t>(2 * n_steps + 1), s);
    } else {
      ou.emplace(model, 0.5 * h, s);
    }
    std::size_t cursor = 0;
    auto next_field = [&]() {
      return ou ? ou->next() : table[++cursor];
    };
    double b0 = ou ? ou->current() : table[0];

    cplx cp{1.0, 0.0};
    cplx cm{0.0, 0.0};
    const cplx mi{0.0, -1.0};
    auto deriv = [&](double b, cplx p, cplx m, cplx& dp, cplx& dm) {
      dp = mi * (mu * b * m);
      dm = mi * (mu * b * p + gap * m);
    };

    std::vector<double> out;
    out.reserve(n_points);
    out.push_back(0.0);
    for (long long step = 1; step <= n_steps; ++step) {
      const double bh = next_field();
      const double b1 = next_field();
      cplx k1p, k1m, k2p, k2m, k3p, k3m, k4p, k4m;
      deriv(b0, cp, cm, k1p, k1m);
      deriv(bh, cp + 0.5 * h * k1p, cm + 0.5 * h * k1m, k2p, k2m);
      deriv(bh, cp + 0.5 * h * k2p, cm + 0.5 * h * k2m, k3p, k3m);
      deriv(b1, cp + h * k3p, cm + h * k3m, k4p, k4m);
      cp += (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
      cm += (h / 6.0) * (k1m + 2.0 * k2m + 2.0 * k3m + k4m);
      b0 = b1;
      if (step % substeps == 0) out.push_back(std::norm(cm));
    }
    results[static_cast<std::size_t>(r)] = std::move(out);
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp(threads, 1u, static_cast<unsigned>(n_ensemble));
  if (threads == 1) {
    for (int r = 0; r < n_ensemble; ++r) run_one(r);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (int r = static_cast<int>(t); r < n_ensemble; r += static_cast<int>(threads)) {
          run_one(r);
        }
      });
    }
  }

  MonteCarloCurve curve;
  curve.step = h;
  curve.steps = n_steps;
  curve.time.resize(n_points);
  curve.mean.assign(n_points, 0.0);
  curve.std_error.assign(n_points, 0.0);
  const double n = static_cast<double>(n_ensemble);
  for (std::size_t j = 0; j < n_points; ++j) {
    curve.time[j] = sample_dt * static_cast<double>(j);
    double sum = 0.0;
    for (const auto& r : results) sum += r[j];
    const double mean = sum / n;
    double var = 0.0;
    for (const auto& r : results) var += (r[j] - mean) * (r[j] - mean);
    curve.mean[j] = mean;
    curve.std_error[j] = std::sqrt(var / (n - 1.0) / n);
  }
  return curve;
}

MonteCarloCurve monte_carlo_decoherence(const lattice::LatticeParams& p, const NoiseModel& model,
                                        double t_final, int n_ensemble, std::uint64_t seed,
                                        const MonteCarloOptions& options) {
  return monte_carlo_decoherence(branch_gap(p), coupling_mu(p, lattice::CoupledPair::A), model,
                                 t_final, n_ensemble, seed, options);
}

double fitted_rate(const MonteCarloCurve& curve, double t_from) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < curve.time.size(); ++j) {
    if (curve.time[j] < t_from) continue;
    num += curve.time[j] * curve.mean[j];
    den += curve.time[j] * curve.time[j];
  }
  if (den == 0.0) throw Error(ErrorKind::InvalidArgument, "fitted_rate: no samples in range");
  return num / den;
}

ShieldingThreshold shielding_requirement(double mu, double gap, double target_coherence) {
  if (!(target_coherence > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "shielding_requirement: target must be positive");
  }
  if (mu == 0.0) throw Error(ErrorKind::Singular, "shielding_requirement: zero coupling");
  return {1.0 / (std::abs(mu) * std::sqrt(target_coherence)), gap};
}

double amplitude_to_si(double amplitude) {
  return std::sqrt(units::from_internal(amplitude * amplitude,
                                        units::Dimension::SpectralDensityB).value);
}

DecoherenceReport decoherence_report(const lattice::LatticeParams& p, const NoiseModel& model,
                                     double target_coherence) {
  DecoherenceReport r;
  r.coupling_mu = coupling_mu(p, lattice::CoupledPair::A);
  r.gap = branch_gap(p);
  r.tau1 = tau1(r.coupling_mu, model, r.gap);
  r.tau2 = motional::tau2(p);
  r.shielding_threshold = shielding_requirement(r.coupling_mu, r.gap, target_coherence).amplitude;
  return r;
}

}  // namespace ramanqc::decoherence
