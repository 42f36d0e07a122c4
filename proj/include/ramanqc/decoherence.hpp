#pragma once

// Magnetic-noise induced flips between the two dressed branches of a pair.
//
// Spectral densities are two-sided and even, normalized so that the
// autocorrelation is C(tau) = (1/2 pi) int S(w) exp(i w tau) dw; hence
// (1/2 pi) int S dw = sigma^2 and the perturbative flip probability grows
// as p(t) = mu^2 S(gap) t.

#include <cstdint>
#include <utility>
#include <vector>

#include "ramanqc/lattice.hpp"

namespace ramanqc::decoherence {

enum class NoiseKind { OrnsteinUhlenbeck, BandLimitedWhite, Tabulated };

struct NoiseModel {
  NoiseKind kind = NoiseKind::OrnsteinUhlenbeck;
  double sigma = 0.0;   // rms field
  double tau_c = 0.0;   // correlation time (OU)
  double cutoff = 0.0;  // angular cutoff (band-limited)
  std::vector<std::pair<double, double>> table;  // (omega, S), omega ascending, S > 0

  void validate() const;
  // Time scale the sampling step must resolve: tau_c for OU, 1/cutoff for
  // band-limited white noise.
  double correlation_time() const;

  static NoiseModel ornstein_uhlenbeck(double sigma, double tau_c);
  static NoiseModel band_limited_white(double sigma, double cutoff);
  static NoiseModel tabulated(std::vector<std::pair<double, double>> table);
};

// Tabulated models interpolate log-log in |omega| and throw
// Error{OutOfRange} outside the table.
double spectral_density(const NoiseModel& model, double omega);

// <phi_-| mu_z |phi_+> for the two branch states of one pair.
double coupling_mu(const lattice::AtomSpecies& species, const lattice::DressedState& plus,
                   const lattice::DressedState& minus);
double coupling_mu(const lattice::LatticeParams& p, lattice::CoupledPair pair);

// U_max - U_min = alpha / (5 sqrt 3).
double branch_gap(const lattice::LatticeParams& p);

// 1 / (mu^2 S(gap)). Throws Error{Singular} when S(gap) == 0.
double tau1(double mu, const NoiseModel& model, double gap);

struct ExcitationProbability {
  double probability = 0.0;  // t / tau1, clamped to 1
  bool perturbative = true;  // false once p > 0.1
};
ExcitationProbability excitation_probability(double t, double tau1);

// Deterministic realization sampled every dt. OU uses the exact
// exponential update; band-limited noise is filtered white noise over a
// periodic record. Throws Error{UnderResolved} if dt > correlation_time/10
// and Error{InvalidArgument} for tabulated models.
std::vector<double> noise_realization(const NoiseModel& model, double dt, std::size_t n_samples,
                                      std::uint64_t seed);

// Seed of realization `index` derived from a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

struct MonteCarloOptions {
  int n_samples = 100;          // curve points after t = 0
  unsigned threads = 0;         // 0 -> hardware concurrency
  long long max_steps = 50'000'000;  // per realization
};

struct MonteCarloCurve {
  std::vector<double> time;
  std::vector<double> mean;       // ensemble average of |c_-|^2
  std::vector<double> std_error;  // standard error of the mean
  double step = 0.0;
  long long steps = 0;
};

// Integrates i d/dt (c_+, c_-) = [[0, mu B], [mu B, gap]] (c_+, c_-) from
// (1, 0) with classical RK4 for every realization. The result does not
// depend on the number of threads.
MonteCarloCurve monte_carlo_decoherence(double gap, double mu, const NoiseModel& model,
                                        double t_final, int n_ensemble, std::uint64_t seed,
                                        const MonteCarloOptions& options = {});
MonteCarloCurve monte_carlo_decoherence(const lattice::LatticeParams& p, const NoiseModel& model,
                                        double t_final, int n_ensemble, std::uint64_t seed,
                                        const MonteCarloOptions& options = {});

// Least-squares slope through the origin over samples with t >= t_from.
double fitted_rate(const MonteCarloCurve& curve, double t_from);

struct ShieldingThreshold {
  double amplitude = 0.0;  // sqrt(S) allowed at the gap frequency (internal)
  double frequency = 0.0;  // where it applies (the gap)
};
// sqrt(S_max) = 1 / (mu sqrt(target_coherence)).
ShieldingThreshold shielding_requirement(double mu, double gap, double target_coherence);
// Internal sqrt(S) -> T / sqrt(Hz).
double amplitude_to_si(double amplitude);

struct DecoherenceReport {
  double coupling_mu = 0.0;
  double gap = 0.0;
  double tau1 = 0.0;
  double tau2 = 0.0;
  double shielding_threshold = 0.0;  // internal sqrt(S)
};

DecoherenceReport decoherence_report(const lattice::LatticeParams& p, const NoiseModel& model,
                                     double target_coherence);

}  // namespace ramanqc::decoherence
