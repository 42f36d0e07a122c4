#include "ramanqc/gates.hpp"

#include <cmath>
#include <numbers>

#include "ramanqc/error.hpp"
#include "ramanqc/units.hpp"

namespace ramanqc::gates {

using lattice::Branch;
using lattice::CoupledPair;

double magnetic_moment(const lattice::AtomSpecies& species, const lattice::DressedState& state) {
  double mu = 0.0;
  for (int i = 0; i < 2; ++i) {
    mu += std::norm(state.amplitudes[i]) *
          (-species.lande_g * units::kBohrMagneton * 0.5 * state.twice_m[i]);
  }
  return mu;
}

QubitMoments qubit_moments(const lattice::AtomSpecies& species,
                           const lattice::DressedState& one,
                           const lattice::DressedState& zero) {
  return {magnetic_moment(species, one), magnetic_moment(species, zero)};
}

QubitMoments qubit_moments(const lattice::LatticeParams& p, Branch well) {
  lattice::LatticeParams a = p;
  a.raman_detuning = lattice::optimal_detuning(p.alpha(), CoupledPair::A);
  lattice::LatticeParams b = p;
  b.raman_detuning = lattice::optimal_detuning(p.alpha(), CoupledPair::B);
  const std::size_t idx = well == Branch::Plus ? 0 : 1;
  return qubit_moments(p.species, lattice::dressed_states(a, CoupledPair::A, 0.0)[idx],
                       lattice::dressed_states(b, CoupledPair::B, 0.0)[idx]);
}

double dipolar_field(double separation, double mu) {
  if (!(separation > 0.0)) {
    throw Error(ErrorKind::Singular, "dipolar_field: separation must be positive");
  }
  const double a2 = units::kFineStructure * units::kFineStructure;
  return 2.0 * a2 * mu / (separation * separation * separation);
}

double cnot_shift(const lattice::AtomSpecies& species, double separation) {
  if (!(separation > 0.0)) {
    throw Error(ErrorKind::Singular, "cnot_shift: separation must be positive");
  }
  const double g = species.lande_g;
  const double a2 = units::kFineStructure * units::kFineStructure;
  const double mub = units::kBohrMagneton;
  return 2.0 * g * g * a2 * mub * mub / (separation * separation * separation);
}

GateBudget cnot_budget(const lattice::LatticeParams& p,
                       const qubit_control::FieldProfile& profile, double separation) {
  p.validate();
  const auto moments = qubit_moments(p, Branch::Plus);
  GateBudget b;
  b.separation = separation;
  b.delta_b = dipolar_field(separation, moments.mu_one);
  b.delta_omega = cnot_shift(p.species, separation);
  b.tau_cnot = 1.0 / b.delta_omega;
  const double inc = profile.increment(p.species);
  b.addressing_margin = inc == 0.0 ? 0.0 : b.delta_omega / std::abs(inc);
  return b;
}

GateBudget cnot_budget(const lattice::LatticeParams& p,
                       const qubit_control::FieldProfile& profile) {
  return cnot_budget(p, profile, p.species.wavelength / 4.0);
}

ConditionalTransfer cnot_simulate(double target_transition, double delta_omega,
                                  double pulse_duration) {
  using qubit_control::Pulse;
  using qubit_control::TwoLevelState;
  const double line_one = target_transition + 0.5 * delta_omega;
  const double line_zero = target_transition - 0.5 * delta_omega;
  const Pulse pulse{line_one, std::numbers::pi / pulse_duration, pulse_duration, 0.0};
  const TwoLevelState ground{};
  return {std::norm(qubit_control::rabi_evolve(ground, pulse, line_one).c_prime),
          std::norm(qubit_control::rabi_evolve(ground, pulse, line_zero).c_prime)};
}

ConditionalTransfer cnot_simulate(const lattice::LatticeParams& p,
                                  const qubit_control::FieldProfile& profile,
                                  double pulse_duration) {
  const auto budget = cnot_budget(p, profile);
  const double target = qubit_control::zeeman_frequency(
      p.species, profile.field_at(profile.site_spacing));
  return cnot_simulate(target, budget.delta_omega, pulse_duration);
}

}  // namespace ramanqc::gates
