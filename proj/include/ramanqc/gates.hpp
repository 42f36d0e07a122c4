#pragma once

// Two-qubit CNOT physics from the magnetic dipole-dipole interaction of
// neighbouring dressed-state qubits.

#include "ramanqc/lattice.hpp"
#include "ramanqc/qubit_control.hpp"

namespace ramanqc::gates {

struct QubitMoments {
  double mu_one = 0.0;   // <1| mu_z |1>
  double mu_zero = 0.0;  // <0| mu_z |0>
};

// <phi| mu_z |phi> with mu_z |M> = -g mu_B M |M>.
double magnetic_moment(const lattice::AtomSpecies& species, const lattice::DressedState& state);

// |1> and |0> are the Plus (or Minus) states of PairA and PairB sharing a well.
QubitMoments qubit_moments(const lattice::AtomSpecies& species,
                           const lattice::DressedState& one,
                           const lattice::DressedState& zero);
QubitMoments qubit_moments(const lattice::LatticeParams& p, lattice::Branch well);

// On-axis field 2 alpha_fs^2 mu / R^3 of a z-oriented dipole.
// Throws Error{Singular} for R <= 0.
double dipolar_field(double separation, double mu);

// Closed-form conditional shift 2 g^2 alpha_fs^2 mu_B^2 / R^3
// (32/9 alpha_fs^2 mu_B^2 / R^3 for g = 4/3).
double cnot_shift(const lattice::AtomSpecies& species, double separation);

struct GateBudget {
  double separation = 0.0;
  double delta_b = 0.0;      // field of a |1> control at the target
  double delta_omega = 0.0;  // target line splitting between control states
  double tau_cnot = 0.0;     // 1 / delta_omega
  double addressing_margin = 0.0;  // delta_omega / per-site Zeeman increment
};

// Budget on the lambda/4 lattice.
GateBudget cnot_budget(const lattice::LatticeParams& p, const qubit_control::FieldProfile& profile);
GateBudget cnot_budget(const lattice::LatticeParams& p, const qubit_control::FieldProfile& profile,
                       double separation);

struct ConditionalTransfer {
  double flip_given_one = 0.0;
  double flip_given_zero = 0.0;
};

// Resonant pi pulse on the control=1 line of the target; the control=0 line
// sits delta_omega below it.
ConditionalTransfer cnot_simulate(const lattice::LatticeParams& p,
                                  const qubit_control::FieldProfile& profile,
                                  double pulse_duration);
// Same with an explicit splitting (used for sweeps and the no-coupling limit).
ConditionalTransfer cnot_simulate(double target_transition, double delta_omega,
                                  double pulse_duration);

}  // namespace ramanqc::gates
