#pragma once

// Single-qubit control: Zeeman resonance lines of the dressed states,
// frequency addressing in a field gradient, and rotating-wave microwave
// pulses on an isolated two-level transition.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ramanqc/lattice.hpp"

namespace ramanqc::qubit_control {

struct FieldProfile {
  double b0 = 0.0;            // field at z = 0
  double gradient = 0.0;      // field per bohr
  double site_spacing = 0.0;  // bohr

  double field_at(double z) const { return b0 + gradient * z; }
  // Change of the Zeeman frequency g mu_B dB between neighbouring sites.
  double increment(const lattice::AtomSpecies& species) const;

  // Profile with Zeeman frequency omega_z0 at the origin and the requested
  // per-site increment on a lambda/4 lattice.
  static FieldProfile for_targets(const lattice::AtomSpecies& species, double omega_z0,
                                  double site_increment);
};

// Zeeman frequency g mu_B B.
double zeeman_frequency(const lattice::AtomSpecies& species, double b);

struct ResonanceSpectrum {
  double omega_z = 0.0;             // M = -1/2 <-> +1/2
  double omega_z_plus_delta = 0.0;  // one of the outer transitions
  double omega_z_minus_delta = 0.0;
};

ResonanceSpectrum resonance_spectrum(const lattice::AtomSpecies& species, double b0,
                                     double delta);

struct SiteAddress {
  int site = 0;
  double position = 0.0;
  double omega_z = 0.0;
};

// Throws Error{InvalidArgument} for a zero gradient or n_sites < 1.
std::vector<SiteAddress> address_map(const lattice::AtomSpecies& species,
                                     const FieldProfile& profile, int n_sites);

struct Pulse {
  double carrier = 0.0;
  double rabi_amplitude = 0.0;
  double duration = 0.0;
  double phase = 0.0;

  void validate() const;
};

struct TwoLevelState {
  std::complex<double> c{1.0, 0.0};
  std::complex<double> c_prime{0.0, 0.0};

  double norm() const { return std::norm(c) + std::norm(c_prime); }
};

// Exact rotating-frame propagator for a rectangular pulse.
TwoLevelState rabi_evolve(const TwoLevelState& initial, const Pulse& pulse,
                          double transition_freq);

// Non-empty when the Rabi amplitude exceeds 1% of the transition frequency.
std::optional<std::string> rwa_warning(const Pulse& pulse, double transition_freq);

double pi_pulse(double rabi_amplitude);

// Maximum over time of the population a pulse moves on a transition
// detuned by neighbor_detuning from its carrier.
double crosstalk_bound(const Pulse& pulse, double neighbor_detuning);

}  // namespace ramanqc::qubit_control
