#pragma once

// Run configuration: strict JSON in SI units, defaults from the built-in
// aluminium profile. Every leaf records where its value came from.

#include <cstdint>
#include <map>
#include <string>

#include "ramanqc/decoherence.hpp"
#include "ramanqc/lattice.hpp"
#include "ramanqc/qubit_control.hpp"

namespace ramanqc::config {

struct RunConfig {
  lattice::LatticeParams lattice;  // raman_detuning filled (optimal for `pair` unless given)
  lattice::CoupledPair pair = lattice::CoupledPair::A;
  qubit_control::FieldProfile field;
  int n_sites = 100;
  double rabi_amplitude = 0.0;  // microwave Omega_R, internal
  double pulse_phase = 0.0;
  decoherence::NoiseModel noise;
  double target_coherence = 0.0;  // internal time
  int mc_ensemble = 100;
  int mc_samples = 100;
  int grid_periods = 16;
  int grid_points = 4096;
  double escape_span = 5.0;  // in units of tau2
  std::uint64_t seed = 1;
  std::string output_dir = "out";

  // key -> "config" or "default: <reason>"
  std::map<std::string, std::string> provenance;
  // Canonical JSON of the effective configuration; the hash is taken over it.
  std::string canonical;
};

// Throws Error{Config}: parse errors carry line and column, validation
// errors name the offending field (e.g. species.mass).
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
RunConfig default_config();

// 64-bit FNV-1a of `canonical`, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

}  // namespace ramanqc::config
