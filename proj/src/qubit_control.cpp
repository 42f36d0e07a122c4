#include "ramanqc/qubit_control.hpp"

#include <cmath>
#include <numbers>

#include "ramanqc/error.hpp"
#include "ramanqc/units.hpp"

namespace ramanqc::qubit_control {

double zeeman_frequency(const lattice::AtomSpecies& species, double b) {
  return species.lande_g * units::kBohrMagneton * b;
}

double FieldProfile::increment(const lattice::AtomSpecies& species) const {
  return zeeman_frequency(species, gradient * site_spacing);
}

FieldProfile FieldProfile::for_targets(const lattice::AtomSpecies& species, double omega_z0,
                                       double site_increment) {
  const double per_field = species.lande_g * units::kBohrMagneton;
  if (per_field == 0.0) {
    throw Error(ErrorKind::InvalidArgument, "field: Lande factor is zero");
  }
  FieldProfile f;
  f.site_spacing = species.wavelength / 4.0;
  f.b0 = omega_z0 / per_field;
  f.gradient = site_increment / (per_field * f.site_spacing);
  return f;
}

ResonanceSpectrum resonance_spectrum(const lattice::AtomSpecies& species, double b0,
                                     double delta) {
  if (!(b0 > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "resonance_spectrum: b0 must be positive");
  }
  const double wz = zeeman_frequency(species, b0);
  return {wz, wz + delta, wz - delta};
}

std::vector<SiteAddress> address_map(const lattice::AtomSpecies& species,
                                     const FieldProfile& profile, int n_sites) {
  if (n_sites < 1) throw Error(ErrorKind::InvalidArgument, "address_map: n_sites < 1");
  if (profile.gradient == 0.0 || profile.increment(species) == 0.0) {
    throw Error(ErrorKind::InvalidArgument,
                "address_map: zero field gradient, sites cannot be resolved");
  }
  std::vector<SiteAddress> sites;
  sites.reserve(static_cast<std::size_t>(n_sites));
  for (int n = 0; n < n_sites; ++n) {
    const double z = n * profile.site_spacing;
    sites.push_back({n, z, zeeman_frequency(species, profile.field_at(z))});
  }
  return sites;
}

void Pulse::validate() const {
  if (!(duration > 0.0)) throw Error(ErrorKind::InvalidArgument, "pulse.duration must be > 0");
  if (!(rabi_amplitude >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "pulse.rabi_amplitude must be >= 0");
  }
}

TwoLevelState rabi_evolve(const TwoLevelState& initial, const Pulse& pulse,
                          double transition_freq) {
  pulse.validate();
  using cd = std::complex<double>;
  const double detuning = pulse.carrier - transition_freq;
  const double omega_eff = std::hypot(pulse.rabi_amplitude, detuning);
  if (omega_eff == 0.0) return initial;

  // H = [[D/2, (W/2) e^{-i phi}], [(W/2) e^{i phi}, -D/2]]
  // U = cos(theta) - i sin(theta) H / (W_eff / 2), theta = W_eff t / 2
  const double theta = 0.5 * omega_eff * pulse.duration;
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  const double nz = detuning / omega_eff;
  const double nx = pulse.rabi_amplitude / omega_eff;
  const cd i{0.0, 1.0};
  const cd u00 = cs - i * sn * nz;
  const cd u11 = cs + i * sn * nz;
  const cd u01 = -i * sn * nx * std::exp(-i * pulse.phase);
  const cd u10 = -i * sn * nx * std::exp(i * pulse.phase);

  return {u00 * initial.c + u01 * initial.c_prime, u10 * initial.c + u11 * initial.c_prime};
}

std::optional<std::string> rwa_warning(const Pulse& pulse, double transition_freq) {
  if (pulse.rabi_amplitude > 0.01 * std::abs(transition_freq)) {
    return "rabi amplitude exceeds 1% of the transition frequency; rotating-wave "
           "approximation is questionable";
  }
  return std::nullopt;
}

double pi_pulse(double rabi_amplitude) {
  if (!(rabi_amplitude > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "pi_pulse: rabi amplitude must be positive");
  }
  return std::numbers::pi / rabi_amplitude;
}

double crosstalk_bound(const Pulse& pulse, double neighbor_detuning) {
  const double w2 = pulse.rabi_amplitude * pulse.rabi_amplitude;
  const double denom = w2 + neighbor_detuning * neighbor_detuning;
  return denom == 0.0 ? 1.0 : w2 / denom;
}

}  // namespace ramanqc::qubit_control
