#include "ramanqc/units.hpp"

#include <array>
#include <cmath>
#include <string>

#include "ramanqc/error.hpp"

namespace ramanqc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedDimension: return "unsupported_dimension";
    case ErrorKind::NonFinite: return "non_finite";
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::NotOptimalDetuning: return "not_optimal_detuning";
    case ErrorKind::NonConvergence: return "non_convergence";
    case ErrorKind::Singular: return "singular";
    case ErrorKind::StabilityGuard: return "stability_guard";
    case ErrorKind::OutOfRange: return "out_of_range";
    case ErrorKind::GridTooSmall: return "grid_too_small";
    case ErrorKind::UnderResolved: return "under_resolved";
    case ErrorKind::StepBudget: return "step_budget";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

namespace units {

namespace {

struct DimensionInfo {
  Dimension dim;
  std::string_view name;
};

constexpr std::array<DimensionInfo, 9> kDimensions{{
    {Dimension::Energy, "energy"},
    {Dimension::AngularFrequency, "angular_frequency"},
    {Dimension::OrdinaryFrequency, "ordinary_frequency"},
    {Dimension::Length, "length"},
    {Dimension::Time, "time"},
    {Dimension::MagneticField, "magnetic_field"},
    {Dimension::Mass, "mass"},
    {Dimension::MagneticMoment, "magnetic_moment"},
    {Dimension::SpectralDensityB, "spectral_density_B"},
}};

void require_finite(double v, std::string_view what) {
  if (!std::isfinite(v)) {
    throw Error(ErrorKind::NonFinite, std::string(what) + ": value is not finite");
  }
}

}  // namespace

std::string_view to_string(Dimension d) {
  for (const auto& info : kDimensions) {
    if (info.dim == d) return info.name;
  }
  throw Error(ErrorKind::UnsupportedDimension, "unsupported dimension");
}

Dimension dimension_from_string(std::string_view name) {
  for (const auto& info : kDimensions) {
    if (info.name == name) return info.dim;
  }
  throw Error(ErrorKind::UnsupportedDimension,
              "unsupported dimension '" + std::string(name) + "'");
}

double si_per_internal(Dimension d) {
  switch (d) {
    case Dimension::Energy: return si::kHartreeEnergy;
    case Dimension::AngularFrequency: return 1.0 / si::kAtomicTime;
    // One internal angular unit is 1/(2 pi t_au) cycles per second.
    case Dimension::OrdinaryFrequency: return 1.0 / (kTwoPi * si::kAtomicTime);
    case Dimension::Length: return si::kBohrRadius;
    case Dimension::Time: return si::kAtomicTime;
    case Dimension::MagneticField: return si::kAtomicMagneticField;
    case Dimension::Mass: return si::kElectronMass;
    // e hbar / m_e = 2 mu_B
    case Dimension::MagneticMoment: return 2.0 * si::kBohrMagneton;
    case Dimension::SpectralDensityB:
      return si::kAtomicMagneticField * si::kAtomicMagneticField * si::kAtomicTime;
  }
  throw Error(ErrorKind::UnsupportedDimension, "unsupported dimension");
}

double to_internal(const Quantity& q) {
  require_finite(q.value, "to_internal");
  return q.value / si_per_internal(q.dimension);
}

Quantity from_internal(double value, Dimension d) {
  require_finite(value, "from_internal");
  return Quantity{value * si_per_internal(d), d};
}

}  // namespace units
}  // namespace ramanqc
