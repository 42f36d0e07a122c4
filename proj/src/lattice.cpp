#include "ramanqc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ramanqc/error.hpp"
#include "ramanqc/units.hpp"

namespace ramanqc::lattice {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;
// Samples per lambda/2 period when scanning potentials; a multiple of 4 so
// that cos(2kz) = 0 and cos(2kz) = -1 fall exactly on grid points.
constexpr int kScanPoints = 512;

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw Error(ErrorKind::InvalidArgument, field + ": " + what);
}

// Signed Raman detuning as seen by the pair; PairB sees delta -> -delta.
double pair_sign(CoupledPair pair) { return pair == CoupledPair::A ? 1.0 : -1.0; }

double modulation_amplitude(double alpha) { return alpha / (10.0 * kSqrt3); }

template <typename F>
std::pair<double, double> scan_min_max(const LatticeParams& p, F&& f) {
  const double period = p.species.wavelength / 2.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i <= kScanPoints; ++i) {
    const double v = f(period * i / kScanPoints);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

double adiabatic_barrier(const LatticeParams& p, CoupledPair pair) {
  auto [lo, hi] = scan_min_max(p, [&](double z) { return potential_general(p, pair, z).plus; });
  return hi - lo;
}

double branch_gap(const LatticeParams& p, CoupledPair pair) {
  auto [lo, hi] = scan_min_max(p, [&](double z) {
    const auto u = potential_general(p, pair, z);
    return u.plus - u.minus;
  });
  return lo;
}

}  // namespace

AtomSpecies AtomSpecies::aluminum() {
  AtomSpecies s;
  s.name = "Al";
  s.mass = units::amu(26.9815385);
  s.lande_g = 4.0 / 3.0;
  s.j_ground = 1.5;
  s.j_excited = 2.5;
  s.wavelength = units::nanometers(309.0);
  return s;
}

void AtomSpecies::validate() const {
  require(std::isfinite(mass) && mass > 0.0, "species.mass", "must be positive");
  require(std::isfinite(wavelength) && wavelength > 0.0, "species.wavelength",
          "must be positive");
  require(std::isfinite(lande_g), "species.lande_g", "must be finite");
  require(j_ground == 1.5, "species.j_ground", "this lattice scheme requires J = 3/2");
  require(j_excited == 2.5, "species.j_excited", "the Raman scheme needs J' = 5/2");
}

double AtomSpecies::wavevector() const { return units::kTwoPi / wavelength; }

void LatticeParams::validate() const {
  species.validate();
  require(std::isfinite(one_photon_detuning) && one_photon_detuning != 0.0,
          "lattice.one_photon_detuning", "must be finite and non-zero");
  require(std::isfinite(rabi_chi), "lattice.rabi_chi", "must be finite");
  require(std::isfinite(raman_detuning), "lattice.raman_detuning", "must be finite");
  require(std::isfinite(alpha()), "lattice.alpha", "chi^2/Delta must be finite");
}

LatticeParams LatticeParams::from_alpha(const AtomSpecies& species, double alpha,
                                        double raman_detuning, double one_photon_detuning) {
  LatticeParams p;
  p.species = species;
  if (one_photon_detuning == 0.0) {
    one_photon_detuning = std::copysign(units::hz(10e9), alpha == 0.0 ? 1.0 : alpha);
  }
  require(alpha == 0.0 || (alpha > 0.0) == (one_photon_detuning > 0.0),
          "lattice.one_photon_detuning", "sign must match alpha");
  p.one_photon_detuning = one_photon_detuning;
  p.rabi_chi = std::sqrt(alpha * one_photon_detuning);
  p.raman_detuning = raman_detuning;
  return p;
}

std::string_view to_string(CoupledPair pair) { return pair == CoupledPair::A ? "A" : "B"; }
std::string_view to_string(Branch branch) { return branch == Branch::Plus ? "plus" : "minus"; }

std::array<int, 2> twice_m(CoupledPair pair) {
  return pair == CoupledPair::A ? std::array<int, 2>{-3, 1} : std::array<int, 2>{3, -1};
}

PotentialPair potential_general(const LatticeParams& p, CoupledPair pair, double z) {
  const double alpha = p.alpha();
  const double shifted = alpha + pair_sign(pair) * 15.0 * p.raman_detuning;
  const double c = std::cos(2.0 * p.wavevector() * z);
  const double root = std::sqrt(shifted * shifted + 3.0 * alpha * alpha * c * c) / 30.0;
  return {-alpha / 3.0 + root, -alpha / 3.0 - root};
}

double optimal_detuning(double alpha, CoupledPair pair) {
  return -pair_sign(pair) * alpha / 15.0;
}

bool is_optimal_detuning(const LatticeParams& p, CoupledPair pair, double rel_tol) {
  const double alpha = p.alpha();
  return std::abs(p.raman_detuning - optimal_detuning(alpha, pair)) <= rel_tol * std::abs(alpha);
}

PotentialPair potential_optimal(const LatticeParams& p, CoupledPair pair, double z) {
  if (!is_optimal_detuning(p, pair)) {
    throw Error(ErrorKind::NotOptimalDetuning,
                "potential_optimal: Raman detuning is not optimal for pair " +
                    std::string(to_string(pair)) + "; use potential_general");
  }
  const double alpha = p.alpha();
  const double mod = modulation_amplitude(alpha) * std::cos(2.0 * p.wavevector() * z);
  return {-alpha / 3.0 + mod, -alpha / 3.0 - mod};
}

std::array<double, 2> EffectiveHamiltonian::eigenvalues() const {
  const double mean = 0.5 * (diag[0] + diag[1]);
  const double half_split = std::hypot(0.5 * (diag[0] - diag[1]), offdiag);
  return {mean - half_split, mean + half_split};
}

EffectiveHamiltonian effective_hamiltonian(const LatticeParams& p, CoupledPair pair, double z) {
  const double alpha = p.alpha();
  const double shifted = alpha + pair_sign(pair) * 15.0 * p.raman_detuning;
  EffectiveHamiltonian h;
  h.z = z;
  h.diag = {-alpha / 3.0 + shifted / 30.0, -alpha / 3.0 - shifted / 30.0};
  // Negative sign puts U_plus on (|M> - |M'>)/sqrt(2) at the optimum.
  h.offdiag = -modulation_amplitude(alpha) * std::cos(2.0 * p.wavevector() * z);
  return h;
}

double zeeman_energy(const AtomSpecies& species, double b0, int twice_m) {
  return species.lande_g * units::kBohrMagneton * b0 * (0.5 * twice_m);
}

std::array<double, 4> zeeman_ladder(const AtomSpecies& species, double b0) {
  return {zeeman_energy(species, b0, -3), zeeman_energy(species, b0, -1),
          zeeman_energy(species, b0, 1), zeeman_energy(species, b0, 3)};
}

std::array<DressedState, 2> dressed_states(const LatticeParams& p, CoupledPair pair, double b0) {
  if (!is_optimal_detuning(p, pair)) {
    throw Error(ErrorKind::NotOptimalDetuning,
                "dressed_states: amplitudes are position dependent away from the optimal "
                "detuning of pair " + std::string(to_string(pair)));
  }
  const auto m = twice_m(pair);
  const double d = pair_sign(pair) * p.raman_detuning;
  const double e0 = zeeman_energy(p.species, b0, m[0]) - 0.5 * d;
  const double e1 = zeeman_energy(p.species, b0, m[1]) + 0.5 * d;
  const double h = 1.0 / std::numbers::sqrt2;

  DressedState plus{pair, Branch::Plus, m, {h, -h}, {e0, e1}};
  DressedState minus{pair, Branch::Minus, m, {h, h}, {e0, e1}};
  return {plus, minus};
}

double barrier_height(const LatticeParams& p, CoupledPair pair) {
  if (is_optimal_detuning(p, pair)) {
    auto [lo, hi] =
        scan_min_max(p, [&](double z) { return potential_optimal(p, pair, z).plus; });
    return hi - lo;
  }
  return adiabatic_barrier(p, pair);
}

DetuningOptimum optimize_detuning(const LatticeParams& p, CoupledPair pair) {
  p.validate();
  const double alpha = p.alpha();
  if (alpha == 0.0) {
    throw Error(ErrorKind::InvalidArgument, "optimize_detuning: alpha must be non-zero");
  }

  LatticeParams trial = p;
  auto objective = [&](double delta) {
    trial.raman_detuning = delta;
    return adiabatic_barrier(trial, pair);
  };

  // Golden-section search for the maximum; the barrier is unimodal in delta
  // with a cusp at the optimum.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = -std::abs(alpha) / 3.0;
  double hi = std::abs(alpha) / 3.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = objective(x1);
  double f2 = objective(x2);
  int iterations = 0;
  const double tol = 1e-13 * std::abs(alpha);
  while (hi - lo > tol && iterations < 500) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = objective(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = objective(x2);
    }
    ++iterations;
  }

  DetuningOptimum result;
  result.delta = 0.5 * (lo + hi);
  result.iterations = iterations;
  trial.raman_detuning = result.delta;
  result.residual = branch_gap(trial, pair);
  if (result.residual > 1e-6 * std::abs(alpha)) {
    throw Error(ErrorKind::NonConvergence,
                "optimize_detuning: wells not energetically equivalent, residual " +
                    std::to_string(result.residual / std::abs(alpha)) + " alpha");
  }
  result.barrier = barrier_height(trial, pair);
  return result;
}

WellGeometry well_geometry(const LatticeParams& p, int n_periods) {
  p.validate();
  if (!is_optimal_detuning(p, CoupledPair::A) && !is_optimal_detuning(p, CoupledPair::B)) {
    throw Error(ErrorKind::NotOptimalDetuning,
                "well_geometry: Raman detuning must be optimal for one of the pairs");
  }
  if (n_periods < 1) throw Error(ErrorKind::InvalidArgument, "well_geometry: n_periods < 1");

  const double lambda = p.species.wavelength;
  const double alpha = p.alpha();
  // For alpha > 0 U_plus bottoms out where cos(2kz) = -1.
  const double plus_offset = alpha > 0.0 ? lambda / 4.0 : 0.0;
  const double minus_offset = alpha > 0.0 ? 0.0 : lambda / 4.0;

  WellGeometry g;
  for (int n = 0; n < n_periods; ++n) {
    const double base = 0.5 * lambda * n;
    g.minima.push_back({base + minus_offset, Branch::Minus, CoupledPair::A});
    g.minima.push_back({base + plus_offset, Branch::Plus, CoupledPair::A});
  }
  std::sort(g.minima.begin(), g.minima.end(),
            [](const WellMinimum& a, const WellMinimum& b) { return a.position < b.position; });
  g.spacing = g.minima[1].position - g.minima[0].position;
  g.barrier = 2.0 * std::abs(modulation_amplitude(alpha));
  return g;
}

double harmonic_frequency(const LatticeParams& p, const WellMinimum& well) {
  const double k = p.wavevector();
  const double amplitude = modulation_amplitude(p.alpha());
  const double sign = well.branch == Branch::Plus ? 1.0 : -1.0;
  // U'' of the signed branch: -4k^2 (+/- A) cos(2kz)
  const double curvature =
      -4.0 * k * k * sign * amplitude * std::cos(2.0 * k * well.position);
  const double peak = 4.0 * k * k * std::abs(amplitude);
  if (!(curvature > 0.0) || std::abs(curvature - peak) > 1e-9 * peak) {
    throw Error(ErrorKind::InvalidArgument,
                "harmonic_frequency: position is not a minimum of the requested branch");
  }
  return std::sqrt(curvature / p.species.mass);
}

double harmonic_frequency(const LatticeParams& p) {
  const double k = p.wavevector();
  return 2.0 * k * std::sqrt(std::abs(modulation_amplitude(p.alpha())) / p.species.mass);
}

}  // namespace ramanqc::lattice
