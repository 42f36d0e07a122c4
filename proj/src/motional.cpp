#include "ramanqc/motional.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "ramanqc/error.hpp"
#include "ramanqc/fft.hpp"
#include "ramanqc/units.hpp"

namespace ramanqc::motional {

using lattice::Branch;
using lattice::CoupledPair;

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

lattice::CoupledPair optimal_pair(const lattice::LatticeParams& p) {
  if (lattice::is_optimal_detuning(p, CoupledPair::A)) return CoupledPair::A;
  if (lattice::is_optimal_detuning(p, CoupledPair::B)) return CoupledPair::B;
  throw Error(ErrorKind::NotOptimalDetuning,
              "motional: branch dynamics require the optimal Raman detuning");
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> wavenumbers(const Grid& grid) {
  const int n = grid.n_points;
  std::vector<double> k(static_cast<std::size_t>(n));
  const double dk = units::kTwoPi / grid.length();
  for (int j = 0; j < n; ++j) k[static_cast<std::size_t>(j)] = dk * (j < n / 2 ? j : j - n);
  return k;
}

double edge_probability(const Wavepacket& w) {
  const int n = w.grid.n_points;
  const int band = n / 32;  // 1/16 of the grid split over both edges
  double p = 0.0;
  for (int i = 0; i < band; ++i) {
    p += std::norm(w.amplitudes[static_cast<std::size_t>(i)]);
    p += std::norm(w.amplitudes[static_cast<std::size_t>(n - 1 - i)]);
  }
  return p * w.grid.dz();
}

}  // namespace

std::vector<double> Grid::positions() const {
  std::vector<double> z(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) z[static_cast<std::size_t>(i)] = position(i);
  return z;
}

void Grid::validate() const {
  if (!is_power_of_two(n_points) || n_points < 256) {
    throw Error(ErrorKind::InvalidArgument, "grid.n_points must be a power of two >= 256");
  }
  if (!(z_max > z_min)) throw Error(ErrorKind::InvalidArgument, "grid: z_max must exceed z_min");
}

void Grid::validate_for(const lattice::LatticeParams& p) const {
  validate();
  if (length() < 4.0 * 0.5 * p.species.wavelength * (1.0 - 1e-12)) {
    throw Error(ErrorKind::GridTooSmall, "grid must span at least four lattice periods");
  }
}

Grid Grid::for_lattice(const lattice::LatticeParams& p, int periods, int n_points) {
  const double half = 0.25 * p.species.wavelength * periods;
  Grid g{-half, half, n_points};
  g.validate_for(p);
  return g;
}

double Wavepacket::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return s * grid.dz();
}

double Wavepacket::mean_position() const {
  double s = 0.0;
  double n = 0.0;
  for (int i = 0; i < grid.n_points; ++i) {
    const double w = std::norm(amplitudes[static_cast<std::size_t>(i)]);
    s += w * grid.position(i);
    n += w;
  }
  return s / n;
}

double Wavepacket::width() const {
  const double mean = mean_position();
  double s = 0.0;
  double n = 0.0;
  for (int i = 0; i < grid.n_points; ++i) {
    const double w = std::norm(amplitudes[static_cast<std::size_t>(i)]);
    const double d = grid.position(i) - mean;
    s += w * d * d;
    n += w;
  }
  return std::sqrt(s / n);
}

void Wavepacket::normalize() {
  const double scale = 1.0 / std::sqrt(norm());
  for (auto& a : amplitudes) a *= scale;
}

cplx overlap(const Wavepacket& a, const Wavepacket& b) {
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
    s += std::conj(a.amplitudes[i]) * b.amplitudes[i];
  }
  return s * a.grid.dz();
}

Wavepacket gaussian(const Grid& grid, Branch branch, double center, double sigma,
                    double momentum) {
  Wavepacket w{grid, std::vector<cplx>(static_cast<std::size_t>(grid.n_points)), branch};
  for (int i = 0; i < grid.n_points; ++i) {
    const double d = grid.position(i) - center;
    w.amplitudes[static_cast<std::size_t>(i)] =
        std::exp(cplx{-d * d / (4.0 * sigma * sigma), momentum * grid.position(i)});
  }
  w.normalize();
  return w;
}

double branch_potential(const lattice::LatticeParams& p, Branch branch, double z) {
  const auto u = lattice::potential_optimal(p, optimal_pair(p), z);
  return branch == Branch::Plus ? u.plus : u.minus;
}

std::vector<double> branch_potential(const lattice::LatticeParams& p, Branch branch,
                                     const Grid& grid) {
  const CoupledPair pair = optimal_pair(p);
  std::vector<double> v(static_cast<std::size_t>(grid.n_points));
  for (int i = 0; i < grid.n_points; ++i) {
    const auto u = lattice::potential_optimal(p, pair, grid.position(i));
    v[static_cast<std::size_t>(i)] = branch == Branch::Plus ? u.plus : u.minus;
  }
  return v;
}

struct SplitStep::Impl {
  Grid grid;
  std::vector<double> potential;
  std::vector<double> kinetic;  // k^2 / 2M
  std::vector<cplx> half_potential;
  std::vector<cplx> kinetic_factor;
  mutable Fft fft;
  mutable std::vector<cplx> scratch;

  Impl(const Grid& g, std::vector<double> v, double mass, double dt, bool imaginary)
      : grid(g), potential(std::move(v)), fft(static_cast<std::size_t>(g.n_points)),
        scratch(static_cast<std::size_t>(g.n_points)) {
    const auto k = wavenumbers(grid);
    const std::size_t n = k.size();
    kinetic.resize(n);
    kinetic_factor.resize(n);
    half_potential.resize(n);
    // exp(-i H dt) in real time, exp(-H dtau) in imaginary time.
    const cplx factor = imaginary ? cplx{-dt, 0.0} : cplx{0.0, -dt};
    for (std::size_t j = 0; j < n; ++j) {
      kinetic[j] = k[j] * k[j] / (2.0 * mass);
      kinetic_factor[j] = std::exp(factor * kinetic[j]);
      half_potential[j] = std::exp(0.5 * factor * potential[j]);
    }
  }
};

SplitStep::SplitStep(const Grid& grid, std::vector<double> potential, double mass, double dt,
                     bool imaginary) {
  grid.validate();
  if (potential.size() != static_cast<std::size_t>(grid.n_points)) {
    throw Error(ErrorKind::InvalidArgument, "SplitStep: potential size does not match grid");
  }
  if (!(mass > 0.0)) throw Error(ErrorKind::InvalidArgument, "SplitStep: mass must be positive");
  impl_ = std::make_unique<Impl>(grid, std::move(potential), mass, dt, imaginary);
}

SplitStep::~SplitStep() = default;

void SplitStep::step(std::span<cplx> psi, int steps) {
  auto& im = *impl_;
  const std::size_t n = psi.size();
  for (int s = 0; s < steps; ++s) {
    for (std::size_t j = 0; j < n; ++j) psi[j] *= im.half_potential[j];
    im.fft.forward(psi);
    for (std::size_t j = 0; j < n; ++j) psi[j] *= im.kinetic_factor[j];
    im.fft.inverse(psi);
    for (std::size_t j = 0; j < n; ++j) psi[j] *= im.half_potential[j];
  }
}

double SplitStep::energy(std::span<const cplx> psi) const {
  auto& im = *impl_;
  const std::size_t n = psi.size();
  double norm = 0.0;
  double pot = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double w = std::norm(psi[j]);
    norm += w;
    pot += w * im.potential[j];
  }
  std::copy(psi.begin(), psi.end(), im.scratch.begin());
  im.fft.forward(im.scratch);
  double kin = 0.0;
  for (std::size_t j = 0; j < n; ++j) kin += std::norm(im.scratch[j]) * im.kinetic[j];
  // Parseval: sum |psi_j|^2 = (1/n) sum |phi_k|^2
  kin /= static_cast<double>(n);
  return (kin + pot) / norm;
}

Wavepacket propagate(const Wavepacket& w, const lattice::LatticeParams& p, double dt,
                     int steps) {
  p.validate();
  w.grid.validate();
  auto v = branch_potential(p, w.branch, w.grid);
  const double vmax = max_abs(v);
  if (std::abs(dt) * vmax > kStabilityGuard) {
    throw Error(ErrorKind::StabilityGuard,
                "propagate: dt * max|U| = " + std::to_string(std::abs(dt) * vmax) +
                    " exceeds 0.1; reduce dt");
  }
  SplitStep stepper(w.grid, std::move(v), p.species.mass, dt);
  Wavepacket out = w;
  stepper.step(out.amplitudes, steps);
  return out;
}

double energy(const Wavepacket& w, const lattice::LatticeParams& p) {
  SplitStep stepper(w.grid, branch_potential(p, w.branch, w.grid), p.species.mass, 0.0);
  return stepper.energy(w.amplitudes);
}

double well_center(const lattice::LatticeParams& p, Branch branch, int well_index) {
  const double lambda = p.species.wavelength;
  const bool plus_at_quarter = p.alpha() > 0.0;
  const bool quarter = (branch == Branch::Plus) == plus_at_quarter;
  return (quarter ? 0.25 * lambda : 0.0) + 0.5 * lambda * well_index;
}

Wavepacket ground_state(const lattice::LatticeParams& p, Branch branch, int well_index,
                        const Grid& grid, const GroundStateOptions& options) {
  p.validate();
  grid.validate_for(p);
  if (!(p.alpha() > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "ground_state: alpha must be positive");
  }
  const double center = well_center(p, branch, well_index);
  const double quarter = 0.25 * p.species.wavelength;
  if (center - quarter < grid.z_min || center + quarter > grid.z_max) {
    throw Error(ErrorKind::InvalidArgument, "ground_state: well lies outside the grid");
  }

  const double u_min = branch_potential(p, branch, center);
  const double u_top = branch_potential(p, branch, center + quarter);
  std::vector<double> v(static_cast<std::size_t>(grid.n_points));
  for (int i = 0; i < grid.n_points; ++i) {
    const double z = grid.position(i);
    const double u = std::abs(z - center) <= quarter ? branch_potential(p, branch, z) : u_top;
    v[static_cast<std::size_t>(i)] = u - u_min;
  }

  const double mass = p.species.mass;
  const double omega = lattice::harmonic_frequency(p);
  const double dtau = options.dtau > 0.0 ? options.dtau : 0.05 / omega;
  SplitStep stepper(grid, std::move(v), mass, dtau, /*imaginary=*/true);

  Wavepacket w = gaussian(grid, branch, center, 1.0 / std::sqrt(2.0 * mass * omega));
  double e_prev = stepper.energy(w.amplitudes);
  for (int s = 1; s <= options.max_steps; ++s) {
    stepper.step(w.amplitudes);
    w.normalize();
    const double e = stepper.energy(w.amplitudes);
    if (s > 10 && std::abs(e - e_prev) <= options.rel_tol * std::abs(e)) return w;
    e_prev = e;
  }
  throw Error(ErrorKind::NonConvergence,
              "ground_state: imaginary-time relaxation did not converge in " +
                  std::to_string(options.max_steps) + " steps");
}

Wavepacket ground_state(const lattice::LatticeParams& p, Branch branch, int well_index) {
  return ground_state(p, branch, well_index, Grid::for_lattice(p));
}

std::vector<double> harmonic_eigenfunction(const Grid& grid, double center, double mass,
                                           double omega, int n) {
  const double x0 = 1.0 / std::sqrt(mass * omega);
  const double pref = 1.0 / (std::pow(std::numbers::pi, 0.25) * std::sqrt(x0));
  std::vector<double> out(static_cast<std::size_t>(grid.n_points));
  for (int i = 0; i < grid.n_points; ++i) {
    const double xi = (grid.position(i) - center) / x0;
    double prev = 0.0;
    double cur = pref * std::exp(-0.5 * xi * xi);
    for (int m = 0; m < n; ++m) {
      const double next = std::sqrt(2.0 / (m + 1)) * xi * cur - std::sqrt(double(m) / (m + 1)) * prev;
      prev = cur;
      cur = next;
    }
    out[static_cast<std::size_t>(i)] = cur;
  }
  return out;
}

int bound_levels(const lattice::LatticeParams& p) {
  const double ratio = lattice::well_geometry(p, 1).barrier / lattice::harmonic_frequency(p);
  return ratio <= 0.5 ? 0 : static_cast<int>(std::floor(ratio - 0.5)) + 1;
}

std::vector<cplx> motional_populations(const Wavepacket& w, const lattice::LatticeParams& p,
                                       int well_index, int n_max) {
  const int levels = bound_levels(p);
  if (n_max < 0 || n_max >= levels) {
    throw Error(ErrorKind::InvalidArgument,
                "motional_populations: n_max must be below the " + std::to_string(levels) +
                    " bound harmonic levels");
  }
  const double center = well_center(p, w.branch, well_index);
  const double omega = lattice::harmonic_frequency(p);
  std::vector<cplx> c;
  for (int n = 0; n <= n_max; ++n) {
    const auto phi = harmonic_eigenfunction(w.grid, center, p.species.mass, omega, n);
    cplx s{0.0, 0.0};
    for (std::size_t i = 0; i < phi.size(); ++i) s += phi[i] * w.amplitudes[i];
    c.push_back(s * w.grid.dz());
  }
  return c;
}

double tau2(const lattice::LatticeParams& p) {
  const double alpha = p.alpha();
  if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidArgument, "tau2: alpha must be positive");
  return std::sqrt(5.0 * std::numbers::sqrt3 * p.species.mass / alpha) / (2.0 * p.wavevector());
}

LambDicke lamb_dicke(const lattice::LatticeParams& p) {
  if (!(p.alpha() > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "lamb_dicke: alpha must be positive");
  }
  const double eta =
      p.wavevector() / std::sqrt(2.0 * p.species.mass * lattice::harmonic_frequency(p));
  return {eta, eta < 1.0};
}

SurvivalCurve inverted_well_escape(const lattice::LatticeParams& p, int well_index, double t_max,
                                   const EscapeOptions& options) {
  if (!(t_max > 0.0) || options.samples < 1) {
    throw Error(ErrorKind::InvalidArgument, "inverted_well_escape: need t_max > 0, samples >= 1");
  }
  const Grid grid = options.grid ? *options.grid : Grid::for_lattice(p);
  const Wavepacket chi0 = ground_state(p, Branch::Plus, well_index, grid);

  Wavepacket w = chi0;
  w.branch = Branch::Minus;
  auto v = branch_potential(p, Branch::Minus, grid);
  const double vmax = max_abs(v);
  const double dt_limit = options.dt > 0.0 ? options.dt : 0.5 * kStabilityGuard / vmax;
  if (dt_limit * vmax > kStabilityGuard) {
    throw Error(ErrorKind::StabilityGuard, "inverted_well_escape: dt violates the stability guard");
  }
  const double sample_dt = t_max / options.samples;
  const int substeps = static_cast<int>(std::ceil(sample_dt / dt_limit));
  SplitStep stepper(grid, std::move(v), p.species.mass, sample_dt / substeps);

  SurvivalCurve curve;
  auto record = [&](double t) {
    if (edge_probability(w) > options.edge_tolerance) {
      throw Error(ErrorKind::GridTooSmall,
                  "inverted_well_escape: wavepacket reached the grid edge; enlarge the grid");
    }
    curve.time.push_back(t);
    curve.survival.push_back(std::norm(overlap(chi0, w)));
    curve.norm.push_back(w.norm());
    curve.energy.push_back(stepper.energy(w.amplitudes));
  };

  record(0.0);
  const double threshold = std::exp(-1.0);
  for (int s = 1; s <= options.samples; ++s) {
    stepper.step(w.amplitudes, substeps);
    record(s * sample_dt);
    const std::size_t i = curve.survival.size() - 1;
    if (!curve.decay_time && curve.survival[i] < threshold) {
      const double p0 = curve.survival[i - 1];
      const double p1 = curve.survival[i];
      const double frac = (p0 - threshold) / (p0 - p1);
      curve.decay_time = curve.time[i - 1] + frac * (curve.time[i] - curve.time[i - 1]);
    }
  }
  return curve;
}

}  // namespace ramanqc::motional
