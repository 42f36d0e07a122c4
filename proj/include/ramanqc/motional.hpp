#pragma once

// Centre-of-mass motion of an atom in one dressed branch. Each branch obeys
// its own scalar Schroedinger equation with potential U_plus or U_minus, so
// a wavepacket carries a branch tag and the propagator only ever evaluates
// that branch's potential.

#include <complex>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ramanqc/lattice.hpp"

namespace ramanqc::motional {

using cplx = std::complex<double>;

// Uniform periodic grid z_i = z_min + i dz, i in [0, n_points).
struct Grid {
  double z_min = 0.0;
  double z_max = 0.0;
  int n_points = 0;

  double dz() const { return (z_max - z_min) / n_points; }
  double length() const { return z_max - z_min; }
  double position(int i) const { return z_min + i * dz(); }
  std::vector<double> positions() const;

  // Power of two, at least 256 points.
  void validate() const;
  // Additionally requires at least four lambda/2 periods.
  void validate_for(const lattice::LatticeParams& p) const;

  // `periods` lattice periods of lambda/2 centred on z = 0.
  static Grid for_lattice(const lattice::LatticeParams& p, int periods = 8,
                          int n_points = 2048);
};

struct Wavepacket {
  Grid grid;
  std::vector<cplx> amplitudes;
  lattice::Branch branch = lattice::Branch::Plus;

  double norm() const;
  double mean_position() const;
  double width() const;
  void normalize();
};

// <a|b> on the grid.
cplx overlap(const Wavepacket& a, const Wavepacket& b);

// Normalized Gaussian exp(-(z-z0)^2/(4 sigma^2) + i k0 z).
Wavepacket gaussian(const Grid& grid, lattice::Branch branch, double center, double sigma,
                    double momentum = 0.0);

// Branch potential at the optimal detuning; U'_pm == U_pm, so it does not
// matter which quadruplet p describes.
double branch_potential(const lattice::LatticeParams& p, lattice::Branch branch, double z);
std::vector<double> branch_potential(const lattice::LatticeParams& p, lattice::Branch branch,
                                     const Grid& grid);

// Second-order Strang split-step propagator on a fixed potential. With
// `imaginary` set, dt is an imaginary-time step and the state is not
// renormalized (callers do that).
class SplitStep {
 public:
  SplitStep(const Grid& grid, std::vector<double> potential, double mass, double dt,
            bool imaginary = false);
  ~SplitStep();
  SplitStep(const SplitStep&) = delete;
  SplitStep& operator=(const SplitStep&) = delete;

  void step(std::span<cplx> psi, int steps = 1);
  // <T> + <V>, kinetic part evaluated spectrally.
  double energy(std::span<const cplx> psi) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Maximum of dt * |U| that propagate accepts.
inline constexpr double kStabilityGuard = 0.1;

// Real-time evolution of w under its branch potential. Throws
// Error{StabilityGuard} when dt * max|U| > 0.1.
Wavepacket propagate(const Wavepacket& w, const lattice::LatticeParams& p, double dt,
                     int steps);

double energy(const Wavepacket& w, const lattice::LatticeParams& p);

// Position of the well_index-th minimum of the branch (period lambda/2).
double well_center(const lattice::LatticeParams& p, lattice::Branch branch, int well_index);

struct GroundStateOptions {
  double rel_tol = 1e-12;  // per-step change of E - U_min
  int max_steps = 200000;
  double dtau = 0.0;       // 0 -> 0.05 / omega_osc
};

// Imaginary-time relaxation inside the chosen well. Outside the well's own
// cell (beyond the neighbouring maxima) the potential is clamped to the
// barrier top, which keeps the state from delocalizing across the lattice
// by tunnelling. Throws Error{NonConvergence} if the step budget runs out.
Wavepacket ground_state(const lattice::LatticeParams& p, lattice::Branch branch, int well_index,
                        const Grid& grid, const GroundStateOptions& options = {});
Wavepacket ground_state(const lattice::LatticeParams& p, lattice::Branch branch, int well_index);

// Normalized harmonic-oscillator eigenfunction n at the grid points.
std::vector<double> harmonic_eigenfunction(const Grid& grid, double center, double mass,
                                           double omega, int n);

// Number of harmonic levels (n + 1/2) omega_osc below the barrier top.
int bound_levels(const lattice::LatticeParams& p);

// Overlaps c_n, n = 0..n_max, with harmonic eigenfunctions centred on the
// well. Throws Error{InvalidArgument} if n_max exceeds the bound levels.
std::vector<cplx> motional_populations(const Wavepacket& w, const lattice::LatticeParams& p,
                                       int well_index, int n_max);

// (1/2k) sqrt(5 sqrt(3) M / alpha).
double tau2(const lattice::LatticeParams& p);

struct LambDicke {
  double eta = 0.0;
  bool satisfied = false;  // eta < 1
};
LambDicke lamb_dicke(const lattice::LatticeParams& p);

struct EscapeOptions {
  int samples = 200;
  double dt = 0.0;  // 0 -> largest step allowed by the stability guard / 2
  std::optional<Grid> grid;
  double edge_tolerance = 1e-6;  // probability allowed in the outer 1/16 of the grid
};

struct SurvivalCurve {
  std::vector<double> time;
  std::vector<double> survival;  // |<chi_0|chi(t)>|^2
  std::vector<double> norm;
  std::vector<double> energy;
  std::optional<double> decay_time;  // first crossing of 1/e, interpolated
};

// Ground state of U_plus at well_index, transferred to U_minus (whose
// maximum sits at the same place) and propagated until t_max. Throws
// Error{GridTooSmall} if the spreading packet reaches the grid edge.
SurvivalCurve inverted_well_escape(const lattice::LatticeParams& p, int well_index, double t_max,
                                   const EscapeOptions& options = {});

}  // namespace ramanqc::motional
