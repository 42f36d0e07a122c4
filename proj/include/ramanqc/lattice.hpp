#pragma once

// Optical potentials and dressed states of a J = 3/2 manifold in
// counter-propagating sigma+/sigma- Raman standing waves.
//
// The Raman pairs couple only M = -3/2 <-> +1/2 (PairA) and
// M = +3/2 <-> -1/2 (PairB), so the optical problem splits into two
// independent real-symmetric 2x2 blocks. All quantities are internal
// (atomic) units; see units.hpp.

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace ramanqc::lattice {

struct AtomSpecies {
  std::string name;
  double mass = 0.0;        // internal mass units (m_e)
  double lande_g = 0.0;
  double j_ground = 1.5;
  double j_excited = 2.5;
  double wavelength = 0.0;  // bohr

  // Metastable 3p_3/2 aluminium on the 309 nm 3p_3/2 -> 3d_5/2 line.
  static AtomSpecies aluminum();

  // Throws Error{InvalidArgument} naming the offending field.
  void validate() const;
  double wavevector() const;
};

struct LatticeParams {
  double rabi_chi = 0.0;             // angular frequency
  double one_photon_detuning = 0.0;  // angular frequency, Delta
  double raman_detuning = 0.0;       // angular frequency, delta
  AtomSpecies species;

  // Reduced dynamic polarizability chi^2 / Delta.
  double alpha() const { return rabi_chi * rabi_chi / one_photon_detuning; }
  double wavevector() const { return species.wavevector(); }
  void validate() const;

  // Builds parameters with the requested alpha using a fixed one-photon
  // detuning; chi is chosen so that chi^2 / Delta == alpha.
  static LatticeParams from_alpha(const AtomSpecies& species, double alpha,
                                  double raman_detuning,
                                  double one_photon_detuning = 0.0);
};

enum class CoupledPair { A, B };
enum class Branch { Plus, Minus };

std::string_view to_string(CoupledPair pair);
std::string_view to_string(Branch branch);

// Twice the magnetic quantum numbers (M, M') of the bare states in a pair.
std::array<int, 2> twice_m(CoupledPair pair);

struct PotentialPair {
  double plus = 0.0;
  double minus = 0.0;
};

// Adiabatic potentials for arbitrary Raman detuning (square-root form).
PotentialPair potential_general(const LatticeParams& p, CoupledPair pair, double z);

// Raman detuning that makes the pair's diagonal light shifts degenerate:
// -alpha/15 for PairA, +alpha/15 for PairB.
double optimal_detuning(double alpha, CoupledPair pair);
bool is_optimal_detuning(const LatticeParams& p, CoupledPair pair, double rel_tol = 1e-9);

// Smooth signed-cosine potentials valid only at the optimal detuning.
// Throws Error{NotOptimalDetuning} otherwise.
PotentialPair potential_optimal(const LatticeParams& p, CoupledPair pair, double z);

// Real symmetric 2x2 block on the bare basis (|M>, |M'>) whose eigenvalues
// are potential_general. The off-diagonal carries the standing-wave
// modulation, the diagonal the pair's detuning-dependent light shifts.
struct EffectiveHamiltonian {
  std::array<double, 2> diag{};
  double offdiag = 0.0;
  double z = 0.0;

  // Ascending order: {lower, upper}.
  std::array<double, 2> eigenvalues() const;
};

EffectiveHamiltonian effective_hamiltonian(const LatticeParams& p, CoupledPair pair, double z);

struct DressedState {
  CoupledPair pair = CoupledPair::A;
  Branch branch = Branch::Plus;
  std::array<int, 2> twice_m{};                      // bare basis labels
  std::array<std::complex<double>, 2> amplitudes{};  // on (|M>, |M'>)
  std::array<double, 2> phase_energies{};            // E_M - d/2, E_M' + d/2
};

// Zeeman energies g mu_B B0 M for M = -3/2, -1/2, 1/2, 3/2.
std::array<double, 4> zeeman_ladder(const AtomSpecies& species, double b0);
double zeeman_energy(const AtomSpecies& species, double b0, int twice_m);

// {Plus, Minus} dressed states for a pair at its optimal detuning.
// The phase rates use the first quadruplet's detuning d for both pairs
// (for PairB, d = -p.raman_detuning), so that the microwave lines land at
// omega_Z and omega_Z +/- d.
std::array<DressedState, 2> dressed_states(const LatticeParams& p, CoupledPair pair,
                                           double b0);

// Peak-to-peak height of U_plus over one period. At the pair's optimal
// detuning the signed branch is used, elsewhere the adiabatic one.
double barrier_height(const LatticeParams& p, CoupledPair pair);

struct DetuningOptimum {
  double delta = 0.0;
  double barrier = 0.0;   // at delta, signed branch
  double residual = 0.0;  // min_z (U_plus - U_minus); 0 when the wells are equivalent
  int iterations = 0;
};

// Maximizes the adiabatic intersite barrier of U_plus by golden-section
// search and checks that the two branches reconnect (equal well depths).
// Throws Error{NonConvergence} if the residual stays above 1e-6 |alpha|.
DetuningOptimum optimize_detuning(const LatticeParams& p, CoupledPair pair);

struct WellMinimum {
  double position = 0.0;
  Branch branch = Branch::Plus;
  CoupledPair pair = CoupledPair::A;
};

struct WellGeometry {
  std::vector<WellMinimum> minima;  // sorted by position
  double spacing = 0.0;
  double barrier = 0.0;
};

// Minima of U_plus and U_minus on [0, n_periods * lambda/2), assuming both
// quadruplets sit at their optimal detunings so that U'_pm == U_pm.
WellGeometry well_geometry(const LatticeParams& p, int n_periods = 2);

// sqrt(U''(z_min) / M) from the analytic curvature of the signed branch.
double harmonic_frequency(const LatticeParams& p, const WellMinimum& well);
double harmonic_frequency(const LatticeParams& p);

}  // namespace ramanqc::lattice
