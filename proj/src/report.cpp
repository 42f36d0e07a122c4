#include "ramanqc/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include "ramanqc/decoherence.hpp"
#include "ramanqc/error.hpp"
#include "ramanqc/gates.hpp"
#include "ramanqc/lattice.hpp"
#include "ramanqc/motional.hpp"
#include "ramanqc/qubit_control.hpp"
#include "ramanqc/units.hpp"

namespace ramanqc::report {

using lattice::Branch;
using lattice::CoupledPair;
using lattice::LatticeParams;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

template <class... A>
std::string fmt(const char* f, A... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const char* const kTitles[] = {
    "",
    "effective-hamiltonian eigenvalues match the closed-form potentials",
    "optimal detunings and other-pair barrier ratio",
    "lambda/4 well spacing and barrier alpha/(5 sqrt 3)",
    "CNOT time for R = lambda/4 and 1/R^3 scaling",
    "tau2 closed form, tau2 omega = 1/sqrt2, inverted-well escape",
    "shielding requirement for a 10 s coherence time",
    "Monte Carlo flip rate equals 1/tau1 in three regimes",
    "norm conservation, free spreading, deep-well ground state",
    "site addressing crosstalk and resonant pi pulse",
    "conditional flip with a 10/delta_omega pulse",
    "report passes criteria 1-10 within the time budget",
};

CriterionResult make(int id) {
  CriterionResult r;
  r.id = id;
  r.title = kTitles[id];
  return r;
}

LatticeParams with_detuning(const LatticeParams& p, CoupledPair pair) {
  LatticeParams q = p;
  q.raman_detuning = lattice::optimal_detuning(p.alpha(), pair);
  return q;
}

// Tolerances
constexpr double kEigenRel = 1e-12;
constexpr int kEigenSamples = 10000;
constexpr double kEigenSeconds = 1.0;
constexpr double kDetuningRel = 1e-6;
constexpr double kRatioTarget = 0.20, kRatioBand = 0.05;
constexpr double kSpacingRel = 1e-12;
constexpr double kBarrierRel = 1e-12;
constexpr double kTauCnotLo = 1e-3, kTauCnotHi = 2e-3;
constexpr double kScalingRel = 1e-12;
constexpr double kTau2Lo = 1e-7, kTau2Hi = 5e-7;
constexpr double kTau2IdentityRel = 1e-12;
constexpr double kEscapeFactor = 3.0;
constexpr double kEscapeSeconds = 30.0;
constexpr double kShieldingReference = 3e-12, kShieldingRel = 0.20, kShieldingTarget = 10.0;
constexpr double kRateRel = 0.10;
constexpr int kMcEnsemble = 1000;
constexpr double kMcSeconds = 120.0;
constexpr double kNormTol = 1e-10;
constexpr int kNormSteps = 10000;
constexpr double kSpreadRel = 1e-6;
constexpr double kGroundRel = 0.005;
constexpr double kDeepWellScale = 1000.0;
constexpr double kCrosstalkMax = 0.01;
constexpr int kAddressSites = 100;
constexpr double kPiTransferTol = 1e-10;
constexpr double kFlipOneMin = 0.99, kFlipZeroMax = 0.05;
constexpr double kCnotDurationFactor = 10.0;

// Eigenvalues of [[a, b], [b, c]] by a single Jacobi rotation.
std::array<double, 2> jacobi_eigenvalues(double a, double b, double c) {
  if (b == 0.0) return {std::min(a, c), std::max(a, c)};
  const double theta = 0.5 * std::atan2(2.0 * b, c - a);
  const double cs = std::cos(theta), sn = std::sin(theta);
  const double l1 = cs * cs * a - 2.0 * sn * cs * b + sn * sn * c;
  const double l2 = sn * sn * a + 2.0 * sn * cs * b + cs * cs * c;
  return {std::min(l1, l2), std::max(l1, l2)};
}

CriterionResult potential_oracle(const config::RunConfig& cfg) {
  auto r = make(1);
  const auto t0 = Clock::now();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double alpha0 = cfg.lattice.alpha();
  const double lam = cfg.lattice.species.wavelength;
  double worst = 0.0;
  for (int i = 0; i < kEigenSamples; ++i) {
    const double alpha = alpha0 * std::pow(10.0, 2.0 * unit(rng) - 1.0);
    const double delta = alpha * (2.0 * unit(rng) - 1.0) / 3.0;
    const auto p = LatticeParams::from_alpha(cfg.lattice.species, alpha, delta);
    const double z = unit(rng) * lam;
    for (auto pair : {CoupledPair::A, CoupledPair::B}) {
      const auto h = lattice::effective_hamiltonian(p, pair, z);
      const auto ev = jacobi_eigenvalues(h.diag[0], h.offdiag, h.diag[1]);
      const auto u = lattice::potential_general(p, pair, z);
      const double scale = std::max(std::abs(u.plus), std::abs(u.minus));
      worst = std::max({worst, std::abs(ev[0] - u.minus) / scale,
                        std::abs(ev[1] - u.plus) / scale});
    }
  }
  const double secs = since(t0);
  r.pass = worst <= kEigenRel && secs < kEigenSeconds;
  r.measured = fmt("max rel. error %.3g over %d samples x 2 pairs (tol %.0e), %.3f s (limit %.0f s)",
                   worst, kEigenSamples, kEigenRel, secs, kEigenSeconds);
  return r;
}

CriterionResult detuning_optimization(const config::RunConfig& cfg) {
  auto r = make(2);
  const double alpha = cfg.lattice.alpha();
  const auto a = lattice::optimize_detuning(cfg.lattice, CoupledPair::A);
  const auto b = lattice::optimize_detuning(cfg.lattice, CoupledPair::B);
  const double ea = std::abs(a.delta + alpha / 15.0) / std::abs(alpha / 15.0);
  const double eb = std::abs(b.delta - alpha / 15.0) / std::abs(alpha / 15.0);
  const double ratio = lattice::barrier_height(with_detuning(cfg.lattice, CoupledPair::A), CoupledPair::B) /
                       lattice::barrier_height(with_detuning(cfg.lattice, CoupledPair::B), CoupledPair::B);
  r.pass = ea <= kDetuningRel && eb <= kDetuningRel && std::abs(ratio - kRatioTarget) <= kRatioBand;
  r.measured = fmt("delta_A/alpha = %.9f, delta_B/alpha = %.9f (rel. err %.2g, %.2g; tol %.0e); "
                   "barrier ratio %.4f (target %.2f +/- %.2f)",
                   a.delta / alpha, b.delta / alpha, ea, eb, kDetuningRel, ratio, kRatioTarget,
                   kRatioBand);
  return r;
}

CriterionResult geometry(const config::RunConfig& cfg) {
  auto r = make(3);
  const auto p = with_detuning(cfg.lattice, CoupledPair::A);
  const auto g = lattice::well_geometry(p, 2);
  const double lam = p.species.wavelength;
  const double spacing_err = std::abs(g.spacing - lam / 4.0) / lam;
  const double expected = p.alpha() / (5.0 * std::numbers::sqrt3);
  const double barrier_err = std::abs(g.barrier - expected) / std::abs(expected);
  const double spacing_nm = units::to_meters(g.spacing) * 1e9;
  bool al_ok = true;
  if (std::abs(units::to_meters(lam) - 309e-9) < 1e-15) {
    al_ok = std::abs(spacing_nm - 77.25) <= kSpacingRel * 309.0;
  }
  r.pass = spacing_err <= kSpacingRel && barrier_err <= kBarrierRel && al_ok;
  r.measured = fmt("spacing %.12g nm (|d - lambda/4|/lambda = %.2g, tol %.0e); barrier rel. err %.2g",
                   spacing_nm, spacing_err, kSpacingRel, barrier_err);
  return r;
}

CriterionResult cnot_budget(const config::RunConfig& cfg) {
  auto r = make(4);
  const auto p = with_detuning(cfg.lattice, CoupledPair::A);
  const auto b = gates::cnot_budget(p, cfg.field);
  const double tau = units::to_seconds(b.tau_cnot);
  const double lam = p.species.wavelength;
  const double ratio = gates::cnot_shift(p.species, lam / 4) / gates::cnot_shift(p.species, lam / 2);
  r.pass = tau >= kTauCnotLo && tau <= kTauCnotHi && std::abs(ratio - 8.0) <= 8.0 * kScalingRel;
  r.measured = fmt("tau_CNOT = %.6g s (window [%.0e, %.0e]); delta_omega(lambda/4)/delta_omega(lambda/2) = %.15g",
                   tau, kTauCnotLo, kTauCnotHi, ratio);
  return r;
}

CriterionResult tau2_escape(const config::RunConfig& cfg) {
  auto r = make(5);
  const auto t0 = Clock::now();
  const auto p = with_detuning(cfg.lattice, CoupledPair::A);
  const double t2 = motional::tau2(p);
  const double t2_s = units::to_seconds(t2);
  const double identity = t2 * lattice::harmonic_frequency(p) * std::numbers::sqrt2;
  motional::EscapeOptions opts;
  opts.grid = motional::Grid::for_lattice(p, cfg.grid_periods, cfg.grid_points);
  const auto curve = motional::inverted_well_escape(p, 0, cfg.escape_span * t2, opts);
  const double secs = since(t0);
  const bool have = curve.decay_time.has_value();
  const double decay = have ? *curve.decay_time : 0.0;
  r.pass = t2_s >= kTau2Lo && t2_s <= kTau2Hi && std::abs(identity - 1.0) <= kTau2IdentityRel &&
           have && decay >= t2 / kEscapeFactor && decay <= kEscapeFactor * t2 &&
           secs < kEscapeSeconds;
  r.measured = fmt("tau2 = %.6g s (window [%.0e, %.0e]); tau2 omega sqrt2 - 1 = %.2g; "
                   "1/e escape time = %s tau2 (factor %.0f band); %.2f s (limit %.0f s)",
                   t2_s, kTau2Lo, kTau2Hi, identity - 1.0,
                   have ? fmt("%.4f", decay / t2).c_str() : "not reached", kEscapeFactor, secs,
                   kEscapeSeconds);
  return r;
}

CriterionResult shielding(const config::RunConfig& cfg) {
  auto r = make(6);
  const auto p = with_detuning(cfg.lattice, CoupledPair::A);
  const double mu = decoherence::coupling_mu(p, CoupledPair::A);
  const auto s = decoherence::shielding_requirement(mu, decoherence::branch_gap(p),
                                                    units::seconds(kShieldingTarget));
  const double si = decoherence::amplitude_to_si(s.amplitude);
  r.pass = std::abs(si - kShieldingReference) <= kShieldingRel * kShieldingReference;
  r.measured = fmt("sqrt(S) = %.6g T/sqrt(Hz) vs %.0e (tol %.0f%%)", si, kShieldingReference,
                   100 * kShieldingRel);
  return r;
}

CriterionResult noise_equivalence(const config::RunConfig& cfg) {
  auto r = make(7);
  const auto t0 = Clock::now();
  const auto p = with_detuning(cfg.lattice, CoupledPair::A);
  const double gap = decoherence::branch_gap(p);
  const double mu = decoherence::coupling_mu(p, CoupledPair::A);
  bool ok = true;
  std::string detail;
  int regime = 0;
  for (double x : {0.1, 1.0, 10.0}) {
    const double tc = x / gap;
    const double tf = 400.0 * std::max(tc, 1.0 / gap);
    // sigma chosen so that p(t_final) is about 0.01
    const double s_unit = 2.0 * tc / (1.0 + x * x);
    const double sigma = std::sqrt(0.01 / (mu * mu * s_unit * tf));
    const auto model = decoherence::NoiseModel::ornstein_uhlenbeck(sigma, tc);
    const auto curve = decoherence::monte_carlo_decoherence(
        gap, mu, model, tf, kMcEnsemble, cfg.seed + static_cast<std::uint64_t>(regime++),
        {.n_samples = 40});
    const double rate = decoherence::fitted_rate(curve, tf / 4.0);
    const double analytic = 1.0 / decoherence::tau1(mu, model, gap);
    const double rel = rate / analytic - 1.0;
    ok = ok && std::abs(rel) <= kRateRel;
    detail += fmt("gap tau_c = %g: slope/analytic - 1 = %+.4f; ", x, rel);
  }
  const double secs = since(t0);
  r.pass = ok && secs < kMcSeconds;
  r.measured = detail + fmt("n = %d, tol %.0f%%, %.1f s (limit %.0f s)", kMcEnsemble,
                            100 * kRateRel, secs, kMcSeconds);
  return r;
}

CriterionResult propagator_quality(const config::RunConfig& cfg) {
  auto r = make(8);
  const auto p = with_detuning(cfg.lattice, CoupledPair::A);
  const auto grid = motional::Grid::for_lattice(p, 8, 2048);
  const double mass = p.species.mass;
  const double omega = lattice::harmonic_frequency(p);

  // norm over 10^4 lattice steps
  const double center = motional::well_center(p, Branch::Plus, 0);
  const auto w0 = motional::gaussian(grid, Branch::Plus, center + 0.3 / std::sqrt(2.0 * mass * omega),
                                     0.8 / std::sqrt(2.0 * mass * omega));
  const auto v = motional::branch_potential(p, Branch::Plus, grid);
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  const auto w1 = motional::propagate(w0, p, 0.5 * motional::kStabilityGuard / vmax, kNormSteps);
  const double norm_err = std::abs(w1.norm() - 1.0);

  // free Gaussian
  const double sigma0 = 200.0;
  const motional::Grid free{-40000.0, 40000.0, 4096};
  auto f = motional::gaussian(free, Branch::Plus, 0.0, sigma0);
  const double tf = 6.0 * mass * sigma0 * sigma0;
  motional::SplitStep s(free, std::vector<double>(4096, 0.0), mass, tf / 1000.0);
  s.step(f.amplitudes, 1000);
  const double expected = std::sqrt(sigma0 * sigma0 + std::pow(tf / (2.0 * mass * sigma0), 2));
  const double spread_err = std::abs(f.width() - expected) / expected;

  // deep well
  auto deep = LatticeParams::from_alpha(p.species, kDeepWellScale * p.alpha(), 0.0);
  deep = with_detuning(deep, CoupledPair::A);
  const auto gs = motional::ground_state(deep, Branch::Plus, 0, motional::Grid::for_lattice(deep, 8, 4096));
  const double w_deep = lattice::harmonic_frequency(deep);
  const double e = motional::energy(gs, deep) -
                   motional::branch_potential(deep, Branch::Plus, motional::well_center(deep, Branch::Plus, 0));
  const double ground_err = std::abs(e / (0.5 * w_deep) - 1.0);

  r.pass = norm_err <= kNormTol && spread_err <= kSpreadRel && ground_err <= kGroundRel;
  r.measured = fmt("norm drift %.2g over %d steps (tol %.0e); width rel. err %.2g (tol %.0e); "
                   "E0/(omega/2) - 1 = %.2g at %.0fx alpha (tol %.1f%%)",
                   norm_err, kNormSteps, kNormTol, spread_err, kSpreadRel, ground_err,
                   kDeepWellScale, 100 * kGroundRel);
  return r;
}

CriterionResult addressing(const config::RunConfig& cfg) {
  auto r = make(9);
  const auto& species = cfg.lattice.species;
  const auto map = qubit_control::address_map(species, cfg.field, kAddressSites);
  const double rabi = cfg.rabi_amplitude;
  double worst = 0.0;
  for (const auto& target : map) {
    const qubit_control::Pulse pulse{target.omega_z, rabi, qubit_control::pi_pulse(rabi),
                                     cfg.pulse_phase};
    for (const auto& other : map) {
      if (other.site == target.site) continue;
      worst = std::max(worst, qubit_control::crosstalk_bound(pulse, other.omega_z - target.omega_z));
    }
  }
  const qubit_control::Pulse pi{map[0].omega_z, rabi, qubit_control::pi_pulse(rabi), cfg.pulse_phase};
  const double transfer = std::norm(qubit_control::rabi_evolve({}, pi, map[0].omega_z).c_prime);
  r.pass = worst < kCrosstalkMax && std::abs(transfer - 1.0) <= kPiTransferTol;
  r.measured = fmt("max neighbour transfer %.5f on %d sites (limit %.2f); pi-pulse 1 - P = %.2g (tol %.0e)",
                   worst, kAddressSites, kCrosstalkMax, 1.0 - transfer, kPiTransferTol);
  return r;
}

CriterionResult conditional_gate(const config::RunConfig& cfg) {
  auto r = make(10);
  const auto p = with_detuning(cfg.lattice, CoupledPair::A);
  const auto b = gates::cnot_budget(p, cfg.field);
  const auto t = gates::cnot_simulate(p, cfg.field, kCnotDurationFactor / b.delta_omega);
  r.pass = t.flip_given_one >= kFlipOneMin && t.flip_given_zero <= kFlipZeroMax;
  r.measured = fmt("P(flip|1) = %.6f (min %.2f); P(flip|0) = %.6f (max %.2f)", t.flip_given_one,
                   kFlipOneMin, t.flip_given_zero, kFlipZeroMax);
  return r;
}

}  // namespace

CriterionResult run_criterion(int id, const config::RunConfig& cfg) {
  const auto t0 = Clock::now();
  CriterionResult r;
  try {
    switch (id) {
      case 1: r = potential_oracle(cfg); break;
      case 2: r = detuning_optimization(cfg); break;
      case 3: r = geometry(cfg); break;
      case 4: r = cnot_budget(cfg); break;
      case 5: r = tau2_escape(cfg); break;
      case 6: r = shielding(cfg); break;
      case 7: r = noise_equivalence(cfg); break;
      case 8: r = propagator_quality(cfg); break;
      case 9: r = addressing(cfg); break;
      case 10: r = conditional_gate(cfg); break;
      default: throw std::out_of_range("no criterion " + std::to_string(id));
    }
  } catch (const Error& e) {
    r = make(id);
    r.pass = false;
    r.measured = std::string("error (") + std::string(to_string(e.kind())) + "): " + e.what();
  }
  r.seconds = since(t0);
  return r;
}

std::vector<ReferenceCheck> reference_checks(const config::RunConfig& cfg) {
  const auto p = with_detuning(cfg.lattice, CoupledPair::A);
  std::vector<ReferenceCheck> out;
  const double tau = units::to_seconds(gates::cnot_budget(p, cfg.field).tau_cnot);
  out.push_back({"tau_cnot", tau, 1e-3, "s", tau >= kTauCnotLo && tau <= kTauCnotHi});
  const double t2 = units::to_seconds(motional::tau2(p));
  out.push_back({"tau2", t2, 1e-7, "s", t2 >= kTau2Lo && t2 <= kTau2Hi});
  const double mu = decoherence::coupling_mu(p, CoupledPair::A);
  const double sh = decoherence::amplitude_to_si(
      decoherence::shielding_requirement(mu, decoherence::branch_gap(p), units::seconds(kShieldingTarget))
          .amplitude);
  out.push_back({"shielding", sh, kShieldingReference, "T/sqrt(Hz)",
                 std::abs(sh - kShieldingReference) <= kShieldingRel * kShieldingReference});
  const double spacing = units::to_meters(lattice::well_geometry(p, 1).spacing);
  const double quarter = units::to_meters(p.species.wavelength) / 4.0;
  out.push_back({"lambda_over_4", spacing, quarter, "m",
                 std::abs(spacing - quarter) <= kSpacingRel * 4.0 * quarter});
  return out;
}

Report run_report(const config::RunConfig& cfg) {
  const auto t0 = Clock::now();
  Report rep;
  bool all = true;
  for (int id = 1; id <= kCriteria; ++id) {
    rep.criteria.push_back(run_criterion(id, cfg));
    all = all && rep.criteria.back().pass;
  }
  try {
    rep.reference = reference_checks(cfg);
  } catch (const Error&) {
    all = false;
  }
  for (const auto& c : rep.reference) all = all && c.pass;
  rep.seconds = since(t0);
  auto end = make(11);
  end.pass = all && rep.seconds < kReportBudgetSeconds;
  end.seconds = rep.seconds;
  int failed = 0;
  for (const auto& c : rep.criteria) failed += c.pass ? 0 : 1;
  end.measured = fmt("%d of %d criteria failed; %.1f s (limit %.0f s)", failed, kCriteria,
                     rep.seconds, kReportBudgetSeconds);
  rep.criteria.push_back(end);
  rep.pass = end.pass;
  return rep;
}

}  // namespace ramanqc::report
