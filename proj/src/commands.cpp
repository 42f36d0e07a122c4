#include "ramanqc/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <ostream>

#include "ramanqc/decoherence.hpp"
#include "ramanqc/error.hpp"
#include "ramanqc/gates.hpp"
#include "ramanqc/lattice.hpp"
#include "ramanqc/motional.hpp"
#include "ramanqc/output.hpp"
#include "ramanqc/qubit_control.hpp"
#include "ramanqc/report.hpp"
#include "ramanqc/units.hpp"

namespace ramanqc::commands {

using lattice::Branch;
using lattice::CoupledPair;
using output::ojson;
using output::Table;

namespace {

struct Context {
  const config::RunConfig& cfg;
  Format format;
  std::filesystem::path dir;
  std::ostream& log;
  std::string command;

  std::string stem() const {
    std::string s = command;
    std::replace(s.begin(), s.end(), '-', '_');
    return s;
  }

  void write_json(const ojson& body, const std::string& suffix = "") const {
    ojson doc;
    doc["metadata"] = output::metadata(cfg, command);
    for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
    const auto path = dir / (stem() + suffix + ".json");
    output::write_file(path.string(), output::dump(doc));
    log << "wrote " << path.string() << "\n";
  }

  void write_csv(const Table& t, const std::string& suffix = "") const {
    const auto path = dir / (stem() + suffix + ".csv");
    output::write_file(path.string(), output::csv(cfg, command, t));
    log << "wrote " << path.string() << "\n";
  }

  // Curves default to CSV; --format json embeds them in the JSON document.
  void write_curve(const Table& t, ojson summary, const std::string& key) const {
    if (format == Format::Json) {
      summary[key] = output::table_json(t);
      write_json(summary);
    } else {
      write_csv(t);
      write_json(summary);
    }
  }
};

lattice::LatticeParams at_optimum(const lattice::LatticeParams& p, CoupledPair pair) {
  auto q = p;
  q.raman_detuning = lattice::optimal_detuning(p.alpha(), pair);
  return q;
}

lattice::LatticeParams qubit_lattice(const config::RunConfig& cfg) {
  return at_optimum(cfg.lattice, CoupledPair::A);
}

int potentials(const Context& c) {
  const auto& p = c.cfg.lattice;
  const bool optimal = lattice::is_optimal_detuning(p, c.cfg.pair);
  const double lam = p.species.wavelength;
  const int n = 1000;
  Table t;
  t.columns = {"z_m", "U_plus_au", "U_minus_au"};
  t.text_header = "pair";
  const std::string pair(lattice::to_string(c.cfg.pair));
  for (int i = 0; i < n; ++i) {
    const double z = lam * i / n;  // two lambda/2 periods
    const auto u = optimal ? lattice::potential_optimal(p, c.cfg.pair, z)
                           : lattice::potential_general(p, c.cfg.pair, z);
    t.rows.push_back({units::to_meters(z), u.plus, u.minus});
    t.text_column.push_back(pair);
  }
  ojson s;
  s["pair"] = pair;
  s["optimal_detuning"] = optimal;
  s["potential_form"] = optimal ? "signed cos(2kz) branches" : "adiabatic eigenvalues";
  s["alpha_rad_s"] = units::to_rad_per_s(p.alpha());
  s["raman_detuning_rad_s"] = units::to_rad_per_s(p.raman_detuning);
  s["barrier_rad_s"] = units::to_rad_per_s(lattice::barrier_height(p, c.cfg.pair));
  s["points"] = n;
  s["periods"] = 2;
  c.write_curve(t, s, "rows");
  return 0;
}

int optimize_delta(const Context& c) {
  const auto& p = c.cfg.lattice;
  const auto r = lattice::optimize_detuning(p, c.cfg.pair);
  const CoupledPair other = c.cfg.pair == CoupledPair::A ? CoupledPair::B : CoupledPair::A;
  auto at = p;
  at.raman_detuning = r.delta;
  const double ratio = lattice::barrier_height(at, other) /
                       lattice::barrier_height(at_optimum(p, other), other);
  ojson s;
  s["pair"] = std::string(lattice::to_string(c.cfg.pair));
  s["delta_rad_s"] = units::to_rad_per_s(r.delta);
  s["delta_over_alpha"] = r.delta / p.alpha();
  s["barrier_rad_s"] = units::to_rad_per_s(r.barrier);
  s["barrier_over_alpha"] = r.barrier / p.alpha();
  s["well_depth_residual_rad_s"] = units::to_rad_per_s(r.residual);
  s["iterations"] = r.iterations;
  s["other_pair_barrier_ratio"] = ratio;
  c.write_json(s);
  return 0;
}

int dressed_states(const Context& c) {
  const auto& cfg = c.cfg;
  const double b0 = cfg.field.b0;
  ojson states = ojson::array();
  for (auto pair : {CoupledPair::A, CoupledPair::B}) {
    const auto p = at_optimum(cfg.lattice, pair);
    for (const auto& s : lattice::dressed_states(p, pair, b0)) {
      ojson j;
      j["pair"] = std::string(lattice::to_string(pair));
      j["branch"] = std::string(lattice::to_string(s.branch));
      j["M"] = {s.twice_m[0] / 2.0, s.twice_m[1] / 2.0};
      j["amplitudes"] = {{s.amplitudes[0].real(), s.amplitudes[0].imag()},
                         {s.amplitudes[1].real(), s.amplitudes[1].imag()}};
      j["phase_rates_rad_s"] = {units::to_rad_per_s(s.phase_energies[0]),
                                units::to_rad_per_s(s.phase_energies[1])};
      j["raman_detuning_rad_s"] = units::to_rad_per_s(p.raman_detuning);
      states.push_back(j);
    }
  }
  const auto spec = qubit_control::resonance_spectrum(
      cfg.lattice.species, b0, std::abs(lattice::optimal_detuning(cfg.lattice.alpha(), CoupledPair::A)));
  ojson s;
  s["b0_T"] = units::to_tesla(b0);
  s["states"] = states;
  s["resonances_rad_s"] = {units::to_rad_per_s(spec.omega_z_minus_delta),
                           units::to_rad_per_s(spec.omega_z),
                           units::to_rad_per_s(spec.omega_z_plus_delta)};
  c.write_json(s);
  return 0;
}

int address_map(const Context& c) {
  const auto map = qubit_control::address_map(c.cfg.lattice.species, c.cfg.field, c.cfg.n_sites);
  Table t;
  t.columns = {"site", "z_m", "omega_Hz"};
  for (const auto& s : map) {
    t.rows.push_back({static_cast<double>(s.site), units::to_meters(s.position), units::to_hz(s.omega_z)});
  }
  if (c.format == Format::Csv) {
    c.write_csv(t);
    return 0;
  }
  ojson rows = ojson::array();
  for (const auto& s : map) {
    ojson r;
    r["site"] = s.site;
    r["z_m"] = units::to_meters(s.position);
    r["omega_Hz"] = units::to_hz(s.omega_z);
    rows.push_back(r);
  }
  ojson body;
  body["increment_Hz"] = units::to_hz(c.cfg.field.increment(c.cfg.lattice.species));
  body["sites"] = rows;
  c.write_json(body);
  return 0;
}

int pulse(const Context& c) {
  const auto& cfg = c.cfg;
  const auto map = qubit_control::address_map(cfg.lattice.species, cfg.field, std::max(2, cfg.n_sites));
  const double rabi = cfg.rabi_amplitude;
  const qubit_control::Pulse p{map[0].omega_z, rabi, qubit_control::pi_pulse(rabi), cfg.pulse_phase};
  const auto target = qubit_control::rabi_evolve({}, p, map[0].omega_z);
  const auto neighbour = qubit_control::rabi_evolve({}, p, map[1].omega_z);
  ojson s;
  s["carrier_rad_s"] = units::to_rad_per_s(p.carrier);
  s["rabi_rad_s"] = units::to_rad_per_s(rabi);
  s["duration_s"] = units::to_seconds(p.duration);
  s["phase_rad"] = p.phase;
  s["target_transfer"] = std::norm(target.c_prime);
  s["neighbour_transfer"] = std::norm(neighbour.c_prime);
  s["neighbour_crosstalk_bound"] = qubit_control::crosstalk_bound(p, map[1].omega_z - map[0].omega_z);
  const auto warn = qubit_control::rwa_warning(p, map[0].omega_z);
  s["rwa_warning"] = warn ? ojson(*warn) : ojson(nullptr);
  if (warn) c.log << "warning: " << *warn << "\n";
  c.write_json(s);
  return 0;
}

int cnot_budget(const Context& c) {
  const auto p = qubit_lattice(c.cfg);
  const auto b = gates::cnot_budget(p, c.cfg.field);
  const auto m = gates::qubit_moments(p, Branch::Plus);
  ojson s;
  s["R_m"] = units::to_meters(b.separation);
  s["deltaB_T"] = units::to_tesla(b.delta_b);
  s["delta_omega_rad_s"] = units::to_rad_per_s(b.delta_omega);
  s["tau_cnot_s"] = units::to_seconds(b.tau_cnot);
  s["margin"] = b.addressing_margin;
  s["mu_one_J_per_T"] = units::from_internal(m.mu_one, units::Dimension::MagneticMoment).value;
  s["mu_zero_J_per_T"] = units::from_internal(m.mu_zero, units::Dimension::MagneticMoment).value;
  Table t;
  t.columns = {"duration_over_tau_cnot", "duration_s", "P_flip_control1", "P_flip_control0"};
  for (int k = 1; k <= 50; ++k) {
    const auto r = gates::cnot_simulate(p, c.cfg.field, k * b.tau_cnot);
    t.rows.push_back({static_cast<double>(k), units::to_seconds(k * b.tau_cnot), r.flip_given_one,
                      r.flip_given_zero});
  }
  if (c.format == Format::Json) {
    s["conditional_transfer"] = output::table_json(t);
  } else {
    c.write_csv(t, "_conditional");
  }
  c.write_json(s);
  return 0;
}

int motional_cmd(const Context& c) {
  const auto p = qubit_lattice(c.cfg);
  const double t2 = motional::tau2(p);
  motional::EscapeOptions opts;
  opts.grid = motional::Grid::for_lattice(p, c.cfg.grid_periods, c.cfg.grid_points);
  const auto curve = motional::inverted_well_escape(p, 0, c.cfg.escape_span * t2, opts);
  Table t;
  t.columns = {"t_s", "norm", "energy_au", "P0"};
  for (std::size_t i = 0; i < curve.time.size(); ++i) {
    t.rows.push_back({units::to_seconds(curve.time[i]), curve.norm[i], curve.energy[i], curve.survival[i]});
  }
  const auto ld = motional::lamb_dicke(p);
  ojson s;
  s["tau2_s"] = units::to_seconds(t2);
  s["omega_osc_rad_s"] = units::to_rad_per_s(lattice::harmonic_frequency(p));
  s["eta"] = ld.eta;
  s["lamb_dicke"] = ld.satisfied;
  s["bound_levels"] = motional::bound_levels(p);
  s["escape_1_over_e_s"] = curve.decay_time ? ojson(units::to_seconds(*curve.decay_time)) : ojson(nullptr);
  c.write_curve(t, s, "curve");
  return 0;
}

int noise(const Context& c) {
  const auto& cfg = c.cfg;
  const auto p = qubit_lattice(cfg);
  const auto rep = decoherence::decoherence_report(p, cfg.noise, cfg.target_coherence);
  ojson s;
  s["tau1_s"] = units::to_seconds(rep.tau1);
  s["tau2_s"] = units::to_seconds(rep.tau2);
  s["gap_rad_s"] = units::to_rad_per_s(rep.gap);
  s["shielding_T_per_sqrtHz"] = decoherence::amplitude_to_si(rep.shielding_threshold);
  s["target_coherence_s"] = units::to_seconds(cfg.target_coherence);
  s["coupling_mu_J_per_T"] = units::from_internal(rep.coupling_mu, units::Dimension::MagneticMoment).value;
  if (cfg.noise.kind == decoherence::NoiseKind::Tabulated) {
    s["monte_carlo"] = nullptr;
    c.write_json(s);
    return 0;
  }
  const double t_final = 400.0 * std::max(cfg.noise.correlation_time(), 1.0 / rep.gap);
  const auto curve = decoherence::monte_carlo_decoherence(
      rep.gap, rep.coupling_mu, cfg.noise, t_final, cfg.mc_ensemble, cfg.seed,
      {.n_samples = cfg.mc_samples, .threads = 0});
  Table t;
  t.columns = {"t_s", "p_hat", "std_error", "p_linear"};
  for (std::size_t i = 0; i < curve.time.size(); ++i) {
    t.rows.push_back({units::to_seconds(curve.time[i]), curve.mean[i], curve.std_error[i],
                      curve.time[i] / rep.tau1});
  }
  ojson mc;
  mc["ensemble"] = cfg.mc_ensemble;
  mc["t_final_s"] = units::to_seconds(t_final);
  mc["rk4_step_s"] = units::to_seconds(curve.step);
  mc["fitted_rate_per_s"] = 1.0 / units::to_seconds(1.0 / decoherence::fitted_rate(curve, t_final / 4));
  mc["analytic_rate_per_s"] = 1.0 / units::to_seconds(rep.tau1);
  s["monte_carlo"] = mc;
  c.write_curve(t, s, "curve");
  return 0;
}

int report_cmd(const Context& c) {
  const auto rep = report::run_report(c.cfg);
  ojson crit = ojson::array();
  for (const auto& r : rep.criteria) {
    c.log << (r.pass ? "PASS" : "FAIL") << "  [" << r.id << "] " << r.title << ": " << r.measured << "\n";
    ojson j;
    j["id"] = r.id;
    j["title"] = r.title;
    j["pass"] = r.pass;
    j["measured"] = r.measured;
    j["seconds"] = r.seconds;
    crit.push_back(j);
  }
  ojson reference;
  for (const auto& pc : rep.reference) {
    ojson j;
    j["result"] = pc.pass ? "pass" : "fail";
    j["value"] = pc.value;
    j["reference"] = pc.reference;
    j["unit"] = pc.unit;
    reference[pc.name] = j;
    c.log << (pc.pass ? "PASS" : "FAIL") << "  " << pc.name << " = " << output::format_number(pc.value)
          << " " << pc.unit << "\n";
  }
  ojson s;
  s["pass"] = rep.pass;
  s["seconds"] = rep.seconds;
  s["reference"] = reference;
  s["criteria"] = crit;
  c.write_json(s);
  return rep.pass ? 0 : 1;
}

}  // namespace

const std::vector<std::string>& names() {
  static const std::vector<std::string> n = {"potentials", "optimize-delta", "dressed-states",
                                             "address-map", "pulse", "cnot-budget",
                                             "motional", "noise", "report"};
  return n;
}

bool known(const std::string& command) {
  const auto& n = names();
  return std::find(n.begin(), n.end(), command) != n.end();
}

int run(const std::string& command, const config::RunConfig& cfg, Format format,
        const std::string& out_dir, std::ostream& log) {
  const Context c{cfg, format, out_dir, log, command};
  if (command == "potentials") return potentials(c);
  if (command == "optimize-delta") return optimize_delta(c);
  if (command == "dressed-states") return dressed_states(c);
  if (command == "address-map") return address_map(c);
  if (command == "pulse") return pulse(c);
  if (command == "cnot-budget") return cnot_budget(c);
  if (command == "motional") return motional_cmd(c);
  if (command == "noise") return noise(c);
  if (command == "report") return report_cmd(c);
  throw Error(ErrorKind::InvalidArgument, "unknown command " + command);
}

}  // namespace ramanqc::commands
