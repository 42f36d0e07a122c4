#include "ramanqc/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ramanqc/error.hpp"
#include "ramanqc/units.hpp"

namespace ramanqc::config {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

const char* kAlProfile = "default: Al 3p_3/2 profile";

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::Config, field + ": " + what);
}

// Reads one JSON object, rejecting keys it was not asked about.
class Section {
 public:
  Section(const json* node, std::string prefix, RunConfig& cfg, ojson& canonical)
      : node_(node), prefix_(std::move(prefix)), cfg_(cfg), canonical_(canonical) {
    if (node_ && !node_->is_object()) fail(prefix_, "expected an object");
  }

  bool has(const std::string& key) const { return node_ && node_->contains(key); }

  double number(const std::string& key, double fallback, const std::string& reason) {
    const std::string path = name(key);
    double v = fallback;
    if (has(key)) {
      const json& j = node_->at(key);
      if (!j.is_number()) fail(path, "expected a number");
      v = j.get<double>();
      if (!std::isfinite(v)) fail(path, "must be finite");
      cfg_.provenance[path] = "config";
    } else {
      cfg_.provenance[path] = reason;
    }
    seen_.insert(key);
    canonical_[key] = v;
    return v;
  }

  long long integer(const std::string& key, long long fallback, long long lo,
                    const std::string& reason) {
    const std::string path = name(key);
    long long v = fallback;
    if (has(key)) {
      const json& j = node_->at(key);
      if (!j.is_number_integer()) fail(path, "expected an integer");
      v = j.get<long long>();
      cfg_.provenance[path] = "config";
    } else {
      cfg_.provenance[path] = reason;
    }
    if (v < lo) fail(path, "must be >= " + std::to_string(lo));
    seen_.insert(key);
    canonical_[key] = v;
    return v;
  }

  std::string text(const std::string& key, const std::string& fallback, const std::string& reason) {
    const std::string path = name(key);
    std::string v = fallback;
    if (has(key)) {
      const json& j = node_->at(key);
      if (!j.is_string()) fail(path, "expected a string");
      v = j.get<std::string>();
      cfg_.provenance[path] = "config";
    } else {
      cfg_.provenance[path] = reason;
    }
    seen_.insert(key);
    canonical_[key] = v;
    return v;
  }

  const json* child(const std::string& key) {
    seen_.insert(key);
    return has(key) ? &node_->at(key) : nullptr;
  }

  void finish() const {
    if (!node_) return;
    for (auto it = node_->begin(); it != node_->end(); ++it) {
      if (!seen_.count(it.key())) fail(name(it.key()), "unknown key");
    }
  }

  std::string name(const std::string& key) const {
    return prefix_.empty() ? key : prefix_ + "." + key;
  }

 private:
  const json* node_;
  std::string prefix_;
  RunConfig& cfg_;
  ojson& canonical_;
  std::set<std::string> seen_;
};

lattice::CoupledPair parse_pair(const std::string& s) {
  if (s == "A") return lattice::CoupledPair::A;
  if (s == "B") return lattice::CoupledPair::B;
  fail("lattice.pair", "expected \"A\" or \"B\"");
}

decoherence::NoiseKind parse_kind(const std::string& s) {
  if (s == "ornstein_uhlenbeck") return decoherence::NoiseKind::OrnsteinUhlenbeck;
  if (s == "band_limited_white") return decoherence::NoiseKind::BandLimitedWhite;
  if (s == "tabulated") return decoherence::NoiseKind::Tabulated;
  fail("noise.kind", "expected ornstein_uhlenbeck, band_limited_white or tabulated");
}

// Converts library validation failures into configuration errors.
template <class F>
void validated(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    throw Error(ErrorKind::Config, e.what());
  }
}

RunConfig build(const json& root) {
  if (!root.is_object()) fail("config", "top level must be an object");
  RunConfig cfg;
  ojson canon = ojson::object();
  Section top(&root, "", cfg, canon);

  // species
  const auto al = lattice::AtomSpecies::aluminum();
  ojson c_species = ojson::object();
  Section sp(top.child("species"), "species", cfg, c_species);
  lattice::AtomSpecies species;
  species.name = sp.text("name", al.name, kAlProfile);
  species.mass = units::amu(sp.number("mass", units::to_amu(al.mass),
                                     std::string(kAlProfile) + ", M = 26.98 u"));
  species.lande_g = sp.number("lande_g", al.lande_g, std::string(kAlProfile) + ", g = 4/3");
  species.j_ground = sp.number("j_ground", al.j_ground, kAlProfile);
  species.j_excited = sp.number("j_excited", al.j_excited, kAlProfile);
  species.wavelength = units::meters(
      sp.number("wavelength", units::to_meters(al.wavelength), std::string(kAlProfile) + ", 309 nm"));
  sp.finish();
  canon["species"] = c_species;

  // lattice
  ojson c_lattice = ojson::object();
  Section la(top.child("lattice"), "lattice", cfg, c_lattice);
  const double alpha = units::rad_per_s(
      la.number("alpha", units::kTwoPi * 1e7, "default: alpha = 2 pi x 10^7 rad/s"));
  const double big_delta = units::rad_per_s(la.number(
      "one_photon_detuning", std::copysign(units::kTwoPi * 10e9, alpha == 0.0 ? 1.0 : alpha),
      "default: 2 pi x 10 GHz, sign of alpha"));
  cfg.pair = parse_pair(la.text("pair", "A", "default: PairA"));
  const double fallback_delta =
      units::to_rad_per_s(lattice::optimal_detuning(alpha, cfg.pair));
  const double delta = units::rad_per_s(la.number(
      "raman_detuning", fallback_delta, "default: optimal detuning -/+ alpha/15 for the pair"));
  la.finish();
  canon["lattice"] = c_lattice;
  validated([&] {
    species.validate();
    cfg.lattice = lattice::LatticeParams::from_alpha(species, alpha, delta, big_delta);
    cfg.lattice.validate();
  });

  // field
  ojson c_field = ojson::object();
  Section fi(top.child("field"), "field", cfg, c_field);
  const bool absolute = fi.has("b0") || fi.has("gradient");
  const bool relative = fi.has("zeeman_frequency") || fi.has("site_increment");
  if (absolute && relative) {
    fail("field", "give either zeeman_frequency/site_increment or b0/gradient, not both");
  }
  if (absolute) {
    if (!fi.has("b0") || !fi.has("gradient")) fail("field", "b0 and gradient go together");
    cfg.field.b0 = units::tesla(fi.number("b0", 0.0, ""));
    cfg.field.gradient = units::tesla(fi.number("gradient", 0.0, "")) / units::meters(1.0);
    cfg.field.site_spacing = species.wavelength / 4.0;
  } else {
    const double wz = fi.number("zeeman_frequency", 1e9, "default: Zeeman splitting 1 GHz");
    const double inc = fi.number("site_increment", 1e3, "default: 1 kHz per site");
    validated([&] {
      cfg.field = qubit_control::FieldProfile::for_targets(species, units::hz(wz), units::hz(inc));
    });
  }
  cfg.n_sites = static_cast<int>(fi.integer("n_sites", 100, 1, "default: 100 sites"));
  fi.finish();
  canon["field"] = c_field;

  // pulse
  ojson c_pulse = ojson::object();
  Section pu(top.child("pulse"), "pulse", cfg, c_pulse);
  const double rabi_hz = pu.number("rabi_frequency", 100.0, "default: Omega_R = 2 pi x 100 Hz");
  if (!(rabi_hz > 0.0)) fail("pulse.rabi_frequency", "must be positive");
  cfg.rabi_amplitude = units::hz(rabi_hz);
  cfg.pulse_phase = pu.number("phase", 0.0, "default: 0");
  pu.finish();
  canon["pulse"] = c_pulse;

  // noise
  ojson c_noise = ojson::object();
  Section no(top.child("noise"), "noise", cfg, c_noise);
  cfg.noise.kind = parse_kind(no.text("kind", "ornstein_uhlenbeck", "default: Ornstein-Uhlenbeck"));
  cfg.noise.sigma = units::tesla(no.number("sigma", 1e-9, "default: 1 nT rms"));
  cfg.noise.tau_c = units::seconds(no.number("tau_c", 1e-6, "default: 1 us"));
  cfg.noise.cutoff = units::rad_per_s(
      no.number("cutoff", units::kTwoPi * 1e3, "default: 2 pi x 1 kHz"));
  if (const json* t = no.child("table")) {
    if (!t->is_array()) fail("noise.table", "expected an array of [omega_rad_s, S_T2_per_Hz]");
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < t->size(); ++i) {
      const json& row = (*t)[i];
      const std::string where = "noise.table[" + std::to_string(i) + "]";
      if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
        fail(where, "expected [omega_rad_s, S_T2_per_Hz]");
      }
      const double w = row[0].get<double>();
      const double s = row[1].get<double>();
      cfg.noise.table.emplace_back(
          units::rad_per_s(w),
          units::to_internal({s, units::Dimension::SpectralDensityB}));
      rows.push_back({w, s});
    }
    cfg.provenance["noise.table"] = "config";
    c_noise["table"] = rows;
  }
  cfg.target_coherence =
      units::seconds(no.number("target_coherence", 10.0, "default: 10 s coherence target"));
  if (!(cfg.target_coherence > 0.0)) fail("noise.target_coherence", "must be positive");
  no.finish();
  canon["noise"] = c_noise;
  validated([&] { cfg.noise.validate(); });

  // Monte Carlo, grid, motional
  ojson c_mc = ojson::object();
  Section mc(top.child("monte_carlo"), "monte_carlo", cfg, c_mc);
  cfg.mc_ensemble = static_cast<int>(mc.integer("ensemble", 100, 2, "default: 100 realizations"));
  cfg.mc_samples = static_cast<int>(mc.integer("samples", 100, 1, "default: 100 curve points"));
  mc.finish();
  canon["monte_carlo"] = c_mc;

  ojson c_grid = ojson::object();
  Section gr(top.child("grid"), "grid", cfg, c_grid);
  cfg.grid_periods = static_cast<int>(gr.integer("periods", 16, 4, "default: 16 lattice periods"));
  cfg.grid_points = static_cast<int>(gr.integer("points", 4096, 256, "default: 4096 points"));
  if (cfg.grid_points & (cfg.grid_points - 1)) fail("grid.points", "must be a power of two");
  gr.finish();
  canon["grid"] = c_grid;

  ojson c_mot = ojson::object();
  Section mo(top.child("motional"), "motional", cfg, c_mot);
  cfg.escape_span = mo.number("escape_span", 5.0, "default: 5 tau2");
  if (!(cfg.escape_span > 0.0)) fail("motional.escape_span", "must be positive");
  mo.finish();
  canon["motional"] = c_mot;

  // seed and output
  if (top.has("seed")) {
    const json& s = root.at("seed");
    if (!s.is_number_unsigned()) fail("seed", "expected a non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
    cfg.provenance["seed"] = "config";
  } else {
    cfg.provenance["seed"] = "default: 1";
  }
  top.child("seed");
  canon["seed"] = cfg.seed;
  cfg.output_dir = top.text("output_dir", "out", "default: ./out");
  canon["output_dir"] = cfg.output_dir;
  top.finish();

  cfg.canonical = canon.dump();
  return cfg;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorKind::Config, "parse error at line " + std::to_string(line) + ", column " +
                                       std::to_string(column) + ": " + e.what());
  }
  return build(root);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Config, "cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

RunConfig default_config() { return parse_config("{}"); }

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : cfg.canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace ramanqc::config
