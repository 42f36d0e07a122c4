#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ramanqc/config.hpp"
#include "ramanqc/error.hpp"
#include "ramanqc/output.hpp"
#include "ramanqc/units.hpp"

using namespace ramanqc;
namespace fs = std::filesystem;

namespace {

const fs::path kTmp = fs::path(RAMANQC_TEST_TMP) / "cli";

int sh(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string cli() { return RAMANQC_CLI_PATH; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_config(const std::string& name, const std::string& text) {
  fs::create_directories(kTmp);
  const auto p = kTmp / name;
  std::ofstream(p) << text;
  return p;
}

std::string config_error(const std::string& text) {
  try {
    config::parse_config(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
    return e.what();
  }
  FAIL("expected a configuration error");
  return {};
}

}  // namespace

TEST_CASE("empty config gives the Al profile") {
  const auto c = config::parse_config("{}");
  CHECK(units::to_meters(c.lattice.species.wavelength) == doctest::Approx(309e-9).epsilon(1e-14));
  CHECK(c.lattice.species.lande_g == doctest::Approx(4.0 / 3.0));
  CHECK(units::to_amu(c.lattice.species.mass) == doctest::Approx(26.98).epsilon(1e-3));
  CHECK(units::to_rad_per_s(c.lattice.alpha()) == doctest::Approx(units::kTwoPi * 1e7).epsilon(1e-12));
  CHECK(units::to_hz(c.field.increment(c.lattice.species)) == doctest::Approx(1e3).epsilon(1e-12));
  CHECK(c.lattice.raman_detuning == doctest::Approx(-c.lattice.alpha() / 15).epsilon(1e-14));
  CHECK(c.provenance.at("species.wavelength").rfind("default", 0) == 0);
  for (const auto& [k, v] : c.provenance) CHECK(v.rfind("default", 0) == 0);
}

TEST_CASE("config values and provenance") {
  const auto c = config::parse_config(R"({"lattice": {"alpha": 1e8, "pair": "B"}, "seed": 9})");
  CHECK(units::to_rad_per_s(c.lattice.alpha()) == doctest::Approx(1e8));
  CHECK(c.pair == lattice::CoupledPair::B);
  CHECK(c.lattice.raman_detuning == doctest::Approx(c.lattice.alpha() / 15));
  CHECK(c.seed == 9);
  CHECK(c.provenance.at("lattice.alpha") == "config");
  CHECK(c.provenance.at("species.mass") != "config");
  CHECK(config::config_hash(c) != config::config_hash(config::default_config()));
  CHECK(config::config_hash(config::parse_config("{}")) == config::config_hash(config::default_config()));
  CHECK(config::config_hash(c).size() == 16);
}

TEST_CASE("config errors") {
  CHECK(config_error(R"({"species": {"mass": -1}})").find("species.mass") != std::string::npos);
  CHECK(config_error(R"({"speceis": {}})").find("speceis") != std::string::npos);
  CHECK(config_error(R"({"species": {"colour": 1}})").find("species.colour") != std::string::npos);
  CHECK(config_error(R"({"lattice": {"alpha": "big"}})").find("lattice.alpha") != std::string::npos);
  CHECK(config_error(R"({"grid": {"points": 1000}})").find("grid.points") != std::string::npos);
  CHECK(config_error(R"({"noise": {"kind": "pink"}})").find("noise.kind") != std::string::npos);
  CHECK(config_error(R"({"species": {"j_ground": 0.5}})").find("species.j_ground") != std::string::npos);
  CHECK(config_error(R"({"field": {"b0": 0.01, "site_increment": 5}})").find("field") != std::string::npos);
  const auto parse = config_error("{\n  \"seed\": 1,\n  \"lattice\": {,}\n}");
  CHECK(parse.find("line 3") != std::string::npos);
  CHECK(parse.find("column") != std::string::npos);
}

TEST_CASE("number formatting") {
  CHECK(output::format_number(0.1) == "0.10000000000000001");
  CHECK(output::format_number(2.0) == "2");
  CHECK(std::stod(output::format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("unknown command exits 2") {
  CHECK(sh(cli() + " frobnicate > /dev/null 2>&1") == 2);
  CHECK(sh(cli() + " > /dev/null 2>&1") == 2);
  CHECK(sh(cli() + " potentials --bogus > /dev/null 2>&1") == 2);
}

TEST_CASE("computation errors exit 1 with a typed error") {
  const auto bad = write_config("bad.json", R"({"species": {"mass": -1}})");
  const auto err = kTmp / "bad.err";
  CHECK(sh(cli() + " potentials --config " + bad.string() + " --output " + (kTmp / "x").string() +
           " > /dev/null 2> " + err.string()) == 1);
  const auto j = nlohmann::json::parse(slurp(err));
  CHECK(j["error"]["kind"] == "config");
  CHECK(j["error"]["message"].get<std::string>().find("species.mass") != std::string::npos);

  // noise too strong for the perturbative Monte Carlo
  const auto loud = write_config("loud.json", R"({"noise": {"sigma": 1e-3}})");
  CHECK(sh(cli() + " noise --config " + loud.string() + " --output " + (kTmp / "x").string() +
           " > /dev/null 2> " + err.string()) == 1);
  CHECK(nlohmann::json::parse(slurp(err))["error"]["kind"] == "invalid_argument");
}

TEST_CASE("noise output is byte-identical for a fixed seed") {
  const auto a = kTmp / "noise_a";
  const auto b = kTmp / "noise_b";
  REQUIRE(sh(cli() + " noise --seed 42 --output " + a.string() + " > /dev/null") == 0);
  REQUIRE(sh(cli() + " noise --seed 42 --output " + b.string() + " > /dev/null") == 0);
  const auto ca = slurp(a / "noise.csv");
  CHECK(!ca.empty());
  CHECK(ca == slurp(b / "noise.csv"));
  CHECK(slurp(a / "noise.json") == slurp(b / "noise.json"));
  const auto c = kTmp / "noise_c";
  REQUIRE(sh(cli() + " noise --seed 43 --output " + c.string() + " > /dev/null") == 0);
  CHECK(ca != slurp(c / "noise.csv"));
  const auto j = nlohmann::json::parse(slurp(a / "noise.json"));
  for (const char* key : {"tau1_s", "tau2_s", "gap_rad_s", "shielding_T_per_sqrtHz"}) {
    CHECK(j.contains(key));
  }
  CHECK(ca.rfind("# command: noise\n# config_hash: ", 0) == 0);
  CHECK(ca.find("t_s,p_hat,std_error") != std::string::npos);
}

TEST_CASE("potentials, address map and cnot budget artifacts") {
  const auto dir = kTmp / "artifacts";
  REQUIRE(sh(cli() + " potentials --output " + dir.string() + " > /dev/null") == 0);
  const auto csv = slurp(dir / "potentials.csv");
  std::istringstream in(csv);
  std::string line;
  int data = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) continue;
    if (!header) {
      CHECK(line == "z_m,U_plus_au,U_minus_au,pair");
      header = true;
      continue;
    }
    ++data;
  }
  CHECK(data == 1000);
  CHECK(csv.find("# units: ") != std::string::npos);
  CHECK(csv.find("# config_hash: " + config::config_hash(config::default_config())) != std::string::npos);

  REQUIRE(sh(cli() + " address-map --format json --output " + dir.string() + " > /dev/null") == 0);
  const auto map = nlohmann::json::parse(slurp(dir / "address_map.json"));
  REQUIRE(map["sites"].size() == 100);
  CHECK(map["sites"][1]["omega_Hz"].get<double>() - map["sites"][0]["omega_Hz"].get<double>() ==
        doctest::Approx(1e3).epsilon(1e-9));
  CHECK(map["sites"][0].contains("z_m"));
  CHECK(map["metadata"]["units"].is_string());

  REQUIRE(sh(cli() + " cnot-budget --output " + dir.string() + " > /dev/null") == 0);
  const auto budget = nlohmann::json::parse(slurp(dir / "cnot_budget.json"));
  CHECK(budget["tau_cnot_s"].get<double>() == doctest::Approx(1.58975e-3).epsilon(1e-5));
  CHECK(budget["R_m"].get<double>() == doctest::Approx(77.25e-9));
  for (const char* key : {"deltaB_T", "delta_omega_rad_s", "margin"}) CHECK(budget.contains(key));
}

TEST_CASE("output directory from the environment") {
  const auto env_dir = kTmp / "from_env";
  const auto flag_dir = kTmp / "from_flag";
  fs::remove_all(env_dir);
  fs::remove_all(flag_dir);
  REQUIRE(sh("RAMANQC_OUTPUT_DIR=" + env_dir.string() + " " + cli() + " optimize-delta > /dev/null") == 0);
  CHECK(fs::exists(env_dir / "optimize_delta.json"));
  REQUIRE(sh("RAMANQC_OUTPUT_DIR=" + env_dir.string() + " " + cli() + " pulse --output " +
             flag_dir.string() + " > /dev/null") == 0);
  CHECK(fs::exists(flag_dir / "pulse.json"));
  CHECK_FALSE(fs::exists(env_dir / "pulse.json"));
}
