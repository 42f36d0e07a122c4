#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ramanqc/commands.hpp"
#include "ramanqc/config.hpp"
#include "ramanqc/error.hpp"

namespace {

constexpr const char* kOutputEnv = "RAMANQC_OUTPUT_DIR";

std::string usage() {
  std::string s = "usage: ramanqc <command> [--config FILE] [--output DIR] [--seed N] [--format csv|json]\n"
                  "commands:";
  for (const auto& n : ramanqc::commands::names()) s += " " + n;
  return s + "\n";
}

int fail(const ramanqc::Error& e) {
  nlohmann::ordered_json j;
  j["error"]["kind"] = std::string(ramanqc::to_string(e.kind()));
  j["error"]["message"] = e.what();
  std::cerr << j.dump(2) << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Raman lambda/4 lattice quantum computing model"};
  std::string command, config_path, output, format = "default";
  std::uint64_t seed = 0;
  app.add_option("command", command, "command to run")->required();
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--output", output, "output directory");
  auto* seed_opt = app.add_option("--seed", seed, "master seed");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json", "default"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help() << usage();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << usage();
    return 2;
  }
  if (!ramanqc::commands::known(command)) {
    std::cerr << "unknown command: " << command << "\n" << usage();
    return 2;
  }

  try {
    auto cfg = config_path.empty() ? ramanqc::config::default_config()
                                   : ramanqc::config::load_config(config_path);
    if (*seed_opt) {
      cfg.seed = seed;
      cfg.provenance["seed"] = "command line";
    }
    std::string dir = cfg.output_dir;
    if (const char* env = std::getenv(kOutputEnv); env && *env) dir = env;
    if (!output.empty()) dir = output;
    const auto fmt = format == "csv"    ? ramanqc::commands::Format::Csv
                     : format == "json" ? ramanqc::commands::Format::Json
                                        : ramanqc::commands::Format::Default;
    return ramanqc::commands::run(command, cfg, fmt, dir, std::cout);
  } catch (const ramanqc::Error& e) {
    return fail(e);
  } catch (const std::exception& e) {
    return fail(ramanqc::Error(ramanqc::ErrorKind::InvalidArgument, e.what()));
  }
}
