#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ramanqc/config.hpp"

namespace ramanqc::commands {

enum class Format { Default, Csv, Json };

const std::vector<std::string>& names();
bool known(const std::string& command);

// Runs one command and writes its artifacts under out_dir. Returns the exit
// code (0 or 1 for `report`); library errors propagate as ramanqc::Error.
int run(const std::string& command, const config::RunConfig& cfg, Format format,
        const std::string& out_dir, std::ostream& log);

}  // namespace ramanqc::commands
