#pragma once

// Deterministic serialization. Numbers are written with 17 significant
// digits; every file carries the config hash and the unit conventions.

#include <string>
#include <vector>

#include <json.hpp>

#include "ramanqc/config.hpp"

namespace ramanqc::output {

using ojson = nlohmann::ordered_json;

std::string format_number(double v);

// Pretty JSON with %.17g numbers.
std::string dump(const ojson& doc);

inline constexpr const char* kUnitConventions =
    "SI units as named in each field or column suffix; angular frequencies in rad/s, "
    "ordinary frequencies in Hz; *_au columns are Hartree atomic units";

ojson metadata(const config::RunConfig& cfg, const std::string& command);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> text_column;  // optional trailing string column
  std::string text_header;
};

std::string csv(const config::RunConfig& cfg, const std::string& command, const Table& table);
// Table as a JSON array of row objects, wrapped with metadata.
ojson table_json(const Table& table);

// Creates parent directories as needed.
void write_file(const std::string& path, const std::string& content);

}  // namespace ramanqc::output
