#include "ramanqc/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ramanqc/error.hpp"

namespace ramanqc::output {

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void write(std::ostringstream& os, const ojson& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case ojson::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << ojson(it.key()).dump() << ": ";
        write(os, it.value(), depth + 1);
      }
      os << "\n" << close << "}";
      return;
    }
    case ojson::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write(os, j[i], depth + 1);
      }
      os << "\n" << close << "]";
      return;
    }
    case ojson::value_t::number_float:
      os << format_number(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace

std::string dump(const ojson& doc) {
  std::ostringstream os;
  write(os, doc, 0);
  os << "\n";
  return os.str();
}

ojson metadata(const config::RunConfig& cfg, const std::string& command) {
  ojson m;
  m["command"] = command;
  m["config_hash"] = config::config_hash(cfg);
  m["seed"] = cfg.seed;
  m["units"] = kUnitConventions;
  ojson prov = ojson::object();
  for (const auto& [k, v] : cfg.provenance) prov[k] = v;
  m["provenance"] = prov;
  return m;
}

std::string csv(const config::RunConfig& cfg, const std::string& command, const Table& table) {
  std::ostringstream os;
  os << "# command: " << command << "\n";
  os << "# config_hash: " << config::config_hash(cfg) << "\n";
  os << "# seed: " << cfg.seed << "\n";
  os << "# units: " << kUnitConventions << "\n";
  for (const auto& [k, v] : cfg.provenance) os << "# provenance " << k << ": " << v << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) os << (c ? "," : "") << table.columns[c];
  if (!table.text_header.empty()) os << "," << table.text_header;
  os << "\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_number(row[c]);
    if (!table.text_header.empty()) os << "," << table.text_column.at(r);
    os << "\n";
  }
  return os.str();
}

ojson table_json(const Table& table) {
  ojson rows = ojson::array();
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    ojson row;
    for (std::size_t c = 0; c < table.columns.size(); ++c) row[table.columns[c]] = table.rows[r][c];
    if (!table.text_header.empty()) row[table.text_header] = table.text_column.at(r);
    rows.push_back(row);
  }
  return rows;
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << content;
  if (!out) throw Error(ErrorKind::InvalidArgument, "write failed for " + path);
}

}  // namespace ramanqc::output
