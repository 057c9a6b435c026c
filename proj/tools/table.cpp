#include "table.hpp"

#include <cmath>
#include <cstdio>

namespace leakywire::cli {

using nlohmann::json;

namespace {

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return number(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

json json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? json(*d) : json(nullptr);
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

std::string status_of(const CommandResult& r) { return r.failed_rows > 0 ? "partial" : "ok"; }

std::string summary_value(const json& v) {
  if (v.is_number_float()) return number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

void write_csv(std::ostream& out, const CommandResult& result) {
  const auto& t = result.table;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << "\n";
  }
  for (const auto& [key, value] : result.summary.items()) out << "# " << key << " = " << summary_value(value) << "\n";
  for (const auto& w : result.warnings) out << "# warning: " << w << "\n";
  out << "# status = " << status_of(result) << "\n";
}

void write_json(std::ostream& out, const std::string& command, const RunConfig& cfg, const CommandResult& result) {
  json j;
  j["command"] = command;
  j["config"] = config_to_json(cfg);
  j["config"].erase("output");
  j["columns"] = result.table.columns;
  json rows = json::array();
  for (const auto& row : result.table.rows) {
    json r = json::array();
    for (const auto& c : row) r.push_back(json_cell(c));
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["summary"] = result.summary;
  j["warnings"] = result.warnings;
  j["status"] = status_of(result);
  out << j.dump(2) << "\n";
}

}  // namespace leakywire::cli
