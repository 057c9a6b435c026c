#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "run_config.hpp"

namespace leakywire::cli {

using Cell = std::variant<double, long long, std::string>;

struct Table {
  // Headers carry units in brackets, complex values are split into _re/_im.
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct CommandResult {
  Table table;
  nlohmann::json summary = nlohmann::json::object();
  std::vector<std::string> warnings;
  int failed_rows = 0;
  int exit_code = 0;
};

// Rows, then "# key = value" lines for the summary, warnings, and status.
void write_csv(std::ostream& out, const CommandResult& result);

// {"command", "config", "columns", "rows", "summary", "warnings", "status"};
// the "config" member can be fed back through --config.
void write_json(std::ostream& out, const std::string& command, const RunConfig& cfg, const CommandResult& result);

}  // namespace leakywire::cli
