#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "leakywire/operator_model.hpp"
#include "leakywire/resonance.hpp"

namespace leakywire::cli {

// Inclusive, evenly spaced: from, ..., to (count points); may run downwards.
struct Range {
  double from = 0.0;
  double to = 0.0;
  int count = 1;

  std::vector<double> values() const;
  // "from:to:count" or a single number.
  static Range parse(const std::string& text, const std::string& field);
};

struct QuadOverrides {
  std::optional<double> abs_tol;
  std::optional<double> rel_tol;
  std::optional<int> max_subdivisions;

  QuadSpec apply(QuadSpec base) const;
};

struct RunConfig {
  ModelParams model;

  std::optional<Range> a_range;         // resonance
  bool continuation = false;            // resonance: seed each a with the previous pole
  std::optional<SecondSheetRegion> region;
  std::vector<double> b_values;         // twopoint
  std::string normalization = "consistent";
  std::optional<Range> lambda_range;    // scatter; default: the open window
  int lambda_points = 200;
  Range x1_range{-3.0, 3.0, 61};        // eigenfunction
  Range x2_range{-3.0, 3.0, 61};
  int scan_points = 400;                // spectrum

  QuadOverrides quad;
  std::string format = "csv";
  std::string output;  // empty: stdout

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Reads a config document. A document with a top-level "config" object (as
// written by --format json) is accepted as well. Parse errors report line
// and column; field errors report the field path.
RunConfig config_from_json_text(const std::string& text, const std::string& origin);
void merge_json(RunConfig& cfg, const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& cfg);

}  // namespace leakywire::cli
