#include "run_config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "leakywire/errors.hpp"

namespace leakywire::cli {

using nlohmann::json;

namespace {

template <class T>
T field(const json& j, const std::string& path) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config field '" + path + "': wrong type (got " + std::string(j.type_name()) + ")");
  }
}

Range range_from_json(const json& j, const std::string& path) {
  if (j.is_number()) {
    const double v = j.get<double>();
    return {v, v, 1};
  }
  if (j.is_string()) return Range::parse(j.get<std::string>(), path);
  if (!j.is_object()) throw ConfigError("config field '" + path + "': expected an object {from, to, count}");
  Range r;
  for (const auto& [key, value] : j.items()) {
    if (key == "from") r.from = field<double>(value, path + ".from");
    else if (key == "to") r.to = field<double>(value, path + ".to");
    else if (key == "count") r.count = field<int>(value, path + ".count");
    else throw ConfigError("config field '" + path + "." + key + "': unknown key");
  }
  return r;
}

json range_to_json(const Range& r) { return {{"from", r.from}, {"to", r.to}, {"count", r.count}}; }

void check_range(const Range& r, const std::string& path) {
  if (r.count < 1) throw ConfigError("config field '" + path + ".count': must be >= 1");
  if (!std::isfinite(r.from) || !std::isfinite(r.to)) throw ConfigError("config field '" + path + "': not finite");
  if (r.count == 1 && r.from != r.to) throw ConfigError("config field '" + path + "': count 1 needs from == to");
  if (r.count > 1 && r.from == r.to) throw ConfigError("config field '" + path + "': needs from != to");
}

}  // namespace

std::vector<double> Range::values() const {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) v[i] = count == 1 ? from : from + (to - from) * i / (count - 1);
  if (count > 1) v.back() = to;
  return v;
}

Range Range::parse(const std::string& text, const std::string& name) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  try {
    std::size_t used = 0;
    auto num = [&](const std::string& s) {
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    };
    if (parts.size() == 1) {
      const double v = num(parts[0]);
      return {v, v, 1};
    }
    if (parts.size() == 3) {
      const int n = std::stoi(parts[2], &used);
      if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
      return {num(parts[0]), num(parts[1]), n};
    }
  } catch (const std::logic_error&) {
  }
  throw ConfigError("'" + name + "': expected a number or from:to:count, got '" + text + "'");
}

QuadSpec QuadOverrides::apply(QuadSpec base) const {
  if (abs_tol) base.abs_tol = *abs_tol;
  if (rel_tol) base.rel_tol = *rel_tol;
  if (max_subdivisions) base.max_subdivisions = *max_subdivisions;
  return base;
}

void RunConfig::validate() const {
  if (!(model.alpha > 0.0) || !std::isfinite(model.alpha)) throw ConfigError("config field 'alpha': must be > 0");
  if (model.dots.size() != model.betas.size())
    throw ConfigError("config fields 'dots'/'betas': " + std::to_string(model.dots.size()) + " dots but " +
                      std::to_string(model.betas.size()) + " betas");
  if (a_range) {
    check_range(*a_range, "a_range");
    if (!(std::min(a_range->from, a_range->to) > 0.0)) throw ConfigError("config field 'a_range': distances must be > 0");
  }
  if (lambda_range) {
    check_range(*lambda_range, "lambda_range");
    const double thr = model.threshold();
    const auto [lo, hi] = std::minmax(lambda_range->from, lambda_range->to);
    if (!(lo > thr) || !(hi < 0.0))
      throw ConfigError("config field 'lambda_range': must lie inside (-alpha^2/4, 0)");
  }
  if (lambda_points < 2) throw ConfigError("config field 'lambda_points': must be >= 2");
  check_range(x1_range, "x1_range");
  check_range(x2_range, "x2_range");
  if (scan_points < 10) throw ConfigError("config field 'scan_points': must be >= 10");
  if (normalization != "consistent" && normalization != "bare_k0")
    throw ConfigError("config field 'normalization': expected 'consistent' or 'bare_k0'");
  if (format != "csv" && format != "json") throw ConfigError("config field 'format': expected 'csv' or 'json'");
  if (region && !(region->re_min < region->re_max && region->depth > 0.0))
    throw ConfigError("config field 'region': needs re_min < re_max and depth > 0");
  if (quad.abs_tol && !(*quad.abs_tol > 0.0)) throw ConfigError("config field 'quad.abs_tol': must be > 0");
  if (quad.rel_tol && !(*quad.rel_tol > 0.0)) throw ConfigError("config field 'quad.rel_tol': must be > 0");
  if (quad.max_subdivisions && *quad.max_subdivisions < 1)
    throw ConfigError("config field 'quad.max_subdivisions': must be >= 1");
}

void merge_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be an object");
  for (const auto& [key, v] : j.items()) {
    if (key == "alpha") {
      cfg.model.alpha = field<double>(v, key);
    } else if (key == "dots") {
      if (!v.is_array()) throw ConfigError("config field 'dots': expected an array of [x1, x2]");
      cfg.model.dots.clear();
      for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string path = "dots[" + std::to_string(i) + "]";
        if (!v[i].is_array() || v[i].size() != 2) throw ConfigError("config field '" + path + "': expected [x1, x2]");
        cfg.model.dots.push_back({field<double>(v[i][0], path + "[0]"), field<double>(v[i][1], path + "[1]")});
      }
    } else if (key == "betas") {
      cfg.model.betas = field<std::vector<double>>(v, key);
    } else if (key == "a_range") {
      if (v.is_null()) cfg.a_range.reset();
      else cfg.a_range = range_from_json(v, key);
    } else if (key == "continuation") {
      cfg.continuation = field<bool>(v, key);
    } else if (key == "region") {
      if (v.is_null()) {
        cfg.region.reset();
        continue;
      }
      SecondSheetRegion r = SecondSheetRegion::standard(cfg.model.alpha);
      if (!v.is_object()) throw ConfigError("config field 'region': expected {re_min, re_max, depth}");
      for (const auto& [rk, rv] : v.items()) {
        if (rk == "re_min") r.re_min = field<double>(rv, "region.re_min");
        else if (rk == "re_max") r.re_max = field<double>(rv, "region.re_max");
        else if (rk == "depth") r.depth = field<double>(rv, "region.depth");
        else throw ConfigError("config field 'region." + rk + "': unknown key");
      }
      cfg.region = r;
    } else if (key == "b") {
      cfg.b_values = v.is_number() ? std::vector<double>{v.get<double>()} : field<std::vector<double>>(v, key);
    } else if (key == "b_range") {
      cfg.b_values = range_from_json(v, key).values();
    } else if (key == "normalization") {
      cfg.normalization = field<std::string>(v, key);
    } else if (key == "lambda_range") {
      if (v.is_null()) cfg.lambda_range.reset();
      else cfg.lambda_range = range_from_json(v, key);
    } else if (key == "lambda_points") {
      cfg.lambda_points = field<int>(v, key);
    } else if (key == "x1_range") {
      cfg.x1_range = range_from_json(v, key);
    } else if (key == "x2_range") {
      cfg.x2_range = range_from_json(v, key);
    } else if (key == "scan_points") {
      cfg.scan_points = field<int>(v, key);
    } else if (key == "quad") {
      if (!v.is_object()) throw ConfigError("config field 'quad': expected an object");
      for (const auto& [qk, qv] : v.items()) {
        if (qk == "abs_tol") cfg.quad.abs_tol = field<double>(qv, "quad.abs_tol");
        else if (qk == "rel_tol") cfg.quad.rel_tol = field<double>(qv, "quad.rel_tol");
        else if (qk == "max_subdivisions") cfg.quad.max_subdivisions = field<int>(qv, "quad.max_subdivisions");
        else throw ConfigError("config field 'quad." + qk + "': unknown key");
      }
    } else if (key == "format") {
      cfg.format = field<std::string>(v, key);
    } else if (key == "output") {
      cfg.output = field<std::string>(v, key);
    } else {
      throw ConfigError("config field '" + key + "': unknown key");
    }
  }
}

RunConfig config_from_json_text(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    // Byte offset to line/column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON parse error");
  }
  if (j.is_object() && j.contains("config") && j["config"].is_object()) j = j["config"];
  RunConfig cfg;
  merge_json(cfg, j);
  return cfg;
}

json config_to_json(const RunConfig& cfg) {
  json j;
  j["alpha"] = cfg.model.alpha;
  j["dots"] = json::array();
  for (const auto& d : cfg.model.dots) j["dots"].push_back({d.x1, d.x2});
  j["betas"] = cfg.model.betas;
  j["a_range"] = cfg.a_range ? range_to_json(*cfg.a_range) : json(nullptr);
  j["continuation"] = cfg.continuation;
  if (cfg.region)
    j["region"] = {{"re_min", cfg.region->re_min}, {"re_max", cfg.region->re_max}, {"depth", cfg.region->depth}};
  else
    j["region"] = nullptr;
  j["b"] = cfg.b_values;
  j["normalization"] = cfg.normalization;
  j["lambda_range"] = cfg.lambda_range ? range_to_json(*cfg.lambda_range) : json(nullptr);
  j["lambda_points"] = cfg.lambda_points;
  j["x1_range"] = range_to_json(cfg.x1_range);
  j["x2_range"] = range_to_json(cfg.x2_range);
  j["scan_points"] = cfg.scan_points;
  json q = json::object();
  if (cfg.quad.abs_tol) q["abs_tol"] = *cfg.quad.abs_tol;
  if (cfg.quad.rel_tol) q["rel_tol"] = *cfg.quad.rel_tol;
  if (cfg.quad.max_subdivisions) q["max_subdivisions"] = *cfg.quad.max_subdivisions;
  j["quad"] = q;
  j["format"] = cfg.format;
  j["output"] = cfg.output;
  return j;
}

}  // namespace leakywire::cli
