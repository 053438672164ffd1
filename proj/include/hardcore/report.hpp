#pragma once

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace hardcore {

struct MetricEstimate {
  double estimate = 0.0;
  double half_width = 0.0;  // 0 for exact quantities
  int replicates = 0;
  std::uint64_t seed = 0;
};

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

/// Structured experiment result. Timing is kept out of serialized output
/// by default so that reports are byte-identical across reruns.
struct Report {
  std::string experiment;
  nlohmann::json inputs;  // echo of the resolved configuration
  std::map<std::string, MetricEstimate> metrics;
  std::map<std::string, std::vector<double>> per_replicate;
  bool has_thresholds = false;
  bool pass = true;
  double wall_clock_seconds = 0.0;

  nlohmann::json to_json(bool include_timing = false) const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["experiment"] = experiment;
    j["inputs"] = inputs;
    nlohmann::json ms = nlohmann::json::object();
    for (const auto& [name, m] : metrics) {
      ms[name] = {{"estimate", m.estimate},
                  {"half_width", m.half_width},
                  {"replicates", m.replicates},
                  {"seed", m.seed}};
    }
    j["metrics"] = ms;
    if (has_thresholds) j["pass"] = pass;
    if (include_timing) j["wall_clock_seconds"] = wall_clock_seconds;
    return j;
  }

  /// One row per replicate, metric columns in name order.
  std::string to_csv() const {
    std::string out = "replicate";
    std::size_t rows = 0;
    for (const auto& [name, values] : per_replicate) {
      out += ',';
      out += name;
      rows = std::max(rows, values.size());
    }
    out += '\n';
    for (std::size_t r = 0; r < rows; ++r) {
      out += std::to_string(r);
      for (const auto& [name, values] : per_replicate) {
        out += ',';
        if (r < values.size()) out += format_double(values[r]);
      }
      out += '\n';
    }
    return out;
  }
};

}  // namespace hardcore
