#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nsvosa/report.hpp"

namespace nsvosa::suite {

struct SuiteConfig {
  std::vector<std::string> checks;  // ids or "prefix:*"; empty selects everything
  long window = 8;
  int max_weight2 = 6;  // doubled: 6 is weight 3
  int generators = 2;
  int k_limit = 8;
  std::array<int, 3> rst_bounds{3, 3, 3};
  bool fault = false;
  std::string format = "json";
  std::optional<std::string> load, dump;
  // (u, v, w, v') basis labels for the weak and rational checks; every check runs over all of them.
  std::vector<std::array<std::string, 4>> samples{{"p(-1/2)", "p(-1/2)", "vac", "vac"}};
};

struct CheckResult {
  std::string id;
  ComparisonReport report;
  long ms = 0;
};

struct SuiteReport {
  std::string suite;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<CheckResult> results;  // sorted by id

  bool any_failed() const;
};

const std::vector<std::string>& check_ids();

// Expands patterns to sorted ids; ConfigError for anything that matches nothing.
std::vector<std::string> resolve(const std::vector<std::string>& patterns);

// Applies key=value lines (flag names without dashes) on top of `base`.
SuiteConfig apply_config_file(const std::string& text, SuiteConfig base);
std::array<int, 3> parse_rst(const std::string& text);
void validate(const SuiteConfig& cfg);

SuiteReport run_suite(const SuiteConfig& cfg);

std::string emit_json(const SuiteReport& r);
std::string emit_text(const SuiteReport& r);

}  // namespace nsvosa::suite
