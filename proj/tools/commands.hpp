#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace ssflab::cli {

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
};

struct Check {
  std::string name;
  double value = 0.0;
  std::string relation;  // "<=" or ">="
  double threshold = 0.0;
  bool pass = false;
};

struct Report {
  std::string command;
  nlohmann::json config;
  std::vector<Table> tables;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, double>> timings;  // seconds

  bool pass() const;
  nlohmann::json payload() const;  // everything except the timings
  nlohmann::json to_json() const;
  /// Tables as "# table <name>" blocks, then checks, then timings last.
  void write_csv(std::ostream& os) const;
};

Report cmd_ptf(const ExperimentConfig& c);
Report cmd_ssf(const ExperimentConfig& c);
Report cmd_pushnitski(const ExperimentConfig& c);
Report cmd_witten(const ExperimentConfig& c);
Report cmd_dirac(const ExperimentConfig& c);

/// %.17g, so that reports round-trip and compare bit-exactly.
std::string format_number(double v);

}  // namespace ssflab::cli
