#pragma once

// Experiment configuration: a JSON document, validated in full before any
// computation. Every default here is the library default (see defaults::).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssflab/fixtures.hpp"
#include "ssflab/models.hpp"
#include "ssflab/ptf.hpp"
#include "ssflab/suspension.hpp"
#include "ssflab/witten.hpp"

namespace ssflab::cli {

struct Tolerances {
  double ptf = 5e-3;                                      // |lhs - rhs_erf| per t
  double quadrature = defaults::kPtfQuadratureTolerance;  // |rhs_quad - rhs_erf|
  double refinement_ratio = 1.5;                          // residual(N) / residual(2N-1)
  double krein = 1e-10;
  double cutoff = 1e-12;                   // weighted L1 gap at full cutoff
  double pushnitski = 0.1;                 // window average vs Abel transform
  double laplace = 5e-3;
  double index = defaults::kIndexTolerance;  // gapped endpoints
  double index_gapless = 5e-2;               // 0 in an endpoint spectrum
  double spectrum = 1e-10;                   // free Dirac vs symbol
};

struct DiracConfig {
  int d = 1;
  double mass = 0.0;
  double box = 20.0;
  Index modes = 33;
  std::string potential = "gaussian";
  double amplitude = 1.0;
  double width = 1.0;
  int p = 1;
  std::string expect = "auto";  // stable, unstable, none; auto: unstable for "sharp"
};

struct ExperimentConfig {
  std::string fixture = "FIX-SCALAR";
  std::optional<Matrix> a_minus;  // inline model, replaces the fixture
  std::optional<Matrix> b_plus;
  std::optional<std::string> profile_kind;  // default: the fixture's profile (tanh)
  double profile_scale = 1.0;
  std::optional<double> half_width;  // default: the fixture's T
  std::optional<Index> points;       // default: the fixture's N
  Scheme scheme = Scheme::Box;
  std::optional<std::vector<double>> t_grid;       // default depends on the command
  std::optional<std::vector<double>> lambda_grid;  // default depends on the command
  std::vector<int> k_values{1, 2};
  int s_nodes = defaults::kPtfNodes;
  std::optional<std::vector<double>> cutoff_levels;  // default: the spectrum of |A-|
  bool refine = false;
  Tolerances tol;
  std::uint64_t seed = defaults::kSeed;
  std::string out_path;  // empty: stdout
  std::string format = "csv";
  DiracConfig dirac;
};

/// Throws ConfigError on malformed documents and unknown keys.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

nlohmann::json to_json(const ExperimentConfig& c);

struct ResolvedModel {
  std::string name;
  PerturbationPath path;
  TimeGrid grid;
};

ResolvedModel resolve_model(const ExperimentConfig& c);

/// Text for --help describing the config document and its defaults.
std::string config_help();

}  // namespace ssflab::cli
