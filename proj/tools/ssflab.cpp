// ssflab: command-line runner for the spectral shift experiments.
// Exit codes: 0 pass, 1 usage or configuration error, 2 tolerance failure.

#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "commands.hpp"
#include "config.hpp"

#ifdef SSFLAB_WITH_OPENBLAS
extern "C" void openblas_set_num_threads(int);
#endif

namespace {

constexpr int kExitPass = 0;
constexpr int kExitConfig = 1;
constexpr int kExitTolerance = 2;

}  // namespace

int main(int argc, char** argv) {
  using namespace ssflab::cli;

  CLI::App app{"Spectral shift function, trace formula and Witten index experiments"};
  app.footer(config_help());
  app.require_subcommand(1, 1);
  app.fallthrough();  // global options may follow the subcommand

  std::string config_path;
  std::string out_path;
  std::string format;
  std::uint64_t seed = 0;
  int threads = 1;
  app.add_option("--config", config_path, "JSON config file (keys listed below)")
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "report file (default: config output.path, else stdout)");
  app.add_option("--format", format, "csv or json (default: config output.format, else csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  auto* seed_opt = app.add_option("--seed", seed, "seed for random fixtures (default 20240611)");
  app.add_option("--threads", threads, "worker threads for dense linear algebra (default 1)")
      ->check(CLI::PositiveNumber);

  const std::map<std::string, std::function<Report(const ExperimentConfig&)>> commands{
      {"ptf", cmd_ptf},
      {"ssf", cmd_ssf},
      {"pushnitski", cmd_pushnitski},
      {"witten", cmd_witten},
      {"dirac", cmd_dirac}};
  app.add_subcommand("ptf", "principal trace formula: heat-trace gap vs erf and quadrature");
  app.add_subcommand("ssf", "spectral shift function, Krein trace formula, cutoff sweep");
  app.add_subcommand("pushnitski", "Abel transform of the SSF vs the suspension SSF");
  app.add_subcommand("witten", "Witten index estimates vs spectral flow, Fredholm index, SSF");
  app.add_subcommand("dirac", "Clifford checks, free Dirac spectrum, hypothesis diagnostics");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfig;
  }

  Eigen::setNbThreads(threads);
#ifdef SSFLAB_WITH_OPENBLAS
  openblas_set_num_threads(threads);
#endif

  try {
    ExperimentConfig config = config_path.empty() ? ExperimentConfig{} : load_config(config_path);
    if (*seed_opt) config.seed = seed;
    if (!out_path.empty()) config.out_path = out_path;
    if (!format.empty()) config.format = format;

    const std::string name = app.get_subcommands().front()->get_name();
    const Report report = commands.at(name)(config);

    std::ofstream file;
    if (!config.out_path.empty()) {
      file.open(config.out_path);
      if (!file) throw ssflab::ConfigError("cannot write '" + config.out_path + "'");
    }
    std::ostream& os = config.out_path.empty() ? std::cout : file;
    if (config.format == "json")
      os << report.to_json().dump(2) << '\n';
    else
      report.write_csv(os);
    os.flush();

    for (const Check& c : report.checks)
      if (!c.pass)
        std::cerr << "FAIL " << c.name << ": " << format_number(c.value) << " not "
                  << c.relation << ' ' << format_number(c.threshold) << '\n';
    return report.pass() ? kExitPass : kExitTolerance;
  } catch (const ssflab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
