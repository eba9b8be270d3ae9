#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "commands.hpp"
#include "config.hpp"

using namespace ssflab;
using namespace ssflab::cli;
using nlohmann::json;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SSFLAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string write_temp(const std::string& name, const json& doc) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << doc.dump();
  return path;
}

}  // namespace

TEST(Config, DefaultsRoundTrip) {
  const ExperimentConfig c = parse_config(json::object());
  EXPECT_EQ(c.fixture, "FIX-SCALAR");
  EXPECT_EQ(c.format, "csv");
  EXPECT_FALSE(c.refine);
  EXPECT_EQ(c.seed, defaults::kSeed);
  const ExperimentConfig d = parse_config(to_json(c));
  EXPECT_EQ(to_json(d), to_json(c));
}

TEST(Config, ParsesNestedKeys) {
  const json doc = {{"model", {{"a_minus", {{-1.0, 0.0}, {0.0, json::array({2.0, 0.0})}}},
                               {"b_plus", {{2.0, 0.5}, {0.5, -1.0}}}}},
                    {"grid", {{"T", 10.0}, {"N", 401}}},
                    {"t_grid", {0.5, 1.0}},
                    {"tolerances", {{"ptf", 1e-2}}},
                    {"dirac", {{"potential", "sharp"}, {"modes", 17}}},
                    {"output", {{"format", "json"}}}};
  const ExperimentConfig c = parse_config(doc);
  ASSERT_TRUE(c.a_minus.has_value());
  EXPECT_EQ((*c.a_minus)(1, 1), Complex(2.0, 0.0));
  EXPECT_EQ(*c.points, 401);
  EXPECT_EQ(c.tol.ptf, 1e-2);
  EXPECT_EQ(c.dirac.potential, "sharp");
  EXPECT_EQ(c.format, "json");
  const ResolvedModel m = resolve_model(c);
  EXPECT_EQ(m.path.dim(), 2);
  EXPECT_EQ(m.grid.points, 401);
}

TEST(Config, RejectsUnknownAndMalformed) {
  EXPECT_THROW(parse_config({{"modle", {}}}), ConfigError);
  EXPECT_THROW(parse_config({{"grid", {{"T", 10.0}, {"M", 3}}}}), ConfigError);
  EXPECT_THROW(parse_config({{"grid", {{"T", "ten"}}}}), ConfigError);
  EXPECT_THROW(parse_config({{"scheme", "upwind"}}), ConfigError);
  EXPECT_THROW(resolve_model(parse_config({{"model", "FIX-NONE"}})), ConfigError);
  const json bad = {{"model", {{"a_minus", {{0.0, 1.0}, {0.0, 0.0}}}, {"b_plus", {{1.0, 0.0}, {0.0, 1.0}}}}}};
  EXPECT_THROW(resolve_model(parse_config(bad)), ConfigError);
}

TEST(Report, PayloadIsDeterministic) {
  ExperimentConfig c = parse_config({{"model", "FIX-DIAG2"}});
  const Report a = cmd_ssf(c), b = cmd_ssf(c);
  EXPECT_TRUE(a.pass());
  EXPECT_EQ(a.payload().dump(), b.payload().dump());
  std::ostringstream csv;
  a.write_csv(csv);
  EXPECT_NE(csv.str().find("# table ssf"), std::string::npos);
  EXPECT_NE(csv.str().find("# result"), std::string::npos);
}

TEST(Report, ToleranceFailureIsReported) {
  const ExperimentConfig c = parse_config({{"tolerances", {{"ptf", 1e-9}}}, {"grid", {{"N", 201}}}});
  const Report r = cmd_ptf(c);
  EXPECT_FALSE(r.pass());
  EXPECT_FALSE(r.checks.empty());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("--help"), 0);
  EXPECT_EQ(run_cli(""), 1);
  EXPECT_EQ(run_cli("nonsense"), 1);
  const std::string zero = write_temp("zero.json", {{"model", "FIX-ZERO"},
                                                    {"grid", {{"N", 201}}}});
  EXPECT_EQ(run_cli("ptf --config " + zero), 0);
  const std::string outside = write_temp("outside.json", {{"t_grid", {50.0}}, {"grid", {{"N", 201}}}});
  EXPECT_EQ(run_cli("ptf --config " + outside), 1);
  const std::string strict = write_temp("strict.json", {{"tolerances", {{"ptf", 1e-9}}},
                                                        {"grid", {{"N", 201}}}});
  EXPECT_EQ(run_cli("ptf --config " + strict), 2);
  const std::string unknown = write_temp("unknown.json", {{"colour", "red"}});
  EXPECT_EQ(run_cli("ssf --config " + unknown), 1);
}

TEST(Cli, JsonOutputFile) {
  const std::string cfg = write_temp("dirac.json", {{"dirac", {{"potential", "sharp"}}}});
  const std::string out = ::testing::TempDir() + "dirac_out.json";
  ASSERT_EQ(run_cli("dirac --config " + cfg + " --format json --out " + out), 0);
  std::ifstream in(out);
  const json doc = json::parse(in);
  EXPECT_EQ(doc.at("command"), "dirac");
  EXPECT_TRUE(doc.contains("timings"));
  EXPECT_TRUE(doc.at("pass").get<bool>());
}
