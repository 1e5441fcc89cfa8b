#include "parab/config.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "parab/scenario.hpp"

using namespace parab;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("ini parsing: sections, comments, numbers, lists") {
  const auto ini = IniFile::parse_string(R"(
# comment
[operator]
kind = truncated_eigen_sum
p = 0
m = 2
n = 3

[problem]
sigma_sweep = 0, 1.5, 2   ; trailing comment
alpha = 2.5
chi_profile = const
chi_value = -2.5
)");
  CHECK(ini.get_string("operator", "kind") == "truncated_eigen_sum");
  CHECK(ini.get_double("problem", "alpha") == doctest::Approx(2.5));
  CHECK(ini.get_double_list_or("problem", "sigma_sweep") ==
        std::vector<double>{0.0, 1.5, 2.0});
  CHECK_THROWS_WITH_AS(ini.get_string("problem", "T"), doctest::Contains("missing field"),
                       std::runtime_error);
}

TEST_CASE("scenario validation catches the documented misconfigurations") {
  SUBCASE("unknown case id") {
    auto cfg = ScenarioConfig::defaults();
    cfg.cases = {"I.vii"};
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("unknown case id"),
                         std::runtime_error);
  }
  SUBCASE("alpha inconsistent with chi profile") {
    auto cfg = ScenarioConfig::defaults();
    cfg.alpha = 2.0;
    cfg.chi_value = 1.0;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("inconsistent"), std::runtime_error);
  }
  SUBCASE("malformed Z domain names the field") {
    const char* text = "[problem]\nZ_domain_min = abc\n";
    CHECK_THROWS_WITH_AS(ScenarioConfig::from_ini(IniFile::parse_string(text)),
                         doctest::Contains("Z_domain_min"), std::runtime_error);
  }
}

TEST_CASE("sigma = gamma/2 dispatches case I.iii through the scenario path") {
  auto cfg = ScenarioConfig::defaults();
  cfg.operator_kind = "grad_trace_minus_infinity";
  cfg.p = 0.0;
  cfg.n = 2;
  cfg.sigma_sweep = {2.0};
  cfg.directions = {"super"};
  cfg.n_samples = 500;
  cfg.output_dir = "/tmp/parab_test_dispatch";
  std::ostringstream log;
  const auto summary = run_certify(cfg, log);
  REQUIRE(summary.entries.size() == 1);
  CHECK(summary.entries[0].case_id == "I.iii");
  CHECK(summary.entries[0].passed);
}

TEST_CASE("run_certify: default-style config passes and is byte-deterministic") {
  auto cfg = ScenarioConfig::defaults();
  cfg.sigma_sweep = {0.0, 1.0};
  cfg.n_samples = 2000;
  cfg.output_dir = "/tmp/parab_test_certify";
  std::ostringstream log;
  const auto s1 = run_certify(cfg, log);
  CHECK(s1.all_passed);
  namespace fs = std::filesystem;
  for (const char* name : {"barriers.csv", "certificates.csv", "alimits.csv", "summary.md"})
    CHECK(fs::exists(fs::path(cfg.output_dir) / name));

  const std::string first = slurp(fs::path(cfg.output_dir) / "certificates.csv");
  const auto s2 = run_certify(cfg, log);
  CHECK(s2.all_passed);
  const std::string second = slurp(fs::path(cfg.output_dir) / "certificates.csv");
  CHECK(first == second);
}

TEST_CASE("run_report: empty dir emits a partial report and exits 0") {
  auto cfg = ScenarioConfig::defaults();
  cfg.output_dir = "/tmp/parab_test_report_empty";
  std::filesystem::remove_all(cfg.output_dir);
  std::ostringstream log;
  CHECK(run_report(cfg, log) == 0);
  const std::string report = slurp(std::filesystem::path(cfg.output_dir) / "report.md");
  CHECK(report.find("Missing artifacts") != std::string::npos);
}

TEST_CASE("env var overrides the output dir") {
  auto cfg = ScenarioConfig::defaults();
  cfg.output_dir = "/tmp/parab_should_not_be_used";
  setenv("PARAB_OUT_DIR", "/tmp/parab_env_dir", 1);
  CHECK(resolve_output_dir(cfg) == "/tmp/parab_env_dir");
  unsetenv("PARAB_OUT_DIR");
  CHECK(resolve_output_dir(cfg) == "/tmp/parab_should_not_be_used");
}
