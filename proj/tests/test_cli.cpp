#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "sparsepip/generators.hpp"
#include "sparsepip/json_io.hpp"

using namespace sparsepip;

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout only
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const std::string command =
      env_prefix + std::string(SPARSEPIP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 4096> buffer;
  while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe))
    output.append(buffer.data(), got);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

std::string fixture_path(const char* name) {
  return std::string("/tmp/sparsepip_test_") + name + ".json";
}

}  // namespace

TEST_CASE("solve-lp on the 2k-1 fixture") {
  const std::string path = fixture_path("gap2k");
  save_instance_file(gen_gap_2k_minus_1(2, 1e-3), path);

  const RunResult result = run_cli("solve-lp " + path + " --relaxation strengthened");
  REQUIRE(result.exit_code == 0);
  const auto j = nlohmann::json::parse(result.output);
  CHECK(j.at("schema") == "sparsepip/1");
  CHECK(j.at("objective").get<double>() >= 3.0 * (1.0 - 2e-3) - 1e-9);
  CHECK(j.at("x").size() == 3);
}

TEST_CASE("solve-lp writes an LP-format dump on request") {
  const std::string path = fixture_path("dump_src");
  const std::string dump = "/tmp/sparsepip_test_dump.lp";
  save_instance_file(gen_l1_bad_example(3), path);
  REQUIRE(run_cli("solve-lp " + path + " --dump-lp " + dump).exit_code == 0);
  std::ifstream in(dump);
  REQUIRE(in.good());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("Maximize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
}

TEST_CASE("solve-lp rejects malformed files with exit 2") {
  const std::string path = fixture_path("broken");
  std::ofstream(path) << "{ not json";
  CHECK(run_cli("solve-lp " + path).exit_code == 2);

  const std::string missing = fixture_path("missing_field");
  std::ofstream(missing) << "{\"n\": 1, \"m\": 1}";
  CHECK(run_cli("solve-lp " + missing).exit_code == 2);

  CHECK(run_cli("solve-lp /tmp/sparsepip_no_such_file.json").exit_code == 2);
}

TEST_CASE("solve-lp on an empty instance") {
  const std::string path = fixture_path("empty");
  save_instance_file(PipInstance(0, 0, {}, {}, {}), path);
  const RunResult result = run_cli("solve-lp " + path);
  REQUIRE(result.exit_code == 0);
  CHECK(nlohmann::json::parse(result.output).at("objective").get<double>() == 0.0);
}

TEST_CASE("solve-exact subcommand") {
  const std::string path = fixture_path("gapB");
  save_instance_file(gen_gap_general_b(8, 2.0), path);
  const RunResult result = run_cli("solve-exact " + path);
  REQUIRE(result.exit_code == 0);
  CHECK(nlohmann::json::parse(result.output).at("value").get<double>() == doctest::Approx(2.0));
}

TEST_CASE("round is byte-identical for a fixed seed") {
  const std::string path = fixture_path("round_det");
  RandomInstanceConfig config;
  config.n = 8;
  config.m = 5;
  config.k = 2;
  config.sizes = SizeProfile::MixedBigSmall;
  save_instance_file(gen_random(config, 5), path);

  const std::string args = "round " + path + " --algo strong --trials 500 --seed 7 --threads 2";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("feasibility violations = 0") != std::string::npos);

  const RunResult json_run = run_cli(args + " --json");
  REQUIRE(json_run.exit_code == 0);
  const auto j = nlohmann::json::parse(json_run.output);
  CHECK(j.at("feasibility_violations").get<long long>() == 0);
  CHECK(j.at("trials").get<long long>() == 500);
}

TEST_CASE("round --algo large-b normalizes automatically") {
  const std::string path = fixture_path("round_largeb");
  RandomInstanceConfig config;
  config.n = 6;
  config.m = 4;
  config.k = 2;
  PipInstance base = gen_random(config, 9);
  std::vector<double> caps(4, 3.0);  // plenty of slack
  save_instance_file(PipInstance(6, 4, base.weights(), caps, base.entries()), path);
  const RunResult result =
      run_cli("round " + path + " --algo large-b --trials 400 --seed 3 --json");
  REQUIRE(result.exit_code == 0);
  CHECK(nlohmann::json::parse(result.output).at("feasibility_violations").get<long long>() == 0);
}

TEST_CASE("round rejects bad algorithms and bad preconditions") {
  const std::string path = fixture_path("round_bad");
  save_instance_file(gen_l1_bad_example(4), path);
  CHECK(run_cli("round " + path + " --algo nope --seed 1").exit_code == 2);

  // Slack below one: large-b precondition fails with exit 4.
  const std::string tight = fixture_path("round_tight");
  save_instance_file(PipInstance(2, 1, {1.0, 1.0}, {0.5},
                                 {{0, 0, 1.0}, {1, 0, 1.0}}),
                     tight);
  CHECK(run_cli("round " + tight + " --algo large-b --seed 1").exit_code == 4);
}

TEST_CASE("gap subcommand emits one row per parameter point") {
  const RunResult result = run_cli("gap --family gap2k --k-min 2 --k-max 4 --json");
  REQUIRE(result.exit_code == 0);
  const auto j = nlohmann::json::parse(result.output);
  REQUIRE(j.at("rows").size() == 3);
  for (std::size_t t = 0; t < 3; ++t) {
    const auto& row = j.at("rows")[t];
    const int k = static_cast<int>(t) + 2;
    CHECK(row.at("exact").get<double>() == doctest::Approx(1.0));
    CHECK(row.at("gap").get<double>() >= (1.0 - k * 1e-4) * (2 * k - 1) - 1e-6);
  }
}

TEST_CASE("gen piped into submod") {
  const std::string inst_path = fixture_path("submod_inst");
  const std::string oracle_path = fixture_path("submod_oracle");
  REQUIRE(run_cli("gen --family random --n 6 --m 3 --k 2 --seed 12 -o " + inst_path).exit_code ==
          0);
  nlohmann::json oracle;
  oracle["family"] = "coverage";
  oracle["universe_weights"] = {1.0, 1.0, 2.0};
  oracle["covers"] = {{0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2}};
  std::ofstream(oracle_path) << oracle.dump();

  const RunResult result = run_cli("submod " + inst_path + " " + oracle_path +
                                   " --steps 40 --trials 300 --seed 5 --json");
  REQUIRE(result.exit_code == 0);
  const auto j = nlohmann::json::parse(result.output);
  CHECK(j.at("feasibility_violations").get<long long>() == 0);
  CHECK(j.at("exact_optimum").get<double>() > 0.0);
  CHECK(j.at("extension_value").get<double>() > 0.0);

  // Mismatched oracle size is an input error.
  nlohmann::json bad = oracle;
  bad["covers"] = {{0}, {1}};
  std::ofstream(oracle_path) << bad.dump();
  CHECK(run_cli("submod " + inst_path + " " + oracle_path + " --seed 5").exit_code == 2);
}

TEST_CASE("CI_DETERMINISTIC requires an explicit seed") {
  const std::string path = fixture_path("ci_mode");
  save_instance_file(gen_l1_bad_example(3), path);
  const std::string prefix = "env CI_DETERMINISTIC=1 ";
  const RunResult no_seed = run_cli("round " + path + " --trials 10", prefix);
  CHECK(no_seed.exit_code == 2);
  const RunResult with_seed = run_cli("round " + path + " --trials 10 --seed 4", prefix);
  CHECK(with_seed.exit_code == 0);
}

TEST_CASE("verify subcommand passes") {
  const RunResult result = run_cli("verify --seed 99 --trials 2000");
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("FAIL") == std::string::npos);
}
