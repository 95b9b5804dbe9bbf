#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "frobenius/cli.hpp"

using namespace frobenius;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / "frobenius_forge_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

Result invoke(const std::string& args, const std::string& env = "") {
  const auto err_path = scratch() / "stderr.txt";
  const std::string cmd = env + " " + FROBENIUS_FORGE_BINARY + " " + args + " 2>" + err_path.string();
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream e(err_path);
  std::stringstream ss;
  ss << e.rdbuf();
  r.err = ss.str();
  return r;
}

Json checks_by_name(const Json& report) {
  Json m = Json::object();
  for (const auto& c : report["checks"]) m[c["name"].get<std::string>()] = c;
  return m;
}

}  // namespace

TEST(Cli, TodaRankTwoPasses) {
  const auto r = invoke("toda --rank 2 --samples 10 --seed 1");
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["version"], FROBENIUS_FORGE_VERSION);
  EXPECT_EQ(j["config"]["seed"], 1u);
  EXPECT_EQ(j["config"]["samples"], 10);
  EXPECT_EQ(j["verdict"], "pass");
  const Json c = checks_by_name(j);
  for (const char* name : {"toda_gen_wdvv", "fe_constancy", "fd_oracle", "fmanifold_identity", "residue_gen_wdvv"})
    EXPECT_EQ(c[name]["status"], "pass") << name;
  EXPECT_EQ(c["toda_gen_wdvv"]["samples"].size(), 10u);
}

TEST(Cli, Deterministic) {
  const auto a = invoke("toda --rank 3 --samples 6 --seed 99");
  const auto b = invoke("toda --rank 3 --samples 6 --seed 99");
  const auto c = invoke("toda --rank 3 --samples 6 --seed 99", "FROBENIUS_FORGE_THREADS=4");
  const auto d = invoke("toda --rank 3 --samples 6 --seed 99", "FROBENIUS_FORGE_THREADS=1");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  EXPECT_EQ(a.out, d.out);
  EXPECT_NE(a.out, invoke("toda --rank 3 --samples 6 --seed 100").out);
}

TEST(Cli, BuildAThree) {
  const auto r = invoke("build --type A --rank 3");
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["result"]["flat_coordinates"]["t1"], "-1/8 * b3^2 + b1");
  EXPECT_EQ(j["result"]["prepotential"], "1/3840 * t3^5 - 1/64 * t2^2*t3^2 + 1/8 * t1^2*t3 + 1/8 * t1*t2^2");
  EXPECT_EQ(j["result"]["eta"][0][2], "1/4");
  EXPECT_EQ(j["result"]["eta"][1][1], "1/4");
  EXPECT_EQ(j["result"]["eta"][0][0], "0");
  EXPECT_EQ(j["result"]["euler_scalar"], "10");
  const Json c = checks_by_name(j);
  EXPECT_EQ(c["wdvv_exact"]["status"], "pass");
  EXPECT_EQ(c["associativity_exact"]["status"], "pass");
}

TEST(Cli, UnsupportedFamily) {
  const auto r = invoke("build --type D --rank 4");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("unsupported family"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(invoke("build --type A --rank 11").code, 2);
  EXPECT_EQ(invoke("duality --type E --rank 6").code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke("").code, 2);
  EXPECT_EQ(invoke("frobnicate").code, 2);
  EXPECT_EQ(invoke("toda --rank 0").code, 2);
  EXPECT_EQ(invoke("toda --tol nonsense=1e-3").code, 2);
  EXPECT_EQ(invoke("toda --tol gen_wdvv=-1").code, 2);
  EXPECT_EQ(invoke("toda --seed 12xyz").code, 2);
  EXPECT_EQ(invoke("esk-check --provider nope").code, 2);
  EXPECT_EQ(invoke("esk-check --V custom:1,2,3 --rank 2").code, 2);
  EXPECT_EQ(invoke("toda --config /nonexistent/cfg.json").code, 2);
  const auto bad = scratch() / "bad.json";
  std::ofstream(bad) << "{ not json";
  EXPECT_EQ(invoke("toda --config " + bad.string()).code, 2);
  const auto unknown = scratch() / "unknown.json";
  std::ofstream(unknown) << R"({"colour": "blue"})";
  EXPECT_EQ(invoke("toda --config " + unknown.string()).code, 2);
}

TEST(Cli, FailingCheckExitsOne) {
  // A tolerance below the floating-point floor cannot pass.
  const auto r = invoke("toda --rank 3 --samples 4 --tol gen_wdvv=1e-300");
  EXPECT_EQ(r.code, 1);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["verdict"], "fail");
  EXPECT_EQ(checks_by_name(j)["toda_gen_wdvv"]["status"], "fail");
}

TEST(Cli, BareToleranceTargetsPrimaryCheck) {
  const Json j = Json::parse(invoke("toda --rank 2 --samples 2 --tol 1e-7").out);
  EXPECT_EQ(j["config"]["tolerances"]["gen_wdvv"], "9.9999999999999995e-08");
  EXPECT_EQ(checks_by_name(j)["toda_gen_wdvv"]["tolerance"], "9.9999999999999995e-08");
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto cfg = scratch() / "cfg.json";
  std::ofstream(cfg) << R"({"rank": 3, "seed": "0x10", "samples": 3, "tolerances": {"fe_const": "1e-9"}})";
  const auto r = invoke("toda --config " + cfg.string() + " --rank 2");
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["config"]["rank"], 2);
  EXPECT_EQ(j["config"]["seed"], 16u);
  EXPECT_EQ(j["config"]["samples"], 3);
  EXPECT_EQ(j["config"]["tolerances"]["fe_const"], "1.0000000000000001e-09");
  EXPECT_EQ(j["config"]["tolerances"]["gen_wdvv"], "1.0000000000000001e-09");
}

TEST(Cli, CatalogListsEveryFamily) {
  const auto r = invoke("catalog");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  std::set<std::string> names;
  for (const auto& e : j["result"]["entries"]) names.insert(e["name"].get<std::string>());
  for (const char* n : {"A1", "A8", "D4", "D8", "E6", "E7", "E8"}) EXPECT_TRUE(names.count(n)) << n;
  for (const auto& e : j["result"]["entries"])
    if (e["name"] == "E8") EXPECT_FALSE(e["notes"].empty());
}

TEST(Cli, EskCheckCanonicalAndCustomV) {
  const auto toda = invoke("esk-check --provider toda --rank 3 --samples 5");
  ASSERT_EQ(toda.code, 0) << toda.out;
  const Json c = checks_by_name(Json::parse(toda.out));
  EXPECT_EQ(c["flatness_curvature"]["hard"], true);
  EXPECT_EQ(c["associativity"]["status"], "pass");

  const auto saito = invoke("esk-check --provider saito --rank 3 --V unit --samples 5");
  ASSERT_EQ(saito.code, 0) << saito.out;
  EXPECT_EQ(checks_by_name(Json::parse(saito.out))["flatness_constancy"]["status"], "pass");

  // e_1 is not an eventual identity for Toda: the F-identity fails, flatness is informational.
  const auto custom = invoke("esk-check --provider toda --rank 2 --V custom:1,0 --samples 5");
  EXPECT_EQ(custom.code, 1);
  const Json cc = checks_by_name(Json::parse(custom.out));
  EXPECT_EQ(cc["fmanifold_identity"]["status"], "fail");
  EXPECT_EQ(cc["flatness_constancy"]["hard"], false);
}

TEST(Cli, DualityReportsConstants) {
  const auto r = invoke("duality --type A --rank 2 --samples 4");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["result"]["fitted_constants"].size(), 4u);
  EXPECT_EQ(checks_by_name(j)["duality_constancy"]["hard"], false);
}

TEST(Cli, TextAndOutputFile) {
  const auto path = scratch() / "report.json";
  std::filesystem::remove(path);
  const auto r = invoke("build --type A --rank 2 --output " + path.string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const Json j = Json::parse(in);
  EXPECT_EQ(j["result"]["prepotential"], "-1/216 * t2^4 + 1/6 * t1^2*t2");
  const auto text = invoke("build --type A --rank 2 --format text");
  EXPECT_NE(text.out.find("wdvv_exact"), std::string::npos);
  EXPECT_NE(text.out.find("verdict pass"), std::string::npos);
}

TEST(Cli, RunApiRejectsUnknownCommand) {
  cli::RunConfig c;
  c.command = "nope";
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(cli::run(c, out, err), cli::kUsage);
  EXPECT_TRUE(out.str().empty());
  c.command = "catalog";
  EXPECT_EQ(cli::run(c, out, err), cli::kOk);
}
