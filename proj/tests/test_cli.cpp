#include "bbm/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

using namespace bbm;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "bbmlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("bbmlab_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

const std::vector<std::string> kSmallTorusSweep{"sweep", "--space", "torus:n=2", "--function", "sine:axis=1",
                                                 "--r-min", "0.03125", "--outer", "16384"};

}  // namespace

TEST_CASE("constant euclidean prints the closed form") {
  const Run r = run({"constant", "euclidean", "--p", "4", "--n", "4"});
  CHECK(r.code == kExitPass);
  CHECK(r.out == "0.0625\n");

  const Run j = run({"--format", "json", "constant", "euclidean", "--p", "2", "--n", "2", "--mc", "--samples", "20000"});
  REQUIRE(j.code == kExitPass);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["closed_form"].get<double>() == 0.25);
  CHECK(doc["monte_carlo"]["samples"].get<int>() == 20000);
  CHECK(std::abs(doc["monte_carlo"]["value"].get<double>() - 0.25) <= 3 * doc["monte_carlo"]["std_error"].get<double>());
}

TEST_CASE("constant heisenberg") {
  const Run r = run({"--format", "csv", "constant", "heisenberg", "--p", "4", "--samples", "20000"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.rfind("source,value,std_error,samples\nmonte-carlo,0.1", 0) == 0);
}

TEST_CASE("distance h1") {
  CHECK(run({"distance", "h1", "--x", "1,0,0", "--y", "0,0,0"}).out == "1\n");
  const Run r = run({"distance", "h1", "--x", "-1,0,0", "--y", "0,0,0"});
  CHECK(r.code == kExitPass);
  CHECK(r.out == "1\n");
  CHECK(run({"distance", "h1", "--x", "1,0", "--y", "0,0,0"}).code == kExitUsage);
}

TEST_CASE("busemann") {
  const Run pass = run({"busemann", "--dir", "1,0", "--z", "-1,1,-1", "--s-max", "1000", "--points", "3"});
  CHECK(pass.code == kExitPass);
  CHECK(pass.out.find("limit 1 ") != std::string::npos);
  const Run fail = run({"busemann", "--z", "0,3,30", "--s-min", "1", "--s-max", "2", "--points", "2"});
  CHECK(fail.code == kExitFail);
  CHECK(run({"busemann", "--dir", "1,1", "--z", "0,0,0"}).code == kExitUsage);
}

TEST_CASE("quotient") {
  const Run r = run({"--format", "json", "quotient", "--space", "euclidean:n=2", "--function", "linear:v=1,0", "--p", "2",
                     "--r", "0.1", "--x", "0,0", "--outer", "50000"});
  REQUIRE(r.code == kExitPass);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["mode"] == "pointwise");
  CHECK(std::abs(doc["estimate"]["value"].get<double>() - 0.25) <= 3 * doc["estimate"]["std_error"].get<double>());

  const Run g = run({"quotient", "--space", "torus:n=2", "--function", "sine:axis=1", "--r", "0.1", "--outer", "4096"});
  CHECK(g.code == kExitPass);
  CHECK(run({"quotient", "--space", "glued", "--function", "bump:center=0,1.2,0,0:radius=1", "--r", "0.5"}).code ==
        kExitUsage);
}

TEST_CASE("sweep: missing r_min is a usage error") {
  const Run r = run({"sweep", "--space", "torus:n=2", "--function", "sine:axis=1"});
  CHECK(r.code == kExitUsage);
  CHECK(r.out.empty());
  CHECK(r.err.find("r_min") != std::string::npos);
  CHECK(run({"sweep"}).code == kExitUsage);
}

TEST_CASE("sweep from flags and from a config file") {
  const Run flags = run(kSmallTorusSweep);
  REQUIRE(flags.code == kExitPass);
  const auto doc = nlohmann::json::parse(flags.out);
  CHECK(doc["verdict"] == "pass");
  CHECK(doc["config"]["seed"] == 1);

  const auto config = temp_path("config.json");
  {
    std::ofstream f(config);
    f << doc["config"].dump();
  }
  const auto report = temp_path("report.json");
  const Run file = run({"--out", report.string(), "sweep", "--config", config.string()});
  CHECK(file.code == kExitPass);
  CHECK(file.out.empty());
  CHECK(slurp(report) == flags.out);

  // Flags override the file; the seed flag overrides the config seed.
  const Run seeded = run({"--seed", "7", "sweep", "--config", config.string(), "--levels", "4"});
  const auto d = nlohmann::json::parse(seeded.out);
  CHECK(d["config"]["seed"] == 7);
  CHECK(d["points"].size() == 4);

  std::filesystem::remove(config);
  std::filesystem::remove(report);
  CHECK(run({"sweep", "--config", "/nonexistent/config.json"}).code == kExitUsage);
}

TEST_CASE("sweep verdict drives the exit code") {
  std::vector<std::string> args = kSmallTorusSweep;
  args.insert(args.end(), {"--tolerance", "1e-9"});
  CHECK(run(args).code == kExitFail);
}

TEST_CASE("csv and worker independence") {
  std::vector<std::string> csv = kSmallTorusSweep;
  csv.insert(csv.begin(), {"--format", "csv"});
  const Run r = run(csv);
  CHECK(r.code == kExitPass);
  CHECK(r.out.rfind("r,value,std_error,samples\n0.5,", 0) == 0);

  std::vector<std::string> many = kSmallTorusSweep;
  many.insert(many.begin(), {"--workers", "3"});
  CHECK(run(many).out == run(kSmallTorusSweep).out);
}

TEST_CASE("usage errors and help") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"--format", "xml", "distance", "h1", "--x", "1,0,0", "--y", "0,0,0"}).code == kExitUsage);
  CHECK(run({"constant", "euclidean", "--p", "1", "--n", "2"}).code == kExitUsage);
  CHECK(run({"--out", "/nonexistent/dir/out.txt", "distance", "h1", "--x", "1,0,0", "--y", "0,0,0"}).code == kExitUsage);
  const Run help = run({"--help"});
  CHECK(help.code == kExitPass);
  CHECK(help.out.find("glued-demo") != std::string::npos);
}
