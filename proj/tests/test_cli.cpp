#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <unistd.h>

#include "doctest.h"
#include "json.hpp"

#include "desoc/cli.hpp"

namespace fs = std::filesystem;
using desoc::cli::kExitOk;
using desoc::cli::kExitSolver;
using desoc::cli::kExitUsage;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run desoc_run(std::vector<std::string> args) {
  args.insert(args.begin(), "desoc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = desoc::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string bundled(const char* name) { return std::string(DESOC_SOURCE_DIR) + "/problems/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string l; std::getline(ss, l);) out.push_back(l);
  return out;
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("desoc_cli_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const char* f) const { return (path / f).string(); }
};

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(desoc_run({}).code == kExitUsage);
  CHECK(desoc_run({"frobnicate"}).code == kExitUsage);
  CHECK(desoc_run({"solve", "/nonexistent.yaml"}).code == kExitUsage);
  CHECK(desoc_run({"solve", bundled("orbit_raising.yaml"), "--mesh", "zero"}).code == kExitUsage);
  CHECK(desoc_run({"disperse", bundled("orbit_raising.yaml")}).code == kExitUsage);
  CHECK(desoc_run({"disperse", bundled("orbit_raising.yaml"), "--thrust-pct", "5", "--mode", "x"}).code == kExitUsage);
  CHECK(desoc_run({"sweep", bundled("orbit_raising.yaml"), "--thrust-pct", "5", "--t2-grid", "0:9:3"}).code ==
        kExitUsage);
  CHECK(desoc_run({"sweep", bundled("orbit_raising.yaml"), "--thrust-pct", "5", "--t2-grid", "a:b"}).code ==
        kExitUsage);
  CHECK(desoc_run({"solve", bundled("orbit_raising.yaml"), "--t2", "7"}).code == kExitUsage);
  CHECK(desoc_run({"--help"}).code == kExitOk);
}

TEST_CASE("dump-config reflects overrides") {
  const auto r = desoc_run({"solve", bundled("earth_67p.yaml"), "--Q", "0.0001", "--t2", "260", "--dump-config"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("thrust: 0.6") != std::string::npos);
  CHECK(r.out.find("q: 1e-04") != std::string::npos);
  CHECK(r.out.find("t2: 260.0") != std::string::npos);
}

TEST_CASE("solve orbit raising") {
  TempDir dir;
  const auto r = desoc_run({"solve", bundled("orbit_raising.yaml"), "--Q", "0", "--out", dir / "or.csv"});
  REQUIRE(r.code == kExitOk);
  const auto summary = nlohmann::json::parse(slurp(dir / "or.summary.json"));
  // shooting oracle r(tf), see test_analysis
  CHECK(std::abs(summary["sensitive_cost"].get<double>() - 1.5252777) < 1e-3);
  CHECK(summary["solver"]["status"] == "converged");
  const auto rows = lines(slurp(dir / "or.csv"));
  CHECK(rows.front() == "t,r,u,v,m,lambda_T,phi");
  CHECK(rows.size() == 1 + 81);

  SUBCASE("explicit full window equals the default") {
    const auto w = desoc_run(
        {"solve", bundled("orbit_raising.yaml"), "--Q", "0", "--t1", "0", "--t2", "3.32", "--out", dir / "w.csv"});
    REQUIRE(w.code == kExitOk);
    CHECK(slurp(dir / "w.csv") == slurp(dir / "or.csv"));
  }
}

TEST_CASE("disperse orbit raising with absolute thrusts") {
  TempDir dir;
  const auto r = desoc_run({"disperse", bundled("orbit_raising.yaml"), "--thrust-abs", "0.1505,0.1305", "--mesh", "20",
                            "--out", dir / "d.csv"});
  REQUIRE(r.code == kExitOk);
  const auto rows = lines(slurp(dir / "d.csv"));
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == "thrust,cost,d,status");
  CHECK(rows[1].rfind("0.1405,", 0) == 0);
  CHECK(rows[2].rfind("0.1505,", 0) == 0);
  CHECK(rows[3].rfind("0.1305,", 0) == 0);
  const auto summary = nlohmann::json::parse(slurp(dir / "d.summary.json"));
  CHECK(summary["mode"] == "resolve");
  CHECK(summary["runs"].size() == 2);
}

TEST_CASE("disperse 67P by percent") {
  TempDir dir;
  const auto r = desoc_run({"disperse", bundled("earth_67p.yaml"), "--thrust-pct", "5", "--mode", "refly", "--mesh",
                            "30", "--out", dir / "e.csv"});
  REQUIRE(r.code != kExitUsage);
  const auto rows = lines(slurp(dir / "e.csv"));
  REQUIRE(rows.size() == 4);
  CHECK(rows[1].rfind("0.6,", 0) == 0);
  CHECK(rows[2].rfind("0.63,", 0) == 0);
  CHECK(rows[3].rfind("0.57,", 0) == 0);
  const auto summary = nlohmann::json::parse(slurp(dir / "e.summary.json"));
  CHECK(summary["config"]["spacecraft"]["thrust_N"] == 0.6);
  CHECK(summary["config"]["spacecraft"]["isp_s"] == 3000.0);
  CHECK(summary["config"]["spacecraft"]["m0_kg"] == 3000.0);
}

TEST_CASE("sweep layouts") {
  TempDir dir;
  SUBCASE("twenty points") {
    const auto r = desoc_run({"sweep", bundled("orbit_raising.yaml"), "--thrust-abs", "0.1505", "--mode", "refly",
                              "--mesh", "10", "--t2-grid", "0:3.32:20", "--out", dir / "s.csv"});
    REQUIRE(r.code == kExitOk);
    const auto rows = lines(slurp(dir / "s.csv"));
    CHECK(rows.size() == 21);
    CHECK(rows[0] == "t2,cost_nominal,cost_perturbed_1,d_1,status");
  }
  SUBCASE("single full-window point") {
    const auto r = desoc_run({"sweep", bundled("orbit_raising.yaml"), "--thrust-abs", "0.1505", "--mesh", "10",
                              "--t2-grid", "0:3.32:1", "--out", dir / "one.csv"});
    REQUIRE(r.code == kExitOk);
    const auto rows = lines(slurp(dir / "one.csv"));
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].rfind("3.32,", 0) == 0);
  }
}

TEST_CASE("convert") {
  auto r = desoc_run({"convert", "--mu", "1", "--state", "1", "0", "0", "0", "1", "0"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("f = 0\n") != std::string::npos);
  CHECK(r.out.find("g = 0\n") != std::string::npos);
  CHECK(r.out.find("h = 0\n") != std::string::npos);
  CHECK(r.out.find("k = 0\n") != std::string::npos);

  r = desoc_run({"convert", "--state", "-10687809.15", "-151602518.3", "8676.494013", "29.22497601", "-2.197707221",
                 "0.000972199"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("p = 149486570.3") != std::string::npos);

  CHECK(desoc_run({"convert", "--state", "1", "2", "3"}).code == kExitUsage);
  CHECK(desoc_run({"convert", "--state", "0", "0", "0", "0", "0", "0"}).code == kExitUsage);
}
