#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

#include "qfoundry/constants.hpp"
#include "qfoundry/error.hpp"
#include "qfoundry/report.hpp"

using namespace qfoundry;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(QFOUNDRY_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("qfoundry_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("constants file matches the compiled defaults") {
  const auto f = load_constants(QFOUNDRY_CONSTANTS_FILE);
  const SiConstants d;
  CHECK(f.constants.hbar == d.hbar);
  CHECK(f.constants.c == d.c);
  CHECK(f.constants.G == d.G);
  CHECK(f.constants.k_B == d.k_B);
  CHECK(f.constants.solar_mass == d.solar_mass);
  CHECK(f.entries.count("version") == 1);
  CHECK(f.sha256 == sha256_hex(slurp(QFOUNDRY_CONSTANTS_FILE)));
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("malformed constants files are rejected") {
  const auto dir = scratch("constants");
  fs::create_directories(dir);
  std::ofstream(dir / "bad.txt") << "hbar=1\nc\n";
  CHECK_THROWS_AS(load_constants(dir / "bad.txt"), DomainError);
  std::ofstream(dir / "short.txt") << "hbar=1\n";
  CHECK_THROWS_AS(load_constants(dir / "short.txt"), DomainError);
  CHECK_THROWS(load_constants(dir / "missing.txt"));
}

TEST_CASE("report serialization") {
  using namespace report;
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1e-20) == "1e-20");
  CHECK(format_number(3.0) == "3");

  Curve c{"", {"x", "y"}, {Unit::natural, Unit::nats}, {}};
  c.add_row({1.0, 0.5});
  c.add_row({2.0, 0.25});
  CHECK(to_csv(c) == "x,y\n1,0.5\n2,0.25\n");
  CHECK_THROWS_AS(c.add_row({1.0}), DomainError);
  CHECK(csv_file_name("bell", c) == "bell.csv");
  c.name = "fit";
  CHECK(csv_file_name("gaussent", c) == "gaussent_fit.csv");

  ExperimentReport r;
  r.subcommand = "t";
  r.scalar("S", 1.5, Unit::nats);
  CHECK(r.verdict("ok", true, 0.0, 1.0));
  CHECK(r.all_passed());
  r.verdict("bad", false, 2.0, 1.0);
  CHECK_FALSE(r.all_passed());
  const auto j = to_json(r);
  CHECK(j["scalars"]["S"]["unit"] == "nats");
  CHECK(j.dump() == to_json(r).dump());
}

TEST_CASE("manifest round trip") {
  report::RunManifest m;
  m.subcommand = "bell";
  m.argv = {"bell", "--seed", "7"};
  m.parameters = {{"theta", 45}};
  m.seed = 7;
  m.version = "1.2.3";
  m.constants_sha256 = "00";
  m.duration_seconds = 0.25;
  m.outputs = {"bell.csv", "bell.json"};
  const auto back = report::manifest_from_json(report::to_json(m));
  CHECK(back.argv == m.argv);
  CHECK(back.seed == 7);
  CHECK(back.outputs == m.outputs);
  CHECK(report::to_json(back).dump() == report::to_json(m).dump());
}

TEST_CASE("cli: bell example") {
  const auto dir = scratch("bell");
  const auto r = cli("bell --theta 45 --samples 100000 --seed 7 --out " + dir.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("violated=true") != std::string::npos);
  CHECK(fs::exists(dir / "bell.csv"));
  CHECK(fs::exists(dir / "bell.json"));
  CHECK(fs::exists(dir / "bell.manifest.json"));
  const auto csv = slurp(dir / "bell.csv");
  CHECK(csv.rfind("theta_deg,quantum_P,lhv_P\n", 0) == 0);
  CHECK(csv.find('\r') == std::string::npos);
  const auto manifest = nlohmann::json::parse(slurp(dir / "bell.manifest.json"));
  CHECK(manifest["seed"] == 7);
  CHECK(manifest["constants_sha256"].get<std::string>().size() == 64);
}

TEST_CASE("cli: frwigner table") {
  const auto dir = scratch("fr");
  const auto r = cli("frwigner --out " + dir.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("0.08333333333333") != std::string::npos);
  CHECK(r.out.find("=> a3=fail") != std::string::npos);
}

TEST_CASE("cli: SI Hawking temperature") {
  const auto dir = scratch("hawking");
  const auto r = cli("hawking --units si --mass-solar 1 --format json --out " + dir.string());
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "hawking.json"));
  const double th = j["scalars"]["T_H"]["value"];
  CHECK(j["scalars"]["T_H"]["unit"] == "kelvin");
  CHECK(std::abs(th / 6.2e-8 - 1.0) < 0.01);
  CHECK_FALSE(fs::exists(dir / "hawking.csv"));
}

TEST_CASE("cli: catalog") {
  const auto r = cli("list");
  CHECK(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 17);
  const auto j = cli("list --json");
  const auto cat = nlohmann::json::parse(j.out);
  CHECK(cat.size() == 17);
  for (const auto& e : cat) CHECK_FALSE(e["topic"].get<std::string>().empty());
}

TEST_CASE("cli: usage errors exit 1 with one line") {
  for (const char* args : {"nosuch", "bell --theta 400", "bell --samples abc", "zeno --kmax 99", "hawking --units metric",
                           "dim --m2L2 -10", ""}) {
    const auto r = cli(args);
    CHECK_MESSAGE(r.code == 1, args);
    CHECK_MESSAGE(std::count(r.out.begin(), r.out.end(), '\n') == 1, args);
  }
}

TEST_CASE("cli: verdict failure exits 2") {
  const auto r = cli("rt --ratios 10 --out " + scratch("rt").string());
  CHECK(r.code == 2);
  CHECK(r.out.find("=false") != std::string::npos);
}

TEST_CASE("cli: QFOUNDRY_OUT overrides --out") {
  const auto env_dir = scratch("env");
  const auto flag_dir = scratch("flag");
  const auto r = cli("dim --out " + flag_dir.string() + " && QFOUNDRY_OUT=" + env_dir.string() + " " + QFOUNDRY_CLI +
                     " dim --out " + flag_dir.string() + "x");
  CHECK(r.code == 0);
  CHECK(fs::exists(env_dir / "dim.json"));
  CHECK_FALSE(fs::exists(flag_dir.string() + "x"));
}

TEST_CASE("cli: replay reproduces the payload") {
  const auto a = scratch("replay_a");
  const auto b = scratch("replay_b");
  REQUIRE(cli("pagecurve --qubits 6 --samples 50 --seed 3 --out " + a.string()).code == 0);
  REQUIRE(cli("replay --manifest " + (a / "pagecurve.manifest.json").string() + " --out " + b.string()).code == 0);
  CHECK(slurp(a / "pagecurve.csv") == slurp(b / "pagecurve.csv"));
  CHECK(slurp(a / "pagecurve.json") == slurp(b / "pagecurve.json"));
}
