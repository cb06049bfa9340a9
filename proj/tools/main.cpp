#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "experiments.hpp"
#include "qfoundry/error.hpp"

#ifndef QFOUNDRY_VERSION
#define QFOUNDRY_VERSION "0.0.0"
#endif
#ifndef QFOUNDRY_CONSTANTS_FILE
#define QFOUNDRY_CONSTANTS_FILE "data/si_constants.txt"
#endif

namespace fs = std::filesystem;
using namespace qfoundry;
using report::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerdict = 2;

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_report(const report::ExperimentReport& r) {
  for (const auto& s : r.scalars) fmt::print("{} = {} [{}]\n", s.name, report::format_number(s.value), report::to_string(s.unit));
  if (r.subcommand == "frwigner") {
    fmt::print("outcome table (assistant, wigner, probability):\n");
    for (const auto& row : r.records["outcomes"]) {
      fmt::print("  {:>4} {:>4}  {}\n", row["a"].get<std::string>(), row["w"].get<std::string>(),
                 report::format_number(row["probability"].get<double>()));
    }
    fmt::print("implications:\n");
    for (const auto& i : r.records["implications"]) {
      fmt::print("  {}  P = {}\n", i["statement"].get<std::string>(),
                 report::format_number(i["conditional_probability"].get<double>()));
    }
  }
  for (const auto& n : r.notes) fmt::print("note: {}\n", n);
  for (const auto& v : r.verdicts) fmt::print("{}={}\n", v.name, v.passed ? "true" : "false");
}

struct RunOptions {
  std::uint64_t seed = 0;
  std::string out = "qfoundry-out";
  std::string format = "both";
  std::string units = "natural";
  std::string constants = QFOUNDRY_CONSTANTS_FILE;
};

int run(const std::vector<std::string>& args);

int run_experiment(const std::string& name, const cli::Runner& runner, const RunOptions& opt,
                   const std::vector<std::string>& args, const Json& flag_record) {
  const auto start = std::chrono::steady_clock::now();
  const auto file = load_constants(opt.constants);
  cli::Globals g;
  g.seed = opt.seed;
  g.units = parse_unit_system(opt.units);
  g.constants = file.constants;

  auto r = runner(g);
  r.subcommand = name;

  fs::path out = opt.out;
  if (const char* env = std::getenv("QFOUNDRY_OUT"); env && *env) out = env;

  report::RunManifest m;
  m.subcommand = name;
  m.argv = args;
  m.parameters = flag_record;
  m.parameters["computed"] = r.parameters;
  m.seed = opt.seed;
  m.version = QFOUNDRY_VERSION;
  m.constants_sha256 = file.sha256;

  if (opt.format != "json") {
    for (const auto& c : r.curves) {
      const auto fname = report::csv_file_name(name, c);
      report::write_file(out / fname, report::to_csv(c));
      m.outputs.push_back(fname);
    }
  }
  if (opt.format != "csv") {
    const auto fname = name + ".json";
    report::write_file(out / fname, report::to_json(r).dump(2) + "\n");
    m.outputs.push_back(fname);
  }
  m.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report::write_file(out / (name + ".manifest.json"), report::to_json(m).dump(2) + "\n");

  print_report(r);
  fmt::print("outputs: {}\n", out.string());
  return r.all_passed() ? kExitOk : kExitVerdict;
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"qfoundry: numerical experiments on quantum foundations"};
  app.set_version_flag("--version", std::string(QFOUNDRY_VERSION));
  app.require_subcommand(1);
  app.fallthrough();

  RunOptions opt;
  app.add_option("--seed", opt.seed, "Random seed")->capture_default_str();
  app.add_option("--out", opt.out, "Output directory (QFOUNDRY_OUT overrides)")
      ->capture_default_str()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.add_option("--format", opt.format, "Output files")->capture_default_str()->check(CLI::IsMember({"csv", "json", "both"}));
  app.add_option("--units", opt.units, "Unit system")->capture_default_str()->check(CLI::IsMember({"natural", "si"}));
  app.add_option("--constants", opt.constants, "SI constants file")->capture_default_str();

  std::vector<std::pair<CLI::App*, cli::Runner>> subs;
  for (const auto& e : cli::experiments()) {
    auto* sub = app.add_subcommand(e.name, e.topic);
    subs.emplace_back(sub, e.setup(sub));
  }

  auto* list = app.add_subcommand("list", "Print the experiment catalog");
  bool list_json = false;
  list->add_flag("--json", list_json, "Machine-readable catalog");

  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  std::string manifest_path;
  replay->add_option("--manifest", manifest_path, "Manifest file")->required()->check(CLI::ExistingFile);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "qfoundry: " << e.what() << "\n";
    return kExitUsage;
  }

  if (list->parsed()) {
    if (list_json) {
      Json cat = Json::array();
      for (const auto& e : cli::experiments()) cat.push_back({{"name", e.name}, {"topic", e.topic}});
      std::cout << cat.dump(2) << "\n";
    } else {
      for (const auto& e : cli::experiments()) fmt::print("{:<10} {}\n", e.name, e.topic);
    }
    return kExitOk;
  }
  if (replay->parsed()) {
    const auto m = report::manifest_from_json(Json::parse(read_text(manifest_path)));
    auto again = m.argv;
    if (app.count("--out") > 0) {
      again.push_back("--out");
      again.push_back(opt.out);
    }
    return run(again);
  }
  for (const auto& [sub, runner] : subs) {
    if (!sub->parsed()) continue;
    Json flags = Json::object();
    flags["seed"] = opt.seed;
    flags["format"] = opt.format;
    flags["units"] = opt.units;
    for (const auto* o : sub->get_options()) {
      if (o->get_name() == "--help") continue;
      const auto& res = o->results();
      flags[o->get_name()] = res.empty() ? Json(o->get_default_str()) : Json(res.back());
    }
    return run_experiment(sub->get_name(), runner, opt, args, flags);
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run(args);
  } catch (const Error& e) {
    std::cerr << "qfoundry: error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "qfoundry: error: " << e.what() << "\n";
    return kExitUsage;
  }
}
