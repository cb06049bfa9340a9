#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qfoundry/constants.hpp"
#include "qfoundry/report.hpp"

namespace qfoundry::cli {

struct Globals {
  std::uint64_t seed = 0;
  UnitSystem units = UnitSystem::natural;
  SiConstants constants{};
};

using Runner = std::function<report::ExperimentReport(const Globals&)>;

struct Experiment {
  std::string name;
  std::string topic;
  /// Registers the subcommand's flags on `sub` and returns the runner bound to them.
  std::function<Runner(CLI::App* sub)> setup;
};

/// The seventeen experiments, in catalog order.
const std::vector<Experiment>& experiments();

}  // namespace qfoundry::cli
