#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace qfoundry::report {

using Json = nlohmann::ordered_json;

/// Unit tags accepted on scalars and curve columns.
enum class Unit { nats, kelvin, metre, natural, dimensionless };

const char* to_string(Unit unit) noexcept;

struct Scalar {
  std::string name;
  double value = 0.0;
  Unit unit = Unit::dimensionless;
};

/// Table of numeric rows; each column carries its own unit tag.
struct Curve {
  std::string name;  // empty for the subcommand's primary curve
  std::vector<std::string> columns;
  std::vector<Unit> units;
  std::vector<std::vector<double>> rows;

  /// Throws DomainError if the row width differs from the column count.
  void add_row(std::vector<double> row);
};

struct Verdict {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct ExperimentReport {
  std::string subcommand;
  Json parameters = Json::object();
  std::vector<Scalar> scalars;
  std::vector<Curve> curves;
  std::vector<Verdict> verdicts;
  Json records = Json::object();  // structured, non-numeric output (tables, transcripts)
  std::vector<std::string> notes;

  void scalar(std::string name, double value, Unit unit);
  /// Records a verdict; returns `passed` for chaining.
  bool verdict(std::string name, bool passed, double value, double tolerance, std::string detail = {});
  bool all_passed() const;
};

/// Shortest round-trip decimal form ('.' decimal point, no locale).
std::string format_number(double v);

Json to_json(const ExperimentReport& r);

/// CSV text of one curve: header row, comma separator, '\n' line endings.
std::string to_csv(const Curve& c);

/// File name of a curve's CSV: <subcommand>.csv for the primary curve, <subcommand>_<name>.csv otherwise.
std::string csv_file_name(const std::string& subcommand, const Curve& c);

/// Writes bytes to a file, creating parent directories. Throws Error on I/O failure.
void write_file(const std::filesystem::path& path, const std::string& bytes);

struct RunManifest {
  std::string subcommand;
  std::vector<std::string> argv;  // arguments after the program name
  Json parameters = Json::object();
  std::uint64_t seed = 0;
  std::string version;
  std::string constants_sha256;
  double duration_seconds = 0.0;
  std::vector<std::string> outputs;
};

Json to_json(const RunManifest& m);
RunManifest manifest_from_json(const Json& j);

}  // namespace qfoundry::report
