#include "qfoundry/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "qfoundry/error.hpp"

namespace qfoundry::report {

const char* to_string(Unit unit) noexcept {
  switch (unit) {
    case Unit::nats: return "nats";
    case Unit::kelvin: return "kelvin";
    case Unit::metre: return "metre";
    case Unit::natural: return "natural";
    case Unit::dimensionless: return "dimensionless";
  }
  return "dimensionless";
}

void Curve::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw DomainError(fmt::format("curve '{}' expects {} columns (got {})", name, columns.size(), row.size()));
  }
  rows.push_back(std::move(row));
}

void ExperimentReport::scalar(std::string name, double value, Unit unit) {
  scalars.push_back({std::move(name), value, unit});
}

bool ExperimentReport::verdict(std::string name, bool passed, double value, double tolerance, std::string detail) {
  verdicts.push_back({std::move(name), passed, value, tolerance, std::move(detail)});
  return passed;
}

bool ExperimentReport::all_passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{}", v);
}

namespace {

// JSON has no NaN/inf; those go out as strings.
Json number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

}  // namespace

Json to_json(const ExperimentReport& r) {
  Json j;
  j["subcommand"] = r.subcommand;
  j["parameters"] = r.parameters;
  Json scalars = Json::object();
  for (const auto& s : r.scalars) scalars[s.name] = Json{{"value", number(s.value)}, {"unit", to_string(s.unit)}};
  j["scalars"] = scalars;
  Json curves = Json::array();
  for (const auto& c : r.curves) {
    Json cols = Json::array();
    for (std::size_t i = 0; i < c.columns.size(); ++i) cols.push_back({{"name", c.columns[i]}, {"unit", to_string(c.units[i])}});
    curves.push_back({{"name", c.name.empty() ? r.subcommand : c.name}, {"columns", cols}, {"rows", c.rows.size()},
                      {"file", csv_file_name(r.subcommand, c)}});
  }
  j["curves"] = curves;
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) {
    Json e{{"name", v.name}, {"passed", v.passed}, {"value", number(v.value)}, {"tolerance", number(v.tolerance)}};
    if (!v.detail.empty()) e["detail"] = v.detail;
    verdicts.push_back(e);
  }
  j["verdicts"] = verdicts;
  j["all_passed"] = r.all_passed();
  if (!r.records.empty()) j["records"] = r.records;
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j;
}

std::string to_csv(const Curve& c) {
  std::string out;
  for (std::size_t i = 0; i < c.columns.size(); ++i) {
    if (i) out += ',';
    out += c.columns[i];
  }
  out += '\n';
  for (const auto& row : c.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string csv_file_name(const std::string& subcommand, const Curve& c) {
  return c.name.empty() ? subcommand + ".csv" : subcommand + "_" + c.name + ".csv";
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw Error(fmt::format("cannot create {}: {}", path.parent_path().string(), ec.message()));
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(fmt::format("cannot open {} for writing", path.string()));
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error(fmt::format("write to {} failed", path.string()));
}

Json to_json(const RunManifest& m) {
  return Json{{"subcommand", m.subcommand},
              {"argv", m.argv},
              {"parameters", m.parameters},
              {"seed", m.seed},
              {"version", m.version},
              {"constants_sha256", m.constants_sha256},
              {"duration_seconds", m.duration_seconds},
              {"outputs", m.outputs}};
}

RunManifest manifest_from_json(const Json& j) {
  try {
    RunManifest m;
    m.subcommand = j.at("subcommand").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    m.parameters = j.value("parameters", Json::object());
    m.seed = j.value("seed", std::uint64_t{0});
    m.version = j.value("version", std::string{});
    m.constants_sha256 = j.value("constants_sha256", std::string{});
    m.duration_seconds = j.value("duration_seconds", 0.0);
    m.outputs = j.value("outputs", std::vector<std::string>{});
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(fmt::format("malformed manifest: {}", e.what()));
  }
}

}  // namespace qfoundry::report
