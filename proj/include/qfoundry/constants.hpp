#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace qfoundry {

enum class UnitSystem { natural, si };

const char* to_string(UnitSystem units) noexcept;
/// "natural" or "si"; throws DomainError otherwise.
UnitSystem parse_unit_system(const std::string& text);

/// SI constants. Defaults are the values pinned in data/si_constants.txt; a test keeps the two in sync.
struct SiConstants {
  double hbar = 1.054571817e-34;   // J s
  double c = 299792458.0;          // m / s
  double G = 6.67430e-11;          // m^3 / (kg s^2)
  double k_B = 1.380649e-23;       // J / K
  double solar_mass = 1.98847e30;  // kg
};

/// Parsed constants file: the recognised constants plus every raw name=value entry.
struct ConstantsFile {
  SiConstants constants;
  std::map<std::string, std::string> entries;
  std::string sha256;  // hex digest of the file bytes
};

/// Reads a name=value file ('#' comments, blank lines ignored). Throws DomainError on malformed lines or
/// missing required constants.
ConstantsFile load_constants(const std::filesystem::path& path);

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace qfoundry
