#include "qfoundry/constants.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "qfoundry/error.hpp"

namespace qfoundry {

const char* to_string(UnitSystem units) noexcept { return units == UnitSystem::si ? "si" : "natural"; }

UnitSystem parse_unit_system(const std::string& text) {
  if (text == "natural") return UnitSystem::natural;
  if (text == "si") return UnitSystem::si;
  throw DomainError(fmt::format("unknown unit system '{}' (expected natural|si)", text));
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& name, const std::string& text) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) throw DomainError(fmt::format("constant '{}' has non-numeric value '{}'", name, text));
  return v;
}

}  // namespace

ConstantsFile load_constants(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError(fmt::format("cannot open constants file '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();

  ConstantsFile out;
  out.sha256 = sha256_hex(bytes);
  std::istringstream lines(bytes);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError(fmt::format("{}:{}: expected name=value", path.string(), lineno));
    out.entries[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  auto require = [&](const char* name) {
    auto it = out.entries.find(name);
    if (it == out.entries.end()) throw DomainError(fmt::format("constants file lacks '{}'", name));
    return parse_double(name, it->second);
  };
  out.constants.hbar = require("hbar");
  out.constants.c = require("c");
  out.constants.G = require("G");
  out.constants.k_B = require("k_B");
  out.constants.solar_mass = require("solar_mass");
  return out;
}

}  // namespace qfoundry
