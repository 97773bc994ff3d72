#include "dgldpc/config.hpp"

#include <fstream>
#include <sstream>

#include "dgldpc/errors.hpp"

namespace dgldpc {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

Rat parse_fraction(const nlohmann::json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den")) {
    throw ConfigParseError(path + ": expected {\"num\": int, \"den\": int}");
  }
  if (!j["num"].is_number_integer() || !j["den"].is_number_integer()) {
    throw ConfigParseError(path + ": num/den must be integers");
  }
  long num = j["num"].get<long>();
  long den = j["den"].get<long>();
  if (den <= 0 || num <= 0) {
    throw ConfigParseError(path + ": fraction must be positive");
  }
  return make_rat(num, den);
}

LinearCode parse_generator(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) {
    throw ConfigParseError(path + ": expected a non-empty array of "
                           "bit-strings");
  }
  std::vector<std::string> rows;
  for (const auto& row : j) {
    if (!row.is_string()) {
      throw ConfigParseError(path + ": generator rows must be strings");
    }
    rows.push_back(row.get<std::string>());
  }
  try {
    return code_from_bitstrings(rows);
  } catch (const ValidationError& e) {
    throw ConfigParseError(path + ": " + e.what());
  }
}

}  // namespace

EnsembleConfig parse_ensemble_config(const std::string& raw_bytes, int max_k) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(raw_bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigParseError("config root must be an object");
  if (!j.contains("cn_types") || !j.contains("vn_types")) {
    throw ConfigParseError("config needs cn_types and vn_types arrays");
  }

  std::vector<CNSpec> cn_specs;
  std::vector<VNSpec> vn_specs;
  size_t idx = 0;
  for (const auto& t : j["cn_types"]) {
    std::string path = "cn_types[" + std::to_string(idx++) + "]";
    if (!t.contains("generator") || !t.contains("rho")) {
      throw ConfigParseError(path + ": needs generator and rho");
    }
    cn_specs.push_back({parse_generator(t["generator"], path + ".generator"),
                        parse_fraction(t["rho"], path + ".rho")});
  }
  idx = 0;
  for (const auto& t : j["vn_types"]) {
    std::string path = "vn_types[" + std::to_string(idx++) + "]";
    if (!t.contains("generator") || !t.contains("lambda")) {
      throw ConfigParseError(path + ": needs generator and lambda");
    }
    vn_specs.push_back({parse_generator(t["generator"], path + ".generator"),
                        parse_fraction(t["lambda"], path + ".lambda")});
  }

  EnsembleConfig cfg;
  cfg.name = j.value("name", "");
  cfg.ensemble = build_ensemble(cn_specs, vn_specs, max_k);
  cfg.config_hash = fnv1a_hex(raw_bytes);
  return cfg;
}

EnsembleConfig load_ensemble_config(const std::string& path, int max_k) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigParseError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_ensemble_config(ss.str(), max_k);
}

nlohmann::json make_envelope(const std::string& command,
                             const std::string& config_hash,
                             const nlohmann::json& parameters,
                             const nlohmann::json& results) {
  nlohmann::json env;
  env["command"] = command;
  env["config_hash"] = config_hash;
  env["parameters"] = parameters;
  env["results"] = results;
  env["timing_ms"] = nullptr;  // filled only under --timing
  env["tool_version"] = kToolVersion;
  return env;
}

nlohmann::json rat_to_json(const Rat& value) {
  nlohmann::json j;
  j["num"] = value.get_num().get_str();
  j["den"] = value.get_den().get_str();
  j["decimal"] = to_double(value);
  return j;
}

}  // namespace dgldpc
