#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "dgldpc/ensemble.hpp"

namespace dgldpc {

inline constexpr const char* kToolVersion = "0.1.0";

/// Parsed ensemble config file plus the raw bytes it came from.
struct EnsembleConfig {
  std::string name;
  Ensemble ensemble;
  std::string config_hash;  // fnv1a-64 over the raw file bytes
};

/// Build an ensemble from the JSON schema:
///   {
///     "name": "optional",
///     "cn_types": [{"generator": ["110","011"], "rho":    {"num":1,"den":1}}],
///     "vn_types": [{"generator": ["11"],        "lambda": {"num":1,"den":1}}]
///   }
/// Generator rows are bit-strings; the leftmost character is column 0.
/// Throws ConfigParseError with a field path on any problem.
EnsembleConfig parse_ensemble_config(const std::string& raw_bytes,
                                     int max_k = kDefaultEnumerationMaxK);

EnsembleConfig load_ensemble_config(const std::string& path,
                                    int max_k = kDefaultEnumerationMaxK);

std::string fnv1a_hex(const std::string& bytes);

/// Uniform wrapper for every command's machine-readable output.
nlohmann::json make_envelope(const std::string& command,
                             const std::string& config_hash,
                             const nlohmann::json& parameters,
                             const nlohmann::json& results);

nlohmann::json rat_to_json(const Rat& value);

}  // namespace dgldpc
