#include <doctest.h>

#include "dgldpc/config.hpp"
#include "dgldpc/errors.hpp"

using namespace dgldpc;
using nlohmann::json;

namespace {

const char* kLdpcConfig = R"({
  "name": "rate-1/3 ldpc",
  "cn_types": [{"generator": ["101", "011"], "rho": {"num": 1, "den": 1}}],
  "vn_types": [{"generator": ["11"], "lambda": {"num": 1, "den": 1}}]
})";

}  // namespace

TEST_CASE("parsing a valid config") {
  EnsembleConfig cfg = parse_ensemble_config(kLdpcConfig);
  CHECK(cfg.name == "rate-1/3 ldpc");
  CHECK(cfg.ensemble.cn_types.size() == 1);
  CHECK(cfg.ensemble.vn_types.size() == 1);
  CHECK(cfg.ensemble.cn_types[0].length() == 3);
  CHECK(cfg.ensemble.cn_types[0].dimension() == 2);
  CHECK(cfg.ensemble.vn_types[0].min_dist == 2);
  CHECK(cfg.config_hash.size() == 16);
  CHECK(cfg.config_hash == fnv1a_hex(kLdpcConfig));
}

TEST_CASE("parse errors carry a field path") {
  CHECK_THROWS_AS(parse_ensemble_config("{not json"), ConfigParseError);
  CHECK_THROWS_AS(parse_ensemble_config("[1,2]"), ConfigParseError);
  CHECK_THROWS_AS(parse_ensemble_config("{\"cn_types\": []}"),
                  ConfigParseError);

  try {
    parse_ensemble_config(R"({
      "cn_types": [{"generator": ["10"], "rho": {"num": 1}}],
      "vn_types": [{"generator": ["11"], "lambda": {"num": 1, "den": 1}}]
    })");
    CHECK(false);
  } catch (const ConfigParseError& e) {
    CHECK(std::string(e.what()).find("cn_types[0].rho") != std::string::npos);
  }

  // fraction sums are validated by the ensemble builder
  CHECK_THROWS_AS(parse_ensemble_config(R"({
    "cn_types": [{"generator": ["101", "011"], "rho": {"num": 1, "den": 1}}],
    "vn_types": [{"generator": ["11"], "lambda": {"num": 9, "den": 10}}]
  })"),
                  FractionSumError);
}

TEST_CASE("envelope round-trips byte-identically") {
  json env = make_envelope("analyze", "0123456789abcdef",
                           {{"config", "x.json"}},
                           {{"slope_nats", 0.6931471805599453}});
  std::string once = env.dump(2);
  std::string twice = json::parse(once).dump(2);
  CHECK(once == twice);
  CHECK(env["tool_version"] == kToolVersion);
  CHECK(env["timing_ms"].is_null());
}

TEST_CASE("rationals serialize as num/den plus decimal") {
  json j = rat_to_json(make_rat(2, 3));
  CHECK(j["num"] == "2");
  CHECK(j["den"] == "3");
  CHECK(j["decimal"].get<double>() == doctest::Approx(2.0 / 3.0));
}
