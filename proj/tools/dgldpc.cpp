// dgldpc: batch analysis of D-GLDPC code ensembles.
//
// Subcommands: analyze, growth, spectrum, sample, lemma, validate.
// Exit codes: 0 success, 1 input error, 2 hypothesis/feasibility error,
// 3 capacity error.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "dgldpc/config.hpp"
#include "dgldpc/errors.hpp"
#include "dgldpc/growth.hpp"
#include "dgldpc/oracle.hpp"
#include "dgldpc/spectral.hpp"

using nlohmann::json;
using namespace dgldpc;

namespace {

struct OutputOptions {
  std::string format = "json";
  std::string out_path;
  std::string log_base = "e";
  bool timing = false;
};

void add_output_flags(CLI::App* cmd, OutputOptions* opts) {
  cmd->add_option("--format", opts->format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", opts->out_path, "Write the report to a file");
  cmd->add_option("--log-base", opts->log_base,
                  "Base for logarithmic quantities")
      ->check(CLI::IsMember({"e", "2"}));
  cmd->add_flag("--timing", opts->timing, "Include wall time in the report");
}

double rescale_log(double nats, const OutputOptions& opts) {
  return opts.log_base == "2" ? nats / std::log(2.0) : nats;
}

struct CommandResult {
  int code = 0;
  json env;
  std::string csv;
};

void emit(const OutputOptions& opts, const json& envelope,
          const std::string& csv_body) {
  std::string payload;
  if (opts.format == "json") {
    payload = envelope.dump(2) + "\n";
  } else {
    std::ostringstream head;
    head << "# command=" << envelope["command"].get<std::string>()
         << " config_hash=" << envelope["config_hash"].get<std::string>()
         << " tool_version=" << envelope["tool_version"].get<std::string>()
         << "\n";
    payload = head.str() + csv_body;
  }
  if (opts.out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) throw ValidationError("cannot open --out " + opts.out_path);
    out << payload;
  }
}

Int parse_int(const std::string& text) {
  try {
    return Int(text, 10);
  } catch (const std::invalid_argument&) {
    throw ValidationError("not an integer: '" + text + "'");
  }
}

// Exact rational from "3/4", "0.25", or "2".
Rat parse_rat(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    return make_rat(parse_int(text.substr(0, slash)),
                    parse_int(text.substr(slash + 1)));
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rat(parse_int(text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  size_t places = text.size() - dot - 1;
  Int den = 1;
  for (size_t i = 0; i < places; ++i) den *= 10;
  bool neg = !digits.empty() && digits[0] == '-';
  if (neg) digits = digits.substr(1);
  Rat r = make_rat(parse_int(digits), den);
  return neg ? Rat(-r) : r;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

IntPoly parse_poly(const std::string& text) {
  std::vector<Int> coeffs;
  for (const auto& c : split(text, ',')) coeffs.push_back(parse_int(c));
  if (coeffs.empty()) throw ValidationError("empty polynomial");
  return IntPoly(std::move(coeffs));
}

BiPoly parse_bipoly(const std::string& text) {
  BiPoly b;
  for (const auto& row : split(text, ';')) {
    std::vector<Int> r;
    for (const auto& c : split(row, ',')) r.push_back(parse_int(c));
    b.rows.push_back(std::move(r));
  }
  if (b.rows.empty()) throw ValidationError("empty polynomial");
  b.trim();
  return b;
}

json spectral_to_json(const Ensemble& ensemble, const SpectralParams& sp,
                      const OutputOptions& opts) {
  json r;
  r["r"] = sp.r;
  r["p"] = sp.p;
  r["x_c"] = sp.x_c;
  r["x_v"] = sp.x_v;
  r["c"] = rat_to_json(sp.c);
  r["design_rate"] = rat_to_json(design_rate(ensemble));
  r["p_defined"] = sp.p_defined;
  if (sp.p_defined) {
    json coeffs = json::array();
    for (const auto& [i, c] : sp.p_coeffs) {
      json term = rat_to_json(c);
      term["i"] = i;
      coeffs.push_back(term);
    }
    r["p_coeffs"] = coeffs;
    double bound = p_inverse(sp, 1.0 / to_double(sp.c));
    r["stability_bound"] = bound;  // P^{-1}(1/C)
    if (sp.r == 2) {
      double slope = -std::log(bound);
      r["slope_nats"] = slope;
      r["slope_bits"] = slope / std::log(2.0);
      r["slope"] = rescale_log(slope, opts);
    }
  }
  return r;
}

CommandResult run_analyze(const std::string& config_path,
                          const OutputOptions& opts, int max_k) {
  EnsembleConfig cfg = load_ensemble_config(config_path, max_k);
  SpectralParams sp = spectral_params(cfg.ensemble);
  json results = spectral_to_json(cfg.ensemble, sp, opts);

  int exit_code = 0;
  if (sp.r != 2 || sp.p != 2) {
    try {
      growth_rate_slope(sp);
    } catch (const TheoremHypothesisError& e) {
      results["theorem_error"] = e.what();
      exit_code = 2;
    }
  }
  json env = make_envelope("analyze", cfg.config_hash,
                           {{"config", config_path}}, results);
  std::ostringstream csv;
  csv << "key,value\n";
  for (const auto& [key, value] : results.items()) {
    csv << key << "," << value.dump() << "\n";
  }
  return {exit_code, env, csv.str()};
}

CommandResult run_growth(const std::string& config_path,
                         const std::string& alpha_list,
                         const std::string& method, const OutputOptions& opts,
                         int max_k) {
  EnsembleConfig cfg = load_ensemble_config(config_path, max_k);
  bool want_slope = method != "general";
  bool want_general = method != "slope";

  std::optional<double> slope;
  std::string slope_error;
  if (want_slope) {
    try {
      slope = growth_rate_slope(cfg.ensemble);
    } catch (const TheoremHypothesisError& e) {
      slope_error = e.what();
    }
  }

  json rows = json::array();
  std::ostringstream csv;
  csv << "alpha,g_slope,g_general,status\n";
  for (const auto& item : split(alpha_list, ',')) {
    Rat alpha = parse_rat(item);
    json row;
    row["alpha"] = to_double(alpha);
    std::string status = "ok";
    if (slope.has_value()) {
      row["g_slope"] = rescale_log(to_double(alpha) * *slope, opts);
    }
    if (want_general) {
      try {
        GrowthRateResult g = growth_rate_general(cfg.ensemble, alpha);
        row["g_general"] = rescale_log(g.value, opts);
        row["beta"] = g.beta;
      } catch (const FeasibilityError& e) {
        status = "infeasible";
        row["error"] = e.what();
      }
    }
    row["status"] = status;
    rows.push_back(row);
    csv << to_double(alpha) << ","
        << (row.contains("g_slope") ? std::to_string(
                row["g_slope"].get<double>()) : "")
        << ","
        << (row.contains("g_general") ? std::to_string(
                row["g_general"].get<double>()) : "")
        << "," << status << "\n";
  }
  json results;
  results["rows"] = rows;
  if (!slope_error.empty()) results["slope_error"] = slope_error;
  if (slope.has_value()) results["slope_nats"] = *slope;
  json env = make_envelope(
      "growth", cfg.config_hash,
      {{"config", config_path}, {"alpha_list", alpha_list}, {"method", method}},
      results);
  return {0, env, csv.str()};
}

CommandResult run_spectrum(const std::string& config_path, long n,
                           const OutputOptions& opts, int max_k) {
  EnsembleConfig cfg = load_ensemble_config(config_path, max_k);
  SpectrumReport rep = expected_spectrum(cfg.ensemble, n);
  json rows = json::array();
  std::ostringstream csv;
  csv << "weight,value,decimal,log\n";
  for (size_t w = 0; w < rep.log_values.size(); ++w) {
    json row;
    row["weight"] = w;
    double lv = rescale_log(rep.log_values[w], opts);
    if (rep.exact) {
      row["value"] = to_string(rep.values[w]);
      row["decimal"] = to_double(rep.values[w]);
    }
    row["log"] = lv;
    rows.push_back(row);
    csv << w << "," << (rep.exact ? to_string(rep.values[w]) : "") << ","
        << (rep.exact ? std::to_string(to_double(rep.values[w])) : "") << ","
        << lv << "\n";
  }
  json results;
  results["method"] = rep.method;
  results["exact"] = rep.exact;
  results["n"] = rep.n;
  results["codeword_length"] = rep.codeword_length;
  results["rows"] = rows;
  json splits = json::array();
  for (const auto& [u, v, count] : rep.split_counts) {
    splits.push_back({{"u", u}, {"v", v}, {"count", count.get_str()}});
  }
  results["split_counts"] = splits;
  json env = make_envelope("spectrum", cfg.config_hash,
                           {{"config", config_path}, {"n", n}}, results);
  return {0, env, csv.str()};
}

CommandResult run_sample(const std::string& config_path, long n, long trials,
                         std::optional<std::uint64_t> seed, long wmax,
                         const OutputOptions& opts, int max_k) {
  EnsembleConfig cfg = load_ensemble_config(config_path, max_k);
  SampleOptions sopts;
  sopts.wmax = wmax;
  SpectrumReport rep = sample_spectrum(cfg.ensemble, n, trials, seed, sopts);
  json rows = json::array();
  std::ostringstream csv;
  csv << "weight,mean,stderr\n";
  for (size_t w = 0; w < rep.mc_mean.size(); ++w) {
    json row;
    row["weight"] = w;
    row["mean"] = rep.mc_mean[w];
    row["stderr"] = rep.mc_stderr[w];
    rows.push_back(row);
    csv << w << "," << rep.mc_mean[w] << "," << rep.mc_stderr[w] << "\n";
  }
  json results;
  results["method"] = rep.method;
  results["n"] = rep.n;
  results["trials"] = rep.trials;
  results["seed"] = rep.seed;
  results["wmax"] = rep.wmax;
  results["rows"] = rows;
  json env = make_envelope("sample", cfg.config_hash,
                           {{"config", config_path},
                            {"n", n},
                            {"trials", trials},
                            {"wmax", wmax}},
                           results);
  return {0, env, csv.str()};
}

CommandResult run_lemma(const std::string& poly_text,
                        const std::string& bipoly_text,
                        const std::string& xi_text,
                        const std::string& theta_text,
                        const std::string& ell_list,
                        const OutputOptions& opts) {
  json results;
  std::ostringstream csv;
  std::string hash = fnv1a_hex(poly_text + "|" + bipoly_text + "|" + xi_text +
                               "|" + theta_text + "|" + ell_list);
  if (poly_text.empty() == bipoly_text.empty()) {
    throw ValidationError("lemma needs exactly one of --poly / --bipoly");
  }
  std::vector<long> ells;
  for (const auto& e : split(ell_list, ',')) ells.push_back(std::stol(e));

  if (!poly_text.empty()) {
    IntPoly a = parse_poly(poly_text);
    Rat xi = parse_rat(xi_text);
    Growth1DResult r = coeff_growth_1d({a, xi});
    results["value"] = rescale_log(r.value, opts);
    json argmax = json::array();
    for (const auto& [i, w] : r.argmax.weights) {
      argmax.push_back({{"i", i}, {"weight", w}});
    }
    results["argmax"] = argmax;
    // first-order expansion for comparison
    int c = 0;
    for (int i = 1; i <= a.degree(); ++i) {
      if (a.coeff(i) > 0) {
        c = i;
        break;
      }
    }
    if (c > 0) {
      results["expansion"] = rescale_log(
          small_xi_expansion_1d(a.coeff(c), c, to_double(xi)), opts);
    }
    csv << "ell,finite,gap\n";
    json rows = json::array();
    for (long ell : ells) {
      Rat w = xi * ell;
      if (!is_integer(w)) continue;
      Int coeff = exact_coeff_power_1d(a, static_cast<unsigned long>(ell),
                                       w.get_num().get_si());
      if (coeff == 0) continue;
      double finite = log_int(coeff) / static_cast<double>(ell);
      json row;
      row["ell"] = ell;
      row["finite"] = rescale_log(finite, opts);
      row["gap"] = rescale_log(r.value - finite, opts);
      rows.push_back(row);
      csv << ell << "," << rescale_log(finite, opts) << ","
          << rescale_log(r.value - finite, opts) << "\n";
    }
    results["rows"] = rows;
  } else {
    BiPoly b = parse_bipoly(bipoly_text);
    Rat xi = parse_rat(xi_text);
    Rat theta = parse_rat(theta_text);
    Growth2DResult r = coeff_growth_2d({b, xi, theta});
    results["value"] = rescale_log(r.value, opts);
    results["reduced_to_1d"] = r.reduced_to_1d;
    json argmax = json::array();
    for (const auto& e : r.argmax.weights) {
      argmax.push_back({{"i", e.i}, {"j", e.j}, {"weight", e.weight}});
    }
    results["argmax"] = argmax;
    csv << "ell,finite,gap\n";
    json rows = json::array();
    for (long ell : ells) {
      Rat u = xi * ell, v = theta * ell;
      if (!is_integer(u) || !is_integer(v)) continue;
      Int coeff = exact_coeff_power_2d(b, static_cast<unsigned long>(ell),
                                       u.get_num().get_si(),
                                       v.get_num().get_si());
      if (coeff == 0) continue;
      double finite = log_int(coeff) / static_cast<double>(ell);
      json row;
      row["ell"] = ell;
      row["finite"] = rescale_log(finite, opts);
      row["gap"] = rescale_log(r.value - finite, opts);
      rows.push_back(row);
      csv << ell << "," << rescale_log(finite, opts) << ","
          << rescale_log(r.value - finite, opts) << "\n";
    }
    results["rows"] = rows;
  }
  json env = make_envelope("lemma", hash,
                           {{"poly", poly_text},
                            {"bipoly", bipoly_text},
                            {"xi", xi_text},
                            {"theta", theta_text},
                            {"ell_list", ell_list}},
                           results);
  return {0, env, csv.str()};
}

CommandResult run_validate(const std::string& config_path,
                           const OutputOptions& opts, int max_k) {
  EnsembleConfig cfg = load_ensemble_config(config_path, max_k);
  const Ensemble& e = cfg.ensemble;
  json checks = json::array();
  bool all_ok = true;
  auto record = [&](const std::string& name, bool ok, double measured,
                    double tolerance) {
    json c;
    c["name"] = name;
    c["ok"] = ok;
    c["measured"] = measured;
    c["tolerance"] = tolerance;
    checks.push_back(c);
    all_ok = all_ok && ok;
  };

  // enumerator bookkeeping
  for (const auto& t : e.cn_types) {
    bool ok = t.enumerator.total() == pow2(static_cast<unsigned long>(
                                          t.dimension()));
    record("cn_type_" + std::to_string(t.id) + "_enumerator_total", ok, 0, 0);
  }
  for (const auto& t : e.vn_types) {
    WeightEnumerator we = weight_enumerator(t.code, 64);
    bool ok = true;
    for (int v = 0; v <= t.length(); ++v) {
      Int sum = 0;
      for (int u = 0; u <= t.dimension(); ++u) sum += t.enumerator.at(u, v);
      ok = ok && (sum == we.at(v));
    }
    record("vn_type_" + std::to_string(t.id) + "_marginal", ok, 0, 0);
  }

  SpectralParams sp = spectral_params(e);
  record("c_positive", sp.c > 0, to_double(sp.c), 0);
  if (sp.p_defined) {
    double worst = 0;
    for (double y = 1e-6; y <= 1e6; y *= 100.0) {
      double x = p_inverse(sp, y);
      worst = std::max(worst, std::abs(p_eval(sp, x) - y) / y);
    }
    record("p_inverse_round_trip", worst <= 1e-12, worst, 1e-12);
  }

  // reductions, when the ensemble has the right shape
  if (sp.r == 2 && sp.p == 2) {
    double slope = growth_rate_slope(sp);
    if (e.all_vns_repetition()) {
      double expect =
          std::log(to_double(e.lambda_prime_at_zero()) * to_double(sp.c));
      record("gldpc_reduction_slope", std::abs(slope - expect) <= 1e-10,
             std::abs(slope - expect), 1e-10);
      if (e.all_cns_spc()) {
        double expect2 = std::log(to_double(e.lambda_prime_at_zero()) *
                                  to_double(e.rho_prime_at_one()));
        record("ldpc_reduction_slope", std::abs(slope - expect2) <= 1e-10,
               std::abs(slope - expect2), 1e-10);
      }
    }
    // first-order agreement of the general evaluator
    double d2 = std::abs(
        growth_rate_general(e, parse_rat("0.01")).value / 0.01 - slope);
    double d3 = std::abs(
        growth_rate_general(e, parse_rat("0.001")).value / 0.001 - slope);
    record("general_growth_slope_convergence", d3 <= d2 + 1e-12, d3, d2);
  }

  // dual certificates on each type's enumerator
  for (const auto& t : e.cn_types) {
    if (t.enumerator.degree() < 1) continue;
    Growth1DResult r = coeff_growth_1d(
        {IntPoly(t.enumerator.coeffs), make_rat(t.min_dist, 2 * 1)});
    record("cn_type_" + std::to_string(t.id) + "_duality",
           std::abs(r.primal_value - r.value) <= 1e-9,
           std::abs(r.primal_value - r.value), 1e-9);
  }
  {
    CheckSideResult r = check_side_growth(e, make_rat(1, 100));
    record("check_side_route_agreement",
           std::abs(r.nested_value - r.mixture_value) <= 1e-9,
           std::abs(r.nested_value - r.mixture_value), 1e-9);
  }

  // oracle bijection at brute-force scale
  long period = smallest_valid_n(e);
  InstanceDims dims = instance_dims(e, period);
  if (dims.edge_count <= 8) {
    SpectrumReport exact = expected_spectrum(e, period);
    SpectrumReport brute = brute_force_spectrum(e, period);
    bool ok = exact.values.size() == brute.values.size();
    for (size_t w = 0; ok && w < exact.values.size(); ++w) {
      ok = exact.values[w] == brute.values[w];
    }
    record("oracle_bijection_E" + std::to_string(dims.edge_count), ok, 0, 0);
  }

  json results;
  results["checks"] = checks;
  results["all_ok"] = all_ok;
  json env = make_envelope("validate", cfg.config_hash,
                           {{"config", config_path}}, results);
  std::ostringstream csv;
  csv << "check,ok,measured,tolerance\n";
  for (const auto& c : checks) {
    csv << c["name"].get<std::string>() << "," << c["ok"].get<bool>() << ","
        << c["measured"].get<double>() << "," << c["tolerance"].get<double>()
        << "\n";
  }
  return {all_ok ? 0 : 2, env, csv.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"D-GLDPC ensemble weight-spectrum analysis"};
  app.require_subcommand(1);

  OutputOptions opts;
  int max_k = kDefaultEnumerationMaxK;
  app.add_option("--max-k", max_k,
                 "Raise the exhaustive-enumeration guard (up to 64)");

  std::string config_path;
  std::string alpha_list, method = "both";
  long n = 0, trials = 0, wmax = -1;
  std::uint64_t seed_value = 0;
  bool seed_given = false;
  std::string poly_text, bipoly_text, xi_text, theta_text, ell_list;

  CLI::App* analyze = app.add_subcommand("analyze",
                                         "Spectral parameters and the "
                                         "small-weight slope");
  analyze->add_option("config", config_path)->required();
  add_output_flags(analyze, &opts);

  CLI::App* growth = app.add_subcommand("growth", "Growth-rate curves");
  growth->add_option("config", config_path)->required();
  growth->add_option("--alpha-list", alpha_list,
                     "Comma-separated alpha values (decimals or fractions)");
  growth->add_option("--method", method)
      ->check(CLI::IsMember({"slope", "general", "both"}));
  add_output_flags(growth, &opts);

  CLI::App* spectrum = app.add_subcommand("spectrum",
                                          "Exact expected weight spectrum");
  spectrum->add_option("config", config_path)->required();
  spectrum->add_option("--n", n, "Number of VNs")->required();
  bool exact_flag = false;
  spectrum->add_flag("--exact", exact_flag,
                     "Exact generating-function mode (the default; Monte "
                     "Carlo lives under `sample`)");
  add_output_flags(spectrum, &opts);

  CLI::App* sample = app.add_subcommand("sample",
                                        "Monte Carlo spectrum sampling");
  sample->add_option("config", config_path)->required();
  sample->add_option("--n", n, "Number of VNs")->required();
  sample->add_option("--trials", trials)->required();
  sample->add_option("--seed", seed_value)->required();
  sample->add_option("--wmax", wmax, "Largest codeword weight to count");
  add_output_flags(sample, &opts);

  CLI::App* lemma = app.add_subcommand("lemma",
                                       "Coefficient growth of polynomial "
                                       "powers");
  lemma->add_option("--poly", poly_text, "Coefficients a_0,a_1,...");
  lemma->add_option("--bipoly", bipoly_text,
                    "Rows by x-degree, columns by y-degree: \"1,0;0,2\"");
  lemma->add_option("--xi", xi_text)->required();
  lemma->add_option("--theta", theta_text);
  lemma->add_option("--ell-list", ell_list, "Exact-coefficient checkpoints");
  add_output_flags(lemma, &opts);

  CLI::App* validate = app.add_subcommand("validate",
                                          "Cross-module invariant suite");
  validate->add_option("config", config_path)->required();
  add_output_flags(validate, &opts);

  CLI11_PARSE(app, argc, argv);
  if (sample->parsed()) seed_given = sample->count("--seed") > 0;

  if (max_k > kDefaultEnumerationMaxK) {
    std::cerr << "warning: enumeration guard raised to k <= " << max_k
              << "; expect 2^k work per component code\n";
  }

  try {
    auto start = std::chrono::steady_clock::now();
    CommandResult result;
    if (analyze->parsed()) {
      result = run_analyze(config_path, opts, max_k);
    } else if (growth->parsed()) {
      result = run_growth(config_path, alpha_list, method, opts, max_k);
    } else if (spectrum->parsed()) {
      result = run_spectrum(config_path, n, opts, max_k);
    } else if (sample->parsed()) {
      std::optional<std::uint64_t> seed;
      if (seed_given) seed = seed_value;
      result = run_sample(config_path, n, trials, seed, wmax, opts, max_k);
    } else if (lemma->parsed()) {
      result = run_lemma(poly_text, bipoly_text, xi_text, theta_text,
                         ell_list, opts);
    } else if (validate->parsed()) {
      result = run_validate(config_path, opts, max_k);
    }
    if (opts.timing) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
      result.env["timing_ms"] = ms;
    }
    emit(opts, result.env, result.csv);
    return result.code;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const FeasibilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
