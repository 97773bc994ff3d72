#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "dgldpc/ensemble.hpp"
#include "dgldpc/polynomial.hpp"
#include "dgldpc/rational.hpp"

namespace dgldpc {

/// Expected (or sampled) number of codewords per weight for an n-VN member
/// of the ensemble. `values` carries exact rationals when the method is
/// exact; log_values always carries natural logs (-inf where the value is 0).
struct SpectrumReport {
  long n = 0;
  long codeword_length = 0;  // N: weights run 0..N
  std::string method;        // "exact-gf" | "brute-force" | "monte-carlo"
  bool exact = false;
  std::vector<Rat> values;
  std::vector<double> log_values;

  // Monte Carlo statistics (method == "monte-carlo").
  std::vector<double> mc_mean;
  std::vector<double> mc_stderr;
  long trials = 0;
  std::uint64_t seed = 0;
  long wmax = -1;

  // Exact-gf auxiliary data: number of variable-valid split assignments per
  // split weight (u, v).
  std::vector<std::tuple<long, long, Int>> split_counts;
};

/// N_c(v): check-valid assignments of weight v over the instance's CNs,
/// Coeff[prod_t (A^(t))^{count_t}, x^v], exact.
Int check_valid_count(const Ensemble& ensemble, long n, long v);

/// N_c(v) / C(E, v): probability that a uniformly chosen weight-v edge
/// subset is check-valid. Exact rational in [0, 1].
Rat p_valid(const Ensemble& ensemble, long n, long v);

struct SpectrumOptions {
  // Above this many (u,v) cells the per-weight sums switch to log-domain
  // evaluation (the split-assignment counting itself stays exact).
  long exact_cell_limit = 4'000'000;
};

SpectrumReport expected_spectrum(const Ensemble& ensemble, long n,
                                 const SpectrumOptions& opts = {});

/// Average the true spectrum over every permutation of the E edges.
/// Exact; guarded to E <= 8.
SpectrumReport brute_force_spectrum(const Ensemble& ensemble, long n);

struct SampleOptions {
  long wmax = -1;           // default: full codeword length
  long node_budget = 50'000'000;  // DFS work guard across all trials
};

/// Monte Carlo over `trials` uniformly drawn edge permutations; counts
/// codewords of weight <= wmax per sampled code by weight-bounded search
/// over variable-valid split assignments. Reproducible: the seed is
/// mandatory and per-trial substreams are derived from it.
SpectrumReport sample_spectrum(const Ensemble& ensemble, long n, long trials,
                               std::optional<std::uint64_t> seed,
                               const SampleOptions& opts = {});

/// Finite-length growth-rate estimates (n, (1/n) log E[N_{alpha n}]) for the
/// admissible entries of n_list (valid dims, integral alpha*n, positive
/// expectation); inadmissible entries are skipped.
std::vector<std::pair<long, double>> growth_estimate(
    const Ensemble& ensemble, const Rat& alpha, const std::vector<long>& n_list);

}  // namespace dgldpc
