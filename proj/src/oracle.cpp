#include "dgldpc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dgldpc/errors.hpp"

namespace dgldpc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Socket layout of one instance: type-major, contiguous ranges per node.
struct NodeSockets {
  int type;
  int start;
  int length;
};

std::vector<NodeSockets> vn_sockets(const Ensemble& e,
                                    const InstanceDims& dims) {
  std::vector<NodeSockets> nodes;
  int pos = 0;
  for (size_t t = 0; t < e.vn_types.size(); ++t) {
    for (long c = 0; c < dims.vn_counts[t]; ++c) {
      nodes.push_back({static_cast<int>(t), pos, e.vn_types[t].length()});
      pos += e.vn_types[t].length();
    }
  }
  return nodes;
}

std::vector<NodeSockets> cn_sockets(const Ensemble& e,
                                    const InstanceDims& dims) {
  std::vector<NodeSockets> nodes;
  int pos = 0;
  for (size_t t = 0; t < e.cn_types.size(); ++t) {
    for (long c = 0; c < dims.cn_counts[t]; ++c) {
      nodes.push_back({static_cast<int>(t), pos, e.cn_types[t].length()});
      pos += e.cn_types[t].length();
    }
  }
  return nodes;
}

IntPoly check_enumerator_product(const Ensemble& e, const InstanceDims& dims,
                                 int max_degree) {
  IntPoly prod = IntPoly::one();
  for (size_t t = 0; t < e.cn_types.size(); ++t) {
    IntPoly p = power(IntPoly(e.cn_types[t].enumerator.coeffs),
                      static_cast<unsigned long>(dims.cn_counts[t]),
                      max_degree);
    prod = multiply(prod, p, max_degree);
  }
  return prod;
}

BiPoly vn_enumerator_product(const Ensemble& e, const InstanceDims& dims,
                             int max_x, int max_y) {
  BiPoly prod = BiPoly::one();
  for (size_t t = 0; t < e.vn_types.size(); ++t) {
    BiPoly p = power(BiPoly::from_io_enumerator(e.vn_types[t].enumerator),
                     static_cast<unsigned long>(dims.vn_counts[t]), max_x,
                     max_y);
    prod = multiply(prod, p, max_x, max_y);
  }
  return prod;
}

// Per-VN-type local codeword tables used by the permutation-based oracles.
struct LocalWord {
  int input_weight;
  std::uint64_t codeword;
};

std::vector<std::vector<LocalWord>> vn_codeword_tables(const Ensemble& e) {
  std::vector<std::vector<LocalWord>> tables;
  for (const auto& t : e.vn_types) {
    std::vector<LocalWord> words;
    std::uint64_t count = 1ULL << t.dimension();
    for (std::uint64_t info = 0; info < count; ++info) {
      words.push_back({std::popcount(info), t.code.encode(info)});
    }
    std::sort(words.begin(), words.end(),
              [](const LocalWord& a, const LocalWord& b) {
                return a.input_weight < b.input_weight;
              });
    tables.push_back(std::move(words));
  }
  return tables;
}

// Codeword membership bitsets per CN type (index = word on the s sockets).
std::vector<std::vector<bool>> cn_membership_tables(const Ensemble& e) {
  std::vector<std::vector<bool>> tables;
  for (const auto& t : e.cn_types) {
    if (t.length() > 24) {
      throw CapacityError("CN length above 24 in a permutation oracle");
    }
    std::vector<bool> member(1ULL << t.length(), false);
    std::uint64_t count = 1ULL << t.dimension();
    for (std::uint64_t info = 0; info < count; ++info) {
      member[t.code.encode(info)] = true;
    }
    tables.push_back(std::move(member));
  }
  return tables;
}

bool check_valid(const std::vector<NodeSockets>& cns,
                 const std::vector<std::vector<bool>>& membership,
                 std::uint64_t edge_bits) {
  for (const auto& cn : cns) {
    std::uint64_t local =
        (edge_bits >> cn.start) & ((1ULL << cn.length) - 1);
    if (!membership[static_cast<size_t>(cn.type)][local]) return false;
  }
  return true;
}

struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

std::uint64_t uniform_below(SplitMix64& gen, std::uint64_t bound) {
  std::uint64_t threshold = (-bound) % bound;
  for (;;) {
    std::uint64_t r = gen.next();
    if (r >= threshold) return r % bound;
  }
}

void fisher_yates(SplitMix64& gen, std::vector<int>& perm) {
  for (size_t i = perm.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(uniform_below(gen, i));
    std::swap(perm[i - 1], perm[j]);
  }
}

// DFS over per-VN local codewords with the total input weight bounded by
// wmax; a leaf contributes when every CN sees a codeword. The per-type word
// lists are sorted by input weight, so the loop can cut off early.
struct CodewordCounter {
  const std::vector<NodeSockets>& vns;
  const std::vector<NodeSockets>& cns;
  const std::vector<std::vector<LocalWord>>& vn_words;
  const std::vector<std::vector<bool>>& cn_member;
  const std::vector<int>& perm;
  long wmax;
  std::vector<long>& counts;
  long& node_budget;

  void run() { dfs(0, 0, 0); }

  void dfs(size_t depth, std::uint64_t edge_bits, int weight) {
    if (--node_budget < 0) {
      throw CapacityError("weight-bounded codeword search exceeded its node "
                          "budget; lower wmax or trials");
    }
    if (depth == vns.size()) {
      if (check_valid(cns, cn_member, edge_bits)) {
        ++counts[static_cast<size_t>(weight)];
      }
      return;
    }
    const auto& vn = vns[depth];
    for (const auto& w : vn_words[static_cast<size_t>(vn.type)]) {
      if (weight + w.input_weight > wmax) break;
      std::uint64_t bits = edge_bits;
      for (int b = 0; b < vn.length; ++b) {
        if (w.codeword & (1ULL << b)) {
          bits |= 1ULL << perm[static_cast<size_t>(vn.start + b)];
        }
      }
      dfs(depth + 1, bits, weight + w.input_weight);
    }
  }
};

void count_codewords(const std::vector<NodeSockets>& vns,
                     const std::vector<NodeSockets>& cns,
                     const std::vector<std::vector<LocalWord>>& vn_words,
                     const std::vector<std::vector<bool>>& cn_member,
                     const std::vector<int>& perm, long wmax,
                     std::vector<long>& counts, long& node_budget) {
  CodewordCounter counter{vns,  cns,    vn_words,   cn_member,
                          perm, wmax,   counts,     node_budget};
  counter.run();
}

}  // namespace

Int check_valid_count(const Ensemble& ensemble, long n, long v) {
  InstanceDims dims = instance_dims(ensemble, n);
  if (v < 0 || v > dims.edge_count) return Int(0);
  IntPoly prod =
      check_enumerator_product(ensemble, dims, static_cast<int>(v));
  return prod.coeff(static_cast<int>(v));
}

Rat p_valid(const Ensemble& ensemble, long n, long v) {
  InstanceDims dims = instance_dims(ensemble, n);
  if (v < 0 || v > dims.edge_count) {
    throw ValidationError("assignment weight outside [0, E]");
  }
  Int nc = check_valid_count(ensemble, n, v);
  return make_rat(nc, binomial(static_cast<unsigned long>(dims.edge_count),
                               static_cast<unsigned long>(v)));
}

SpectrumReport expected_spectrum(const Ensemble& ensemble, long n,
                                 const SpectrumOptions& opts) {
  InstanceDims dims = instance_dims(ensemble, n);
  long cells = (dims.codeword_length + 1) * (dims.edge_count + 1);
  if (cells > opts.exact_cell_limit * 16) {
    long period = smallest_valid_n(ensemble);
    double shrink = std::sqrt(static_cast<double>(opts.exact_cell_limit * 16) /
                              static_cast<double>(cells));
    long max_n = static_cast<long>(static_cast<double>(n) * shrink);
    max_n -= max_n % period;
    throw CapacityError(
        "expected_spectrum table would need " + std::to_string(cells) +
        " cells; largest feasible n for this ensemble is about " +
        std::to_string(std::max(period, max_n)));
  }
  bool exact = cells <= opts.exact_cell_limit;

  IntPoly pa = check_enumerator_product(ensemble, dims,
                                        static_cast<int>(dims.edge_count));
  BiPoly pb = vn_enumerator_product(ensemble, dims,
                                    static_cast<int>(dims.codeword_length),
                                    static_cast<int>(dims.edge_count));

  SpectrumReport rep;
  rep.n = n;
  rep.codeword_length = dims.codeword_length;
  rep.method = "exact-gf";
  rep.exact = exact;

  std::vector<double> log_binom(static_cast<size_t>(dims.edge_count) + 1);
  std::vector<double> log_pa(static_cast<size_t>(dims.edge_count) + 1, -kInf);
  for (long v = 0; v <= dims.edge_count; ++v) {
    log_binom[static_cast<size_t>(v)] =
        log_int(binomial(static_cast<unsigned long>(dims.edge_count),
                         static_cast<unsigned long>(v)));
  }
  for (int v = 0; v <= pa.degree(); ++v) {
    if (pa.coeff(v) > 0) log_pa[static_cast<size_t>(v)] = log_int(pa.coeff(v));
  }

  for (long u = 0; u <= dims.codeword_length; ++u) {
    Rat total(0);
    std::vector<double> terms;
    for (long v = 0; v <= dims.edge_count; ++v) {
      const Int bv = pb.coeff(static_cast<int>(u), static_cast<int>(v));
      if (bv == 0) continue;
      rep.split_counts.emplace_back(u, v, bv);
      const Int nc = pa.coeff(static_cast<int>(v));
      if (nc == 0) continue;
      if (exact) {
        total += Rat(bv * nc) /
                 binomial(static_cast<unsigned long>(dims.edge_count),
                          static_cast<unsigned long>(v));
      } else {
        terms.push_back(log_int(bv) + log_pa[static_cast<size_t>(v)] -
                        log_binom[static_cast<size_t>(v)]);
      }
    }
    if (exact) {
      rep.values.push_back(total);
      rep.log_values.push_back(total > 0 ? log_rat(total) : -kInf);
    } else {
      // Single-signed sum: scale by the dominant term.
      double m = -kInf;
      for (double t : terms) m = std::max(m, t);
      if (m == -kInf) {
        rep.log_values.push_back(-kInf);
      } else {
        double s = 0;
        for (double t : terms) s += std::exp(t - m);
        rep.log_values.push_back(m + std::log(s));
      }
    }
  }
  return rep;
}

SpectrumReport brute_force_spectrum(const Ensemble& ensemble, long n) {
  InstanceDims dims = instance_dims(ensemble, n);
  if (dims.edge_count > 8) {
    throw CapacityError("brute-force oracle enumerates E! permutations; "
                        "E = " + std::to_string(dims.edge_count) +
                        " exceeds the guard E <= 8");
  }
  auto vns = vn_sockets(ensemble, dims);
  auto cns = cn_sockets(ensemble, dims);
  auto vn_words = vn_codeword_tables(ensemble);
  auto cn_member = cn_membership_tables(ensemble);

  std::vector<Int> totals(static_cast<size_t>(dims.codeword_length) + 1,
                          Int(0));
  std::vector<int> perm(static_cast<size_t>(dims.edge_count));
  std::iota(perm.begin(), perm.end(), 0);
  Int num_perms = 0;
  std::vector<long> counts(totals.size(), 0);
  do {
    std::fill(counts.begin(), counts.end(), 0L);
    long budget = std::numeric_limits<long>::max();
    count_codewords(vns, cns, vn_words, cn_member, perm,
                    dims.codeword_length, counts, budget);
    for (size_t w = 0; w < counts.size(); ++w) totals[w] += counts[w];
    ++num_perms;
  } while (std::next_permutation(perm.begin(), perm.end()));

  SpectrumReport rep;
  rep.n = n;
  rep.codeword_length = dims.codeword_length;
  rep.method = "brute-force";
  rep.exact = true;
  for (const auto& t : totals) {
    Rat val = make_rat(t, num_perms);
    rep.values.push_back(val);
    rep.log_values.push_back(val > 0 ? log_rat(val) : -kInf);
  }
  return rep;
}

SpectrumReport sample_spectrum(const Ensemble& ensemble, long n, long trials,
                               std::optional<std::uint64_t> seed,
                               const SampleOptions& opts) {
  if (!seed.has_value()) {
    throw SeedRequiredError("sample_spectrum needs an explicit 64-bit seed "
                            "for reproducibility");
  }
  if (trials <= 0) throw ValidationError("trials must be positive");
  InstanceDims dims = instance_dims(ensemble, n);
  if (dims.edge_count > 64) {
    throw CapacityError("sampled instances are limited to E <= 64 edges");
  }
  long wmax = opts.wmax < 0 ? dims.codeword_length
                            : std::min(opts.wmax, dims.codeword_length);

  auto vns = vn_sockets(ensemble, dims);
  auto cns = cn_sockets(ensemble, dims);
  auto vn_words = vn_codeword_tables(ensemble);
  auto cn_member = cn_membership_tables(ensemble);

  std::vector<double> sum(static_cast<size_t>(wmax) + 1, 0.0);
  std::vector<double> sumsq(static_cast<size_t>(wmax) + 1, 0.0);
  std::vector<long> counts(static_cast<size_t>(wmax) + 1, 0);
  std::vector<int> perm(static_cast<size_t>(dims.edge_count));
  long budget = opts.node_budget;
  for (long trial = 0; trial < trials; ++trial) {
    // Derived per-trial stream: reseeding keeps results independent of any
    // evaluation order or thread count.
    SplitMix64 derive{*seed + 0x9E3779B97F4A7C15ULL *
                                  static_cast<std::uint64_t>(trial + 1)};
    SplitMix64 gen{derive.next()};
    std::iota(perm.begin(), perm.end(), 0);
    fisher_yates(gen, perm);
    std::fill(counts.begin(), counts.end(), 0L);
    count_codewords(vns, cns, vn_words, cn_member, perm, wmax, counts,
                    budget);
    for (size_t w = 0; w < counts.size(); ++w) {
      sum[w] += static_cast<double>(counts[w]);
      sumsq[w] += static_cast<double>(counts[w]) *
                  static_cast<double>(counts[w]);
    }
  }

  SpectrumReport rep;
  rep.n = n;
  rep.codeword_length = dims.codeword_length;
  rep.method = "monte-carlo";
  rep.exact = false;
  rep.trials = trials;
  rep.seed = *seed;
  rep.wmax = wmax;
  for (size_t w = 0; w < sum.size(); ++w) {
    double mean = sum[w] / static_cast<double>(trials);
    double se = 0.0;
    if (trials > 1) {
      double var = (sumsq[w] - static_cast<double>(trials) * mean * mean) /
                   static_cast<double>(trials - 1);
      se = std::sqrt(std::max(var, 0.0) / static_cast<double>(trials));
    }
    rep.mc_mean.push_back(mean);
    rep.mc_stderr.push_back(se);
    rep.log_values.push_back(mean > 0 ? std::log(mean) : -kInf);
  }
  return rep;
}

std::vector<std::pair<long, double>> growth_estimate(
    const Ensemble& ensemble, const Rat& alpha,
    const std::vector<long>& n_list) {
  std::vector<std::pair<long, double>> out;
  for (long n : n_list) {
    InstanceDims dims;
    try {
      dims = instance_dims(ensemble, n);
    } catch (const NonIntegralInstanceError&) {
      continue;
    }
    Rat w_rat = alpha * n;
    if (!is_integer(w_rat)) continue;
    long w = w_rat.get_num().get_si();
    if (w < 0 || w > dims.codeword_length) continue;

    IntPoly pa = check_enumerator_product(ensemble, dims,
                                          static_cast<int>(dims.edge_count));
    BiPoly pb = vn_enumerator_product(ensemble, dims, static_cast<int>(w),
                                      static_cast<int>(dims.edge_count));
    Rat total(0);
    for (long v = 0; v <= dims.edge_count; ++v) {
      const Int bv = pb.coeff(static_cast<int>(w), static_cast<int>(v));
      if (bv == 0) continue;
      const Int nc = pa.coeff(static_cast<int>(v));
      if (nc == 0) continue;
      total += Rat(bv * nc) /
               binomial(static_cast<unsigned long>(dims.edge_count),
                        static_cast<unsigned long>(v));
    }
    if (total <= 0) continue;
    out.emplace_back(n, log_rat(total) / static_cast<double>(n));
  }
  if (out.empty()) {
    throw EmptySequenceError(
        "no admissible n in the list (valid dims, integral alpha*n, positive "
        "expected count)");
  }
  return out;
}

}  // namespace dgldpc
