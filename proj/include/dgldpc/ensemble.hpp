#pragma once

#include <string>
#include <vector>

#include "dgldpc/linear_code.hpp"
#include "dgldpc/rational.hpp"

namespace dgldpc {

/// Check-node type: an (s,h) component code plus the fraction of Tanner-graph
/// edges attached to CNs of this type.
struct CNType {
  int id = 0;
  LinearCode code;
  Rat edge_fraction;            // rho_t, exact
  WeightEnumerator enumerator;  // cached A^(t)
  int min_dist = 0;             // r_t
  Rat node_fraction;            // gamma_t = rho_t / (s_t * int_rho)
  bool degenerate = false;      // h_t == s_t: the CN imposes no constraint

  int length() const { return code.length; }        // s_t
  int dimension() const { return code.dimension; }  // h_t
};

/// Variable-node type: a (q,k) component code, edge fraction lambda_t, and
/// the cached input-output enumerator B^(t).
struct VNType {
  int id = 0;
  LinearCode code;
  Rat edge_fraction;              // lambda_t, exact
  IOWeightEnumerator enumerator;  // cached B^(t)
  int min_dist = 0;               // p_t
  Rat node_fraction;              // delta_t = lambda_t / (q_t * int_lambda)

  int length() const { return code.length; }        // q_t
  int dimension() const { return code.dimension; }  // k_t
};

struct Ensemble {
  std::vector<CNType> cn_types;
  std::vector<VNType> vn_types;
  Rat rho_integral;     // sum_t rho_t / s_t
  Rat lambda_integral;  // sum_t lambda_t / q_t

  /// lambda'(0): edge fraction attached to length-2 VNs (zero if none).
  Rat lambda_prime_at_zero() const;
  /// rho'(1) = sum_t rho_t (s_t - 1).
  Rat rho_prime_at_one() const;

  bool all_vns_repetition() const;
  bool all_cns_spc() const;
};

struct CNSpec {
  LinearCode code;
  Rat edge_fraction;
};
struct VNSpec {
  LinearCode code;
  Rat edge_fraction;
};

/// Validate the type tables and derive all exact structural quantities.
/// Throws FractionSumError when an edge-fraction column does not sum to 1,
/// DegenerateTypeError when two types of a class share the same generator.
Ensemble build_ensemble(const std::vector<CNSpec>& cn_specs,
                        const std::vector<VNSpec>& vn_specs,
                        int max_k = kDefaultEnumerationMaxK);

/// All exact counts for an n-VN member of the ensemble.
struct InstanceDims {
  long num_vns = 0;               // n
  long edge_count = 0;            // E
  long cn_count = 0;              // m
  long codeword_length = 0;       // N
  long num_checks = 0;            // M
  std::vector<long> vn_counts;    // per VN type
  std::vector<long> cn_counts;    // per CN type
};

/// Throws NonIntegralInstanceError naming the first non-integer count and
/// carrying the smallest valid n >= the requested one.
InstanceDims instance_dims(const Ensemble& ensemble, long n);

/// Smallest n for which every derived count is an integer. Valid sizes are
/// exactly the positive multiples of this period.
long smallest_valid_n(const Ensemble& ensemble);

/// 1 - M/N, exact, independent of n.
Rat design_rate(const Ensemble& ensemble);

}  // namespace dgldpc
