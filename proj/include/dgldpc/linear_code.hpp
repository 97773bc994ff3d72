#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "dgldpc/rational.hpp"

namespace dgldpc {

/// Binary (n,k) block code given by its generator matrix. Rows are stored
/// little-endian in 64-bit words: bit b of a row is column b. The generator
/// is the canonical encoder; no row reduction is ever applied, so two codes
/// with the same codeword set but different generators are distinct objects.
struct LinearCode {
  std::vector<std::uint64_t> rows;  // k rows, each using the low n bits
  int length = 0;                   // n
  int dimension = 0;                // k

  LinearCode() = default;
  LinearCode(std::vector<std::uint64_t> generator_rows, int n);

  /// Encode an information word (low k bits) to a codeword (low n bits).
  std::uint64_t encode(std::uint64_t info) const;

  bool operator==(const LinearCode& other) const = default;
};

/// Parse rows like {"101", "011"}; leftmost character is column 0.
LinearCode code_from_bitstrings(const std::vector<std::string>& row_strings);

LinearCode repetition_code(int n);
LinearCode single_parity_check_code(int n);
LinearCode hamming_7_4();
LinearCode identity_code(int n);

/// Codeword counts by Hamming weight, A_0..A_n, exact.
struct WeightEnumerator {
  std::vector<Int> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  const Int& at(int w) const { return coeffs.at(static_cast<size_t>(w)); }
  Int total() const;
};

/// B_{u,v}: number of weight-v codewords produced by weight-u inputs under
/// the code's generator-matrix encoder. Dense (k+1)x(n+1) table, exact.
struct IOWeightEnumerator {
  std::vector<std::vector<Int>> coeffs;  // coeffs[u][v]
  int input_degree() const { return static_cast<int>(coeffs.size()) - 1; }
  int output_degree() const {
    return coeffs.empty() ? -1 : static_cast<int>(coeffs.front().size()) - 1;
  }
  const Int& at(int u, int v) const {
    return coeffs.at(static_cast<size_t>(u)).at(static_cast<size_t>(v));
  }
  Int& at(int u, int v) {
    return coeffs.at(static_cast<size_t>(u)).at(static_cast<size_t>(v));
  }
  Int total() const;

  /// Nonzero support (u,v), sorted.
  std::vector<std::pair<int, int>> support() const;
};

// Exhaustive enumeration walks all 2^k information words (Gray-code order).
// The default guard keeps that tractable; it can be raised to 64 by callers
// who accept the runtime.
inline constexpr int kDefaultEnumerationMaxK = 24;
inline constexpr int kHardEnumerationMaxK = 64;

WeightEnumerator weight_enumerator(const LinearCode& code,
                                   int max_k = kDefaultEnumerationMaxK);

IOWeightEnumerator io_weight_enumerator(const LinearCode& code,
                                        int max_k = kDefaultEnumerationMaxK);

/// Smallest u > 0 with A_u > 0.
int min_distance(const LinearCode& code, int max_k = kDefaultEnumerationMaxK);

}  // namespace dgldpc
