#include "dgldpc/linear_code.hpp"

#include <bit>
#include <string>

#include "dgldpc/errors.hpp"

namespace dgldpc {

namespace {

// Rank over GF(2) by plain elimination on copies of the rows.
int gf2_rank(std::vector<std::uint64_t> rows) {
  int rank = 0;
  for (int bit = 63; bit >= 0; --bit) {
    std::uint64_t mask = 1ULL << bit;
    size_t pivot = static_cast<size_t>(rank);
    while (pivot < rows.size() && !(rows[pivot] & mask)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[static_cast<size_t>(rank)], rows[pivot]);
    for (size_t r = 0; r < rows.size(); ++r) {
      if (static_cast<int>(r) != rank && (rows[r] & mask)) {
        rows[r] ^= rows[static_cast<size_t>(rank)];
      }
    }
    ++rank;
  }
  return rank;
}

void check_enumeration_guard(const LinearCode& code, int max_k) {
  if (max_k > kHardEnumerationMaxK) max_k = kHardEnumerationMaxK;
  if (code.dimension > max_k) {
    throw CapacityError("code dimension k=" + std::to_string(code.dimension) +
                        " exceeds the enumeration guard max_k=" +
                        std::to_string(max_k));
  }
  if (code.dimension >= 64) {
    throw CapacityError("2^64 information words are beyond any enumeration "
                        "budget; k must be < 64");
  }
}

}  // namespace

LinearCode::LinearCode(std::vector<std::uint64_t> generator_rows, int n)
    : rows(std::move(generator_rows)),
      length(n),
      dimension(static_cast<int>(rows.size())) {
  if (n < 1 || n > 64) {
    throw ValidationError("code length must be in [1,64], got " +
                          std::to_string(n));
  }
  if (dimension < 1 || dimension > n) {
    throw ValidationError("code dimension must be in [1,n], got k=" +
                          std::to_string(dimension) + ", n=" +
                          std::to_string(n));
  }
  std::uint64_t col_mask =
      (n == 64) ? ~0ULL : ((1ULL << n) - 1);
  for (const auto row : rows) {
    if (row & ~col_mask) {
      throw ValidationError("generator row has bits beyond column n-1");
    }
  }
  if (gf2_rank(rows) != dimension) {
    throw ValidationError("generator rows are linearly dependent over GF(2)");
  }
}

std::uint64_t LinearCode::encode(std::uint64_t info) const {
  std::uint64_t word = 0;
  for (int r = 0; r < dimension; ++r) {
    if (info & (1ULL << r)) word ^= rows[static_cast<size_t>(r)];
  }
  return word;
}

LinearCode code_from_bitstrings(const std::vector<std::string>& row_strings) {
  if (row_strings.empty()) throw ValidationError("generator has no rows");
  size_t n = row_strings.front().size();
  std::vector<std::uint64_t> rows;
  rows.reserve(row_strings.size());
  for (const auto& s : row_strings) {
    if (s.size() != n) {
      throw ValidationError("generator rows have unequal lengths");
    }
    std::uint64_t row = 0;
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        row |= 1ULL << i;
      } else if (s[i] != '0') {
        throw ValidationError("generator rows must contain only '0'/'1'");
      }
    }
    rows.push_back(row);
  }
  return LinearCode(std::move(rows), static_cast<int>(n));
}

LinearCode repetition_code(int n) {
  std::uint64_t all = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
  return LinearCode({all}, n);
}

LinearCode single_parity_check_code(int n) {
  if (n < 2) throw ValidationError("SPC code needs length >= 2");
  std::vector<std::uint64_t> rows;
  for (int r = 0; r < n - 1; ++r) {
    rows.push_back((1ULL << r) | (1ULL << (n - 1)));
  }
  return LinearCode(std::move(rows), n);
}

LinearCode hamming_7_4() {
  // Systematic generator; parity columns follow the four data columns.
  return code_from_bitstrings({"1000110", "0100101", "0010011", "0001111"});
}

LinearCode identity_code(int n) {
  std::vector<std::uint64_t> rows;
  for (int r = 0; r < n; ++r) rows.push_back(1ULL << r);
  return LinearCode(std::move(rows), n);
}

Int WeightEnumerator::total() const {
  Int s = 0;
  for (const auto& c : coeffs) s += c;
  return s;
}

Int IOWeightEnumerator::total() const {
  Int s = 0;
  for (const auto& row : coeffs)
    for (const auto& c : row) s += c;
  return s;
}

std::vector<std::pair<int, int>> IOWeightEnumerator::support() const {
  std::vector<std::pair<int, int>> pts;
  for (int u = 0; u <= input_degree(); ++u) {
    for (int v = 0; v <= output_degree(); ++v) {
      if (at(u, v) > 0) pts.emplace_back(u, v);
    }
  }
  return pts;
}

WeightEnumerator weight_enumerator(const LinearCode& code, int max_k) {
  check_enumeration_guard(code, max_k);
  WeightEnumerator we;
  we.coeffs.assign(static_cast<size_t>(code.length) + 1, Int(0));
  std::uint64_t word = 0;
  we.coeffs[0] += 1;  // info word 0
  std::uint64_t count = 1ULL << code.dimension;
  for (std::uint64_t g = 1; g < count; ++g) {
    // Gray-code step: exactly one information bit flips per iteration.
    int bit = std::countr_zero(g);
    word ^= code.rows[static_cast<size_t>(bit)];
    we.coeffs[static_cast<size_t>(std::popcount(word))] += 1;
  }
  return we;
}

IOWeightEnumerator io_weight_enumerator(const LinearCode& code, int max_k) {
  check_enumeration_guard(code, max_k);
  IOWeightEnumerator io;
  io.coeffs.assign(
      static_cast<size_t>(code.dimension) + 1,
      std::vector<Int>(static_cast<size_t>(code.length) + 1, Int(0)));
  std::uint64_t word = 0;
  std::uint64_t info = 0;
  io.coeffs[0][0] += 1;
  std::uint64_t count = 1ULL << code.dimension;
  for (std::uint64_t g = 1; g < count; ++g) {
    int bit = std::countr_zero(g);
    word ^= code.rows[static_cast<size_t>(bit)];
    info ^= 1ULL << bit;
    io.coeffs[static_cast<size_t>(std::popcount(info))]
             [static_cast<size_t>(std::popcount(word))] += 1;
  }
  return io;
}

int min_distance(const LinearCode& code, int max_k) {
  WeightEnumerator we = weight_enumerator(code, max_k);
  for (int w = 1; w <= we.degree(); ++w) {
    if (we.at(w) > 0) return w;
  }
  throw ValidationError("code has no nonzero codeword");  // unreachable: k>=1
}

}  // namespace dgldpc
