#pragma once

#include <limits>
#include <vector>

#include "dgldpc/linear_code.hpp"
#include "dgldpc/rational.hpp"

namespace dgldpc {

// Truncation degrees. Because every coefficient in this library is
// nonnegative, truncating a product above a requested degree leaves all
// retained coefficients exact.
inline constexpr int kNoTruncation = std::numeric_limits<int>::max();

// Per-power degree guard (schoolbook products only, no FFT).
inline constexpr long kDefaultPowerDegreeCap = 100000;

/// Dense univariate polynomial with exact nonnegative integer coefficients.
struct IntPoly {
  std::vector<Int> coeffs;

  IntPoly() = default;
  explicit IntPoly(std::vector<Int> c) : coeffs(std::move(c)) { trim(); }
  static IntPoly one() { return IntPoly({Int(1)}); }
  static IntPoly from_weight_enumerator(const WeightEnumerator& we) {
    return IntPoly(we.coeffs);
  }

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Int coeff(int w) const {
    if (w < 0 || w > degree()) return Int(0);
    return coeffs[static_cast<size_t>(w)];
  }
  void trim();
};

IntPoly multiply(const IntPoly& a, const IntPoly& b,
                 int max_degree = kNoTruncation);
IntPoly power(const IntPoly& base, unsigned long exponent,
              int max_degree = kNoTruncation);

/// Bivariate polynomial, dense rows indexed by x-degree, columns by y-degree.
struct BiPoly {
  std::vector<std::vector<Int>> rows;  // rows[u][v]

  static BiPoly one() { return BiPoly{{{Int(1)}}}; }
  static BiPoly from_io_enumerator(const IOWeightEnumerator& io) {
    return BiPoly{io.coeffs};
  }

  int x_degree() const { return static_cast<int>(rows.size()) - 1; }
  int y_degree() const;
  Int coeff(int u, int v) const;
  void trim();
};

BiPoly multiply(const BiPoly& a, const BiPoly& b, int max_x = kNoTruncation,
                int max_y = kNoTruncation);
BiPoly power(const BiPoly& base, unsigned long exponent,
             int max_x = kNoTruncation, int max_y = kNoTruncation);

/// Exact Coeff[(A(x))^ell, x^w] via truncated repeated squaring.
Int exact_coeff_power_1d(const IntPoly& base, unsigned long ell, long w,
                         long degree_cap = kDefaultPowerDegreeCap);

/// Exact Coeff[(B(x,y))^ell, x^u y^v].
Int exact_coeff_power_2d(const BiPoly& base, unsigned long ell, long u, long v,
                         long degree_cap = kDefaultPowerDegreeCap);

}  // namespace dgldpc
