#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "dgldpc/errors.hpp"

namespace dgldpc {

// Arbitrary-precision integer / rational. All enumerator coefficients and
// ensemble fractions are exact; doubles only appear in the optimizers.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

inline Int pow2(unsigned long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

// Natural log of a positive big integer, accurate to ~1e-15 relative.
inline double log_int(const Int& v) {
  if (v <= 0) throw ValidationError("log_int of non-positive value");
  signed long exp2 = 0;
  double m = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(m) + static_cast<double>(exp2) * std::numbers::ln2_v<double>;
}

inline double log_rat(const Rat& v) {
  if (v <= 0) throw ValidationError("log_rat of non-positive value");
  return log_int(v.get_num()) - log_int(v.get_den());
}

inline bool is_integer(const Rat& v) { return v.get_den() == 1; }

inline std::string to_string(const Rat& v) { return v.get_str(); }

inline double to_double(const Rat& v) { return v.get_d(); }

}  // namespace dgldpc
