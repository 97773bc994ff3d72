#include "dgldpc/polynomial.hpp"

#include <algorithm>
#include <string>

#include "dgldpc/errors.hpp"

namespace dgldpc {

void IntPoly::trim() {
  while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
}

IntPoly multiply(const IntPoly& a, const IntPoly& b, int max_degree) {
  if (a.coeffs.empty() || b.coeffs.empty()) return IntPoly();
  long full = static_cast<long>(a.degree()) + b.degree();
  size_t out_deg = static_cast<size_t>(
      std::min<long>(full, max_degree == kNoTruncation ? full : max_degree));
  IntPoly out;
  out.coeffs.assign(out_deg + 1, Int(0));
  for (size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] == 0) continue;
    if (i > out_deg) break;
    size_t jmax = std::min(b.coeffs.size() - 1, out_deg - i);
    for (size_t j = 0; j <= jmax; ++j) {
      if (b.coeffs[j] == 0) continue;
      mpz_addmul(out.coeffs[i + j].get_mpz_t(), a.coeffs[i].get_mpz_t(),
                 b.coeffs[j].get_mpz_t());
    }
  }
  out.trim();
  return out;
}

IntPoly power(const IntPoly& base, unsigned long exponent, int max_degree) {
  IntPoly result = IntPoly::one();
  IntPoly sq = base;
  if (max_degree != kNoTruncation && sq.degree() > max_degree) {
    sq.coeffs.resize(static_cast<size_t>(max_degree) + 1);
    sq.trim();
  }
  while (exponent > 0) {
    if (exponent & 1UL) result = multiply(result, sq, max_degree);
    exponent >>= 1;
    if (exponent > 0) sq = multiply(sq, sq, max_degree);
  }
  return result;
}

int BiPoly::y_degree() const {
  int d = -1;
  for (const auto& row : rows) d = std::max(d, static_cast<int>(row.size()) - 1);
  return d;
}

Int BiPoly::coeff(int u, int v) const {
  if (u < 0 || u >= static_cast<int>(rows.size())) return Int(0);
  const auto& row = rows[static_cast<size_t>(u)];
  if (v < 0 || v >= static_cast<int>(row.size())) return Int(0);
  return row[static_cast<size_t>(v)];
}

void BiPoly::trim() {
  for (auto& row : rows) {
    while (!row.empty() && row.back() == 0) row.pop_back();
  }
  while (rows.size() > 1 && rows.back().empty()) rows.pop_back();
}

BiPoly multiply(const BiPoly& a, const BiPoly& b, int max_x, int max_y) {
  if (a.rows.empty() || b.rows.empty()) return BiPoly();
  long full_x = static_cast<long>(a.x_degree()) + b.x_degree();
  long full_y = static_cast<long>(a.y_degree()) + b.y_degree();
  size_t out_x = static_cast<size_t>(
      std::min<long>(full_x, max_x == kNoTruncation ? full_x : max_x));
  size_t out_y = static_cast<size_t>(
      std::min<long>(std::max(full_y, 0L),
                     max_y == kNoTruncation ? std::max(full_y, 0L) : max_y));
  BiPoly out;
  out.rows.assign(out_x + 1, std::vector<Int>(out_y + 1, Int(0)));
  for (size_t ax = 0; ax < a.rows.size() && ax <= out_x; ++ax) {
    const auto& arow = a.rows[ax];
    for (size_t bx = 0; bx < b.rows.size() && ax + bx <= out_x; ++bx) {
      const auto& brow = b.rows[bx];
      auto& orow = out.rows[ax + bx];
      for (size_t ay = 0; ay < arow.size() && ay <= out_y; ++ay) {
        if (arow[ay] == 0) continue;
        size_t bymax = std::min(brow.size(), out_y - ay + 1);
        for (size_t by = 0; by < bymax; ++by) {
          if (brow[by] == 0) continue;
          mpz_addmul(orow[ay + by].get_mpz_t(), arow[ay].get_mpz_t(),
                     brow[by].get_mpz_t());
        }
      }
    }
  }
  out.trim();
  return out;
}

BiPoly power(const BiPoly& base, unsigned long exponent, int max_x, int max_y) {
  BiPoly result = BiPoly::one();
  BiPoly sq = base;
  while (exponent > 0) {
    if (exponent & 1UL) result = multiply(result, sq, max_x, max_y);
    exponent >>= 1;
    if (exponent > 0) sq = multiply(sq, sq, max_x, max_y);
  }
  return result;
}

namespace {

void check_power_cap(unsigned long ell, long degree, long cap,
                     const char* what) {
  if (ell == 0) throw ValidationError("power exponent must be >= 1");
  long total = static_cast<long>(ell) * std::max(degree, 1L);
  if (degree > 0 && total / static_cast<long>(ell) != std::max(degree, 1L)) {
    throw CapacityError(std::string(what) + ": exponent*degree overflows");
  }
  if (total > cap) {
    throw CapacityError(std::string(what) + ": exponent*degree = " +
                        std::to_string(total) + " exceeds the cap " +
                        std::to_string(cap));
  }
}

}  // namespace

Int exact_coeff_power_1d(const IntPoly& base, unsigned long ell, long w,
                         long degree_cap) {
  check_power_cap(ell, base.degree(), degree_cap, "exact_coeff_power_1d");
  if (w < 0 || w > static_cast<long>(ell) * base.degree()) return Int(0);
  IntPoly p = power(base, ell, static_cast<int>(w));
  return p.coeff(static_cast<int>(w));
}

Int exact_coeff_power_2d(const BiPoly& base, unsigned long ell, long u, long v,
                         long degree_cap) {
  check_power_cap(ell, std::max(base.x_degree(), base.y_degree()), degree_cap,
                  "exact_coeff_power_2d");
  if (u < 0 || v < 0 || u > static_cast<long>(ell) * base.x_degree() ||
      v > static_cast<long>(ell) * base.y_degree()) {
    return Int(0);
  }
  BiPoly p = power(base, ell, static_cast<int>(u), static_cast<int>(v));
  return p.coeff(static_cast<int>(u), static_cast<int>(v));
}

}  // namespace dgldpc
