#pragma once

#include <map>
#include <vector>

#include "dgldpc/ensemble.hpp"
#include "dgldpc/rational.hpp"

namespace dgldpc {

/// Small-weight spectral structure of an ensemble. All fields are exact; the
/// weight-2 polynomial fields are populated only when p == 2.
struct SpectralParams {
  int r = 0;                       // smallest CN minimum distance
  int p = 0;                       // smallest VN minimum distance
  std::vector<int> x_c;            // CN type ids with r_t == r
  std::vector<int> x_v;            // VN type ids with p_t == p
  std::map<int, Rat> c_per_type;   // t -> r_t A^(t)_{r_t} / s_t, all CN types
  Rat c;                           // sum over X_c of rho_t * C_t
  bool p_defined = false;          // true iff p == 2
  std::map<int, Rat> p_coeffs;     // i -> sum_{t in X_v} lambda_t 2 B_{i,2}/q_t
  std::map<int, std::vector<int>> weight2_inputs;  // t -> L_t (t in X_v, p==2)
};

SpectralParams spectral_params(const Ensemble& ensemble);

/// Evaluate P at x >= 0 (double precision; exact rational coefficients).
double p_eval(const SpectralParams& params, double x);

/// Unique x >= 0 with P(x) = y, to 1e-12 relative. Requires p == 2.
double p_inverse(const SpectralParams& params, double y);

/// Small-weight growth-rate slope log[1 / P^{-1}(1/C)] in nats.
/// Requires r = p = 2.
double growth_rate_slope(const Ensemble& ensemble);
double growth_rate_slope(const SpectralParams& params);

}  // namespace dgldpc
