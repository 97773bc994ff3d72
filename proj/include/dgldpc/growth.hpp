#pragma once

#include <utility>
#include <vector>

#include "dgldpc/ensemble.hpp"
#include "dgldpc/polynomial.hpp"
#include "dgldpc/rational.hpp"

namespace dgldpc {

/// max sum_i beta_i log(A_i/beta_i) over the simplex with mean constraint
/// sum_i i*beta_i = xi. Solved through the scalar dual: the unique tilt z>0
/// with z A'(z)/A(z) = xi, then beta_i = A_i z^i / A(z).
struct GrowthQuery1D {
  IntPoly enumerator;  // A_0 = 1, coefficients nonnegative
  Rat xi;
};

struct BetaDistribution {
  std::vector<std::pair<long, double>> weights;  // (i, beta_i), support order

  double mean() const;
  double total() const;
};

struct Growth1DResult {
  double value = 0.0;
  BetaDistribution argmax;
  double log_tilt = 0.0;      // log z at the optimum (+-inf at the vertices)
  double primal_value = 0.0;  // objective recomputed from argmax
};

Growth1DResult coeff_growth_1d(const GrowthQuery1D& q);

/// First-order small-ratio value (xi/c) log(e c A_c / xi); 0 at xi = 0.
double small_xi_expansion_1d(const Int& a_c, int c, double xi);

/// Bivariate analogue with mean constraints on both coordinates. Solved by
/// damped Newton on the convex dual; collinear supports and hull-boundary
/// targets reduce to the 1-D solver along the supporting face.
struct GrowthQuery2D {
  BiPoly enumerator;  // B_{0,0} = 1, coefficients nonnegative
  Rat xi;
  Rat theta;
};

struct EtaDistribution {
  struct Entry {
    long i, j;
    double weight;
  };
  std::vector<Entry> weights;

  double mass_with_j_above(long j) const;
};

struct Growth2DResult {
  double value = 0.0;
  EtaDistribution argmax;
  double log_tilt_x = 0.0;
  double log_tilt_y = 0.0;
  double primal_value = 0.0;
  bool reduced_to_1d = false;
};

Growth2DResult coeff_growth_2d(const GrowthQuery2D& q);

/// lim (1/m) log N_c(delta m): growth of the number of check-valid
/// assignments. Computed two ways (nested per-type optimization with a
/// common multiplier, and the gamma-weighted mixture dual) and cross-checked
/// to 1e-9.
struct CheckSideResult {
  double value = 0.0;
  double nested_value = 0.0;
  double mixture_value = 0.0;
  std::vector<double> weight_share;  // epsilon_t, sums to delta
  double log_tilt = 0.0;
};

CheckSideResult check_side_growth(const Ensemble& ensemble, const Rat& delta);

/// G(alpha) for arbitrary feasible alpha: outer search over the normalized
/// edge weight beta, inner VN-side mixture dual (one multiplier pair shared
/// by all types), plus the exact check-side and binomial exponents.
struct GrowthRateResult {
  double value = 0.0;
  double beta = 0.0;
  double beta_ratio_min = 0.0;  // feasible beta/alpha range from VN support
  double beta_ratio_max = 0.0;
  double log_tilt_x = 0.0;
  double log_tilt_y = 0.0;
  // input-normalized mass (eta weighted by delta_t/alpha) on VN codewords
  // of output weight > 2 at the optimum.
  double mass_output_above_2 = 0.0;
  std::vector<EtaDistribution> per_type_eta;  // indexed like vn_types
};

GrowthRateResult growth_rate_general(const Ensemble& ensemble,
                                     const Rat& alpha);

}  // namespace dgldpc
