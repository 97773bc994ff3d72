#include "dgldpc/spectral.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dgldpc/errors.hpp"

namespace dgldpc {

SpectralParams spectral_params(const Ensemble& ensemble) {
  SpectralParams sp;
  sp.r = std::numeric_limits<int>::max();
  sp.p = std::numeric_limits<int>::max();
  for (const auto& t : ensemble.cn_types) sp.r = std::min(sp.r, t.min_dist);
  for (const auto& t : ensemble.vn_types) sp.p = std::min(sp.p, t.min_dist);

  sp.c = Rat(0);
  for (const auto& t : ensemble.cn_types) {
    Rat ct = Rat(t.min_dist) * Rat(t.enumerator.at(t.min_dist)) / t.length();
    sp.c_per_type[t.id] = ct;
    if (t.min_dist == sp.r) {
      sp.x_c.push_back(t.id);
      sp.c += t.edge_fraction * ct;
    }
  }
  for (const auto& t : ensemble.vn_types) {
    if (t.min_dist == sp.p) sp.x_v.push_back(t.id);
  }

  sp.p_defined = (sp.p == 2);
  if (sp.p_defined) {
    for (const auto& t : ensemble.vn_types) {
      if (t.min_dist != 2) continue;
      std::vector<int> inputs;
      for (int i = 1; i <= t.dimension(); ++i) {
        const Int& b = t.enumerator.at(i, 2);
        if (b > 0) {
          inputs.push_back(i);
          Rat term = t.edge_fraction * Rat(2 * b) / t.length();
          auto [it, inserted] = sp.p_coeffs.emplace(i, term);
          if (!inserted) it->second += term;
        }
      }
      sp.weight2_inputs[t.id] = std::move(inputs);
    }
  }
  return sp;
}

double p_eval(const SpectralParams& params, double x) {
  double acc = 0.0;
  for (const auto& [i, coeff] : params.p_coeffs) {
    acc += to_double(coeff) * std::pow(x, i);
  }
  return acc;
}

double p_inverse(const SpectralParams& params, double y) {
  if (!params.p_defined) {
    throw PNotDefinedError("P(x) requires p = 2; this ensemble has p = " +
                           std::to_string(params.p));
  }
  if (!(y > 0)) throw ValidationError("p_inverse needs y > 0");

  // Monotone increasing with P(0)=0 and unbounded: double the bracket, then
  // bisect, then polish with Newton.
  double hi = 1.0;
  while (p_eval(params, hi) < y) {
    hi *= 2.0;
    if (!std::isfinite(hi)) {
      throw ConvergenceError("p_inverse bracket grew unbounded");
    }
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-16 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    (p_eval(params, mid) < y ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) {
    double f = p_eval(params, x) - y;
    double d = 0.0;
    for (const auto& [i, coeff] : params.p_coeffs) {
      d += to_double(coeff) * i * std::pow(x, i - 1);
    }
    if (d <= 0.0) break;
    double step = f / d;
    x -= step;
    if (x < 0) x = 0.5 * (x + step);  // stay in the domain
    if (std::abs(step) <= 1e-17 * (1.0 + std::abs(x))) break;
  }
  if (std::abs(p_eval(params, x) - y) > 1e-12 * y) {
    throw ConvergenceError("p_inverse did not reach 1e-12 relative residual");
  }
  return x;
}

double growth_rate_slope(const SpectralParams& params) {
  if (params.r != 2 || params.p != 2) {
    std::string msg = "Theorem hypothesis r = p = 2 fails:";
    if (params.r != 2) msg += " r = " + std::to_string(params.r);
    if (params.p != 2) msg += " p = " + std::to_string(params.p);
    throw TheoremHypothesisError(msg);
  }
  double inv_c = 1.0 / to_double(params.c);
  return -std::log(p_inverse(params, inv_c));
}

double growth_rate_slope(const Ensemble& ensemble) {
  return growth_rate_slope(spectral_params(ensemble));
}

}  // namespace dgldpc
