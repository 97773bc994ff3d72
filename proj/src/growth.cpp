#include "dgldpc/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dgldpc/errors.hpp"

namespace dgldpc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double nat_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log(p) - (1.0 - p) * std::log1p(-p);
}

// ---------- tilted families over integer supports ----------

struct Pt1 {
  long idx;
  double logc;
};

struct Comp1 {
  double weight = 1.0;
  std::vector<Pt1> pts;
};

struct Tilt1 {
  double lse, mean, var;
};

Tilt1 tilt1(const std::vector<Pt1>& pts, double a) {
  double m = -kInf;
  for (const auto& p : pts) m = std::max(m, p.logc + p.idx * a);
  double z = 0, zi = 0, zii = 0;
  for (const auto& p : pts) {
    double w = std::exp(p.logc + p.idx * a - m);
    z += w;
    zi += w * p.idx;
    zii += w * p.idx * p.idx;
  }
  double mean = zi / z;
  double var = std::max(zii / z - mean * mean, 0.0);
  return {m + std::log(z), mean, var};
}

double mixture_mean1(const std::vector<Comp1>& comps, double a) {
  double m = 0;
  for (const auto& c : comps) m += c.weight * tilt1(c.pts, a).mean;
  return m;
}

double mixture_value1(const std::vector<Comp1>& comps, double a,
                      double target) {
  double v = 0;
  for (const auto& c : comps) v += c.weight * tilt1(c.pts, a).lse;
  return v - target * a;
}

// Unique a with sum_t w_t mean_t(a) = target, for targets strictly between
// the weighted min and max support indices.
double solve_tilt1(const std::vector<Comp1>& comps, double target) {
  double lo = 0, hi = 0;
  if (mixture_mean1(comps, 0.0) < target) {
    hi = 1.0;
    while (mixture_mean1(comps, hi) < target) {
      hi *= 2.0;
      if (hi > 1e15) throw ConvergenceError("tilt bracket exhausted (upper)");
    }
    lo = hi * 0.5 > 1.0 ? hi * 0.5 : 0.0;
    if (mixture_mean1(comps, lo) > target) lo = 0.0;
  } else {
    lo = -1.0;
    while (mixture_mean1(comps, lo) > target) {
      lo *= 2.0;
      if (lo < -1e15) throw ConvergenceError("tilt bracket exhausted (lower)");
    }
    hi = lo * 0.5 < -1.0 ? lo * 0.5 : 0.0;
    if (mixture_mean1(comps, hi) < target) hi = 0.0;
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
    double mid = 0.5 * (lo + hi);
    (mixture_mean1(comps, mid) < target ? lo : hi) = mid;
  }
  double a = 0.5 * (lo + hi);
  for (int it = 0; it < 6; ++it) {  // Newton polish
    double mean = 0, var = 0;
    for (const auto& c : comps) {
      Tilt1 t = tilt1(c.pts, a);
      mean += c.weight * t.mean;
      var += c.weight * t.var;
    }
    if (var < 1e-300) break;
    double step = (mean - target) / var;
    if (!std::isfinite(step)) break;
    a -= step;
    if (std::abs(step) < 1e-16 * (1.0 + std::abs(a))) break;
  }
  return a;
}

struct Pt2 {
  long i, j;
  double logc;
};

struct Comp2 {
  double weight = 1.0;
  std::vector<Pt2> pts;
};

struct Tilt2 {
  double lse, mi, mj, vii, vjj, vij;
};

Tilt2 tilt2(const std::vector<Pt2>& pts, double a, double b) {
  double m = -kInf;
  for (const auto& p : pts) m = std::max(m, p.logc + p.i * a + p.j * b);
  double z = 0, zi = 0, zj = 0, zii = 0, zjj = 0, zij = 0;
  for (const auto& p : pts) {
    double w = std::exp(p.logc + p.i * a + p.j * b - m);
    z += w;
    zi += w * p.i;
    zj += w * p.j;
    zii += w * p.i * p.i;
    zjj += w * p.j * p.j;
    zij += w * p.i * p.j;
  }
  Tilt2 t;
  t.lse = m + std::log(z);
  t.mi = zi / z;
  t.mj = zj / z;
  t.vii = std::max(zii / z - t.mi * t.mi, 0.0);
  t.vjj = std::max(zjj / z - t.mj * t.mj, 0.0);
  t.vij = zij / z - t.mi * t.mj;
  return t;
}

double mixture_value2(const std::vector<Comp2>& comps, double a, double b,
                      double xi, double theta) {
  double v = 0;
  for (const auto& c : comps) v += c.weight * tilt2(c.pts, a, b).lse;
  return v - xi * a - theta * b;
}

// Damped Newton on the smooth convex dual, warm-started from (a_out, b_out).
// Returns false when the iterates run away, which signals a target on or
// outside the aggregate support hull. Near the flat optimum the objective
// can no longer measure progress in doubles, so a tiny Newton step or a
// stalled line search with an already-small gradient also counts as
// converged; the dual value is quadratically insensitive to that residual.
bool newton2(const std::vector<Comp2>& comps, double xi, double theta,
             double& a_out, double& b_out) {
  double a = a_out, b = b_out, mu = 0.0;
  const double scale = 1.0 + std::abs(xi) + std::abs(theta);
  const double tol_tight = 1e-13 * scale;
  const double tol_loose = 1e-9 * scale;
  for (int it = 0; it < 500; ++it) {
    double mi = 0, mj = 0, vii = 0, vjj = 0, vij = 0;
    for (const auto& c : comps) {
      Tilt2 t = tilt2(c.pts, a, b);
      mi += c.weight * t.mi;
      mj += c.weight * t.mj;
      vii += c.weight * t.vii;
      vjj += c.weight * t.vjj;
      vij += c.weight * t.vij;
    }
    double gx = mi - xi, gy = mj - theta;
    double gnorm = std::max(std::abs(gx), std::abs(gy));
    if (gnorm <= tol_tight) {
      a_out = a;
      b_out = b;
      return true;
    }
    double f0 = mixture_value2(comps, a, b, xi, theta);
    bool stepped = false;
    for (int tries = 0; tries < 40 && !stepped; ++tries) {
      double h11 = vii + mu, h22 = vjj + mu, h12 = vij;
      double det = h11 * h22 - h12 * h12;
      double da, db;
      if (det > 1e-300) {
        da = -(h22 * gx - h12 * gy) / det;
        db = -(h11 * gy - h12 * gx) / det;
      } else {  // gradient step
        da = -gx;
        db = -gy;
      }
      if (std::max(std::abs(da), std::abs(db)) <=
          1e-13 * (1.0 + std::abs(a) + std::abs(b))) {
        a_out = a;
        b_out = b;
        return true;
      }
      double descent = gx * da + gy * db;  // negative along a descent step
      double slack = 1e-15 * (1.0 + std::abs(f0));
      double s = 1.0;
      for (int ls = 0; ls < 60; ++ls) {
        double f1 = mixture_value2(comps, a + s * da, b + s * db, xi, theta);
        if (f1 <= f0 + 1e-4 * s * descent + slack) {
          a += s * da;
          b += s * db;
          stepped = true;
          mu = mu > 1e-12 ? mu / 3.0 : 0.0;
          break;
        }
        s *= 0.5;
      }
      if (!stepped) mu = mu == 0.0 ? 1e-8 : mu * 10.0;
    }
    if (!stepped) {
      a_out = a;
      b_out = b;
      return gnorm <= tol_loose;
    }
    if (std::abs(a) > 1e5 || std::abs(b) > 1e5) return false;
  }
  a_out = a;
  b_out = b;
  return false;
}

std::vector<Pt1> points_from_poly(const IntPoly& poly) {
  std::vector<Pt1> pts;
  for (int i = 0; i <= poly.degree(); ++i) {
    const Int c = poly.coeff(i);
    if (c < 0) throw ValidationError("enumerator coefficient is negative");
    if (c > 0) pts.push_back({i, log_int(c)});
  }
  return pts;
}

std::vector<Pt2> points_from_bipoly(const BiPoly& poly) {
  std::vector<Pt2> pts;
  for (int u = 0; u <= poly.x_degree(); ++u) {
    for (int v = 0; v <= poly.y_degree(); ++v) {
      const Int c = poly.coeff(u, v);
      if (c < 0) throw ValidationError("enumerator coefficient is negative");
      if (c > 0) pts.push_back({u, v, log_int(c)});
    }
  }
  return pts;
}

// Generic 1-D entropy maximization over integer support points with exact
// boundary handling. Exposed through coeff_growth_1d and the 2-D reductions.
Growth1DResult solve_entropy_1d(const std::vector<Pt1>& pts, const Rat& xi) {
  long lo = pts.front().idx, hi = pts.front().idx;
  for (const auto& p : pts) {
    lo = std::min(lo, p.idx);
    hi = std::max(hi, p.idx);
  }
  if (xi < Rat(lo) || xi > Rat(hi)) {
    throw InfeasibleRatioError(
        "target ratio " + to_string(xi) + " outside the feasible range [" +
        std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  Growth1DResult res;
  auto vertex = [&](long at) {
    for (const auto& p : pts) {
      res.argmax.weights.emplace_back(p.idx, p.idx == at ? 1.0 : 0.0);
      if (p.idx == at) {
        res.value = p.logc;
        res.primal_value = p.logc;
      }
    }
    res.log_tilt = at == lo ? -kInf : kInf;
  };
  if (xi == Rat(lo)) {
    vertex(lo);
    return res;
  }
  if (xi == Rat(hi)) {
    vertex(hi);
    return res;
  }
  std::vector<Comp1> comps{{1.0, pts}};
  double target = to_double(xi);
  double a = solve_tilt1(comps, target);
  Tilt1 t = tilt1(pts, a);
  res.value = t.lse - target * a;
  res.log_tilt = a;
  res.primal_value = 0.0;
  for (const auto& p : pts) {
    double w = std::exp(p.logc + p.idx * a - t.lse);
    res.argmax.weights.emplace_back(p.idx, w);
    if (w > 0) res.primal_value += w * (p.logc - std::log(w));
  }
  return res;
}

}  // namespace

double BetaDistribution::mean() const {
  double m = 0;
  for (const auto& [i, w] : weights) m += i * w;
  return m;
}

double BetaDistribution::total() const {
  double m = 0;
  for (const auto& [i, w] : weights) m += w;
  return m;
}

double EtaDistribution::mass_with_j_above(long j) const {
  double m = 0;
  for (const auto& e : weights) {
    if (e.j > j) m += e.weight;
  }
  return m;
}

Growth1DResult coeff_growth_1d(const GrowthQuery1D& q) {
  if (q.enumerator.coeff(0) != 1) {
    throw ValidationError("coeff_growth_1d expects A_0 = 1");
  }
  if (q.xi < 0) {
    throw InfeasibleRatioError("target ratio must be nonnegative, got " +
                               to_string(q.xi));
  }
  return solve_entropy_1d(points_from_poly(q.enumerator), q.xi);
}

double small_xi_expansion_1d(const Int& a_c, int c, double xi) {
  if (a_c <= 0 || c < 1) {
    throw ValidationError("small_xi_expansion_1d needs A_c > 0 and c >= 1");
  }
  if (xi < 0) throw ValidationError("xi must be nonnegative");
  if (xi == 0.0) return 0.0;
  return xi / c * (1.0 + std::log(static_cast<double>(c)) + log_int(a_c) -
                   std::log(xi));
}

namespace {

// Exact affine geometry over the integer support of a bivariate enumerator.
struct SupportGeometry {
  int rank = 0;       // 0, 1, or 2
  long dir_i = 0;     // primitive direction when rank == 1
  long dir_j = 0;
  std::vector<std::pair<long, long>> hull;  // ccw, when rank == 2
};

SupportGeometry support_geometry(const std::vector<Pt2>& pts) {
  SupportGeometry g;
  const long i0 = pts.front().i, j0 = pts.front().j;
  for (const auto& p : pts) {
    long di = p.i - i0, dj = p.j - j0;
    if (di == 0 && dj == 0) continue;
    if (g.rank == 0) {
      long d = std::gcd(std::abs(di), std::abs(dj));
      g.dir_i = di / d;
      g.dir_j = dj / d;
      g.rank = 1;
    } else if (g.rank == 1 && di * g.dir_j != dj * g.dir_i) {
      g.rank = 2;
      break;
    }
  }
  if (g.rank == 2) {
    // Andrew monotone chain; coordinates are tiny so long long is exact.
    std::vector<std::pair<long, long>> p;
    for (const auto& q : pts) p.emplace_back(q.i, q.j);
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    auto cross = [](const std::pair<long, long>& o,
                    const std::pair<long, long>& a,
                    const std::pair<long, long>& b) {
      return (a.first - o.first) * (b.second - o.second) -
             (a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<long, long>> h(2 * p.size());
    size_t k = 0;
    for (size_t i = 0; i < p.size(); ++i) {
      while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
      h[k++] = p[i];
    }
    size_t lower = k + 1;
    for (size_t i = p.size() - 1; i-- > 0;) {
      while (k >= lower && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
      h[k++] = p[i];
    }
    h.resize(k - 1);
    g.hull = std::move(h);
  }
  return g;
}

// Scalar position of each support point along a primitive direction through
// (i0, j0); exact because the points are collinear integer points.
long line_parameter(long i, long j, long i0, long j0, long di, long dj) {
  return di != 0 ? (i - i0) / di : (j - j0) / dj;
}

Growth2DResult solve_on_line(const std::vector<Pt2>& pts, long i0, long j0,
                             long di, long dj, const Rat& xi,
                             const Rat& theta) {
  // (xi,theta) must sit on the line (i0,j0) + t (di,dj).
  Rat cross = (xi - i0) * dj - (theta - j0) * di;
  if (cross != 0) {
    throw InfeasibleRatioError(
        "target (" + to_string(xi) + ", " + to_string(theta) +
        ") is off the support line of the enumerator");
  }
  Rat target = di != 0 ? (xi - i0) / di : (theta - j0) / dj;
  std::vector<Pt1> line_pts;
  for (const auto& p : pts) {
    line_pts.push_back(
        {line_parameter(p.i, p.j, i0, j0, di, dj), p.logc});
  }
  Growth1DResult r1 = solve_entropy_1d(line_pts, target);
  Growth2DResult res;
  res.value = r1.value;
  res.primal_value = r1.primal_value;
  res.reduced_to_1d = true;
  res.log_tilt_x = kNaN;
  res.log_tilt_y = kNaN;
  for (size_t k = 0; k < pts.size(); ++k) {
    res.argmax.weights.push_back(
        {pts[k].i, pts[k].j, r1.argmax.weights[k].second});
  }
  return res;
}

Growth2DResult solve_entropy_2d(const std::vector<Pt2>& pts, const Rat& xi,
                                const Rat& theta) {
  SupportGeometry geo = support_geometry(pts);
  if (geo.rank == 0) {
    if (xi != Rat(pts.front().i) || theta != Rat(pts.front().j)) {
      throw InfeasibleRatioError("support is a single point; target differs");
    }
    Growth2DResult res;
    res.value = res.primal_value = pts.front().logc;
    res.argmax.weights.push_back({pts.front().i, pts.front().j, 1.0});
    res.log_tilt_x = res.log_tilt_y = kNaN;
    res.reduced_to_1d = true;
    return res;
  }
  if (geo.rank == 1) {
    return solve_on_line(pts, pts.front().i, pts.front().j, geo.dir_i,
                         geo.dir_j, xi, theta);
  }

  // Full-rank support: exact hull membership decides between the interior
  // Newton solve, a boundary face reduction, and infeasibility.
  const auto& hull = geo.hull;
  size_t n = hull.size();
  int on_edge = -1;
  for (size_t e = 0; e < n; ++e) {
    const auto& a = hull[e];
    const auto& b = hull[(e + 1) % n];
    Rat cr = Rat(b.first - a.first) * (theta - a.second) -
             Rat(b.second - a.second) * (xi - a.first);
    if (cr < 0) {
      throw InfeasibleRatioError(
          "target (" + to_string(xi) + ", " + to_string(theta) +
          ") lies outside the convex hull of the enumerator support");
    }
    if (cr == 0) on_edge = static_cast<int>(e);
  }
  if (on_edge >= 0) {
    const auto& a = hull[static_cast<size_t>(on_edge)];
    const auto& b = hull[(static_cast<size_t>(on_edge) + 1) % n];
    long di = b.first - a.first, dj = b.second - a.second;
    long d = std::gcd(std::abs(di), std::abs(dj));
    di /= d;
    dj /= d;
    std::vector<Pt2> face;
    for (const auto& p : pts) {
      if ((p.i - a.first) * dj == (p.j - a.second) * di) face.push_back(p);
    }
    return solve_on_line(face, a.first, a.second, di, dj, xi, theta);
  }

  std::vector<Comp2> comps{{1.0, pts}};
  double xd = to_double(xi), td = to_double(theta);
  double a = 0, b = 0;
  if (!newton2(comps, xd, td, a, b)) {
    throw ConvergenceError("2-D dual Newton failed on an interior target");
  }
  Tilt2 t = tilt2(pts, a, b);
  Growth2DResult res;
  res.value = t.lse - xd * a - td * b;
  res.log_tilt_x = a;
  res.log_tilt_y = b;
  res.primal_value = 0.0;
  for (const auto& p : pts) {
    double w = std::exp(p.logc + p.i * a + p.j * b - t.lse);
    res.argmax.weights.push_back({p.i, p.j, w});
    if (w > 0) res.primal_value += w * (p.logc - std::log(w));
  }
  return res;
}

}  // namespace

Growth2DResult coeff_growth_2d(const GrowthQuery2D& q) {
  if (q.enumerator.coeff(0, 0) != 1) {
    throw ValidationError("coeff_growth_2d expects B_{0,0} = 1");
  }
  if (q.xi < 0 || q.theta < 0) {
    throw InfeasibleRatioError("target ratios must be nonnegative");
  }
  return solve_entropy_2d(points_from_bipoly(q.enumerator), q.xi, q.theta);
}

CheckSideResult check_side_growth(const Ensemble& ensemble, const Rat& delta) {
  Rat delta_max(0);
  std::vector<Comp1> comps;
  for (const auto& t : ensemble.cn_types) {
    Comp1 c;
    c.weight = to_double(t.node_fraction);
    c.pts = points_from_poly(IntPoly(t.enumerator.coeffs));
    delta_max += t.node_fraction * c.pts.back().idx;
    comps.push_back(std::move(c));
  }
  if (delta < 0 || delta > delta_max) {
    throw InfeasibleRatioError("delta " + to_string(delta) +
                               " outside the feasible range [0, " +
                               to_string(delta_max) + "]");
  }
  CheckSideResult res;
  res.weight_share.assign(comps.size(), 0.0);
  if (delta == 0) return res;
  if (delta == delta_max) {
    double v = 0;
    for (size_t t = 0; t < comps.size(); ++t) {
      const auto& last = comps[t].pts.back();
      v += comps[t].weight * last.logc;
      res.weight_share[t] = comps[t].weight * last.idx;
    }
    res.value = res.nested_value = res.mixture_value = v;
    res.log_tilt = kInf;
    return res;
  }

  double target = to_double(delta);
  double a = solve_tilt1(comps, target);
  res.log_tilt = a;
  res.mixture_value = mixture_value1(comps, a, target);

  // Independent route: evaluate each type at its share of the weight with a
  // fresh single-type solve.
  res.nested_value = 0.0;
  for (size_t t = 0; t < comps.size(); ++t) {
    double share = tilt1(comps[t].pts, a).mean;
    res.weight_share[t] = comps[t].weight * share;
    Growth1DResult r =
        solve_entropy_1d(comps[t].pts, Rat(share));
    res.nested_value += comps[t].weight * r.value;
  }
  if (std::abs(res.nested_value - res.mixture_value) > 1e-9) {
    throw ConvergenceError(
        "check-side growth routes disagree: nested=" +
        std::to_string(res.nested_value) +
        " mixture=" + std::to_string(res.mixture_value));
  }
  res.value = res.mixture_value;
  return res;
}

namespace {

struct VNSide {
  std::vector<Comp2> comps;         // weights delta_t
  std::vector<std::vector<Pt2>> per_type_pts;
  Rat ratio_min, ratio_max;         // j/i over all S_t^-
  Rat alpha_max;                    // sum_t delta_t k_t
};

VNSide build_vn_side(const Ensemble& ensemble) {
  VNSide side;
  bool first = true;
  side.alpha_max = Rat(0);
  for (const auto& t : ensemble.vn_types) {
    Comp2 c;
    c.weight = to_double(t.node_fraction);
    c.pts = points_from_bipoly(BiPoly::from_io_enumerator(t.enumerator));
    for (const auto& p : c.pts) {
      if (p.i == 0 && p.j == 0) continue;
      Rat ratio = make_rat(p.j, p.i);
      if (first) {
        side.ratio_min = side.ratio_max = ratio;
        first = false;
      } else {
        side.ratio_min = std::min(side.ratio_min, ratio);
        side.ratio_max = std::max(side.ratio_max, ratio);
      }
    }
    side.alpha_max += t.node_fraction * t.dimension();
    side.per_type_pts.push_back(c.pts);
    side.comps.push_back(std::move(c));
  }
  return side;
}

struct WParts {
  bool feasible = false;
  double value = -kInf;
  double tilt_x = kNaN, tilt_y = kNaN;
  bool on_ray = false;
  std::vector<EtaDistribution> per_type_eta;
};

// Check-side plus binomial exponent at normalized edge weight beta (per VN).
double edge_terms(const Ensemble& ensemble,
                  const std::vector<Comp1>& check_comps, double delta_max,
                  double beta) {
  double il = to_double(ensemble.lambda_integral);
  double ir = to_double(ensemble.rho_integral);
  double delta = beta * il / ir;
  if (delta < 0 || delta > delta_max || beta * il > 1.0) return -kInf;
  double check;
  if (delta == 0.0) {
    check = 0.0;
  } else if (delta >= delta_max) {
    check = 0.0;
    for (const auto& c : check_comps) check += c.weight * c.pts.back().logc;
  } else {
    double a = solve_tilt1(check_comps, delta);
    check = mixture_value1(check_comps, a, delta);
  }
  return ir / il * check - nat_entropy(beta * il) / il;
}

// VN-side exponent at (alpha, beta) via the shared-multiplier dual.
// warm_a/warm_b seed the Newton solve and are updated on success.
WParts vn_interior(const VNSide& side, double alpha, double beta,
                   double* warm_a, double* warm_b) {
  WParts w;
  double a = *warm_a, b = *warm_b;
  if (!newton2(side.comps, alpha, beta, a, b)) return w;
  *warm_a = a;
  *warm_b = b;
  w.feasible = true;
  w.tilt_x = a;
  w.tilt_y = b;
  w.value = mixture_value2(side.comps, a, b, alpha, beta);
  for (const auto& comp : side.comps) {
    Tilt2 t = tilt2(comp.pts, a, b);
    EtaDistribution eta;
    for (const auto& p : comp.pts) {
      eta.weights.push_back(
          {p.i, p.j, std::exp(p.logc + p.i * a + p.j * b - t.lse)});
    }
    w.per_type_eta.push_back(std::move(eta));
  }
  return w;
}

// VN-side exponent when all moment mass must sit on the ray j = ratio * i
// (the beta/alpha endpoints, and ensembles whose whole support is one ray).
WParts vn_on_ray(const VNSide& side, const Rat& alpha, const Rat& ratio) {
  WParts w;
  std::vector<Comp1> comps;
  std::vector<std::vector<size_t>> kept(side.per_type_pts.size());
  for (size_t t = 0; t < side.per_type_pts.size(); ++t) {
    Comp1 c;
    c.weight = side.comps[t].weight;
    for (size_t k = 0; k < side.per_type_pts[t].size(); ++k) {
      const auto& p = side.per_type_pts[t][k];
      if ((p.i == 0 && p.j == 0) || Rat(p.j) == ratio * p.i) {
        c.pts.push_back({p.i, p.logc});
        kept[t].push_back(k);
      }
    }
    comps.push_back(std::move(c));
  }
  double target = to_double(alpha);
  double total_min = 0, total_max = 0;
  for (const auto& c : comps) {
    long mn = c.pts.front().idx, mx = c.pts.front().idx;
    for (const auto& p : c.pts) {
      mn = std::min(mn, p.idx);
      mx = std::max(mx, p.idx);
    }
    total_min += c.weight * mn;
    total_max += c.weight * mx;
  }
  if (target < total_min || target > total_max) return w;
  w.feasible = true;
  w.on_ray = true;
  bool at_vertex = (target == total_max || target == total_min);
  double a = 0;
  if (at_vertex) {
    a = target == total_max ? kInf : -kInf;
    w.value = 0;
    for (const auto& c : comps) {
      const Pt1* pick = &c.pts.front();
      for (const auto& p : c.pts) {
        if ((target == total_max && p.idx > pick->idx) ||
            (target == total_min && p.idx < pick->idx)) {
          pick = &p;
        }
      }
      w.value += c.weight * pick->logc;
    }
  } else {
    a = solve_tilt1(comps, target);
    w.value = mixture_value1(comps, a, target);
  }
  for (size_t t = 0; t < comps.size(); ++t) {
    EtaDistribution eta;
    long extreme = comps[t].pts.front().idx;
    for (const auto& p : comps[t].pts) {
      if ((target == total_max && p.idx > extreme) ||
          (target == total_min && p.idx < extreme)) {
        extreme = p.idx;
      }
    }
    Tilt1 tt = at_vertex ? Tilt1{0, 0, 0} : tilt1(comps[t].pts, a);
    for (size_t k = 0; k < comps[t].pts.size(); ++k) {
      const auto& orig = side.per_type_pts[t][kept[t][k]];
      double weight =
          at_vertex ? (comps[t].pts[k].idx == extreme ? 1.0 : 0.0)
                    : std::exp(comps[t].pts[k].logc +
                               comps[t].pts[k].idx * a - tt.lse);
      eta.weights.push_back({orig.i, orig.j, weight});
    }
    w.per_type_eta.push_back(std::move(eta));
  }
  return w;
}

}  // namespace

GrowthRateResult growth_rate_general(const Ensemble& ensemble,
                                     const Rat& alpha) {
  GrowthRateResult out;
  if (alpha == 0) return out;
  if (alpha < 0) throw InfeasibleRatioError("alpha must be nonnegative");

  VNSide side = build_vn_side(ensemble);
  if (alpha >= side.alpha_max) {
    throw InfeasibleRatioError("alpha " + to_string(alpha) +
                               " is not below the maximum normalized weight " +
                               to_string(side.alpha_max));
  }
  out.beta_ratio_min = to_double(side.ratio_min);
  out.beta_ratio_max = to_double(side.ratio_max);

  std::vector<Comp1> check_comps;
  Rat delta_max_rat(0);
  for (const auto& t : ensemble.cn_types) {
    Comp1 c;
    c.weight = to_double(t.node_fraction);
    c.pts = points_from_poly(IntPoly(t.enumerator.coeffs));
    delta_max_rat += t.node_fraction * c.pts.back().idx;
    check_comps.push_back(std::move(c));
  }
  double delta_max = to_double(delta_max_rat);

  Rat beta_lo = alpha * side.ratio_min;
  Rat beta_hi = alpha * side.ratio_max;
  Rat beta_cap = delta_max_rat * ensemble.rho_integral /
                 ensemble.lambda_integral;
  if (beta_cap < beta_hi) beta_hi = beta_cap;
  Rat edge_cap = Rat(1) / ensemble.lambda_integral;
  if (edge_cap < beta_hi) beta_hi = edge_cap;
  if (beta_hi < beta_lo) {
    throw InfeasibleRatioError("no feasible edge weight for alpha " +
                               to_string(alpha));
  }

  double warm_a = 0, warm_b = 0;
  auto eval_at = [&](double beta) -> WParts {
    WParts w = vn_interior(side, to_double(alpha), beta, &warm_a, &warm_b);
    if (!w.feasible) return w;
    double extra = edge_terms(ensemble, check_comps, delta_max, beta);
    if (extra == -kInf) {
      w.feasible = false;
      w.value = -kInf;
      return w;
    }
    w.value += extra;
    return w;
  };
  auto eval_ray = [&](const Rat& ratio, const Rat& beta) -> WParts {
    WParts w = vn_on_ray(side, alpha, ratio);
    if (!w.feasible) return w;
    double extra =
        edge_terms(ensemble, check_comps, delta_max, to_double(beta));
    if (extra == -kInf) {
      w.feasible = false;
      w.value = -kInf;
      return w;
    }
    w.value += extra;
    return w;
  };

  WParts best;
  double best_beta = to_double(beta_lo);

  if (beta_lo == beta_hi || side.ratio_min == side.ratio_max) {
    best = eval_ray(side.ratio_min, beta_lo);
    best_beta = to_double(beta_lo);
    if (!best.feasible) {
      throw InfeasibleRatioError(
          "alpha " + to_string(alpha) +
          " admits no feasible split-assignment exponent");
    }
  } else {
    // Endpoint evaluations are exact ray reductions; interior points use the
    // 2-D dual. A coarse scan brackets the maximum before golden section.
    struct Cand {
      double beta;
      WParts w;
    };
    std::vector<Cand> cands;
    if (beta_lo == alpha * side.ratio_min) {
      cands.push_back({to_double(beta_lo), eval_ray(side.ratio_min, beta_lo)});
    }
    const int kGrid = 63;
    double blo = to_double(beta_lo), bhi = to_double(beta_hi);
    for (int g = 1; g <= kGrid; ++g) {
      double beta = blo + (bhi - blo) * g / (kGrid + 1);
      cands.push_back({beta, eval_at(beta)});
    }
    if (beta_hi == alpha * side.ratio_max) {
      cands.push_back({to_double(beta_hi), eval_ray(side.ratio_max, beta_hi)});
    } else {
      cands.push_back({bhi, eval_at(bhi)});
    }
    int best_idx = -1;
    for (size_t i = 0; i < cands.size(); ++i) {
      if (cands[i].w.feasible &&
          (best_idx < 0 || cands[i].w.value > cands[best_idx].w.value)) {
        best_idx = static_cast<int>(i);
      }
    }
    if (best_idx < 0) {
      throw InfeasibleRatioError(
          "alpha " + to_string(alpha) +
          " admits no feasible split-assignment exponent");
    }
    double lo = cands[std::max(best_idx - 1, 0)].beta;
    double hi = cands[std::min<size_t>(best_idx + 1, cands.size() - 1)].beta;
    best = cands[best_idx].w;
    best_beta = cands[best_idx].beta;

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    WParts w1 = eval_at(x1), w2 = eval_at(x2);
    for (int it = 0; it < 220 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
      double v1 = w1.feasible ? w1.value : -kInf;
      double v2 = w2.feasible ? w2.value : -kInf;
      if (v1 >= v2) {
        hi = x2;
        x2 = x1;
        w2 = w1;
        x1 = hi - inv_phi * (hi - lo);
        w1 = eval_at(x1);
      } else {
        lo = x1;
        x1 = x2;
        w1 = w2;
        x2 = lo + inv_phi * (hi - lo);
        w2 = eval_at(x2);
      }
      if (w1.feasible && w1.value > best.value) {
        best = w1;
        best_beta = x1;
      }
      if (w2.feasible && w2.value > best.value) {
        best = w2;
        best_beta = x2;
      }
    }
    if (!best.feasible) {
      throw ConvergenceError("outer edge-weight search failed to converge");
    }
  }

  out.value = best.value;
  out.beta = best_beta;
  out.log_tilt_x = best.tilt_x;
  out.log_tilt_y = best.tilt_y;
  out.per_type_eta = best.per_type_eta;
  double alpha_d = to_double(alpha);
  for (size_t t = 0; t < best.per_type_eta.size(); ++t) {
    out.mass_output_above_2 += side.comps[t].weight *
                               best.per_type_eta[t].mass_with_j_above(2) /
                               alpha_d;
  }
  return out;
}

}  // namespace dgldpc
