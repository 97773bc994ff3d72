#include "dgldpc/ensemble.hpp"

#include <numeric>
#include <string>

#include "dgldpc/errors.hpp"

namespace dgldpc {

Rat Ensemble::lambda_prime_at_zero() const {
  Rat r(0);
  for (const auto& t : vn_types) {
    if (t.length() == 2) r += t.edge_fraction;
  }
  return r;
}

Rat Ensemble::rho_prime_at_one() const {
  Rat r(0);
  for (const auto& t : cn_types) {
    r += t.edge_fraction * (t.length() - 1);
  }
  return r;
}

bool Ensemble::all_vns_repetition() const {
  for (const auto& t : vn_types) {
    if (t.dimension() != 1) return false;
    if (t.code.rows[0] !=
        ((t.length() == 64) ? ~0ULL : ((1ULL << t.length()) - 1))) {
      return false;
    }
  }
  return true;
}

bool Ensemble::all_cns_spc() const {
  for (const auto& t : cn_types) {
    if (t.dimension() != t.length() - 1) return false;
    // SPC = exactly the even-weight words: A_u > 0 iff u even.
    for (int u = 1; u <= t.enumerator.degree(); u += 2) {
      if (t.enumerator.at(u) != 0) return false;
    }
  }
  return true;
}

namespace {

template <typename Spec>
void check_distinct_generators(const std::vector<Spec>& specs,
                               const char* what) {
  for (size_t a = 0; a < specs.size(); ++a) {
    for (size_t b = a + 1; b < specs.size(); ++b) {
      if (specs[a].code == specs[b].code) {
        throw DegenerateTypeError(
            std::string(what) + " types " + std::to_string(a) + " and " +
            std::to_string(b) + " share the same generator matrix");
      }
    }
  }
}

template <typename Spec>
void check_fraction_sum(const std::vector<Spec>& specs, const char* what) {
  Rat sum(0);
  for (const auto& s : specs) {
    if (s.edge_fraction <= 0) {
      throw ValidationError(std::string(what) +
                            " edge fraction must be positive");
    }
    sum += s.edge_fraction;
  }
  if (sum != 1) {
    throw FractionSumError(std::string(what) + " edge fractions sum to " +
                           to_string(sum) + ", expected 1");
  }
}

}  // namespace

Ensemble build_ensemble(const std::vector<CNSpec>& cn_specs,
                        const std::vector<VNSpec>& vn_specs, int max_k) {
  if (cn_specs.empty() || vn_specs.empty()) {
    throw ValidationError("ensemble needs at least one CN and one VN type");
  }
  check_fraction_sum(cn_specs, "CN");
  check_fraction_sum(vn_specs, "VN");
  check_distinct_generators(cn_specs, "CN");
  check_distinct_generators(vn_specs, "VN");

  Ensemble e;
  e.rho_integral = Rat(0);
  e.lambda_integral = Rat(0);
  for (size_t i = 0; i < cn_specs.size(); ++i) {
    CNType t;
    t.id = static_cast<int>(i);
    t.code = cn_specs[i].code;
    t.edge_fraction = cn_specs[i].edge_fraction;
    t.enumerator = weight_enumerator(t.code, max_k);
    t.min_dist = 0;
    for (int w = 1; w <= t.enumerator.degree(); ++w) {
      if (t.enumerator.at(w) > 0) {
        t.min_dist = w;
        break;
      }
    }
    t.degenerate = (t.dimension() == t.length());
    e.rho_integral += t.edge_fraction / t.length();
    e.cn_types.push_back(std::move(t));
  }
  for (size_t i = 0; i < vn_specs.size(); ++i) {
    VNType t;
    t.id = static_cast<int>(i);
    t.code = vn_specs[i].code;
    t.edge_fraction = vn_specs[i].edge_fraction;
    t.enumerator = io_weight_enumerator(t.code, max_k);
    t.min_dist = min_distance(t.code, max_k);
    e.lambda_integral += t.edge_fraction / t.length();
    e.vn_types.push_back(std::move(t));
  }
  for (auto& t : e.cn_types) {
    t.node_fraction = t.edge_fraction / (t.length() * e.rho_integral);
  }
  for (auto& t : e.vn_types) {
    t.node_fraction = t.edge_fraction / (t.length() * e.lambda_integral);
  }
  return e;
}

namespace {

// n * frac must be an integer; returns the denominator that n must divide.
long required_divisor(const Rat& frac) {
  Rat c = frac;
  c.canonicalize();
  Int den = c.get_den();
  if (!den.fits_slong_p()) {
    throw CapacityError("instance period does not fit in a machine word");
  }
  return den.get_si();
}

}  // namespace

long smallest_valid_n(const Ensemble& ensemble) {
  long period = 1;
  auto fold = [&period](const Rat& frac) {
    long d = required_divisor(frac);
    period = std::lcm(period, d);
  };
  for (const auto& t : ensemble.vn_types) {
    fold(t.edge_fraction / (t.length() * ensemble.lambda_integral));
  }
  for (const auto& t : ensemble.cn_types) {
    fold(t.edge_fraction / (t.length() * ensemble.lambda_integral));
  }
  return period;
}

InstanceDims instance_dims(const Ensemble& ensemble, long n) {
  if (n <= 0) throw ValidationError("instance size n must be positive");
  long period = smallest_valid_n(ensemble);
  auto suggest = [&]() { return ((n + period - 1) / period) * period; };

  Rat edges = Rat(n) / ensemble.lambda_integral;
  if (!is_integer(edges)) {
    throw NonIntegralInstanceError(
        "edge count E = n/int_lambda = " + to_string(edges) +
        " is not an integer; smallest valid n is " + std::to_string(suggest()),
        suggest());
  }
  InstanceDims dims;
  dims.num_vns = n;
  dims.edge_count = edges.get_num().get_si();

  for (const auto& t : ensemble.vn_types) {
    Rat cnt = edges * t.edge_fraction / t.length();
    if (!is_integer(cnt)) {
      throw NonIntegralInstanceError(
          "VN count for type " + std::to_string(t.id) + " = " +
              to_string(cnt) + " is not an integer; smallest valid n is " +
              std::to_string(suggest()),
          suggest());
    }
    dims.vn_counts.push_back(cnt.get_num().get_si());
    dims.codeword_length += dims.vn_counts.back() * t.dimension();
  }
  for (const auto& t : ensemble.cn_types) {
    Rat cnt = edges * t.edge_fraction / t.length();
    if (!is_integer(cnt)) {
      throw NonIntegralInstanceError(
          "CN count for type " + std::to_string(t.id) + " = " +
              to_string(cnt) + " is not an integer; smallest valid n is " +
              std::to_string(suggest()),
          suggest());
    }
    dims.cn_counts.push_back(cnt.get_num().get_si());
    dims.cn_count += dims.cn_counts.back();
    dims.num_checks += dims.cn_counts.back() * (t.length() - t.dimension());
  }
  return dims;
}

Rat design_rate(const Ensemble& ensemble) {
  long n = smallest_valid_n(ensemble);
  InstanceDims dims = instance_dims(ensemble, n);
  if (dims.codeword_length == 0) {
    throw ValidationError("ensemble has zero codeword length");
  }
  return Rat(1) - make_rat(dims.num_checks, dims.codeword_length);
}

}  // namespace dgldpc
