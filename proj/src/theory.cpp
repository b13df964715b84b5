#include "geolab/theory.hpp"

#include <cmath>
#include <numbers>

#include "geolab/error.hpp"

namespace geolab::theory {

namespace {

constexpr double kUnderflow = -700.0;

double safe_exp(double x) { return x < kUnderflow ? 0.0 : std::exp(x); }

double log_mu(std::uint32_t d, double gamma, std::int64_t k) {
  return std::log(static_cast<double>(d)) +
         (2.0 * static_cast<double>(k) - 2.0 * gamma - 2.0) * std::log(static_cast<double>(d - 1));
}

void check_degree(std::uint32_t d) {
  if (d < 3) throw Error(ErrorCode::kInvalidArguments, "d must be at least 3");
}

// P(S_{i0+k-1}) * (1 - e^{-mu_k}) and P(S_{i0+k-1}) * e^{-mu_k} (1 - e^{-nu_k}).
std::pair<double, double> join_split(std::uint32_t d, double gamma, std::int64_t k) {
  const JoinMeans m = join_means(d, gamma, k);
  const double before = p_separate(d, gamma, k - 1);
  return {before * -std::expm1(-m.mu), before * safe_exp(-m.mu) * -std::expm1(-m.nu)};
}

}  // namespace

void TheoryParams::validate() const {
  check_degree(d);
  if (!(gamma >= 0.0 && gamma < 1.0)) throw Error(ErrorCode::kInvalidArguments, "gamma must lie in [0,1)");
  if (!(k_min < 0 && k_max > 0)) throw Error(ErrorCode::kInvalidArguments, "need k_min < 0 < k_max");
  if (l_max < 1 || m_max < 1) throw Error(ErrorCode::kInvalidArguments, "l_max and m_max must be >= 1");
}

std::uint64_t balanced_tree_size(std::uint32_t d, std::uint32_t i) {
  check_degree(d);
  // 1 + d * (1 + (d-1) + ... + (d-1)^(i-1))
  std::uint64_t geometric = 0;
  std::uint64_t power = 1;
  for (std::uint32_t j = 0; j < i; ++j) {
    if (__builtin_add_overflow(geometric, power, &geometric) ||
        (j + 1 < i && __builtin_mul_overflow(power, std::uint64_t{d - 1}, &power))) {
      throw Error(ErrorCode::kCountOverflow, "tree size overflows");
    }
  }
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(geometric, std::uint64_t{d}, &out) || __builtin_add_overflow(out, 1, &out)) {
    throw Error(ErrorCode::kCountOverflow, "tree size overflows");
  }
  return out;
}

HalfRadius half_radius_and_gamma(std::uint64_t n, std::uint32_t d) {
  check_degree(d);
  if (n < 2) throw Error(ErrorCode::kInvalidArguments, "n must be at least 2");
  const double half_log = 0.5 * std::log(static_cast<double>(n)) / std::log(static_cast<double>(d - 1));
  auto i0 = static_cast<std::int64_t>(std::floor(half_log));
  // Correct floor against rounding using exact integer powers of (d-1)^2.
  const auto q = static_cast<unsigned __int128>(d - 1) * (d - 1);
  auto power = [&](std::int64_t e) {
    unsigned __int128 p = 1;
    for (std::int64_t j = 0; j < e; ++j) {
      p *= q;
      if (p > n) break;
    }
    return p;
  };
  while (i0 > 0 && power(i0) > n) --i0;
  while (power(i0 + 1) <= n) ++i0;
  double gamma = power(i0) == n ? 0.0 : half_log - static_cast<double>(i0);
  if (gamma < 0.0) gamma = 0.0;
  if (gamma >= 1.0) gamma = std::nextafter(1.0, 0.0);
  return {i0, gamma};
}

double p_separate(std::uint32_t d, double gamma, std::int64_t k) {
  check_degree(d);
  // d (d-1)^(2k - 2 gamma) / (d-2), computed in log space
  const double log_rate = std::log(static_cast<double>(d)) +
                          (2.0 * static_cast<double>(k) - 2.0 * gamma) * std::log(static_cast<double>(d - 1)) -
                          std::log(static_cast<double>(d - 2));
  if (log_rate > 7.0) return 0.0;  // exp(-e^7) underflows
  return safe_exp(-std::exp(log_rate));
}

JoinMeans join_means(std::uint32_t d, double gamma, std::int64_t k) {
  check_degree(d);
  const double mu = std::exp(log_mu(d, gamma, k));
  return {mu, static_cast<double>(d - 1) * mu};
}

double geodesic_count_term(std::uint32_t d, double gamma, std::int64_t k, std::uint32_t l) {
  check_degree(d);
  const double log_d1 = std::log(static_cast<double>(d - 1));
  const double lm = log_mu(d, gamma, k);
  const double nu = std::exp(lm + log_d1);
  // mu^l / l! * exp(-nu/(d-2)) * (1 + (d-1)^l exp(-nu))
  const double base = static_cast<double>(l) * lm - std::lgamma(static_cast<double>(l) + 1.0) -
                      nu / static_cast<double>(d - 2);
  return safe_exp(base) + safe_exp(base + static_cast<double>(l) * log_d1 - nu);
}

double geodesic_count_pmf(const TheoryParams& params, std::uint32_t l) {
  params.validate();
  if (l < 1 || l > params.l_max) throw Error(ErrorCode::kInvalidArguments, "l out of range");
  double sum = 0.0;
  for (std::int64_t k = params.k_min; k <= params.k_max; ++k) {
    sum += geodesic_count_term(params.d, params.gamma, k, l);
  }
  return sum;
}

std::vector<double> geodesic_count_pmf_table(const TheoryParams& params) {
  std::vector<double> out(params.l_max + 1, 0.0);
  for (std::uint32_t l = 1; l <= params.l_max; ++l) out[l] = geodesic_count_pmf(params, l);
  return out;
}

double periodic_sum(double c, double x, std::uint32_t m_trunc) {
  if (!(c > 1.0)) throw Error(ErrorCode::kInvalidArguments, "c must exceed 1");
  const double frac = x - std::floor(x);
  const double log_c = std::log(c);
  const auto m_lim = static_cast<std::int64_t>(m_trunc);
  double sum = 0.0;
  for (std::int64_t m = -m_lim; m <= m_lim; ++m) {
    const double log_z = (static_cast<double>(m) + frac) * log_c;
    sum += safe_exp(log_z - std::exp(std::min(log_z, 700.0)));
  }
  return sum;
}

double unique_geodesic_prob(std::uint32_t d, double gamma, std::uint32_t m_trunc) {
  check_degree(d);
  const double dd = d;
  const double c = (dd - 1.0) * (dd - 1.0);
  const double log_c = std::log(c);
  const double shift_odd = std::log(dd / ((dd - 1.0) * (dd - 2.0))) / log_c;
  const double shift_even = std::log(dd / (dd - 2.0)) / log_c;
  const double weight = (dd - 2.0) / (dd - 1.0);
  return weight * (periodic_sum(c, -gamma + shift_odd, m_trunc) +
                   periodic_sum(c, -gamma + shift_even, m_trunc));
}

double fourier_term_magnitude(double c, std::int64_t m) {
  if (!(c > 1.0)) throw Error(ErrorCode::kInvalidArguments, "c must exceed 1");
  if (m == 0) throw Error(ErrorCode::kInvalidArguments, "m must be nonzero");
  const double y = 2.0 * std::numbers::pi * std::numbers::pi * std::abs(static_cast<double>(m)) / std::log(c);
  // sqrt(y / sinh(y)) = sqrt(2 y e^{-y} / (1 - e^{-2y})), stable for large y
  return std::sqrt(2.0 * y * std::exp(-y) / -std::expm1(-2.0 * y));
}

double oscillation_envelope(std::uint32_t d, std::uint32_t m_trunc) {
  check_degree(d);
  const double c = static_cast<double>(d - 1) * static_cast<double>(d - 1);
  double tail = 0.0;
  for (std::uint32_t m = 1; m <= m_trunc; ++m) tail += 2.0 * fourier_term_magnitude(c, m);
  return 2.0 * static_cast<double>(d - 2) / static_cast<double>(d - 1) * tail;
}

Oscillation oscillation(std::uint32_t d, std::uint32_t resolution, std::uint32_t m_trunc) {
  if (resolution < 1000) throw Error(ErrorCode::kInvalidArguments, "resolution must be at least 1000");
  Oscillation out;
  out.prob_at_zero = unique_geodesic_prob(d, 0.0, m_trunc);
  for (std::uint32_t i = 0; i < resolution; ++i) {
    const double gamma = static_cast<double>(i) / resolution;
    const double dev = std::abs(unique_geodesic_prob(d, gamma, m_trunc) - out.prob_at_zero);
    if (dev > out.max_abs_deviation) {
      out.max_abs_deviation = dev;
      out.argmax_gamma = gamma;
    }
  }
  return out;
}

double distance_pmf(const TheoryParams& params, std::int64_t i0, std::int64_t t) {
  params.validate();
  if (t < 1) throw Error(ErrorCode::kInvalidArguments, "t must be at least 1");
  const std::int64_t i = (t + 1) / 2;  // join step
  const std::int64_t k = i - i0;
  if (k < params.k_min || k > params.k_max) return 0.0;
  const auto [odd, even] = join_split(params.d, params.gamma, k);
  return t % 2 == 1 ? odd : even;
}

double distance_pmf(std::uint64_t n, std::uint32_t d, std::int64_t t) {
  const HalfRadius h = half_radius_and_gamma(n, d);
  TheoryParams params;
  params.d = d;
  params.gamma = h.gamma;
  return distance_pmf(params, h.i0, t);
}

}  // namespace geolab::theory
