#pragma once

#include <cstdint>
#include <vector>

namespace geolab::theory {

/// Degree, join-time phase and series truncations for every limiting law.
/// gamma is the fractional part of (1/2) log_{d-1} n.
struct TheoryParams {
  std::uint32_t d = 3;
  double gamma = 0.0;
  std::int32_t k_min = -60;
  std::int32_t k_max = 60;
  std::uint32_t l_max = 300;
  std::uint32_t m_max = 50;

  /// Throws kInvalidArguments when an invariant is violated.
  void validate() const;
};

struct JoinMeans {
  double mu = 0.0;  // mean number of odd-length joins
  double nu = 0.0;  // mean number of even-length joins, (d-1) * mu
};

struct HalfRadius {
  std::int64_t i0 = 0;
  double gamma = 0.0;
};

struct Oscillation {
  double prob_at_zero = 0.0;
  double max_abs_deviation = 0.0;
  double argmax_gamma = 0.0;
};

inline constexpr std::uint32_t kDefaultGammaGrid = 10'000;

/// Vertex count 1 + d((d-1)^i - 1)/(d-2) of the depth-i balanced d-regular tree.
/// Throws kCountOverflow past 2^64 - 1.
std::uint64_t balanced_tree_size(std::uint32_t d, std::uint32_t i);

/// i0 = floor((1/2) log_{d-1} n) and its fractional remainder, exact when n is
/// an even power of d-1.
HalfRadius half_radius_and_gamma(std::uint64_t n, std::uint32_t d);

/// Limiting probability that the radius-(i0+k) balls around two random vertices
/// are disjoint.
double p_separate(std::uint32_t d, double gamma, std::int64_t k);

JoinMeans join_means(std::uint32_t d, double gamma, std::int64_t k);

/// The k-th summand of geodesic_count_pmf: join at step i0 + k with l geodesics.
double geodesic_count_term(std::uint32_t d, double gamma, std::int64_t k, std::uint32_t l);

/// Limiting probability of exactly l geodesics, summing k over [k_min, k_max].
/// Terms are evaluated in log space; exponents below -700 count as zero.
double geodesic_count_pmf(const TheoryParams& params, std::uint32_t l);

/// Whole pmf for l = 1..l_max (index 0 unused, holds 0).
std::vector<double> geodesic_count_pmf_table(const TheoryParams& params);

/// S_c(x) = sum_m c^(m+x) exp(-c^(m+x)), truncated to |m| <= m_trunc after
/// reducing x mod 1. Terms decay doubly exponentially for m > 0 and
/// geometrically (ratio 1/c) for m < 0.
double periodic_sum(double c, double x, std::uint32_t m_trunc = 50);

/// Unique-geodesic probability written as two shifted periodic sums with
/// c = (d-1)^2.
double unique_geodesic_prob(std::uint32_t d, double gamma, std::uint32_t m_trunc = 50);

/// |Gamma(1 + 2 pi i m / log c)|, the size of the m-th Fourier coefficient of
/// S_c (before the 1/log c prefactor).
double fourier_term_magnitude(double c, std::int64_t m);

/// Triangle-inequality envelope 2 (d-2)/(d-1) sum_{m>=1} 2 |Gamma(..)| bounding
/// the oscillation of unique_geodesic_prob.
double oscillation_envelope(std::uint32_t d, std::uint32_t m_trunc = 50);

/// Value at gamma = 0 and the largest |P(gamma) - P(0)| over a uniform grid of
/// `resolution` points in [0, 1).
Oscillation oscillation(std::uint32_t d, std::uint32_t resolution = kDefaultGammaGrid,
                        std::uint32_t m_trunc = 50);

/// Limiting probability that the distance equals t when the join happens at
/// step i0 + k with k in [k_min, k_max]: odd t = 2(i0+k)-1 and even t = 2(i0+k).
double distance_pmf(const TheoryParams& params, std::int64_t i0, std::int64_t t);
/// Same, with (i0, gamma) derived from n.
double distance_pmf(std::uint64_t n, std::uint32_t d, std::int64_t t);

}  // namespace geolab::theory
