#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "gpbo/rng.hpp"

namespace gpbo {

inline constexpr double kLog2Pi = 1.8378770664093454836;
inline constexpr double kSqrt2 = std::numbers::sqrt2;
inline constexpr double kInvSqrt2Pi = 0.3989422804014326779;

inline double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

/// log Phi(z), stable into the deep lower tail. For z < -8 the direct CDF
/// loses precision or underflows; use the standard asymptotic expansion
/// Phi(z) ~ phi(z)/|z| * (1 - 1/z^2 + 3/z^4 - 15/z^6).
inline double log_normal_cdf(double z) {
  if (z > -8.0) return std::log(normal_cdf(z));
  const double z2 = z * z;
  const double series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
  return -0.5 * z2 - 0.5 * kLog2Pi - std::log(-z) + std::log(series);
}

/// phi(z)/Phi(z) without underflow in the lower tail.
inline double normal_pdf_over_cdf(double z) {
  if (z > -8.0) return normal_pdf(z) / normal_cdf(z);
  const double log_ratio = std::log(kInvSqrt2Pi) - 0.5 * z * z - log_normal_cdf(z);
  return std::exp(log_ratio);
}

namespace detail {
inline int nth_prime(int i) {
  static constexpr int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                   31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  return primes[i % 20];
}
}  // namespace detail

/// n points of a digit-scrambled Halton sequence in [0,1)^d. Dimension j uses
/// the j-th prime base with a seeded random digit permutation that keeps 0
/// fixed, so the infinite trailing-zero tail contributes nothing. Indices
/// start at 1 to skip the all-zero corner.
inline Eigen::MatrixXd scrambled_halton(int n, int d, Rng& rng) {
  Eigen::MatrixXd pts(n, d);
  for (int j = 0; j < d; ++j) {
    const int base = detail::nth_prime(j);
    // permutation of {0,...,base-1} with perm[0] == 0
    std::vector<int> perm(static_cast<std::size_t>(base));
    auto shuffled = rng.permutation(static_cast<std::size_t>(base - 1));
    perm[0] = 0;
    for (int k = 1; k < base; ++k) perm[static_cast<std::size_t>(k)] = static_cast<int>(shuffled[static_cast<std::size_t>(k - 1)]) + 1;
    for (int i = 0; i < n; ++i) {
      long long m = i + 1;
      double inv_base = 1.0 / base;
      double value = 0.0;
      double factor = inv_base;
      while (m > 0) {
        value += perm[static_cast<std::size_t>(m % base)] * factor;
        m /= base;
        factor *= inv_base;
      }
      pts(i, j) = value;
    }
  }
  return pts;
}

}  // namespace gpbo
