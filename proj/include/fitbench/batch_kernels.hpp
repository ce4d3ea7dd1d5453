#pragma once

// Batch kernel drivers. Every kernel exists twice:
//   kernels::serial — plain loop, the reference implementation
//   kernels::par    — OpenMP-parallel over events
// Elements are computed independently, so the two variants produce bitwise
// identical output; tests assert this and tools/kernel_bench compares their
// throughput.

#include <cmath>
#include <cstdint>
#include <span>

#include "fitbench/pdf_kernels.hpp"

namespace fitbench::kernels {

using Column = std::span<const double>;

namespace serial {

template <class Math>
inline void gaussian_batch(Column x, Column mean, Column sigma, Column norm,
                           std::span<double> out) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i)
    out[i] = pdfs::gaussian_elem<Math>(x[i], mean[i], sigma[i], norm[i]);
}

template <class Math>
inline void exponential_batch(Column x, Column rate, Column norm, std::span<double> out) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i)
    out[i] = pdfs::exponential_elem<Math>(x[i], rate[i], norm[i]);
}

template <class Math>
inline void poisson_batch(Column k, Column lambda, std::span<double> out) {
  const std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double l = lambda[i];
    out[i] = l == 0.0 ? (k[i] == 0.0 ? 1.0 : 0.0) : pdfs::poisson_elem<Math>(k[i], l);
  }
}

// Returns the minimum unnormalized value seen, for the negativity check.
inline double polynomial_batch(Column x, std::span<const Column> coeffs, Column norm, double mid,
                               std::span<double> out) {
  const std::size_t n = out.size();
  const std::size_t m = coeffs.size();
  double min_raw = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = x[i] - mid;
    double acc = 0.0;
    for (std::size_t j = m; j-- > 0;) acc = acc * t + coeffs[j][i];
    const double u = 1.0 + acc * t;
    min_raw = std::fmin(min_raw, u);
    out[i] = u / norm[i];
  }
  return min_raw;
}

// Returns the minimum of all coefficients and the implicit last one.
inline double sum_pdf_batch(std::span<const Column> densities, std::span<const Column> coeffs,
                            std::span<double> out) {
  const std::size_t n = out.size();
  const std::size_t m = densities.size();
  double min_coeff = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    double csum = 0.0;
    for (std::size_t j = 0; j + 1 < m; ++j) {
      const double c = coeffs[j][i];
      acc += c * densities[j][i];
      csum += c;
      min_coeff = std::fmin(min_coeff, c);
    }
    const double last = 1.0 - csum;
    min_coeff = std::fmin(min_coeff, last);
    out[i] = acc + last * densities[m - 1][i];
  }
  return min_coeff;
}

}  // namespace serial

namespace par {

template <class Math>
inline void gaussian_batch(Column x, Column mean, Column sigma, Column norm,
                           std::span<double> out) {
  const std::int64_t n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    out[i] = pdfs::gaussian_elem<Math>(x[i], mean[i], sigma[i], norm[i]);
}

template <class Math>
inline void exponential_batch(Column x, Column rate, Column norm, std::span<double> out) {
  const std::int64_t n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    out[i] = pdfs::exponential_elem<Math>(x[i], rate[i], norm[i]);
}

template <class Math>
inline void poisson_batch(Column k, Column lambda, std::span<double> out) {
  const std::int64_t n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const double l = lambda[i];
    out[i] = l == 0.0 ? (k[i] == 0.0 ? 1.0 : 0.0) : pdfs::poisson_elem<Math>(k[i], l);
  }
}

inline double polynomial_batch(Column x, std::span<const Column> coeffs, Column norm, double mid,
                               std::span<double> out) {
  const std::int64_t n = static_cast<std::int64_t>(out.size());
  const std::size_t m = coeffs.size();
  double min_raw = 0.0;
#pragma omp parallel for schedule(static) reduction(min : min_raw)
  for (std::int64_t i = 0; i < n; ++i) {
    const double t = x[i] - mid;
    double acc = 0.0;
    for (std::size_t j = m; j-- > 0;) acc = acc * t + coeffs[j][i];
    const double u = 1.0 + acc * t;
    min_raw = std::fmin(min_raw, u);
    out[i] = u / norm[i];
  }
  return min_raw;
}

inline double sum_pdf_batch(std::span<const Column> densities, std::span<const Column> coeffs,
                            std::span<double> out) {
  const std::int64_t n = static_cast<std::int64_t>(out.size());
  const std::size_t m = densities.size();
  double min_coeff = 1.0;
#pragma omp parallel for schedule(static) reduction(min : min_coeff)
  for (std::int64_t i = 0; i < n; ++i) {
    double acc = 0.0;
    double csum = 0.0;
    for (std::size_t j = 0; j + 1 < m; ++j) {
      const double c = coeffs[j][i];
      acc += c * densities[j][i];
      csum += c;
      min_coeff = std::fmin(min_coeff, c);
    }
    const double last = 1.0 - csum;
    min_coeff = std::fmin(min_coeff, last);
    out[i] = acc + last * densities[m - 1][i];
  }
  return min_coeff;
}

}  // namespace par
}  // namespace fitbench::kernels
