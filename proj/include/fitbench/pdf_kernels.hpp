#pragma once

// Concrete PDF behaviors: Gaussian, Exponential, Poisson, Polynomial and
// coefficient-weighted sum. Each comes as
//   * a scalar evaluation, normalized over a finite observable range,
//   * an analytic normalization integral, and
//   * a batch kernel computing the density for a whole column of events in
//     one call.
//
// The per-element arithmetic is shared between the scalar and the batch
// path (see *_elem below), so with reference math the two routes produce
// bitwise-identical values. Batch inner loops are free of data-dependent
// branches and cross-element dependencies.
//
// All functions here are pure; concurrent calls on disjoint output views
// are safe.

#include <cmath>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "fitbench/errors.hpp"
#include "fitbench/fast_math.hpp"

namespace fitbench::pdfs {

// Finite normalization domain.
struct ObservableRange {
  double lo = 0.0;
  double hi = 1.0;

  ObservableRange() = default;
  ObservableRange(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
      raise(ErrorCode::InvalidRange, "observable range must be finite with lo < hi");
  }

  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
};

// Error function via the classic rational Chebyshev approximation
// (three-region Cody scheme). Relative error is a few ulp, far inside the
// documented 1e-12 bound.
double erf_approx(double x);
double erfc_approx(double x);

// --- normalization integrals (analytic) ---

double gaussian_norm(double mean, double sigma, ObservableRange range);
double exponential_norm(double rate, ObservableRange range);
// Polynomial density basis: u(t) = 1 + sum_j c_j * t^j with t = x - mid.
// Odd powers integrate to zero over the symmetric range.
double polynomial_norm(std::span<const double> coeffs, ObservableRange range);

// --- shared per-element forms ---

template <class Math>
inline double gaussian_elem(double x, double mean, double sigma, double norm) {
  const double z = (x - mean) / sigma;
  return Math::exp(-0.5 * z * z) / norm;
}

template <class Math>
inline double exponential_elem(double x, double rate, double norm) {
  return Math::exp(-rate * x) / norm;
}

inline double polynomial_raw(double t, std::span<const double> coeffs) {
  double acc = 0.0;
  for (std::size_t j = coeffs.size(); j-- > 0;) acc = acc * t + coeffs[j];
  return 1.0 + acc * t;
}

template <class Math>
inline double poisson_elem(double k, double lambda) {
  // lambda == 0 handled by the callers (constant across a batch column)
  return Math::exp(k * Math::log(lambda) - lambda - std::lgamma(k + 1.0));
}

// --- scalar operations ---

// exp(-(x-mean)^2 / (2 sigma^2)) / Z with Z the analytic integral over the
// range, via the error function.
double eval_gaussian(double x, double mean, double sigma, ObservableRange range);

// exp(-rate*x) / Z. rate == 0 is the uniform limit 1/(hi-lo), handled
// analytically; small |rate| is stable through expm1.
double eval_exponential(double x, double rate, ObservableRange range);

// e^-lambda lambda^k / k!, computed in log space. Poisson(0, 0) = 1.
double eval_poisson(std::int64_t k, double lambda);

// (1 + sum_j c_j (x-mid)^j) / Z. A negative density raises NegativeDensity
// instead of being clamped.
double eval_polynomial(double x, std::span<const double> coeffs, ObservableRange range);

// sum_i c_i d_i with the implicit last coefficient 1 - sum c_i. Densities
// must already be normalized over a common range.
double eval_sum_pdf(std::span<const double> densities, std::span<const double> coefficients);

// --- batch evaluation ---

// Input layout descriptor for one PDF node. All inputs arrive as contiguous
// per-event columns of identical length (parameter-only inputs are
// broadcast columns filled by the evaluation engine).
struct GaussianSpec {};                     // inputs: x, mean, sigma, norm
struct ExponentialSpec {};                  // inputs: x, rate, norm
struct PoissonSpec {};                      // inputs: k, lambda
struct PolynomialSpec { std::size_t n_coeffs = 0; double mid = 0.0; };  // x, c..., norm
struct SumPdfSpec { std::size_t n_components = 0; };  // d..., c... (n-1 coefficients)

using PdfSpec = std::variant<GaussianSpec, ExponentialSpec, PoissonSpec, PolynomialSpec,
                             SumPdfSpec>;

// out[i] = scalar evaluation at event i. All views must have length
// out.size(); out must not alias any input. threads > 1 runs the
// OpenMP-parallel kernel variant, which produces bitwise-identical output.
void eval_batch(const PdfSpec& spec, std::span<const std::span<const double>> inputs,
                std::span<double> out, MathProfile profile = MathProfile::Reference,
                int threads = 1);

}  // namespace fitbench::pdfs
