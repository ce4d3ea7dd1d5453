#include "fitbench/pdf_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fitbench/batch_kernels.hpp"

namespace fitbench::pdfs {

namespace {

constexpr double kSqrtPiOver2 = 1.2533141373155002512078826424055226265;
constexpr double kInvSqrtPi = 5.6418958354775628694807945156077258584e-1;

// Rational approximation of erf on |x| <= 0.46875.
double erf_small(double x) {
  constexpr double a[5] = {3.16112374387056560e0, 1.13864154151050156e2, 3.77485237685302021e2,
                           3.20937758913846947e3, 1.85777706184603153e-1};
  constexpr double b[4] = {2.36012909523441209e1, 2.44024637934444173e2, 1.28261652607737228e3,
                           2.84423683343917062e3};
  const double z = x * x;
  double num = a[4] * z;
  double den = z;
  for (int i = 0; i < 3; ++i) {
    num = (num + a[i]) * z;
    den = (den + b[i]) * z;
  }
  return x * (num + a[3]) / (den + b[3]);
}

// exp(-y*y) with the argument split so the large cancellation in y*y does
// not spoil the tail.
double exp_neg_y_squared(double y) {
  const double ysq = std::trunc(y * 16.0) / 16.0;
  const double del = (y - ysq) * (y + ysq);
  return std::exp(-ysq * ysq) * std::exp(-del);
}

// erfc on 0.46875 < y <= 4.
double erfc_mid(double y) {
  constexpr double c[9] = {5.64188496988670089e-1, 8.88314979438837594e0, 6.61191906371416295e1,
                           2.98635138197400131e2, 8.81952221241769090e2, 1.71204761263407058e3,
                           2.05107837782607147e3, 1.23033935479799725e3, 2.15311535474403846e-8};
  constexpr double d[8] = {1.57449261107098347e1, 1.17693950891312499e2, 5.37181101862009858e2,
                           1.62138957456669019e3, 3.29079923573345963e3, 4.36261909014324716e3,
                           3.43936767414372164e3, 1.23033935480374942e3};
  double num = c[8] * y;
  double den = y;
  for (int i = 0; i < 7; ++i) {
    num = (num + c[i]) * y;
    den = (den + d[i]) * y;
  }
  return exp_neg_y_squared(y) * (num + c[7]) / (den + d[7]);
}

// erfc on y > 4 (asymptotic form).
double erfc_large(double y) {
  constexpr double p[6] = {3.05326634961232344e-1, 3.60344899949804439e-1, 1.25781726111229246e-1,
                           1.60837851487422766e-2, 6.58749161529837803e-4, 1.63153871373020978e-2};
  constexpr double q[5] = {2.56852019228982242e0, 1.87295284992346047e0, 5.27905102951428412e-1,
                           6.05183413124413191e-2, 2.33520497626869185e-3};
  const double z = 1.0 / (y * y);
  double num = p[5] * z;
  double den = z;
  for (int i = 0; i < 4; ++i) {
    num = (num + p[i]) * z;
    den = (den + q[i]) * z;
  }
  double r = z * (num + p[4]) / (den + q[4]);
  r = (kInvSqrtPi - r) / y;
  return exp_neg_y_squared(y) * r;
}

double erfc_positive(double y) {
  if (y <= 0.46875) return 1.0 - erf_small(y);
  if (y <= 4.0) return erfc_mid(y);
  if (y >= 26.6) return 0.0;  // underflows past here
  return erfc_large(y);
}

}  // namespace

double erf_approx(double x) {
  const double y = std::fabs(x);
  if (y <= 0.46875) return erf_small(x);
  const double r = 1.0 - erfc_positive(y);
  return x < 0.0 ? -r : r;
}

double erfc_approx(double x) {
  if (x >= 0.0) return erfc_positive(x);
  return 2.0 - erfc_positive(-x);
}

double gaussian_norm(double mean, double sigma, ObservableRange range) {
  if (!(sigma > 0.0))
    raise(ErrorCode::NonPositiveSigma, "sigma = " + std::to_string(sigma));
  const double inv = 1.0 / (sigma * 1.4142135623730950488016887242097);
  const double za = (range.lo - mean) * inv;
  const double zb = (range.hi - mean) * inv;
  // difference of erfc on the same side avoids cancellation in the tails
  double diff;
  if (za >= 0.0)
    diff = erfc_approx(za) - erfc_approx(zb);
  else if (zb <= 0.0)
    diff = erfc_approx(-zb) - erfc_approx(-za);
  else
    diff = erf_approx(zb) - erf_approx(za);
  return sigma * kSqrtPiOver2 * diff;
}

double exponential_norm(double rate, ObservableRange range) {
  if (rate == 0.0) return range.width();
  // Z = (e^{-rate*lo} - e^{-rate*hi}) / rate, stable for small |rate|
  return -std::exp(-rate * range.lo) * std::expm1(-rate * range.width()) / rate;
}

double polynomial_norm(std::span<const double> coeffs, ObservableRange range) {
  const double h = 0.5 * range.width();
  double z = range.width();
  double hpow = h;  // h^(j+1) below
  for (std::size_t j = 1; j <= coeffs.size(); ++j) {
    hpow *= h;
    if (j % 2 == 0) z += 2.0 * coeffs[j - 1] * hpow / static_cast<double>(j + 1);
    // odd powers of t integrate to zero over [-h, h]
  }
  if (!(z > 0.0))
    raise(ErrorCode::NegativeDensity, "polynomial normalization integral is not positive");
  return z;
}

double eval_gaussian(double x, double mean, double sigma, ObservableRange range) {
  const double norm = gaussian_norm(mean, sigma, range);
  return gaussian_elem<RefMath>(x, mean, sigma, norm);
}

double eval_exponential(double x, double rate, ObservableRange range) {
  const double norm = exponential_norm(rate, range);
  return exponential_elem<RefMath>(x, rate, norm);
}

double eval_poisson(std::int64_t k, double lambda) {
  if (k < 0) raise(ErrorCode::NegativeK, "k = " + std::to_string(k));
  if (lambda < 0.0) raise(ErrorCode::NegativeLambda, "lambda = " + std::to_string(lambda));
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  return poisson_elem<RefMath>(static_cast<double>(k), lambda);
}

double eval_polynomial(double x, std::span<const double> coeffs, ObservableRange range) {
  const double norm = polynomial_norm(coeffs, range);
  const double u = polynomial_raw(x - range.mid(), coeffs);
  if (u < 0.0)
    raise(ErrorCode::NegativeDensity,
          "polynomial density negative at x = " + std::to_string(x));
  return u / norm;
}

double eval_sum_pdf(std::span<const double> densities, std::span<const double> coefficients) {
  if (densities.empty()) raise(ErrorCode::LengthMismatch, "sum of zero components");
  if (coefficients.size() + 1 != densities.size())
    raise(ErrorCode::LengthMismatch, "need n-1 coefficients for n components");
  double acc = 0.0;
  double csum = 0.0;
  for (std::size_t j = 0; j < coefficients.size(); ++j) {
    const double c = coefficients[j];
    if (c < 0.0)
      raise(ErrorCode::CoefficientOutOfRange, "coefficient " + std::to_string(j) + " negative");
    acc += c * densities[j];
    csum += c;
  }
  const double last = 1.0 - csum;
  if (last < 0.0)
    raise(ErrorCode::CoefficientOutOfRange,
          "implicit last coefficient " + std::to_string(last) + " negative");
  return acc + last * densities.back();
}

namespace {

using kernels::Column;

void check_lengths(std::span<const std::span<const double>> inputs, std::span<double> out,
                   std::size_t expected_inputs, const char* what) {
  if (inputs.size() != expected_inputs)
    raise(ErrorCode::LengthMismatch, std::string(what) + ": expected " +
                                         std::to_string(expected_inputs) + " inputs, got " +
                                         std::to_string(inputs.size()));
  for (const auto& in : inputs)
    if (in.size() != out.size())
      raise(ErrorCode::LengthMismatch, std::string(what) + ": input view length " +
                                           std::to_string(in.size()) + " != output length " +
                                           std::to_string(out.size()));
}

struct BatchDispatch {
  std::span<const std::span<const double>> inputs;
  std::span<double> out;
  MathProfile profile;
  bool parallel;

  template <class Fn>
  void with_math(Fn fn) const {
    if (profile == MathProfile::Fast)
      fn(FastMathProfile{});
    else
      fn(RefMath{});
  }

  void operator()(const GaussianSpec&) const {
    check_lengths(inputs, out, 4, "gaussian batch");
    with_math([&](auto math) {
      using Math = decltype(math);
      if (parallel)
        kernels::par::gaussian_batch<Math>(inputs[0], inputs[1], inputs[2], inputs[3], out);
      else
        kernels::serial::gaussian_batch<Math>(inputs[0], inputs[1], inputs[2], inputs[3], out);
    });
  }

  void operator()(const ExponentialSpec&) const {
    check_lengths(inputs, out, 3, "exponential batch");
    with_math([&](auto math) {
      using Math = decltype(math);
      if (parallel)
        kernels::par::exponential_batch<Math>(inputs[0], inputs[1], inputs[2], out);
      else
        kernels::serial::exponential_batch<Math>(inputs[0], inputs[1], inputs[2], out);
    });
  }

  void operator()(const PoissonSpec&) const {
    check_lengths(inputs, out, 2, "poisson batch");
    with_math([&](auto math) {
      using Math = decltype(math);
      if (parallel)
        kernels::par::poisson_batch<Math>(inputs[0], inputs[1], out);
      else
        kernels::serial::poisson_batch<Math>(inputs[0], inputs[1], out);
    });
  }

  void operator()(const PolynomialSpec& spec) const {
    check_lengths(inputs, out, spec.n_coeffs + 2, "polynomial batch");
    const std::span<const Column> coeffs = inputs.subspan(1, spec.n_coeffs);
    const Column norm = inputs[spec.n_coeffs + 1];
    const double min_raw =
        parallel ? kernels::par::polynomial_batch(inputs[0], coeffs, norm, spec.mid, out)
                 : kernels::serial::polynomial_batch(inputs[0], coeffs, norm, spec.mid, out);
    if (min_raw < 0.0)
      raise(ErrorCode::NegativeDensity, "polynomial density negative within batch");
  }

  void operator()(const SumPdfSpec& spec) const {
    if (spec.n_components == 0) raise(ErrorCode::LengthMismatch, "sum of zero components");
    check_lengths(inputs, out, 2 * spec.n_components - 1, "sum batch");
    const std::span<const Column> densities = inputs.subspan(0, spec.n_components);
    const std::span<const Column> coeffs =
        inputs.subspan(spec.n_components, spec.n_components - 1);
    const double min_coeff = parallel ? kernels::par::sum_pdf_batch(densities, coeffs, out)
                                      : kernels::serial::sum_pdf_batch(densities, coeffs, out);
    if (min_coeff < 0.0)
      raise(ErrorCode::CoefficientOutOfRange, "sum coefficient outside [0, 1] within batch");
  }
};

}  // namespace

void eval_batch(const PdfSpec& spec, std::span<const std::span<const double>> inputs,
                std::span<double> out, MathProfile profile, int threads) {
  if (out.empty()) {
    // still validate the contract on the empty view
    for (const auto& in : inputs)
      if (!in.empty()) raise(ErrorCode::LengthMismatch, "empty output with non-empty input");
    return;
  }
  std::visit(BatchDispatch{inputs, out, profile, threads > 1}, spec);
}

}  // namespace fitbench::pdfs
