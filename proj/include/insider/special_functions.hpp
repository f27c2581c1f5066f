#pragma once

namespace insider {

/// Error function. Odd by construction; erf(+-inf) = +-1; NaN throws
/// Error{NotFinite}.
double erf(double x);

/// Complementary error function, same NaN policy as erf.
double erfc(double x);

/// Standard normal CDF, Phi(x) = (1 + erf(x / sqrt 2)) / 2, evaluated through
/// erfc so that both tails keep full relative precision.
double normal_cdf(double x);

/// Standard normal density.
double normal_pdf(double x) noexcept;

/// Quantile of the standard normal distribution. Throws Error{OutOfDomain}
/// unless 0 < u < 1.
double inverse_normal_cdf(double u);

}  // namespace insider
