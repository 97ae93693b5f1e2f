#pragma once

namespace shapestat {

// Standard normal density.
double norm_pdf(double x);

// Standard normal distribution function, |error| < 1e-15.
double norm_cdf(double x);

// Standard normal quantile function on (0,1). Rational approximation
// (Wichura's AS 241 PPND16) polished with one Halley step, |error| < 1e-14.
double norm_quantile(double u);

// log(1 - Phi(z)), stable in the far right tail.
double norm_logsf(double z);

}  // namespace shapestat
