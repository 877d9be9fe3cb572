#pragma once

#include <functional>

namespace lcn {

// Gamma function for x > 0, Lanczos rational approximation (g = 6.02468...,
// 13 terms). Relative error is a few 1e-15 over the ranges used here.
double gamma_fn(double x);

// log Gamma(x) for x > 0.
double log_gamma(double x);

// Digamma for x > 0 (recurrence into the asymptotic regime).
double digamma(double x);

// Moment-order constants:
//   c_alpha = (2/alpha) Gamma(1/alpha) (alpha e)^{1/alpha}
//   d_alpha = Gamma(alpha+1)^{1/alpha}
// Defined for alpha > 0; the inequality checkers flag alpha < 1 separately
// instead of rejecting it here.
double c_alpha(double alpha);
double d_alpha(double alpha);

// Dimension constants:
//   c_n = (2 pi e)^{n/2}            for n >= 1
//   d_n = (n^2 e^2 / (2 sqrt(2) (n+2)))^{n/2}   for n >= 2
double c_n(int n);
double d_n(int n);

struct BetaObjectiveMin {
    double beta_star;  // 1/alpha
    double value;      // exp(beta_star) * beta_star^{-1/alpha}
};

// Minimum of beta -> exp(beta) * beta^{-1/alpha} over beta > 0, in closed
// form. The minimizer below reproduces it numerically.
BetaObjectiveMin beta_objective_min(double alpha);

// Golden-section minimum of a unimodal function on [lo, hi].
double golden_section_minimize(const std::function<double(double)>& fn,
                               double lo, double hi, double x_tol);

// Inverse standard normal CDF on (0, 1). Rational initial guess refined with
// one Halley step against erfc; accurate to ~1e-15 away from the extreme tails.
double normal_quantile(double u);

// Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0
// (series for x < a+1, continued fraction otherwise).
double regularized_gamma_p(double a, double x);

// Inverse of P(a, .) on (0, 1): smallest x with P(a, x) = u.
double inverse_regularized_gamma_p(double a, double u);

}  // namespace lcn
