#pragma once

#include <complex>

#include "sgt/errors.hpp"

namespace sgt {

/// A value together with a bound on its absolute error. Bounds compose
/// additively through the quadratures downstream, so every evaluator here
/// reports the remainder of whatever truncation it performed.
struct EvalResult {
  double value = 0.0;
  double abs_error_bound = 0.0;
};

/// Gamma function via a Lanczos rational approximation (reflection for
/// x < 0.5). Relative accuracy ~1e-13 on [0.5, 10]. Throws PoleError at
/// nonpositive integers.
EvalResult gamma_fn(double x);

/// Riemann zeta, s != 1. Re s > 0 uses the Borwein eta-series; negative s
/// goes through the functional equation
///   zeta(s) = 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s),
/// with the trivial zeros at negative even integers returned exactly.
EvalResult riemann_zeta(double s);

/// Complex zeta for Re s > 0 (eta series); needed for the zeta function of
/// the triple along vertical lines of the dimensional spectrum.
std::complex<double> riemann_zeta(std::complex<double> s);

/// Clausen cosine function Ci_s(theta) = Re Li_s(e^{i theta}) for negative
/// noninteger order s in (-3, 0) and theta in (-pi, pi] \ {0}, evaluated via
///   Li_s(e^{i t}) = Gamma(1-s)(-it)^{s-1} + sum_n zeta(s-n)(it)^n / n!,
/// which for the real part collapses to
///   Ci_s(t) = Gamma(1-s) sin(pi s/2)|t|^{s-1}
///           + sum_m (-1)^m zeta(s-2m) t^{2m}/(2m)!.
/// Order -2 returns exactly 0. Even in theta by construction.
EvalResult clausen_cos(double order, double theta);

/// phi_alpha(t) = -2 pi Ci_{-2 alpha}(t); the (positive) kernel of the
/// fractional Dirichlet form on the circle. alpha in (0,1), t != 0.
EvalResult phi_alpha(double alpha, double t);

/// Leading small-angle constant of the kernel:
///   |t|^{1+2a} * (-Ci_{-2a}(t)) -> Gamma(1+2a) sin(pi a)  as t -> 0.
double clausen_limit_constant(double alpha);

}  // namespace sgt
