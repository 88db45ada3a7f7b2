#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "sgt/errors.hpp"
#include "sgt/types.hpp"

namespace sgt {

/// Finitely supported Fourier series on the circle, coefficients f_k for
/// |k| <= max_mode under the normalization f_k = (1/2pi) int f e^{-ikt} dt,
/// so that (f,g) = sum conj(f_k) g_k and the modes e_k are orthonormal.
class FourierFunction {
 public:
  FourierFunction() = default;
  explicit FourierFunction(int max_mode)
      : max_mode_(max_mode), coeffs_(Eigen::VectorXcd::Zero(2 * max_mode + 1)) {}

  static FourierFunction mode(int k, std::complex<double> amplitude = 1.0);
  static FourierFunction constant(std::complex<double> c);

  int max_mode() const { return max_mode_; }
  std::complex<double> coeff(int k) const {
    return (std::abs(k) <= max_mode_) ? coeffs_[k + max_mode_] : 0.0;
  }
  std::complex<double>& coeff_ref(int k) { return coeffs_[k + max_mode_]; }
  bool is_real(double tol = 1e-12) const;

 private:
  int max_mode_ = 0;
  Eigen::VectorXcd coeffs_;  // index k + max_mode_
};

/// Values at N equispaced points x_j = 2 pi j / N of [0, 2 pi).
struct SampledCircleFunction {
  Eigen::VectorXcd samples;
  int size() const { return int(samples.size()); }

  static SampledCircleFunction from_fourier(const FourierFunction& f, int n);
  static SampledCircleFunction from_real(const Eigen::VectorXd& values);
  FourierFunction to_fourier() const;
};

/// E_alpha[f] = sum_k |k|^{2 alpha} |f_k|^2.
double spectral_energy(const FourierFunction& f, double alpha);

/// Per-base-point profile of the kernel form,
///   I(x_i) = int phi_alpha(x_i - y) |f(x_i) - f(y)|^2 dy,
/// computed by the diagonal-compensated midpoint rule: the quadratic part of
/// |f(x+t)-f(x)|^2 is subtracted nodewise and reinstated through the exact
/// identity  int phi_alpha(t) 4 sin^2(t/2) dt = 4 pi^2  (all alpha in (0,1)).
Eigen::VectorXd kernel_form_profile(const SampledCircleFunction& f, double alpha,
                                    double* phi_error_budget = nullptr);

/// Clausen-kernel quadrature of the Dirichlet form,
///   E_alpha[f] = -(1/4 pi^2) int int Ci_{-2 alpha}(x-y)|f(x)-f(y)|^2 dx dy,
/// normalized so that E_alpha[e_k] = |k|^{2 alpha}. Rejects alpha = 1 (the
/// kernel vanishes there and the form degenerates to ||f'||^2).
ResidueEstimate kernel_energy(const SampledCircleFunction& f, double alpha);

/// p_alpha(f)^2 = (1/2pi) sup_x int phi_alpha(x-y)|f(x)-f(y)|^2 dy, the norm
/// of S_f and of the commutator [D_alpha, f]. Requires N >= 48.
double p_alpha(const SampledCircleFunction& f, double alpha);

/// ||S_f^* d_alpha e_k||^2 = (1/4) sum_p (|k|^{2a}+|p|^{2a}-|p-k|^{2a})^2 |f_p|^2.
double channel_norm(const FourierFunction& f, double alpha, int k);

/// The two traces of Lemma-type
///   first  = tr((dd*)^{-s/4} S_f S_f^* (dd*)^{-s/4})
///          = sum_{k != 0} |k|^{-(s+2)a} ||S_f^* d_a e_k||^2   (truncated),
///   second = tr((d*d)^{-s/4} S_f^* S_f (d*d)^{-s/4}) = 2 zeta(a s) E_a[f],
/// with first <= second. Requires s * alpha > 1.
struct CircleTrace {
  double first = 0.0;
  double second = 0.0;
  double first_tail_bound = 0.0;
};
CircleTrace circle_energy_trace(const FourierFunction& f, double alpha, double s,
                                int max_mode = 10000);

/// Nonzero Dirac eigenvalues 2^{beta n} 2 pi k^alpha, k = 1..K, each with
/// multiplicity 4 (flattened).
std::vector<double> dirac_spectrum_circle(double alpha, double beta, int word_length,
                                          int k_max);

}  // namespace sgt
