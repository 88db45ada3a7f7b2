#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace sgt {

using cplx = std::complex<double>;

// Neumaier compensated accumulator. Summation order is part of every public
// contract here, so all reductions feed terms in a fixed order.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Deterministic chunked map-reduce: terms are evaluated in [0,n) and summed
// chunk by chunk in index order. Worker count only affects scheduling, never
// the result; chunk geometry is fixed by n alone.
double deterministic_sum(std::size_t n, const std::function<double(std::size_t)>& term,
                         unsigned workers = 1);

// Three-point polynomial extrapolation to h = 0 from samples at geometric
// offsets h0 > h1 > h2. Returns the quadratic extrapolant together with the
// defect against the linear extrapolant through (h1, h2), which serves as the
// reported extrapolation error.
struct Extrapolation {
  double value = 0.0;
  double error_estimate = 0.0;
};
Extrapolation richardson3(const double h[3], const double g[3]);

// In-place DFT, f_k = (1/N) sum_j f(x_j) e^{-ik x_j}; mixed radix 2/3 with a
// naive fallback, enough for the 3*2^L grids used throughout.
std::vector<cplx> dft_forward(const std::vector<cplx>& samples);

// Double-exponential (tanh-sinh) quadrature on (a,b); handles integrable
// endpoint singularities. Returns value and a level-doubling error estimate.
struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
};
QuadResult tanh_sinh(const std::function<double(double)>& f, double a, double b,
                     int levels = 9);

}  // namespace sgt
