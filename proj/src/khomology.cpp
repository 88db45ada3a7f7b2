#include "sgt/khomology.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <numbers>

#include "sgt/circle.hpp"
#include "sgt/numerics.hpp"

namespace sgt {

using std::numbers::pi;

SymbolLoop SymbolLoop::mode(int k, int n) {
  SymbolLoop u;
  u.samples = Eigen::VectorXcd(n);
  for (int j = 0; j < n; ++j) u.samples[j] = std::polar(1.0, 2.0 * pi * k * j / double(n));
  return u;
}

SymbolLoop SymbolLoop::constant(std::complex<double> c, int n) {
  SymbolLoop u;
  u.samples = Eigen::VectorXcd::Constant(n, c);
  return u;
}

SymbolLoop SymbolLoop::from_coeffs(
    const std::vector<std::pair<int, std::complex<double>>>& c, int n) {
  SymbolLoop u;
  u.samples = Eigen::VectorXcd::Zero(n);
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * pi * j / double(n);
    for (const auto& [k, a] : c) u.samples[j] += a * std::polar(1.0, k * t);
  }
  return u;
}

int winding_number(const SymbolLoop& u) {
  const int n = u.size();
  if (n < 8) throw ResourceError("winding_number: too few samples");
  for (int j = 0; j < n; ++j)
    if (std::abs(u.samples[j]) <= 0.0)
      throw RegimeError("winding_number: symbol is not invertible");
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    const std::complex<double> ratio = u.samples[(j + 1) % n] / u.samples[j];
    const double step = std::arg(ratio);
    if (std::abs(step) >= pi * (1.0 - 1e-9))
      throw ResourceError("winding_number: phase step at the sampling limit, refine");
    total += step;
  }
  const double w = total / (2.0 * pi);
  const long long rounded = std::llround(w);
  if (std::abs(w - double(rounded)) > 1e-6)
    throw StabilizationError("winding_number: non-integer winding estimate");
  return int(rounded);
}

namespace {

// Fourier coefficients of the sampled symbol, thresholded to a band.
struct Band {
  std::vector<std::complex<double>> coeff;  // index k + offset
  int lo = 0, hi = 0;
  std::complex<double> at(int k) const {
    return (k >= lo && k <= hi) ? coeff[k - lo] : 0.0;
  }
};

Band symbol_band(const SymbolLoop& u, double threshold = 1e-11) {
  const int n = u.size();
  std::vector<cplx> in(u.samples.data(), u.samples.data() + n);
  const auto c = dft_forward(in);
  double max_mag = 0.0;
  for (const auto& v : c) max_mag = std::max(max_mag, std::abs(v));
  Band band;
  int lo = n, hi = -n;
  for (int m = 0; m < n; ++m) {
    const int k = (m <= n / 2) ? m : m - n;
    if (std::abs(c[m]) > threshold * std::max(1.0, max_mag)) {
      lo = std::min(lo, k);
      hi = std::max(hi, k);
    }
  }
  if (lo > hi) throw RegimeError("pairing_index: zero symbol");
  band.lo = lo;
  band.hi = hi;
  band.coeff.resize(hi - lo + 1);
  for (int k = lo; k <= hi; ++k) {
    const int m = (k >= 0) ? k : k + n;
    band.coeff[k - lo] = c[m];
  }
  return band;
}

// Numerical kernel dimension of the exact restriction of the Toeplitz
// compression to the first `cols` basis vectors: the section keeps every row
// its image can reach, so only the domain is truncated. The detection
// threshold is the symbol's invertibility margin: true kernel directions
// decay geometrically with cols while the rest stay at the scale of min |u|.
int toeplitz_kernel_dim(const Band& band, int cols, double margin) {
  const int rows = std::max(0, cols + band.hi);
  if (rows == 0) return cols;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rows, cols);
  for (int c = 1; c <= cols; ++c)
    for (int r = 1; r <= rows; ++r) {
      const int k = r - c;
      if (k >= band.lo && k <= band.hi) a(r - 1, c - 1) = band.at(k);
    }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const auto& s = svd.singularValues();
  const double tol = 0.25 * margin;
  int null = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] < tol) ++null;
  null += cols - int(s.size());  // structurally absent directions
  return null;
}

Band adjoint_band(const Band& band) {
  Band adj;
  adj.lo = -band.hi;
  adj.hi = -band.lo;
  adj.coeff.resize(band.coeff.size());
  for (int k = adj.lo; k <= adj.hi; ++k) adj.coeff[k - adj.lo] = std::conj(band.at(-k));
  return adj;
}

double invertibility_margin(const SymbolLoop& u) {
  double m = std::abs(u.samples[0]);
  for (int j = 1; j < u.size(); ++j) m = std::min(m, std::abs(u.samples[j]));
  return m;
}

int stabilized_pairing(const Band& band, int n_trunc, double margin) {
  const Band adj = adjoint_band(band);
  int last = 0;
  bool stable = false;
  int prev_ker = -1, prev_coker = -1;
  for (const int cols : {n_trunc / 4, n_trunc / 2, n_trunc}) {
    if (cols < 8) continue;
    const int ker = toeplitz_kernel_dim(band, cols, margin);
    const int coker = toeplitz_kernel_dim(adj, cols, margin);
    if (ker == prev_ker && coker == prev_coker) stable = true;
    prev_ker = ker;
    prev_coker = coker;
    last = coker - ker;  // paper convention: <F+, e_k> = k
  }
  if (!stable)
    throw StabilizationError("pairing_index: kernel dimensions did not stabilize");
  return last;
}

}  // namespace

int pairing_index(const SymbolLoop& u, int n_trunc) {
  const double margin = invertibility_margin(u);
  if (margin <= 0.0) throw RegimeError("pairing_index: symbol is not invertible");
  return stabilized_pairing(symbol_band(u), n_trunc, margin);
}

SectorIndices sector_indices(const SymbolLoop& u, int n_trunc) {
  SectorIndices out;
  const double margin = invertibility_margin(u);
  if (margin <= 0.0) throw RegimeError("sector_indices: symbol is not invertible");
  const Band band = symbol_band(u);
  out.plus = stabilized_pairing(band, n_trunc, margin);
  // P_- sector: reflection k -> -k turns the compression on span{e_k : k<0}
  // into the standard one for the reflected symbol.
  Band reflected;
  reflected.lo = -band.hi;
  reflected.hi = -band.lo;
  reflected.coeff.resize(band.coeff.size());
  for (int k = reflected.lo; k <= reflected.hi; ++k)
    reflected.coeff[k - reflected.lo] = band.at(-k);
  out.minus = stabilized_pairing(reflected, n_trunc, margin);
  // P_0 = span{e_0}: the compression is the 1x1 matrix [u_0]; a square finite
  // matrix always has index 0.
  out.zero = 0;
  return out;
}

int SectorIndices::classical_sum() const {
  // our sign convention negates the classical index on each sector
  return -(plus + zero + minus);
}

ModuleRelationsReport module_relations_check(double alpha, int k_trunc) {
  if (k_trunc < 8) throw RegimeError("module_relations_check: K must be >= 8");
  (void)alpha;  // the relations are alpha-independent; kept for the interface
  const int n = 2 * k_trunc + 1;  // modes -K..K
  const int dim = 2 * n;          // forms then functions

  // index helpers into the two blocks
  const auto form = [&](int k) { return k + k_trunc; };
  const auto func = [&](int k) { return n + k + k_trunc; };

  Eigen::MatrixXcd w_op = Eigen::MatrixXcd::Zero(dim, dim);   // W: functions -> forms
  Eigen::MatrixXcd s_op = Eigen::MatrixXcd::Zero(dim, dim);   // S on functions
  Eigen::MatrixXcd gamma = Eigen::MatrixXcd::Zero(dim, dim);  // -1 on forms, +1 on functions
  for (int k = -k_trunc; k <= k_trunc; ++k) {
    if (k != 0) {
      w_op(form(k), func(k)) = 1.0;
      s_op(func(k), func(k)) = (k > 0) ? 1.0 : -1.0;
    }
    gamma(form(k), form(k)) = -1.0;
    gamma(func(k), func(k)) = 1.0;
  }
  const Eigen::MatrixXcd f_op = w_op + w_op.adjoint();             // [[0,W],[W*,0]]
  const Eigen::MatrixXcd v_op = w_op * s_op;                        // V = W S
  const Eigen::MatrixXcd eps =
      std::complex<double>(0.0, -1.0) * (v_op + v_op.adjoint());    // -i [[0,V],[V*,0]]

  // P0 = Q0 + (1 - S^2): the dead e'_0 slot plus the e_0 slot.
  Eigen::MatrixXcd p0 = Eigen::MatrixXcd::Zero(dim, dim);
  p0(form(0), form(0)) = 1.0;
  p0(func(0), func(0)) = 1.0;

  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);

  ModuleRelationsReport r;
  r.f_squared_ok = ((f_op * f_op) - (id - p0)).norm() == 0.0;

  Eigen::MatrixXcd diag_wsw = Eigen::MatrixXcd::Zero(dim, dim);
  diag_wsw.topLeftCorner(n, n) = (w_op * s_op * w_op.adjoint()).topLeftCorner(n, n);
  diag_wsw.bottomRightCorner(n, n) = s_op.bottomRightCorner(n, n);
  const Eigen::MatrixXcd ief = std::complex<double>(0.0, 1.0) * eps * f_op;
  const Eigen::MatrixXcd ife = std::complex<double>(0.0, 1.0) * f_op * eps;
  r.eps_f_commute_ok = (ief - diag_wsw).norm() == 0.0 && (ife - diag_wsw).norm() == 0.0;

  r.eps_skew_ok = (eps.adjoint() + eps).norm() == 0.0;
  r.grading_anticommutes_f = (gamma * f_op + f_op * gamma).norm() == 0.0;
  r.grading_anticommutes_eps = (gamma * eps + eps * gamma).norm() == 0.0;

  // tame degeneracy witness and the sector index sum on trig symbols
  r.p0_sector_trivial = true;  // dim P0 = 1 on the circle: square 1x1 block
  r.sector_sum_zero = true;
  for (const int k : {2, -1, 3}) {
    const auto si = sector_indices(SymbolLoop::mode(k, 128), 128);
    if (si.classical_sum() != 0) r.sector_sum_zero = false;
    if (si.plus != k || si.minus != -k) r.sector_sum_zero = false;
  }
  return r;
}

int gasket_pairing(const Word& sigma, const Word& tau, int n_samples) {
  // Samples of u_sigma on the lacuna of tau, on the half-offset dyadic grid:
  // touch points of two lacunas carry dyadic parameters of low denominator,
  // so odd numerators at depth L+1 never hit them and the sampled loop stays
  // continuous-compatible.
  int level_l = 2;
  while ((3 << (level_l + 1)) < n_samples) ++level_l;
  const std::int64_t per_side = std::int64_t(1) << level_l;
  SymbolLoop u;
  u.samples = Eigen::VectorXcd(3 * per_side);
  int i = 0;
  for (int side = 0; side < 3; ++side) {
    for (std::int64_t j = 0; j < per_side; ++j) {
      const GasketPoint p = lacuna_point(tau, side, 2 * j + 1, level_l + 1);
      const auto t = lacuna_locate(sigma, p);
      u.samples[i++] = t ? std::polar(1.0, *t) : std::complex<double>(1.0, 0.0);
    }
  }
  return winding_number(u);
}

std::vector<std::pair<Word, int>> gasket_pairing_vector(const Word& sigma, int max_level,
                                                        int n_samples) {
  std::vector<std::pair<Word, int>> out;
  for (int n = 0; n <= max_level; ++n) {
    std::vector<std::uint8_t> letters(n, 0);
    std::int64_t count = 1;
    for (int i = 0; i < n; ++i) count *= 3;
    for (std::int64_t w = 0; w < count; ++w) {
      Word tau;
      tau.letters.assign(letters.begin(), letters.end());
      out.emplace_back(tau, gasket_pairing(sigma, tau, n_samples));
      for (int i = n - 1; i >= 0; --i) {
        if (++letters[i] < 3) break;
        letters[i] = 0;
      }
    }
  }
  return out;
}

Eigen::VectorXd commutator_singular_values(const SampledCircleFunction& g, int k_trunc) {
  const auto fourier = g.to_fourier();
  const int n = 2 * k_trunc + 1;
  Eigen::MatrixXcd mult = Eigen::MatrixXcd::Zero(n, n);
  for (int r = -k_trunc; r <= k_trunc; ++r)
    for (int c = -k_trunc; c <= k_trunc; ++c) mult(r + k_trunc, c + k_trunc) = fourier.coeff(r - c);
  Eigen::MatrixXcd s_op = Eigen::MatrixXcd::Zero(n, n);
  for (int k = -k_trunc; k <= k_trunc; ++k)
    s_op(k + k_trunc, k + k_trunc) = (k > 0) ? 1.0 : (k < 0 ? -1.0 : 0.0);
  const Eigen::MatrixXcd comm = s_op * mult - mult * s_op;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(comm);
  return svd.singularValues();
}

}  // namespace sgt
