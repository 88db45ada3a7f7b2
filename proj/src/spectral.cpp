#include "sgt/spectral.hpp"

#include <cmath>
#include <numbers>
#include <thread>

#include "sgt/io.hpp"
#include "sgt/numerics.hpp"
#include "sgt/special_functions.hpp"

namespace sgt {

using std::numbers::pi;

namespace {
const double kLog2 = std::log(2.0);
const double kLog3 = std::log(3.0);
}  // namespace

TripleParams::TripleParams(double a, double b) : alpha(a), beta(b) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw RegimeError("TripleParams: alpha must lie in (0,1]");
  if (!(beta > 0.0)) throw RegimeError("TripleParams: beta must be positive");
}

double TripleParams::dimension_d() const { return kLog3 / (beta * kLog2); }
double TripleParams::metric_dimension() const {
  return std::max(1.0 / alpha, dimension_d());
}
double TripleParams::energy_dimension() const {
  return 2.0 - std::log(5.0 / 3.0) / (beta * kLog2);
}
double TripleParams::alpha0() { return std::log(10.0 / 3.0) / std::log(4.0); }

bool TripleParams::volume_ok() const { return beta < alpha * kLog3 / kLog2; }
bool TripleParams::energy_ok() const {
  return 1.0 / alpha < energy_dimension() && alpha <= alpha0();
}
bool TripleParams::metric_ok() const { return beta <= 1.0; }

std::complex<double> zeta_D(std::complex<double> s, const TripleParams& params,
                            bool include_two_pi_factor) {
  const std::complex<double> denom =
      1.0 - 3.0 * std::exp(-params.beta * s * kLog2);
  if (std::abs(denom) < 1e-12) throw PoleError("zeta_D: geometric pole of the word sum");
  const std::complex<double> zs = riemann_zeta(params.alpha * s);
  std::complex<double> v = 4.0 * zs / denom;
  if (include_two_pi_factor) v *= std::exp(-s * std::log(2.0 * pi));
  return v;
}

DimensionReport dimension_report(const TripleParams& params, int k_max) {
  DimensionReport r;
  r.d = params.dimension_d();
  r.d_metric = params.metric_dimension();
  r.delta = params.energy_dimension();
  r.inv_alpha = 1.0 / params.alpha;
  r.poles.emplace_back(r.inv_alpha, 0.0);
  for (int k = -k_max; k <= k_max; ++k)
    r.poles.emplace_back(r.d, r.d * 2.0 * pi * double(k) / kLog3);
  r.volume_ok = params.volume_ok();
  r.energy_ok = params.energy_ok();
  r.metric_ok = params.metric_ok();
  return r;
}

double cell_volume(const Word& tau, const TripleParams& params) {
  if (!params.volume_ok())
    throw RegimeError("cell_volume: requires d > 1/alpha (volume regime)");
  const double d = params.dimension_d();
  return 4.0 * d / kLog3 * riemann_zeta(params.alpha * d).value *
         std::pow(2.0 * pi, -d) * std::pow(3.0, -double(tau.length()));
}

namespace {

// sum_{k=1}^{K} k^{-p} by explicit compensated summation plus the
// Euler-Maclaurin completion of the tail; next_term reports the first
// neglected correction as the error scale.
double mode_sum_completed(double p, int k_max, double* next_term) {
  const double sum = deterministic_sum(
      std::size_t(k_max), [p](std::size_t i) { return std::pow(double(i + 1), -p); },
      worker_count());
  const double K = double(k_max);
  const double tail = std::pow(K, 1.0 - p) / (p - 1.0) - 0.5 * std::pow(K, -p) +
                      p / 12.0 * std::pow(K, -p - 1.0);
  if (next_term) *next_term = p * (p + 1.0) * (p + 2.0) / 720.0 * std::pow(K, -p - 3.0);
  return sum + tail;
}

}  // namespace

ResidueEstimate volume_residue_check(const Word& tau, const TripleParams& params, int m,
                                     int k_max, const std::vector<double>& offsets) {
  if (!params.volume_ok())
    throw RegimeError("volume_residue_check: requires the volume regime");
  if (offsets.size() != 3) throw RegimeError("volume_residue_check: need 3 offsets");
  const double d = params.dimension_d();
  const double a = params.alpha, b = params.beta;
  const int depth = tau.length();
  if (m < depth) throw RegimeError("volume_residue_check: m below |tau|");

  double h[3], g[3];
  double mode_uncertainty = 0.0;
  for (int i = 0; i < 3; ++i) {
    h[i] = offsets[i];
    const double s = d + h[i];
    double em_next = 0.0;
    const double modes = mode_sum_completed(a * s, k_max, &em_next);
    // words sigma >= tau: explicit geometric sum to length m, closed tail on
    const double r = 3.0 * std::pow(2.0, -s * b);
    CompensatedSum words;
    double term = std::pow(2.0, -s * b * double(depth));
    for (int j = 0; j <= m - depth; ++j) {
      words.add(term);
      term *= r;
    }
    const double word_tail = term / (1.0 - r);  // exact geometric remainder
    const double wsum = words.value() + word_tail;
    const double trace = 4.0 * std::pow(2.0 * pi, -s) * modes * wsum;
    const double zref = riemann_zeta(a * s).value;
    g[i] = h[i] * trace / zref;
    mode_uncertainty += h[i] * 4.0 * std::pow(2.0 * pi, -s) * em_next * wsum / zref;
  }
  const auto ex = richardson3(h, g);
  const double zd = riemann_zeta(a * d).value;
  ResidueEstimate out;
  out.value = ex.value * zd;
  out.tail_bound = (ex.error_estimate + 6.0 * mode_uncertainty) * std::abs(zd);
  out.truncation.max_word_length = m;
  out.truncation.max_mode = k_max;
  out.truncation.offsets = offsets;
  return out;
}

double HarmonicConstants::c_of(double s) const {
  CompensatedSum acc;
  for (std::size_t k = 1; k <= c.size(); ++k)
    acc.add(2.0 * c[k - 1] * std::pow(double(k), -(s + 2.0) * alpha));
  return acc.value();
}

double HarmonicConstants::c_tail_bound(double s) const {
  // C_k <= k^{2 alpha}, so the tail is bounded by 2 sum_{k>K} k^{-s alpha}.
  const double p = s * alpha;
  const double K = double(c.size());
  return 2.0 * std::pow(K, 1.0 - p) / (p - 1.0);
}

HarmonicConstants harmonic_constants(const TripleParams& params, int level_l, int k_max) {
  if (!params.energy_ok())
    throw RegimeError("harmonic_constants: requires the energy regime");
  const auto h = VertexFunction<double>::boundary(1.0, 0.0, 0.0);
  const double energy = graph_energy(h);
  const auto g = restrict_to_lacuna(h, Word{}, level_l).to_fourier();
  HarmonicConstants out;
  out.alpha = params.alpha;
  out.level_l = level_l;
  out.k2 = spectral_energy(g, params.alpha) / energy;
  out.c.resize(k_max);
  for (int k = 1; k <= k_max; ++k) {
    const double ck = channel_norm(g, params.alpha, k) / energy;
    const double cmk = channel_norm(g, params.alpha, -k) / energy;
    out.c[k - 1] = 0.5 * (ck + cmk);  // equal for real data; average the rounding
  }
  return out;
}

EnergyTraceData precompute_energy_trace(const VertexFunction<double>& f,
                                        const TripleParams& params, int m, int k_max,
                                        int level_l) {
  if (!params.energy_ok())
    throw RegimeError("energy_trace: requires the energy regime");
  EnergyTraceData data;
  data.params = params;
  data.m = m;
  data.k_max = k_max;
  data.level_l = level_l;
  data.graph_energy_value = graph_energy(f);
  data.k1_hat = k1_estimate(params.alpha, level_l);

  const int target = m + 1 + level_l;
  const VertexFunction<double> ext = (f.level < target) ? harmonic_extend(f, target) : f;

  data.level_energy.assign(m + 1, 0.0);
  data.level_channel.assign(m + 1, std::vector<double>(k_max, 0.0));
  for (int n = 0; n <= m; ++n) {
    std::int64_t count = 1;
    for (int i = 0; i < n; ++i) count *= 3;

    // Fixed-chunk partition of the lexicographic word range; chunks are
    // reduced in index order, so the result is worker-count independent.
    constexpr std::int64_t kChunk = 81;
    const std::int64_t nchunks = (count + kChunk - 1) / kChunk;
    std::vector<std::vector<double>> partial;
    partial.resize(std::size_t(nchunks));

    auto run_chunk = [&](std::int64_t c) {
      CompensatedSum e_acc;
      std::vector<CompensatedSum> ch_acc(k_max);
      const std::int64_t lo = c * kChunk, hi = std::min(count, lo + kChunk);
      for (std::int64_t w = lo; w < hi; ++w) {
        Word sigma;
        sigma.letters.resize(n);
        std::int64_t idx = w;
        for (int i = n - 1; i >= 0; --i) {
          sigma.letters[i] = std::uint8_t(idx % 3);
          idx /= 3;
        }
        const auto g = restrict_to_lacuna(ext, sigma, level_l).to_fourier();
        e_acc.add(spectral_energy(g, params.alpha));
        for (int k = 1; k <= k_max; ++k)
          ch_acc[k - 1].add(channel_norm(g, params.alpha, k) +
                            channel_norm(g, params.alpha, -k));
      }
      auto& out = partial[std::size_t(c)];
      out.resize(1 + k_max);
      out[0] = e_acc.value();
      for (int k = 1; k <= k_max; ++k) out[k] = ch_acc[k - 1].value();
    };

    const unsigned nw = std::min<unsigned>(worker_count(), unsigned(nchunks));
    if (nw <= 1) {
      for (std::int64_t c = 0; c < nchunks; ++c) run_chunk(c);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < nw; ++t)
        pool.emplace_back([&, t] {
          for (std::int64_t c = t; c < nchunks; c += nw) run_chunk(c);
        });
      for (auto& t : pool) t.join();
    }

    CompensatedSum e_total;
    std::vector<CompensatedSum> ch_total(k_max);
    for (const auto& part : partial) {
      e_total.add(part[0]);
      for (int k = 1; k <= k_max; ++k) ch_total[k - 1].add(part[k]);
    }
    data.level_energy[n] = e_total.value();
    for (int k = 1; k <= k_max; ++k) data.level_channel[n][k - 1] = ch_total[k - 1].value();
  }
  return data;
}

ResidueEstimate energy_trace_at(const EnergyTraceData& data, double s) {
  const double a = data.params.alpha, b = data.params.beta;
  const double delta = data.params.energy_dimension();
  if (!(s > std::max(1.0 / a, delta)))
    throw RegimeError("energy_trace: s must exceed max(1/alpha, delta)");

  const double zeta_as = riemann_zeta(a * s).value;
  std::vector<double> level_term(data.m + 1, 0.0);
  double mode_tail = 0.0;
  for (int n = 0; n <= data.m; ++n) {
    const double scale = std::pow(2.0, b * (2.0 - s) * double(n));
    CompensatedSum chan;
    for (int k = 1; k <= data.k_max; ++k)
      chan.add(data.level_channel[n][k - 1] * std::pow(double(k), -(s + 2.0) * a));
    level_term[n] = scale * (2.0 * zeta_as * data.level_energy[n] + chan.value());
    mode_tail += scale * 2.0 * data.level_energy[n] *
                 std::pow(double(data.k_max), 1.0 - s * a) / (s * a - 1.0);
  }
  CompensatedSum acc;
  for (int n = 0; n <= data.m; ++n) acc.add(level_term[n]);

  // Geometric completion from the last explicit level; exact when the level
  // sums are exactly geometric (q-harmonic f with q <= m).
  const double rho = (3.0 / 5.0) * std::pow(2.0, b * (2.0 - s));
  if (!(rho < 1.0)) throw RegimeError("energy_trace: divergent word sum at this s");
  const double tail_value = level_term[data.m] * rho / (1.0 - rho);

  // zetaEst-style upper bound on the true tail via the empirical constant.
  const double upper = 4.0 * data.k1_hat * zeta_as * data.graph_energy_value *
                       std::pow(rho, double(data.m + 1)) / (1.0 - rho);

  ResidueEstimate out;
  out.value = acc.value() + tail_value;
  out.tail_bound = std::max(std::abs(upper - tail_value), std::abs(tail_value)) + mode_tail;
  out.truncation.max_word_length = data.m;
  out.truncation.max_mode = data.k_max;
  return out;
}

ResidueEstimate energy_trace(const VertexFunction<double>& f, const TripleParams& params,
                             double s, int m, int k_max, int level_l) {
  return energy_trace_at(precompute_energy_trace(f, params, m, k_max, level_l), s);
}

ResidueEstimate energy_residue(const VertexFunction<double>& f, const TripleParams& params,
                               int m, int k_max, int level_l,
                               const std::vector<double>& offsets) {
  if (offsets.size() != 3) throw RegimeError("energy_residue: need 3 offsets");
  const auto data = precompute_energy_trace(f, params, m, k_max, level_l);
  const double a = params.alpha;
  const double delta = params.energy_dimension();
  double h[3], g[3];
  double carried = 0.0;
  for (int i = 0; i < 3; ++i) {
    h[i] = offsets[i];
    const double s = delta + h[i];
    const auto tr = energy_trace_at(data, s);
    const double zref = riemann_zeta(a * s).value;
    g[i] = h[i] * tr.value / zref;
    carried += h[i] * tr.tail_bound / zref;
  }
  const auto ex = richardson3(h, g);
  const double zd = riemann_zeta(a * delta).value;
  ResidueEstimate out;
  out.value = ex.value * zd;
  out.tail_bound = (ex.error_estimate + 3.0 * carried) * std::abs(zd);
  out.truncation.max_word_length = m;
  out.truncation.max_mode = k_max;
  out.truncation.offsets = offsets;
  return out;
}

}  // namespace sgt
