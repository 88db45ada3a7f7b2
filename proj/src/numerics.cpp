#include "sgt/numerics.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <cmath>
#include <numbers>

namespace sgt {

double deterministic_sum(std::size_t n, const std::function<double(std::size_t)>& term,
                         unsigned workers) {
  constexpr std::size_t kChunk = 4096;  // fixed, independent of worker count
  const std::size_t nchunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(nchunks, 0.0);

  auto run_chunk = [&](std::size_t c) {
    CompensatedSum acc;
    const std::size_t lo = c * kChunk;
    const std::size_t hi = std::min(n, lo + kChunk);
    for (std::size_t i = lo; i < hi; ++i) acc.add(term(i));
    partial[c] = acc.value();
  };

  if (workers <= 1 || nchunks <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c) run_chunk(c);
  } else {
    const unsigned nw = std::min<unsigned>(workers, std::thread::hardware_concurrency() * 4 + 1);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nw; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t c = w; c < nchunks; c += nw) run_chunk(c);
      });
    }
    for (auto& t : pool) t.join();
  }

  CompensatedSum total;
  for (double p : partial) total.add(p);
  return total.value();
}

Extrapolation richardson3(const double h[3], const double g[3]) {
  // Lagrange weights at 0 for nodes h0,h1,h2.
  const double w0 = (h[1] * h[2]) / ((h[0] - h[1]) * (h[0] - h[2]));
  const double w1 = (h[0] * h[2]) / ((h[1] - h[0]) * (h[1] - h[2]));
  const double w2 = (h[0] * h[1]) / ((h[2] - h[0]) * (h[2] - h[1]));
  const double quad = w0 * g[0] + w1 * g[1] + w2 * g[2];
  // Linear extrapolant through the two finest nodes.
  const double lin = g[2] + (g[2] - g[1]) * h[2] / (h[1] - h[2]);
  return {quad, std::abs(quad - lin)};
}

namespace {

void dft_recursive(const cplx* in, cplx* out, std::size_t n, std::size_t stride) {
  using std::numbers::pi;
  if (n % 2 == 0 && n > 2) {
    const std::size_t m = n / 2;
    std::vector<cplx> even(m), odd(m);
    dft_recursive(in, even.data(), m, 2 * stride);
    dft_recursive(in + stride, odd.data(), m, 2 * stride);
    for (std::size_t k = 0; k < m; ++k) {
      const cplx tw = std::polar(1.0, -2.0 * pi * double(k) / double(n)) * odd[k];
      out[k] = even[k] + tw;
      out[k + m] = even[k] - tw;
    }
    return;
  }
  if (n % 3 == 0 && n > 3) {
    const std::size_t m = n / 3;
    std::vector<cplx> a(m), b(m), c(m);
    dft_recursive(in, a.data(), m, 3 * stride);
    dft_recursive(in + stride, b.data(), m, 3 * stride);
    dft_recursive(in + 2 * stride, c.data(), m, 3 * stride);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t r = 0; r < 3; ++r) {
        const std::size_t kk = k + r * m;
        const cplx w1 = std::polar(1.0, -2.0 * pi * double(kk) / double(n));
        out[kk] = a[k] + w1 * b[k] + w1 * w1 * c[k];
      }
    }
    return;
  }
  for (std::size_t k = 0; k < n; ++k) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      s += in[j * stride] * std::polar(1.0, -2.0 * pi * double(k * j) / double(n));
    out[k] = s;
  }
}

}  // namespace

namespace {

// Cached twiddle factors for the direct small-N transform.
const std::vector<cplx>& twiddle_table(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::vector<cplx>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<cplx> t(n);
  for (std::size_t j = 0; j < n; ++j)
    t[j] = std::polar(1.0, -2.0 * std::numbers::pi * double(j) / double(n));
  return cache.emplace(n, std::move(t)).first->second;
}

}  // namespace

std::vector<cplx> dft_forward(const std::vector<cplx>& samples) {
  const std::size_t n = samples.size();
  std::vector<cplx> out(n);
  if (n == 0) return out;
  if (n <= 256) {  // direct transform with cached twiddles
    const auto& tw = twiddle_table(n);
    for (std::size_t k = 0; k < n; ++k) {
      cplx acc = 0.0;
      std::size_t idx = 0;
      for (std::size_t j = 0; j < n; ++j) {
        acc += samples[j] * tw[idx];
        idx += k;
        if (idx >= n) idx -= n;
      }
      out[k] = acc / double(n);
    }
    return out;
  }
  dft_recursive(samples.data(), out.data(), n, 1);
  for (auto& v : out) v /= double(n);
  return out;
}

QuadResult tanh_sinh(const std::function<double(double)>& f, double a, double b, int levels) {
  using std::numbers::pi;
  // x = mid + half*tanh((pi/2) sinh t), truncated at |t| <= tmax. The node is
  // anchored at the nearer endpoint through the cancellation-free form
  // 1 - |tanh u| = 2 e^{-2|u|} / (1 + e^{-2|u|}), so integrable endpoint
  // singularities keep full relative resolution down to denormals.
  const double half = 0.5 * (b - a);
  const double tmax = 4.8;
  auto node = [&](double t, double& x, double& w) {
    const double u = 0.5 * pi * std::sinh(t);
    const double e = std::exp(-2.0 * std::abs(u));
    const double dist = half * 2.0 * e / (1.0 + e);  // distance to nearer endpoint
    x = (t <= 0.0) ? a + dist : b - dist;
    const double ch = std::cosh(u);
    w = half * 0.5 * pi * std::cosh(t) / (ch * ch);
  };
  auto add_nodes = [&](double h, bool odd_only, CompensatedSum& acc) {
    const double step = odd_only ? 2.0 * h : h;
    const double start = odd_only ? h : 0.0;
    for (double t = start; t <= tmax; t += step) {
      double x, w;
      node(t, x, w);
      if (x > a && x < b && w > 0.0) acc.add(w * f(x));
      if (t > 0.0) {
        node(-t, x, w);
        if (x > a && x < b && w > 0.0) acc.add(w * f(x));
      }
    }
  };

  double h = 1.0;
  CompensatedSum weighted;  // sum of w_i f(x_i) over all nodes at current h
  add_nodes(h, false, weighted);
  double curr = h * weighted.value();
  double err = std::abs(curr);
  for (int lev = 1; lev <= levels; ++lev) {
    h *= 0.5;
    add_nodes(h, true, weighted);
    const double next = h * weighted.value();
    err = std::abs(next - curr);
    curr = next;
    if (lev > 3 && err < 1e-15 * (std::abs(curr) + 1.0)) break;
  }
  return {curr, err};
}

}  // namespace sgt
