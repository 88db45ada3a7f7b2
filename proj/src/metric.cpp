#include "sgt/metric.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "sgt/circle.hpp"
#include "sgt/numerics.hpp"

namespace sgt {

using std::numbers::pi;

double holder_c_eps(double eps) {
  return std::pow(eps, -0.5) * std::pow(pi / 4.0, eps) *
         std::sqrt(4.0 + 23.0 * (std::pow(4.0, 2.0 * eps) - 1.0));
}

double holder_c_tilde(double alpha) {
  return std::sqrt(3.0 * std::sin(pi * alpha)) / (16.0 * std::sqrt(2.0));
}

namespace {

// All words of length <= m in (length, lexicographic) order.
std::vector<Word> words_up_to(int m) {
  std::vector<Word> out;
  for (int n = 0; n <= m; ++n) {
    std::vector<std::uint8_t> letters(n, 0);
    std::int64_t count = 1;
    for (int i = 0; i < n; ++i) count *= 3;
    for (std::int64_t w = 0; w < count; ++w) {
      Word sigma;
      sigma.letters.assign(letters.begin(), letters.end());
      out.push_back(sigma);
      for (int i = n - 1; i >= 0; --i) {
        if (++letters[i] < 3) break;
        letters[i] = 0;
      }
    }
  }
  return out;
}

// Grid Holder seminorm of circle samples w.r.t. arc distance.
double grid_holder_exponent_norm(const SampledCircleFunction& f, double eta) {
  const int n = f.size();
  double sup = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double t = 2.0 * pi * double(j - i) / double(n);
      const double d = std::min(t, 2.0 * pi - t);
      sup = std::max(sup, std::abs(f.samples[i] - f.samples[j]) / std::pow(d, eta));
    }
  }
  return sup;
}

double oscillation(const SampledCircleFunction& f) {
  double lo = f.samples[0].real(), hi = lo;
  for (int i = 1; i < f.size(); ++i) {
    lo = std::min(lo, f.samples[i].real());
    hi = std::max(hi, f.samples[i].real());
  }
  return hi - lo;
}

}  // namespace

ResidueEstimate commutator_norm(const VertexFunction<double>& f, const TripleParams& params,
                                int m, int level_l) {
  const int target = m + 1 + level_l;
  const VertexFunction<double> ext = (f.level < target) ? harmonic_extend(f, target) : f;

  double sup = 0.0;
  std::vector<double> level_osc(m + 1, 0.0);
  double eta_hat = params.beta;
  for (const auto& sigma : words_up_to(m)) {
    const auto restr = restrict_to_lacuna(ext, sigma, level_l);
    const double v =
        std::pow(2.0, params.beta * sigma.length()) * p_alpha(restr, params.alpha);
    sup = std::max(sup, v);
    level_osc[sigma.length()] = std::max(level_osc[sigma.length()], oscillation(restr));
  }
  // Holder decay exponent from the oscillation profile: osc_n ~ C 2^{-eta n}.
  {
    int pts = 0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int n = 0; n <= m; ++n) {
      if (level_osc[n] <= 0.0) continue;
      const double xx = double(n), yy = std::log2(level_osc[n]);
      sx += xx;
      sy += yy;
      sxx += xx * xx;
      sxy += xx * yy;
      ++pts;
    }
    if (pts >= 2 && sxx * pts - sx * sx > 0.0)
      eta_hat = -(sxy * pts - sx * sy) / (sxx * pts - sx * sx);
  }

  ResidueEstimate out;
  out.value = sup;
  out.truncation.max_word_length = m;
  if (sup == 0.0) {
    out.tail_bound = 0.0;
    return out;
  }

  // Deeper words: L_{sigma eta} decay with the measured exponent. The growth
  // margin beyond the computed sup is reported, never silently added.
  {
    double lmax = 0.0;
    std::vector<std::uint8_t> letters(m, 0);
    std::int64_t count = 1;
    for (int i = 0; i < m; ++i) count *= 3;
    const double eta_use = std::min(1.0, std::max(params.alpha + 0.01, eta_hat));
    for (std::int64_t w = 0; w < count; ++w) {
      Word sigma;
      sigma.letters.assign(letters.begin(), letters.end());
      const auto restr = restrict_to_lacuna(ext, sigma, level_l);
      lmax = std::max(lmax, grid_holder_exponent_norm(restr, eta_use) *
                                std::pow(2.0, double(m) * (params.beta - eta_use)));
      for (int i = m - 1; i >= 0; --i) {
        if (++letters[i] < 3) break;
        letters[i] = 0;
      }
    }
    const double ratio = std::pow(2.0, params.beta - eta_use);
    const double c = holder_c_eps(eta_use - params.alpha);
    double deep = c * lmax;
    if (ratio < 1.0) deep *= ratio;  // decaying profile: next level dominates the tail
    out.tail_bound = std::max(0.0, deep - sup);
  }
  return out;
}

namespace {

struct ConstraintSet {
  const TripleParams* params;
  int m, level_l;
  std::vector<Word> words;

  // max_sigma 2^{beta |sigma|} p_alpha(f o w_sigma)
  double operator()(const VertexFunction<double>& f) const {
    const int target = m + 1 + level_l;
    const VertexFunction<double> ext = (f.level < target) ? harmonic_extend(f, target) : f;
    double q = 0.0;
    for (const auto& sigma : words) {
      const auto restr = restrict_to_lacuna(ext, sigma, level_l);
      q = std::max(q, std::pow(2.0, params->beta * sigma.length()) *
                          p_alpha(restr, params->alpha));
    }
    return q;
  }
};

}  // namespace

DistanceBound connes_distance_lower(const GasketPoint& x, const GasketPoint& y,
                                    const TripleParams& params, int m, int level_l,
                                    int iterations, unsigned seed, int constraint_depth) {
  if (!params.metric_ok())
    throw RegimeError("connes_distance_lower: requires beta <= 1 (metric regime)");
  if (constraint_depth < 0) constraint_depth = m + 1;
  if (constraint_depth < m)
    throw RegimeError("connes_distance_lower: constraint depth below the level");
  const auto graph = build_graph(m);
  const int ix = graph->vertex_of(x), iy = graph->vertex_of(y);
  if (ix < 0 || iy < 0)
    throw ResourceError("connes_distance_lower: endpoints must be level-m vertices");

  DistanceBound out;
  out.level = m;
  out.rho_geo = geodesic_distance(x, y, m).value;
  const double rb = std::pow(out.rho_geo, params.beta);
  if (params.beta > params.alpha)
    out.envelope_low = rb / holder_c_eps(params.beta - params.alpha);
  if (params.alpha >= 0.5)
    out.envelope_high = 8.0 * std::pow(2.0, -params.alpha) / holder_c_tilde(params.alpha) /
                        (1.0 - std::pow(2.0, -params.beta)) * rb;

  if (ix == iy) {
    out.diagnostics.feasible = true;
    return out;
  }

  // Warm-started chain over the levels: each level's solution, harmonically
  // extended and radially reprojected, seeds the next so the reported bounds
  // grow with m.
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);
  VertexFunction<double> carry;  // previous-level solution
  bool have_carry = false;

  for (int level = std::min(2, m); level <= m; ++level) {
    const auto g = build_graph(level);
    const int lx = g->vertex_of(x), ly = g->vertex_of(y);
    if (lx < 0 || ly < 0) continue;  // endpoints may appear only at deeper levels
    const int n = int(g->vertices.size());

    // Same constraint family at every chained level: harmonic extension then
    // embeds each feasible set into the next, and the carried solution stays
    // feasible verbatim.
    const int depth = std::max(level, constraint_depth);
    ConstraintSet constraint{&params, depth, level_l, words_up_to(depth)};
    auto objective = [&](const VertexFunction<double>& f) {
      return f.values[lx] - f.values[ly];
    };
    auto normalized = [&](VertexFunction<double> f) {
      const double q = constraint(f);
      if (q > 0.0)
        for (auto& v : f.values) v /= q;
      return f;
    };

    std::vector<VertexFunction<double>> seeds;
    {
      const Eigen::Vector2d dir = (x.to_plane() - y.to_plane()).normalized();
      VertexFunction<double> affine;
      affine.level = level;
      affine.values.resize(n);
      for (int i = 0; i < n; ++i) affine.values[i] = dir.dot(g->vertices[i].to_plane());
      seeds.push_back(normalized(affine));
    }
    {
      VertexFunction<double> cone;
      cone.level = level;
      cone.values.resize(n);
      for (int i = 0; i < n; ++i)
        cone.values[i] =
            std::pow(geodesic_distance(g->vertices[i], y, level).value, params.beta);
      seeds.push_back(normalized(cone));
    }
    if (have_carry) seeds.push_back(normalized(harmonic_extend(carry, level)));

    VertexFunction<double> best = seeds[0];
    for (const auto& s : seeds)
      if (objective(s) > objective(best)) best = s;
    if (level == std::min(2, m)) out.diagnostics.seed_value = objective(best);

    VertexFunction<double> cur = best;
    double step = 0.5;
    for (int it = 0; it < iterations; ++it) {
      VertexFunction<double> cand = cur;
      cand.values[lx] += step;
      cand.values[ly] -= step;
      if (it % 7 == 3) {  // occasional exploration kick
        for (auto& v : cand.values) v += 0.02 * step * jitter(rng);
      }
      cand = normalized(cand);
      if (objective(cand) > objective(cur)) {
        cur = cand;
        if (objective(cur) > objective(best)) best = cur;
      } else {
        step *= 0.7;
        if (step < 1e-4) break;
      }
      out.diagnostics.iterations += 1;
    }

    if (level == m) {
      // A posteriori certificate: rescale onto the constraint boundary.
      const double q = constraint(best);
      if (q > 1.0)
        for (auto& v : best.values) v /= q;
      out.diagnostics.final_constraint = std::min(q, 1.0);
      out.diagnostics.feasible = true;
      out.lower = objective(best);
    }
    carry = best;
    have_carry = true;
  }
  return out;
}

}  // namespace sgt
