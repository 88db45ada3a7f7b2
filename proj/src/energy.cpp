#include "sgt/energy.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace sgt {

namespace {

template <typename Scalar>
Scalar sq(const Scalar& x) {
  return x * x;
}

// Precomputed child-vertex targets of one refinement step: spares the exact
// point hashing on every extension.
struct ExtensionPlan {
  struct CellPlan {
    int corner_child[3];
    int mid_child[3];  // midpoints of pairs (0,1), (1,2), (0,2)
  };
  std::vector<CellPlan> cells;
  std::size_t child_size = 0;
};

const ExtensionPlan& extension_plan(int m) {
  static std::mutex mu;
  static std::map<int, ExtensionPlan> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  const auto parent = build_graph(m);
  const auto child = build_graph(m + 1);
  ExtensionPlan plan;
  plan.child_size = child->vertices.size();
  plan.cells.resize(parent->cells.size());
  static constexpr int kPairs[3][2] = {{0, 1}, {1, 2}, {0, 2}};
  for (std::size_t c = 0; c < parent->cells.size(); ++c) {
    const auto& cell = parent->cells[c];
    const GasketPoint p[3] = {parent->vertices[cell.corner[0]],
                              parent->vertices[cell.corner[1]],
                              parent->vertices[cell.corner[2]]};
    for (int i = 0; i < 3; ++i) plan.cells[c].corner_child[i] = child->vertex_of(p[i]);
    for (int e = 0; e < 3; ++e)
      plan.cells[c].mid_child[e] = child->vertex_of(midpoint(p[kPairs[e][0]], p[kPairs[e][1]]));
  }
  return cache.emplace(m, std::move(plan)).first->second;
}

// Vertex indices of the lacuna sample grid inside a given level graph.
const std::vector<int>& lacuna_gather(const Word& sigma, int level_l, int graph_level) {
  static std::mutex mu;
  static std::map<std::tuple<std::string, int, int>, std::vector<int>> cache;
  const auto key = std::make_tuple(sigma.str(), level_l, graph_level);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const auto g = build_graph(graph_level);
  const auto pts = lacuna_samples(sigma, level_l);
  std::vector<int> ids(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ids[i] = g->vertex_of(pts[i]);
    if (ids[i] < 0)
      throw ResourceError("restrict_to_lacuna: sample point missing from the level graph");
  }
  return cache.emplace(key, std::move(ids)).first->second;
}

}  // namespace

template <typename Scalar>
Scalar graph_energy(const VertexFunction<Scalar>& f) {
  const auto g = build_graph(f.level);
  if (f.values.size() != g->vertices.size())
    throw RegimeError("graph_energy: value count does not match the level graph");
  if constexpr (std::is_same_v<Scalar, double>) {
    CompensatedSum acc;
    for (const auto& e : g->edges) acc.add(sq(f.values[e.a] - f.values[e.b]));
    return detail::five_thirds_pow<double>(f.level) * acc.value();
  } else {
    Scalar acc(0);
    for (const auto& e : g->edges) acc += sq(f.values[e.a] - f.values[e.b]);
    return detail::five_thirds_pow<Scalar>(f.level) * acc;
  }
}

template <typename Scalar>
VertexFunction<Scalar> harmonic_extend(const VertexFunction<Scalar>& f, int target_level) {
  if (target_level < f.level)
    throw RegimeError("harmonic_extend: target level below the function level");
  VertexFunction<Scalar> cur = f;
  for (int m = f.level; m < target_level; ++m) {
    const auto parent = build_graph(m);
    const auto& plan = extension_plan(m);
    VertexFunction<Scalar> next;
    next.level = m + 1;
    next.values.assign(plan.child_size, Scalar(0));
    // Corner vertices keep their values; each parent cell fills its three
    // midpoints with (2 v_i + 2 v_j + v_k)/5, anchored at v_i so constants
    // stay exact.
    static constexpr int kPairs[3][2] = {{0, 1}, {1, 2}, {0, 2}};
    for (std::size_t c = 0; c < parent->cells.size(); ++c) {
      const auto& cell = parent->cells[c];
      const auto& cp = plan.cells[c];
      const Scalar v[3] = {cur.values[cell.corner[0]], cur.values[cell.corner[1]],
                           cur.values[cell.corner[2]]};
      for (int i = 0; i < 3; ++i) next.values[cp.corner_child[i]] = v[i];
      for (int e = 0; e < 3; ++e) {
        const int i = kPairs[e][0], j = kPairs[e][1], k = 3 - i - j;
        next.values[cp.mid_child[e]] =
            v[i] + (Scalar(2) * (v[j] - v[i]) + (v[k] - v[i])) / Scalar(5);
      }
    }
    cur = std::move(next);
  }
  return cur;
}

template <typename Scalar>
Scalar cell_energy(const VertexFunction<Scalar>& f, const Word& sigma) {
  if (sigma.length() > f.level)
    throw RegimeError("cell_energy: word deeper than the function level");
  const auto g = build_graph(f.level);
  if constexpr (std::is_same_v<Scalar, double>) {
    CompensatedSum acc;
    for (const auto& e : g->edges) {
      if (sigma.is_prefix_of(g->cells[e.cell].word))
        acc.add(sq(f.values[e.a] - f.values[e.b]));
    }
    return detail::five_thirds_pow<double>(f.level) * acc.value();
  } else {
    Scalar acc(0);
    for (const auto& e : g->edges) {
      if (sigma.is_prefix_of(g->cells[e.cell].word))
        acc += sq(f.values[e.a] - f.values[e.b]);
    }
    return detail::five_thirds_pow<Scalar>(f.level) * acc;
  }
}

template <typename Scalar>
VertexFunction<Scalar> restrict_to_cell(const VertexFunction<Scalar>& f, std::uint8_t letter) {
  if (f.level < 1) throw RegimeError("restrict_to_cell: needs level >= 1");
  const auto sub = build_graph(f.level - 1);
  const auto g = build_graph(f.level);
  VertexFunction<Scalar> out;
  out.level = f.level - 1;
  out.values.resize(sub->vertices.size());
  Word w;
  w.letters = {letter};
  for (std::size_t i = 0; i < sub->vertices.size(); ++i) {
    const int id = g->vertex_of(apply_word(w, sub->vertices[i]));
    out.values[i] = f.values[id];
  }
  return out;
}

std::vector<std::pair<int, double>> decay_profile(const VertexFunction<double>& f,
                                                  int max_level) {
  const double total = graph_energy(f);
  if (total <= 0.0) throw RegimeError("decay_profile: zero-energy (constant) input");
  if (max_level > f.level)
    throw RegimeError("decay_profile: level exceeds the function level");
  const auto g = build_graph(f.level);
  std::vector<std::pair<int, double>> out;
  for (int n = 0; n <= max_level; ++n) {
    // accumulate cell energies for all words of length n in one pass
    std::unordered_map<std::string, CompensatedSum> acc;
    for (const auto& e : g->edges) {
      const auto& w = g->cells[e.cell].word;
      const std::string key = w.str().substr(0, n);
      acc[key].add(sq(f.values[e.a] - f.values[e.b]));
    }
    double worst = 0.0;
    for (const auto& [key, s] : acc)
      worst = std::max(worst, detail::five_thirds_pow<double>(f.level) * s.value());
    out.emplace_back(n, worst / total);
  }
  return out;
}

SampledCircleFunction restrict_to_lacuna(const VertexFunction<double>& f, const Word& sigma,
                                         int level_l) {
  const int needed = sigma.length() + 1 + level_l;
  VertexFunction<double> extended;
  const VertexFunction<double>* use = &f;
  if (f.level < needed) {
    extended = harmonic_extend(f, needed);
    use = &extended;
  }
  const auto& ids = lacuna_gather(sigma, level_l, use->level);
  Eigen::VectorXd vals(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) vals[int(i)] = use->values[std::size_t(ids[i])];
  return SampledCircleFunction::from_real(vals);
}

double k1_estimate(double alpha, int level_l) {
  double sup = 0.0;
  // q-harmonic corpus, q <= 3: harmonic seeds plus fixed level-q perturbations.
  const double boundary[4][3] = {{1, 0, 0}, {0, 1, -1}, {1, 2, 0}, {-1, 1, 3}};
  for (int q = 0; q <= 3; ++q) {
    for (const auto& b : boundary) {
      auto f = harmonic_extend(VertexFunction<double>::boundary(b[0], b[1], b[2]), q);
      if (q > 0) {
        for (std::size_t i = 3; i < f.values.size(); i += 2)
          f.values[i] += 0.1 * double(int(i % 5) - 2);
      }
      const double den = graph_energy(f);
      if (den <= 0.0) continue;
      const auto restr = restrict_to_lacuna(f, Word{}, level_l);
      sup = std::max(sup, spectral_energy(restr.to_fourier(), alpha) / den);
    }
  }
  return sup;
}

template double graph_energy<double>(const VertexFunction<double>&);
template Rational graph_energy<Rational>(const VertexFunction<Rational>&);
template VertexFunction<double> harmonic_extend<double>(const VertexFunction<double>&, int);
template VertexFunction<Rational> harmonic_extend<Rational>(const VertexFunction<Rational>&,
                                                            int);
template double cell_energy<double>(const VertexFunction<double>&, const Word&);
template Rational cell_energy<Rational>(const VertexFunction<Rational>&, const Word&);
template VertexFunction<double> restrict_to_cell<double>(const VertexFunction<double>&,
                                                         std::uint8_t);
template VertexFunction<Rational> restrict_to_cell<Rational>(const VertexFunction<Rational>&,
                                                             std::uint8_t);

}  // namespace sgt
