#include "sgt/gasket.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <deque>
#include <limits>
#include <mutex>
#include <numbers>

namespace sgt {

using std::numbers::pi;

Dyadic::Dyadic(std::int64_t n, int e) : num(n), exp(e) {
  if (num == 0) {
    exp = 0;
    return;
  }
  while (exp > 0 && (num & 1) == 0) {
    num >>= 1;
    --exp;
  }
}

Dyadic operator+(Dyadic a, Dyadic b) {
  const int e = std::max(a.exp, b.exp);
  return Dyadic((a.num << (e - a.exp)) + (b.num << (e - b.exp)), e);
}

Dyadic operator-(Dyadic a, Dyadic b) {
  const int e = std::max(a.exp, b.exp);
  return Dyadic((a.num << (e - a.exp)) - (b.num << (e - b.exp)), e);
}

Dyadic operator*(Dyadic a, Dyadic b) { return Dyadic(a.num * b.num, a.exp + b.exp); }

bool Dyadic::operator<=(const Dyadic& o) const {
  const int e = std::max(exp, o.exp);
  return (num << (e - exp)) <= (o.num << (e - o.exp));
}

double Dyadic::to_double() const { return std::ldexp(double(num), -exp); }

Eigen::Vector2d GasketPoint::to_plane() const {
  return {x.to_double(), y.to_double() * std::sqrt(3.0)};
}

std::size_t GasketPointHash::operator()(const GasketPoint& p) const {
  std::size_t h = std::hash<std::int64_t>{}(p.x.num);
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
  mix(std::hash<int>{}(p.x.exp));
  mix(std::hash<std::int64_t>{}(p.y.num));
  mix(std::hash<int>{}(p.y.exp));
  return h;
}

GasketPoint vertex_p0() { return {Dyadic::integer(0), Dyadic::integer(0)}; }
GasketPoint vertex_p1() { return {Dyadic::integer(1), Dyadic::integer(0)}; }
GasketPoint vertex_p2() { return {Dyadic(1, 1), Dyadic(1, 1)}; }

GasketPoint midpoint(const GasketPoint& a, const GasketPoint& b) {
  return {(a.x + b.x).half(), (a.y + b.y).half()};
}

Word Word::parse(const std::string& s) {
  Word w;
  for (char c : s) {
    if (c < '0' || c > '2') throw ParseError("Word::parse: letters must be 0, 1 or 2");
    w.letters.push_back(std::uint8_t(c - '0'));
  }
  return w;
}

bool Word::is_prefix_of(const Word& other) const {
  if (length() > other.length()) return false;
  return std::equal(letters.begin(), letters.end(), other.letters.begin());
}

Word Word::child(std::uint8_t letter) const {
  Word w = *this;
  w.letters.push_back(letter);
  return w;
}

std::string Word::str() const {
  std::string s;
  for (auto l : letters) s.push_back(char('0' + l));
  return s;
}

namespace {

GasketPoint fixed_point(std::uint8_t letter) {
  switch (letter) {
    case 0: return vertex_p0();
    case 1: return vertex_p1();
    default: return vertex_p2();
  }
}

GasketPoint contract(std::uint8_t letter, const GasketPoint& x) {
  const GasketPoint p = fixed_point(letter);
  return {p.x + (x.x - p.x).half(), p.y + (x.y - p.y).half()};
}

// w_i^{-1}(x) = 2x - p_i
GasketPoint expand(std::uint8_t letter, const GasketPoint& x) {
  const GasketPoint p = fixed_point(letter);
  const Dyadic two = Dyadic::integer(2);
  return {two * x.x - p.x, two * x.y - p.y};
}

// closed triangle p0 p1 p2: y >= 0, y <= x, y <= 1 - x (sqrt(3) cancels).
bool in_base_triangle(const GasketPoint& p) {
  const Dyadic zero = Dyadic::integer(0), one = Dyadic::integer(1);
  return zero <= p.y && p.y <= p.x && p.y <= one - p.x;
}

}  // namespace

GasketPoint apply_word(const Word& sigma, const GasketPoint& x) {
  GasketPoint p = x;
  for (auto it = sigma.letters.rbegin(); it != sigma.letters.rend(); ++it)
    p = contract(*it, p);
  return p;
}

bool in_gasket(const GasketPoint& p0) {
  GasketPoint p = p0;
  const int max_depth = std::max(p.x.exp, p.y.exp) + 4;
  for (int depth = 0; depth <= max_depth; ++depth) {
    if (!in_base_triangle(p)) return false;
    if (p == vertex_p0() || p == vertex_p1() || p == vertex_p2()) return true;
    bool descended = false;
    for (std::uint8_t i = 0; i < 3; ++i) {
      const GasketPoint q = expand(i, p);
      if (in_base_triangle(q)) {
        p = q;
        descended = true;
        break;
      }
    }
    if (!descended) return false;
  }
  return false;
}

bool in_cell(const Word& sigma, const GasketPoint& p) {
  GasketPoint q = p;
  for (auto letter : sigma.letters) {
    q = expand(letter, q);
    if (!in_base_triangle(q)) return false;
  }
  return in_gasket(q);
}

int GraphLevel::vertex_of(const GasketPoint& p) const {
  const auto it = index.find(p);
  return it == index.end() ? -1 : it->second;
}

namespace {

std::shared_ptr<const GraphLevel> build_graph_uncached(int m) {
  auto g = std::make_shared<GraphLevel>();
  g->level = m;
  const GasketPoint base[3] = {vertex_p0(), vertex_p1(), vertex_p2()};

  auto intern = [&](const GasketPoint& p) {
    const auto it = g->index.find(p);
    if (it != g->index.end()) return it->second;
    const int id = int(g->vertices.size());
    g->vertices.push_back(p);
    g->index.emplace(p, id);
    return id;
  };

  // Lexicographic enumeration of words of length m.
  std::vector<std::uint8_t> word(m, 0);
  std::int64_t count = 1;
  for (int i = 0; i < m; ++i) count *= 3;
  for (std::int64_t w = 0; w < count; ++w) {
    GraphLevel::Cell cell;
    cell.word.letters.assign(word.begin(), word.end());
    for (int c = 0; c < 3; ++c) cell.corner[c] = intern(apply_word(cell.word, base[c]));
    const auto cid = std::uint32_t(g->cells.size());
    g->cells.push_back(cell);
    g->edges.push_back({cell.corner[1], cell.corner[2], cid});  // edge opposite p0
    g->edges.push_back({cell.corner[0], cell.corner[2], cid});  // edge opposite p1
    g->edges.push_back({cell.corner[0], cell.corner[1], cid});  // edge opposite p2
    for (int i = m - 1; i >= 0; --i) {
      if (++word[i] < 3) break;
      word[i] = 0;
    }
  }
  return g;
}

}  // namespace

std::shared_ptr<const GraphLevel> build_graph(int m) {
  if (m < 0) throw RegimeError("build_graph: level must be nonnegative");
  if (m > kMaxGraphLevel) throw ResourceError("build_graph: level exceeds configured maximum");
  static std::mutex mu;
  static std::array<std::shared_ptr<const GraphLevel>, kMaxGraphLevel + 1> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[m]) cache[m] = build_graph_uncached(m);
  return cache[m];
}

std::array<GasketPoint, 3> lacuna_corners(const Word& sigma) {
  const GasketPoint m01 = midpoint(vertex_p0(), vertex_p1());
  const GasketPoint m12 = midpoint(vertex_p1(), vertex_p2());
  const GasketPoint m02 = midpoint(vertex_p0(), vertex_p2());
  return {apply_word(sigma, m01), apply_word(sigma, m12), apply_word(sigma, m02)};
}

GasketPoint lacuna_point(const Word& sigma, int side, std::int64_t j, int level_l) {
  const auto corners = lacuna_corners(sigma);
  const GasketPoint& a = corners[side % 3];
  const GasketPoint& b = corners[(side + 1) % 3];
  const Dyadic frac(j, level_l);  // j / 2^L
  return {a.x + frac * (b.x - a.x), a.y + frac * (b.y - a.y)};
}

std::vector<GasketPoint> lacuna_samples(const Word& sigma, int level_l) {
  if (level_l < 0 || level_l > 24) throw ResourceError("lacuna_samples: level out of range");
  std::vector<GasketPoint> out;
  const std::int64_t per_side = std::int64_t(1) << level_l;
  out.reserve(3 * per_side);
  for (int side = 0; side < 3; ++side)
    for (std::int64_t j = 0; j < per_side; ++j)
      out.push_back(lacuna_point(sigma, side, j, level_l));
  return out;
}

GasketPoint lacuna_param(const Word& sigma, double t, int snap_level, bool* snapped) {
  double u = std::fmod(t, 2.0 * pi);
  if (u < 0.0) u += 2.0 * pi;
  const double pos = u / (2.0 * pi) * 3.0;  // in [0,3): side + fraction
  int side = int(std::floor(pos));
  if (side > 2) side = 2;
  const double frac = pos - double(side);
  const std::int64_t per_side = std::int64_t(1) << snap_level;
  std::int64_t j = std::llround(frac * double(per_side));
  if (snapped) *snapped = std::abs(frac * double(per_side) - double(j)) > 1e-12;
  if (j == per_side) {
    j = 0;
    side = (side + 1) % 3;
  }
  return lacuna_point(sigma, side, j, snap_level);
}

std::optional<double> lacuna_locate(const Word& sigma, const GasketPoint& p) {
  const auto corners = lacuna_corners(sigma);
  for (int side = 0; side < 3; ++side) {
    const GasketPoint& a = corners[side];
    const GasketPoint& b = corners[(side + 1) % 3];
    const Dyadic dx = b.x - a.x, dy = b.y - a.y;
    const Dyadic px = p.x - a.x, py = p.y - a.y;
    // p on segment iff cross product vanishes and the parameter lies in [0,1).
    if (!(px * dy == py * dx)) continue;
    // Parameter along the dominant component.
    const bool use_x = !(dx == Dyadic::integer(0));
    const Dyadic num = use_x ? px : py;
    const Dyadic den = use_x ? dx : dy;
    const double tt = num.to_double() / den.to_double();
    if (tt < 0.0 || tt >= 1.0) continue;
    return 2.0 * pi * (double(side) + tt) / 3.0;
  }
  return std::nullopt;
}

namespace {

// Integer BFS distances (unit edge weight) from a source vertex.
std::vector<int> bfs_distances(const GraphLevel& g, int source) {
  std::vector<std::vector<int>> adj(g.vertices.size());
  for (const auto& e : g.edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<int> dist(g.vertices.size(), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : adj[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

struct EdgeLocation {
  int a = -1, b = -1;
  double t = 0.0;  // fraction from a to b
};

// Locate a point either as a vertex or on an edge of the level-m graph.
std::optional<EdgeLocation> locate_on_skeleton(const GraphLevel& g, const GasketPoint& p) {
  const int v = g.vertex_of(p);
  if (v >= 0) return EdgeLocation{v, v, 0.0};
  for (const auto& e : g.edges) {
    const GasketPoint& a = g.vertices[e.a];
    const GasketPoint& b = g.vertices[e.b];
    const Dyadic dx = b.x - a.x, dy = b.y - a.y;
    const Dyadic px = p.x - a.x, py = p.y - a.y;
    if (!(px * dy == py * dx)) continue;
    const bool use_x = !(dx == Dyadic::integer(0));
    const double den = use_x ? dx.to_double() : dy.to_double();
    const double num = use_x ? px.to_double() : py.to_double();
    const double t = num / den;
    if (t > 0.0 && t < 1.0) return EdgeLocation{e.a, e.b, t};
  }
  return std::nullopt;
}

}  // namespace

ResidueEstimate geodesic_distance(const GasketPoint& x, const GasketPoint& y, int m) {
  const auto graph = build_graph(m);
  const auto lx = locate_on_skeleton(*graph, x);
  const auto ly = locate_on_skeleton(*graph, y);
  if (!lx || !ly)
    throw ResourceError("geodesic_distance: point not representable on the level-" +
                        std::to_string(m) + " skeleton");
  const double scale = std::ldexp(1.0, -m);
  ResidueEstimate r;
  r.truncation.max_word_length = m;

  if (x == y) {
    r.value = 0.0;
    return r;
  }
  // Same-edge shortcut.
  if (lx->a != lx->b && ly->a != ly->b &&
      ((lx->a == ly->a && lx->b == ly->b) || (lx->a == ly->b && lx->b == ly->a))) {
    const double ta = lx->t;
    const double tb = (lx->a == ly->a) ? ly->t : 1.0 - ly->t;
    r.value = std::abs(ta - tb) * scale;
    // fall through to also consider paths around; keep the minimum below
  }

  const auto da = bfs_distances(*graph, lx->a);
  const auto db = (lx->a == lx->b) ? da : bfs_distances(*graph, lx->b);

  auto through = [&](const std::vector<int>& dist, double offset) {
    double best = std::numeric_limits<double>::infinity();
    if (ly->a == ly->b) {
      best = (double(dist[ly->a]) + offset) * scale;
    } else {
      best = std::min((double(dist[ly->a]) + offset + ly->t) * scale,
                      (double(dist[ly->b]) + offset + 1.0 - ly->t) * scale);
    }
    return best;
  };

  double best = (r.value > 0.0) ? r.value : std::numeric_limits<double>::infinity();
  if (lx->a == lx->b) {
    best = std::min(best, through(da, 0.0));
  } else {
    best = std::min(best, through(da, lx->t));
    best = std::min(best, through(db, 1.0 - lx->t));
  }
  r.value = best;
  return r;
}

}  // namespace sgt
