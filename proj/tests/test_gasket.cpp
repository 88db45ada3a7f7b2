#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sgt/gasket.hpp"

using namespace sgt;
using std::numbers::pi;

TEST_CASE("apply_word: fixed points, midpoints, contraction ratio") {
  CHECK(apply_word(Word::parse("0"), vertex_p0()) == vertex_p0());
  CHECK(apply_word(Word::parse("1"), vertex_p0()) == midpoint(vertex_p0(), vertex_p1()));

  std::mt19937 rng(3);
  std::uniform_int_distribution<int> coord(-8, 8);
  for (int rep = 0; rep < 20; ++rep) {
    const GasketPoint x{Dyadic(coord(rng), 3), Dyadic(coord(rng), 3)};
    const GasketPoint y{Dyadic(coord(rng), 3), Dyadic(coord(rng), 3)};
    const Word w = Word::parse("0212");
    const auto wx = apply_word(w, x), wy = apply_word(w, y);
    const double before = (x.to_plane() - y.to_plane()).norm();
    const double after = (wx.to_plane() - wy.to_plane()).norm();
    CHECK(after == doctest::Approx(before / 16.0).epsilon(1e-12));
  }
}

TEST_CASE("build_graph: counts and edge geometry") {
  struct {
    int m, v, e;
  } expected[] = {{0, 3, 3}, {1, 6, 9}, {2, 15, 27}, {3, 42, 81}};
  for (const auto& c : expected) {
    const auto g = build_graph(c.m);
    CHECK(int(g->vertices.size()) == c.v);
    CHECK(int(g->edges.size()) == c.e);
    CHECK(int(g->vertices.size()) == 3 * (int(std::pow(3, c.m)) + 1) / 2);
    for (const auto& e : g->edges) {
      const double len = (g->vertices[e.a].to_plane() - g->vertices[e.b].to_plane()).norm();
      CHECK(len == doctest::Approx(std::ldexp(1.0, -c.m)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(build_graph(kMaxGraphLevel + 1), ResourceError);
}

TEST_CASE("lacuna: convention corners, periodicity, points lie in K") {
  bool snapped = false;
  const auto start = lacuna_param(Word{}, 0.0, 20, &snapped);
  CHECK(start == midpoint(vertex_p0(), vertex_p1()));
  CHECK(!snapped);
  CHECK(lacuna_param(Word{}, 2.0 * pi / 3.0) == midpoint(vertex_p1(), vertex_p2()));
  CHECK(lacuna_param(Word{}, 4.0 * pi / 3.0) == midpoint(vertex_p0(), vertex_p2()));
  // periodicity
  CHECK(lacuna_param(Word{}, 1.25) == lacuna_param(Word{}, 1.25 + 2.0 * pi));
  // counterclockwise orientation: positive doubled area of corner triangle
  const auto c = lacuna_corners(Word{});
  const Eigen::Vector2d a = c[0].to_plane(), b = c[1].to_plane(), d = c[2].to_plane();
  CHECK(((b - a).x() * (d - a).y() - (b - a).y() * (d - a).x()) > 0.0);

  // every sample of every lacuna up to level 2 is a vertex of the matching graph
  for (const std::string ws : {"", "0", "12", "21"}) {
    const Word w = Word::parse(ws);
    const int L = 2;
    const auto pts = lacuna_samples(w, L);
    CHECK(int(pts.size()) == 3 * 4);
    const auto g = build_graph(w.length() + 1 + L);
    for (const auto& p : pts) {
      CHECK(g->vertex_of(p) >= 0);
      CHECK(in_gasket(p));
    }
  }
}

TEST_CASE("lacuna_locate: roundtrip and disjointness") {
  const Word w = Word::parse("2");
  const auto pts = lacuna_samples(w, 3);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto t = lacuna_locate(w, pts[i]);
    REQUIRE(t.has_value());
    CHECK(*t == doctest::Approx(2.0 * pi * double(i) / double(pts.size())).epsilon(1e-12));
  }
  // a point interior to another lacuna's side is not on this one
  const auto other = lacuna_samples(Word{}, 3);
  int hits = 0;
  for (const auto& p : other)
    if (lacuna_locate(w, p)) ++hits;
  CHECK(hits <= 1);  // lacunas touch in at most one point
}

TEST_CASE("cell nesting iff prefix order") {
  std::vector<Word> words;
  for (const std::string s :
       {"", "0", "1", "2", "00", "01", "12", "21", "001", "010", "112", "2221"})
    words.push_back(Word::parse(s));
  for (const auto& s : words) {
    for (const auto& t : words) {
      bool contained = true;
      for (int c = 0; c < 3; ++c) {
        const GasketPoint corner = apply_word(
            t, c == 0 ? vertex_p0() : (c == 1 ? vertex_p1() : vertex_p2()));
        if (!in_cell(s, corner)) {
          contained = false;
          break;
        }
      }
      CHECK(contained == s.is_prefix_of(t));
    }
  }
}

TEST_CASE("geodesic_distance: examples and metric axioms") {
  CHECK(geodesic_distance(vertex_p0(), vertex_p1(), 3).value == doctest::Approx(1.0));
  CHECK(geodesic_distance(vertex_p0(), vertex_p0(), 2).value == 0.0);
  const GasketPoint m12 = midpoint(vertex_p1(), vertex_p2());
  for (int m = 1; m <= 6; ++m)
    CHECK(geodesic_distance(vertex_p0(), m12, m).value == doctest::Approx(1.0));

  // monotone nonincreasing in m
  const GasketPoint m01 = midpoint(vertex_p0(), vertex_p1());
  double prev = 1e9;
  for (int m = 1; m <= 5; ++m) {
    const double d = geodesic_distance(m01, m12, m).value;
    CHECK(d <= prev + 1e-12);
    prev = d;
  }

  // symmetry + triangle inequality on all level-2 vertex pairs
  const auto g = build_graph(2);
  const int n = int(g->vertices.size());
  Eigen::MatrixXd dist(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      dist(i, j) = geodesic_distance(g->vertices[i], g->vertices[j], 2).value;
  for (int i = 0; i < n; ++i) {
    CHECK(dist(i, i) == 0.0);
    for (int j = 0; j < n; ++j) {
      CHECK(dist(i, j) == doctest::Approx(dist(j, i)));
      for (int k = 0; k < n; ++k)
        CHECK(dist(i, j) <= dist(i, k) + dist(k, j) + 1e-12);
    }
  }

  // on-edge dyadic subdivision
  const GasketPoint quarter{Dyadic(1, 2), Dyadic::integer(0)};  // (1/4, 0)
  CHECK(geodesic_distance(vertex_p0(), quarter, 1).value == doctest::Approx(0.25));
}

TEST_CASE("dyadic arithmetic is exact and normalized") {
  const Dyadic a(3, 2);   // 3/4
  const Dyadic b(1, 1);   // 1/2
  CHECK((a + b) == Dyadic(5, 2));
  CHECK((a - b) == Dyadic(1, 2));
  CHECK((a * b) == Dyadic(3, 3));
  CHECK(Dyadic(4, 2) == Dyadic::integer(1));
  CHECK(Dyadic(0, 7) == Dyadic::integer(0));
  CHECK(in_gasket(midpoint(vertex_p0(), vertex_p1())));
  CHECK(in_gasket(GasketPoint{Dyadic(1, 2), Dyadic::integer(0)}));
  CHECK(!in_gasket(GasketPoint{Dyadic(1, 1), Dyadic(1, 3)}));  // inside main lacuna
}
