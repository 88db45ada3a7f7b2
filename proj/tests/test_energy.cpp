#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "sgt/energy.hpp"

using namespace sgt;

namespace {

// Dense variational oracle: minimize the level-m graph energy over all
// non-boundary vertices, by solving the normal equations, independent of the
// local extension rule.
VertexFunction<double> dense_harmonic(const VertexFunction<double>& boundary, int m) {
  const auto g = build_graph(m);
  const auto g0 = build_graph(boundary.level);
  const int n = int(g->vertices.size());
  std::vector<int> fixed(n, -1);
  for (std::size_t i = 0; i < g0->vertices.size(); ++i) {
    const int id = g->vertex_of(g0->vertices[i]);
    fixed[id] = int(i);
  }
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g->edges) {
    lap(e.a, e.a) += 1.0;
    lap(e.b, e.b) += 1.0;
    lap(e.a, e.b) -= 1.0;
    lap(e.b, e.a) -= 1.0;
  }
  std::vector<int> free_ids;
  for (int i = 0; i < n; ++i)
    if (fixed[i] < 0) free_ids.push_back(i);
  const int nf = int(free_ids.size());
  Eigen::MatrixXd a(nf, nf);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nf);
  for (int r = 0; r < nf; ++r) {
    for (int c = 0; c < nf; ++c) a(r, c) = lap(free_ids[r], free_ids[c]);
    for (int i = 0; i < n; ++i)
      if (fixed[i] >= 0) rhs[r] -= lap(free_ids[r], i) * boundary.values[fixed[i]];
  }
  const Eigen::VectorXd sol = a.ldlt().solve(rhs);
  VertexFunction<double> out;
  out.level = m;
  out.values.assign(n, 0.0);
  for (int i = 0; i < n; ++i)
    if (fixed[i] >= 0) out.values[i] = boundary.values[fixed[i]];
  for (int r = 0; r < nf; ++r) out.values[free_ids[r]] = sol[r];
  return out;
}

}  // namespace

TEST_CASE("graph_energy: base examples") {
  CHECK(graph_energy(VertexFunction<double>::boundary(1, 0, 0)) == doctest::Approx(2.0));
  CHECK(graph_energy(VertexFunction<double>::boundary(3, 3, 3)) == 0.0);
}

TEST_CASE("harmonic_extend: midpoint rule, invariance, idempotence") {
  const auto f0 = VertexFunction<double>::boundary(1, 0, 0);
  const auto f1 = harmonic_extend(f0, 1);
  const auto g1 = build_graph(1);
  const auto val = [&](const GasketPoint& p) { return f1.values[g1->vertex_of(p)]; };
  CHECK(val(midpoint(vertex_p0(), vertex_p1())) == doctest::Approx(0.4));
  CHECK(val(midpoint(vertex_p0(), vertex_p2())) == doctest::Approx(0.4));
  CHECK(val(midpoint(vertex_p1(), vertex_p2())) == doctest::Approx(0.2));
  CHECK(graph_energy(f1) == doctest::Approx(2.0).epsilon(1e-14));

  // energy invariant through level 6 (acceptance 6 core)
  for (int m = 2; m <= 6; ++m) {
    CHECK(graph_energy(harmonic_extend(f0, m)) == doctest::Approx(2.0).epsilon(1e-12));
  }

  // constants extend to constants
  const auto c = harmonic_extend(VertexFunction<double>::boundary(2, 2, 2), 3);
  for (const double v : c.values) CHECK(v == doctest::Approx(2.0));

  // idempotence: extend 0->1->3 equals 0->3
  const auto via = harmonic_extend(harmonic_extend(f0, 1), 3);
  const auto direct = harmonic_extend(f0, 3);
  for (std::size_t i = 0; i < via.values.size(); ++i)
    CHECK(via.values[i] == doctest::Approx(direct.values[i]).epsilon(1e-14));
}

TEST_CASE("harmonic_extend agrees with the dense variational solve") {
  for (int m = 1; m <= 3; ++m) {
    const auto f0 = VertexFunction<double>::boundary(1.0, -0.5, 2.0);
    const auto local = harmonic_extend(f0, m);
    const auto dense = dense_harmonic(f0, m);
    for (std::size_t i = 0; i < local.values.size(); ++i)
      CHECK(local.values[i] == doctest::Approx(dense.values[i]).epsilon(1e-10));
  }
}

TEST_CASE("maximum principle on the corpus") {
  const double data[][3] = {{1, 0, 0}, {0.3, -1, 2}, {5, 5, 4}};
  for (const auto& b : data) {
    const auto f = harmonic_extend(VertexFunction<double>::boundary(b[0], b[1], b[2]), 4);
    const double lo = std::min({b[0], b[1], b[2]}), hi = std::max({b[0], b[1], b[2]});
    for (const double v : f.values) {
      CHECK(v >= lo - 1e-14);
      CHECK(v <= hi + 1e-14);
    }
  }
}

TEST_CASE("cell_energy: level-1 split of the (1,0,0) extension") {
  const auto f1 = harmonic_extend(VertexFunction<double>::boundary(1, 0, 0), 1);
  CHECK(cell_energy(f1, Word::parse("0")) == doctest::Approx(6.0 / 5.0));
  CHECK(cell_energy(f1, Word::parse("1")) == doctest::Approx(2.0 / 5.0));
  CHECK(cell_energy(f1, Word::parse("2")) == doctest::Approx(2.0 / 5.0));
  // additivity over |sigma| = 1
  const double total = cell_energy(f1, Word::parse("0")) + cell_energy(f1, Word::parse("1")) +
                       cell_energy(f1, Word::parse("2"));
  CHECK(total == doctest::Approx(graph_energy(f1)));
  // constants vanish cellwise
  const auto c1 = harmonic_extend(VertexFunction<double>::boundary(1, 1, 1), 2);
  CHECK(cell_energy(c1, Word::parse("01")) == 0.0);
}

TEST_CASE("exact rational self-similarity of the energy") {
  using R = Rational;
  const auto f0 = VertexFunction<R>::boundary(R(1), R(0), R(0));
  for (int m = 1; m <= 4; ++m) {
    const auto f = harmonic_extend(f0, m);
    // E[f] = (5/3) sum_i E[f o w_i], exactly
    R rhs(0);
    for (std::uint8_t i = 0; i < 3; ++i) rhs += graph_energy(restrict_to_cell(f, i));
    CHECK(graph_energy(f) == R(5, 3) * rhs);
    CHECK(graph_energy(f) == R(2));
    // rescaling: E[f o w_i] = (3/5) E_{C_i}[f]
    for (std::uint8_t i = 0; i < 3; ++i) {
      Word w;
      w.letters = {i};
      CHECK(graph_energy(restrict_to_cell(f, i)) == R(3, 5) * cell_energy(f, w));
    }
  }
}

TEST_CASE("monotonicity: non-harmonic extensions only raise energy") {
  auto f1 = harmonic_extend(VertexFunction<double>::boundary(1, 0, 0), 1);
  const double base = graph_energy(f1);
  f1.values[4] += 0.25;  // spoil one midpoint
  CHECK(graph_energy(f1) > base);
  // and harmonic re-extension of the spoiled data keeps its new level-1 energy
  const auto f3 = harmonic_extend(f1, 3);
  CHECK(graph_energy(f3) == doctest::Approx(graph_energy(f1)).epsilon(1e-13));
}

TEST_CASE("decay_profile: k-harmonic decay bound (3/5)^{n-k}") {
  // 0-harmonic
  const auto f = harmonic_extend(VertexFunction<double>::boundary(1, 0, 0), 5);
  const auto prof = decay_profile(f, 4);
  CHECK(prof[1].second == doctest::Approx(3.0 / 5.0));
  for (const auto& [n, ratio] : prof) CHECK(ratio <= std::pow(3.0 / 5.0, n) + 1e-12);

  // 1-harmonic: perturb level-1 data
  auto g1 = harmonic_extend(VertexFunction<double>::boundary(1, 0, 0), 1);
  g1.values[3] += 1.0;
  const auto g = harmonic_extend(g1, 5);
  const auto gprof = decay_profile(g, 4);
  for (const auto& [n, ratio] : gprof)
    CHECK(ratio <= std::pow(3.0 / 5.0, std::max(0, n - 1)) + 1e-12);

  CHECK_THROWS_AS(decay_profile(harmonic_extend(VertexFunction<double>::boundary(1, 1, 1), 2), 1),
                  RegimeError);
}

TEST_CASE("restrict_to_lacuna: constants, convention order, affine scaling") {
  // constants
  const auto c = harmonic_extend(VertexFunction<double>::boundary(3, 3, 3), 4);
  const auto cs = restrict_to_lacuna(c, Word{}, 3);
  for (int i = 0; i < cs.size(); ++i) CHECK(cs.samples[i].real() == doctest::Approx(3.0));

  // corner values in convention order for the 0-harmonic (1,0,0), L = 0
  const auto f = VertexFunction<double>::boundary(1, 0, 0);
  const auto s = restrict_to_lacuna(f, Word{}, 0);
  REQUIRE(s.size() == 3);
  CHECK(s.samples[0].real() == doctest::Approx(0.4));
  CHECK(s.samples[1].real() == doctest::Approx(0.2));
  CHECK(s.samples[2].real() == doctest::Approx(0.4));

  // affine functions: restriction to sigma is const + 2^{-|sigma|} base restriction.
  // Assigned directly at the sampling depth: harmonic extension of affine
  // boundary data is not the plane-affine function.
  const int L = 2;
  const auto g4 = build_graph(1 + 1 + L);
  VertexFunction<double> affine;
  affine.level = g4->level;
  affine.values.resize(g4->vertices.size());
  for (std::size_t i = 0; i < g4->vertices.size(); ++i) {
    const auto p = g4->vertices[i].to_plane();
    affine.values[i] = 2.0 * p.x() - 0.7 * p.y();
  }
  const auto base = restrict_to_lacuna(affine, Word{}, L);
  for (const std::string ws : {"0", "1", "2"}) {
    const auto restr = restrict_to_lacuna(affine, Word::parse(ws), L);
    const double shift = (restr.samples[0] - 0.5 * base.samples[0]).real();
    for (int i = 0; i < restr.size(); ++i)
      CHECK(restr.samples[i].real() ==
            doctest::Approx(shift + 0.5 * base.samples[i].real()).epsilon(1e-12));
  }
}

TEST_CASE("k1_estimate is finite and positive") {
  const double k1 = k1_estimate(0.85, 4);
  CHECK(k1 > 0.0);
  CHECK(k1 < 100.0);
}
