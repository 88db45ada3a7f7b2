#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "sgt/khomology.hpp"

using namespace sgt;

TEST_CASE("winding_number: modes, constants, additivity") {
  CHECK(winding_number(SymbolLoop::mode(3, 256)) == 3);
  CHECK(winding_number(SymbolLoop::constant({2.0, 0.0}, 64)) == 0);
  CHECK(winding_number(SymbolLoop::mode(-4, 256)) == -4);

  std::mt19937 rng(17);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  int built = 0;
  while (built < 6) {
    std::vector<std::pair<int, std::complex<double>>> cu, cv;
    for (int k = -3; k <= 3; ++k) {
      cu.emplace_back(k, std::complex<double>(unif(rng), unif(rng)) * 0.25);
      cv.emplace_back(k, std::complex<double>(unif(rng), unif(rng)) * 0.25);
    }
    cu.emplace_back(0, std::complex<double>(1.5, 0.0));
    cv.emplace_back(1, std::complex<double>(1.5, 0.0));
    auto u = SymbolLoop::from_coeffs(cu, 512), v = SymbolLoop::from_coeffs(cv, 512);
    double mu = 1e9, mv = 1e9;
    for (int j = 0; j < 512; ++j) {
      mu = std::min(mu, std::abs(u.samples[j]));
      mv = std::min(mv, std::abs(v.samples[j]));
    }
    if (mu < 0.3 || mv < 0.3) continue;
    ++built;
    SymbolLoop prod;
    prod.samples = u.samples.cwiseProduct(v.samples);
    CHECK(winding_number(prod) == winding_number(u) + winding_number(v));
  }

  SymbolLoop zero = SymbolLoop::constant({0.0, 0.0}, 64);
  CHECK_THROWS_AS(winding_number(zero), RegimeError);
  // aliasing: k = n/2 gives phase steps of exactly pi
  CHECK_THROWS_AS(winding_number(SymbolLoop::mode(8, 16)), ResourceError);
}

TEST_CASE("pairing_index: modes match <F+, e_k> = k (acceptance 11 core)") {
  for (int k = -5; k <= 5; ++k) {
    CHECK(pairing_index(SymbolLoop::mode(k, 512), 256) == k);
  }
  CHECK(pairing_index(SymbolLoop::constant({1.0, 0.0}, 64), 256) == 0);
}

TEST_CASE("pairing_index: equals winding for random invertible trig symbols") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  int built = 0;
  while (built < 8) {
    std::vector<std::pair<int, std::complex<double>>> c;
    for (int k = -5; k <= 5; ++k)
      c.emplace_back(k, std::complex<double>(unif(rng), unif(rng)) * 0.3);
    const int kick = int(rng() % 5) - 2;
    c.emplace_back(kick, std::complex<double>(2.0, 0.0));
    auto u = SymbolLoop::from_coeffs(c, 512);
    double mu = 1e9;
    for (int j = 0; j < 512; ++j) mu = std::min(mu, std::abs(u.samples[j]));
    if (mu < 0.4) continue;
    ++built;
    CHECK(pairing_index(u, 256) == winding_number(u));
  }
}

TEST_CASE("sector indices sum to zero (tame degeneration)") {
  for (int k : {2, -3, 1}) {
    const auto s = sector_indices(SymbolLoop::mode(k, 256), 128);
    CHECK(s.plus == k);
    CHECK(s.zero == 0);
    CHECK(s.minus == -k);
    CHECK(s.classical_sum() == 0);
  }
}

TEST_CASE("module_relations_check: all identities exact at K = 8") {
  const auto r = module_relations_check(0.5, 8);
  CHECK(r.f_squared_ok);
  CHECK(r.eps_f_commute_ok);
  CHECK(r.eps_skew_ok);
  CHECK(r.grading_anticommutes_f);
  CHECK(r.grading_anticommutes_eps);
  CHECK(r.p0_sector_trivial);
  CHECK(r.sector_sum_zero);
  CHECK(r.all());
  CHECK_THROWS_AS(module_relations_check(0.5, 4), RegimeError);
}

TEST_CASE("gasket_pairing: generators hit their own lacuna only") {
  // sigma = empty: 1 on its lacuna, 0 on the three level-1 lacunas
  CHECK(gasket_pairing(Word{}, Word{}, 96) == 1);
  for (const std::string t : {"0", "1", "2"})
    CHECK(gasket_pairing(Word{}, Word::parse(t), 96) == 0);

  // full indicator vectors up to level 2
  for (const std::string s : {"", "2", "01"}) {
    const Word sigma = Word::parse(s);
    const auto vec = gasket_pairing_vector(sigma, 2, 96);
    for (const auto& [tau, idx] : vec) CHECK(idx == (tau == sigma ? 1 : 0));
  }
}

TEST_CASE("constant symbol pairs trivially with every lacuna") {
  // winding additivity makes u_sigma * u_tau pair as the sum of indicators
  const auto a = gasket_pairing_vector(Word::parse("0"), 1, 96);
  const auto b = gasket_pairing_vector(Word::parse("1"), 1, 96);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].second + b[i].second ==
          ((a[i].first == Word::parse("0")) ? 1 : 0) +
              ((a[i].first == Word::parse("1")) ? 1 : 0));
  }
}

TEST_CASE("commutator singular values decay and scale by 2^{-|sigma|}") {
  // an affine restriction: [S_sigma, f o w_sigma] = 2^{-|sigma|} [S, f], so the
  // direct-sum singular values are the union of scaled copies.
  const int n = 96;
  Eigen::VectorXd vals(n);
  for (int j = 0; j < n; ++j) {
    const double t = 2.0 * std::numbers::pi_v<double> * j / n;
    vals[j] = std::cos(t) + 0.3 * std::sin(2.0 * t);
  }
  const auto g = SampledCircleFunction::from_real(vals);
  const auto sv = commutator_singular_values(g, 24);
  // nonincreasing and decaying
  for (int i = 1; i < sv.size(); ++i) CHECK(sv[i] <= sv[i - 1] + 1e-12);
  CHECK(sv[sv.size() - 1] < 0.05 * sv[0]);

  // stabilization proxy: the 100th singular value of the level-6 union is
  // within 10x of the level-8 one at matching rank
  auto union_values = [&](int max_level) {
    std::vector<double> all;
    for (int lev = 0; lev <= max_level; ++lev) {
      const double scale = std::ldexp(1.0, -lev);
      const std::size_t words = std::size_t(std::pow(3.0, lev));
      for (std::size_t w = 0; w < words; ++w)
        for (int i = 0; i < sv.size(); ++i) all.push_back(scale * sv[i]);
    }
    std::sort(all.rbegin(), all.rend());
    return all;
  };
  const auto u6 = union_values(6);
  const auto u8 = union_values(8);
  CHECK(u6[99] <= 10.0 * u8[99]);
  CHECK(u8[99] <= u6[99] + 1e-12);  // deeper union only refines the tail
  CHECK(u6[99] < u6[0]);
}
