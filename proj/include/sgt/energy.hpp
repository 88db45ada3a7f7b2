#pragma once

#include <utility>
#include <vector>

#include "sgt/circle.hpp"
#include "sgt/gasket.hpp"
#include "sgt/numerics.hpp"
#include "sgt/rational.hpp"

namespace sgt {

/// Real values on the vertices of GraphLevel(level); the carrier of the
/// Kigami form. Templated on the scalar so the self-similarity identities can
/// be checked in exact rational arithmetic.
template <typename Scalar = double>
struct VertexFunction {
  int level = 0;
  std::vector<Scalar> values;  // indexed like build_graph(level)->vertices

  static VertexFunction boundary(Scalar v0, Scalar v1, Scalar v2) {
    VertexFunction f;
    f.level = 0;
    f.values = {v0, v1, v2};
    return f;
  }
};

namespace detail {
template <typename Scalar>
Scalar five_thirds_pow(int m) {
  Scalar r(1);
  for (int i = 0; i < m; ++i) r = r * Scalar(5) / Scalar(3);
  return r;
}
template <>
inline double five_thirds_pow<double>(int m) {
  return std::pow(5.0 / 3.0, double(m));
}
}  // namespace detail

/// (5/3)^m sum over E_m of |f(e+) - f(e-)|^2; equals E[f] for m-harmonic f.
template <typename Scalar>
Scalar graph_energy(const VertexFunction<Scalar>& f);

/// The unique energy minimizer among extensions of f to the target level;
/// each refinement fills cell midpoints by the 2-2-1 rule, which is the
/// closed-form solution of the per-cell 3x3 minimization.
template <typename Scalar>
VertexFunction<Scalar> harmonic_extend(const VertexFunction<Scalar>& f, int target_level);

/// Partial energy over edges inside the cell C_sigma at f's level.
template <typename Scalar>
Scalar cell_energy(const VertexFunction<Scalar>& f, const Word& sigma);

/// Restriction of f to cell i, reindexed to level - 1 (the pullback f o w_i).
template <typename Scalar>
VertexFunction<Scalar> restrict_to_cell(const VertexFunction<Scalar>& f, std::uint8_t letter);

/// Per-level decay of cell energies: entries (n, max_{|sigma|=n} E_C[f]/E[f])
/// for 0 <= n <= max_level. Throws on constant f.
std::vector<std::pair<int, double>> decay_profile(const VertexFunction<double>& f,
                                                  int max_level);

/// Samples f at the 3 * 2^L dyadic grid of the lacuna of sigma (vertices of
/// V_{|sigma|+1+L}), in the parametrization order. Extends harmonically when
/// f lives on a coarser level.
SampledCircleFunction restrict_to_lacuna(const VertexFunction<double>& f, const Word& sigma,
                                         int level_l);

/// Empirical restriction constant: sup over a q-harmonic corpus (q <= 3) of
/// spectral_energy(restriction, alpha) / graph_energy(f). Used for the
/// empirical-constant tail bounds downstream.
double k1_estimate(double alpha, int level_l);

extern template double graph_energy<double>(const VertexFunction<double>&);
extern template Rational graph_energy<Rational>(const VertexFunction<Rational>&);
extern template VertexFunction<double> harmonic_extend<double>(const VertexFunction<double>&,
                                                               int);
extern template VertexFunction<Rational> harmonic_extend<Rational>(
    const VertexFunction<Rational>&, int);
extern template double cell_energy<double>(const VertexFunction<double>&, const Word&);
extern template Rational cell_energy<Rational>(const VertexFunction<Rational>&, const Word&);
extern template VertexFunction<double> restrict_to_cell<double>(const VertexFunction<double>&,
                                                                std::uint8_t);
extern template VertexFunction<Rational> restrict_to_cell<Rational>(
    const VertexFunction<Rational>&, std::uint8_t);

}  // namespace sgt
