#pragma once

#include <vector>

#include "sgt/energy.hpp"
#include "sgt/spectral.hpp"

namespace sgt {

/// Holder comparison constants of the circle seminorm p_alpha:
///   p_alpha(f) <= c_eps ||f||_{0,alpha+eps},  c~_alpha ||f||_{0,alpha} <= p_alpha(f).
double holder_c_eps(double eps);
double holder_c_tilde(double alpha);

/// Commutator norm sup_{|sigma| <= m} 2^{beta |sigma|} p_alpha(f o w_sigma),
/// with an empirical tail bound for deeper words from the measured Holder
/// decay exponent of f across levels.
ResidueEstimate commutator_norm(const VertexFunction<double>& f, const TripleParams& params,
                                int m, int level_l);

struct DistanceBound {
  double lower = 0.0;          // certified by a feasible function
  double envelope_low = 0.0;   // (1/c_{beta-alpha}) rho_geo^beta, valid for beta > alpha
  double envelope_high = 0.0;  // 8 * 2^{-alpha} c~_alpha^{-1} (1-2^{-beta})^{-1} rho_geo^beta
  double rho_geo = 0.0;
  int level = 0;
  struct Diagnostics {
    int iterations = 0;
    double final_constraint = 0.0;  // max_sigma 2^{beta|sigma|} p_alpha after projection
    double seed_value = 0.0;        // best seed objective before ascent
    bool feasible = false;
  } diagnostics;
};

/// Lower bound for the Connes distance rho_D(x, y): maximizes f(x) - f(y)
/// over level-m vertex functions under the commutator constraints
/// 2^{beta |sigma|} p_alpha(f o w_sigma) <= 1 for all words up to
/// constraint_depth (default m + 1), by projected subgradient ascent with
/// exact radial projection (the constraints are positively homogeneous).
/// Levels are chained with warm starts; with a fixed constraint_depth the
/// feasible sets nest under harmonic extension, so the reported bounds are
/// nondecreasing in m. Any feasible point certifies a bound; upper estimates
/// are reported only as the analytic envelope.
DistanceBound connes_distance_lower(const GasketPoint& x, const GasketPoint& y,
                                    const TripleParams& params, int m, int level_l,
                                    int iterations = 160, unsigned seed = 1,
                                    int constraint_depth = -1);

}  // namespace sgt
