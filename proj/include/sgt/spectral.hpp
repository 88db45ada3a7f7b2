#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "sgt/energy.hpp"
#include "sgt/gasket.hpp"
#include "sgt/types.hpp"

namespace sgt {

/// The deformation parameters (alpha, beta) with the derived dimensions and
/// the admissibility flags of the (beta, alpha) plane.
struct TripleParams {
  double alpha = 0.85;
  double beta = 1.0;

  TripleParams() = default;
  TripleParams(double a, double b);

  double dimension_d() const;        // log 3 / (beta log 2)
  double metric_dimension() const;   // max(1/alpha, d)
  double energy_dimension() const;   // 2 - log(5/3)/(beta log 2)
  static double alpha0();            // log(10/3)/log 4

  bool volume_ok() const;  // beta < alpha log3/log2, i.e. d > 1/alpha
  bool energy_ok() const;  // 1/alpha < delta and alpha <= alpha0
  bool metric_ok() const;  // beta <= 1
};

struct DimensionReport {
  double d = 0.0;
  double d_metric = 0.0;
  double delta = 0.0;
  double inv_alpha = 0.0;
  std::vector<std::complex<double>> poles;  // {1/alpha} then d(1 + 2 pi i k/log 3)
  bool volume_ok = false, energy_ok = false, metric_ok = false;
};

/// Zeta function of the triple, proof normalization:
///   Z_D(s) = 4 (2 pi)^{-s} zeta(alpha s) (1 - 3 * 2^{-beta s})^{-1};
/// with include_two_pi_factor = false the bare display form 4 zeta(alpha s) /
/// (1 - 3 * 2^{-beta s}) is returned instead.
std::complex<double> zeta_D(std::complex<double> s, const TripleParams& params,
                            bool include_two_pi_factor = true);

DimensionReport dimension_report(const TripleParams& params, int k_max = 3);

/// Residue volume of the cell C_tau:
///   vol(C_tau) = (4 d / log 3) zeta(alpha d) (2 pi)^{-d} 3^{-|tau|}.
double cell_volume(const Word& tau, const TripleParams& params);

/// Brute-force check of the volume residue: eigenvalue sums over words
/// sigma >= tau (|sigma| <= m explicit, exact geometric completion beyond)
/// and modes k <= K (Euler-Maclaurin corrected), extrapolated to s = d along
/// offsets via zeta-normalized Richardson.
ResidueEstimate volume_residue_check(const Word& tau, const TripleParams& params, int m,
                                     int k_max,
                                     const std::vector<double>& offsets = {0.2, 0.1, 0.05});

/// The restriction constants of the residue-energy reconstruction, computed
/// from a 0-harmonic function h at lacuna sampling level L:
///   K2 = ||d_alpha (h|lacuna)||^2 / E[h],   C_k = ||S^*_h d_alpha e_k||^2 / E[h].
/// The ratios do not depend on the choice of h.
struct HarmonicConstants {
  double alpha = 0.0;
  double k2 = 0.0;
  std::vector<double> c;  // C_k for k = 1..K (single-sign; C_{-k} = C_k)
  int level_l = 0;

  double c_of(double s) const;        // sum over k != 0 of C_k |k|^{-(s+2) alpha}
  double c_tail_bound(double s) const;
};
HarmonicConstants harmonic_constants(const TripleParams& params, int level_l, int k_max);

/// Precomputed per-level aggregates of the commutator trace of f: the lacuna
/// restriction data of every word up to length m, reusable across s.
struct EnergyTraceData {
  TripleParams params;
  int m = 0, k_max = 0, level_l = 0;
  double graph_energy_value = 0.0;
  double k1_hat = 0.0;                           // empirical restriction constant
  std::vector<double> level_energy;              // sum over |sigma|=n of E_alpha(g_sigma)
  std::vector<std::vector<double>> level_channel;  // [n][k-1]: summed two-sign channels
};
EnergyTraceData precompute_energy_trace(const VertexFunction<double>& f,
                                        const TripleParams& params, int m, int k_max,
                                        int level_l);

/// tr(|D|^{-s/2} |[D,f]|^2 |D|^{-s/2}) at real s > max(1/alpha, delta):
/// explicit words up to length m, geometric completion with ratio
/// (3/5) 2^{beta(2-s)} beyond (exact for harmonic f), zetaEst-style bound
/// via the empirical K1.
ResidueEstimate energy_trace_at(const EnergyTraceData& data, double s);
ResidueEstimate energy_trace(const VertexFunction<double>& f, const TripleParams& params,
                             double s, int m, int k_max, int level_l);

/// Residue at the energy dimension: zeta-normalized Richardson extrapolation
/// of (s - delta) tr(...) / zeta(alpha s), rescaled by zeta(alpha delta).
/// For harmonic f this matches (beta log 2)^{-1} (2 K2 zeta(alpha delta) +
/// C(delta)) E[f].
ResidueEstimate energy_residue(const VertexFunction<double>& f, const TripleParams& params,
                               int m, int k_max, int level_l,
                               const std::vector<double>& offsets = {0.2, 0.1, 0.05});

}  // namespace sgt
