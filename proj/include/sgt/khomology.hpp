#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "sgt/gasket.hpp"
#include "sgt/spectral.hpp"

namespace sgt {

/// Sampled invertible loop on the circle (all |samples| > 0).
struct SymbolLoop {
  Eigen::VectorXcd samples;
  int size() const { return int(samples.size()); }

  static SymbolLoop mode(int k, int n);                    // e^{ik theta}
  static SymbolLoop constant(std::complex<double> c, int n);
  static SymbolLoop from_coeffs(const std::vector<std::pair<int, std::complex<double>>>& c,
                                int n);
};

/// Total winding: argument increment / 2 pi. Requires invertibility and
/// consecutive phase steps below pi (else a refine error).
int winding_number(const SymbolLoop& u);

/// Pairing of the circle module with the class of u, in the convention
/// <F+, e_k> = k: computed as dim coker - dim ker of the compression
/// P+ u P+ on span{e_k : k > 0} through exact rectangular finite sections
/// with stabilization over three truncation sizes. (The classical Toeplitz
/// index convention is the negative of this.)
int pairing_index(const SymbolLoop& u, int n_trunc);

struct SectorIndices {
  int plus = 0;   // pairing on P_+ (our sign convention)
  int zero = 0;   // P_0 sector (1-dimensional)
  int minus = 0;  // P_- sector
  int classical_sum() const;  // sum of classical indices, must vanish
};
/// Indices of the three spectral sectors of F+ = S for an invertible symbol.
SectorIndices sector_indices(const SymbolLoop& u, int n_trunc);

/// Exact finite-section checks of the 1-graded module relations on the
/// 2(2K+1)-dimensional truncated space: F^2 = I - P0 with P0 = Q0 + (1-S^2),
/// i eps F = diag(W S W*, S) = i F eps, eps* = -eps, and the gradings.
struct ModuleRelationsReport {
  bool f_squared_ok = false;
  bool eps_f_commute_ok = false;
  bool eps_skew_ok = false;
  bool grading_anticommutes_f = false;
  bool grading_anticommutes_eps = false;
  bool p0_sector_trivial = false;   // ind(P0 u P0) = 0 (tame degeneracy witness)
  bool sector_sum_zero = false;     // sum_eps ind(P_eps u P_eps) = 0
  bool all() const {
    return f_squared_ok && eps_f_commute_ok && eps_skew_ok && grading_anticommutes_f &&
           grading_anticommutes_eps && p0_sector_trivial && sector_sum_zero;
  }
};
ModuleRelationsReport module_relations_check(double alpha, int k_trunc);

/// Pairing of the generator loop u_sigma (winding 1 on the lacuna of sigma,
/// extended by 1) against the lacuna of tau: 1 iff tau == sigma.
int gasket_pairing(const Word& sigma, const Word& tau, int n_samples);

/// Pairing vector of u_sigma against all lacunas up to the given level.
std::vector<std::pair<Word, int>> gasket_pairing_vector(const Word& sigma, int max_level,
                                                        int n_samples);

/// Singular values of the commutator [S, M_g] on the truncated circle space,
/// for g given by samples; the compactness proxy for the gasket module.
Eigen::VectorXd commutator_singular_values(const SampledCircleFunction& g, int k_trunc);

}  // namespace sgt
