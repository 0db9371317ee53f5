#pragma once

#include <cstdint>
#include <utility>

#include "ubsea/genmodels.hpp"
#include "ubsea/graph.hpp"

namespace ubsea::oracle {

/// Exact mean and population variance of R_w and R_d over every labeling
/// with m_x ones. Accumulated in integers, so the only rounding is the final
/// division.
struct NullMoments {
  double mean_rw = 0, var_rw = 0;
  double mean_rd = 0, var_rd = 0;
};

/// N <= 12, 2 <= m_x <= N - 2.
NullMoments enumerate_null_moments(const Graph& g, int m_x);

/// SBM expectations for a labeling that moves d1 of the m community-1 nodes
/// into community 2 and d2 of the n community-2 nodes into community 1.
/// rdc = E(R_d - mu_d) and rwc = E(R_w - mu_w) use the factored closed
/// forms; e_mu_d and e_mu_w are the expected null means, so the factored
/// forms can be checked against e_r1/e_r2 directly. Undirected values are
/// half the directed ones and require p12 == p21.
struct SbmExpectations {
  double e_r1 = 0, e_r2 = 0;
  double e_mu_d = 0, e_mu_w = 0;
  double rdc = 0, rwc = 0;
};

SbmExpectations expected_counts_sbm(const ConnectivityMatrix& P, int m, int n, int d1, int d2,
                                    bool directed);

/// Where the population signals rdc / sigma_d and rwc / sigma_w peak over
/// the full (d1, d2) grid. Only the size-dependent factors of sigma are used:
/// sqrt(m_x n_x) and sqrt(m_x n_x (m_x - 1)(n_x - 1)). Grid points leaving a
/// community with fewer than 2 nodes are skipped.
struct TheoremGridReport {
  /// 2(m-1)P11 - 2(n-1)P22 - (m-n)(P12+P21)
  double d_factor = 0;
  /// P11 + P22 - P12 - P21
  double w_sum = 0;
  bool d_identically_zero = false;
  /// d_factor != 0 and the maximum of rdc/sigma_d sits at (0,0) or (m,n).
  bool d_extremum_at_truth = false;
  /// w_sum != 0 and the maximum (w_sum > 0) or minimum (w_sum < 0) of
  /// rwc/sigma_w sits at (0,0) or (m,n).
  bool w_extremum_at_truth = false;
  std::pair<int, int> d_argmax{0, 0};
  std::pair<int, int> w_argext{0, 0};
};

/// m, n in [2, 30].
TheoremGridReport verify_population_extrema(const ConnectivityMatrix& P, int m, int n);

}  // namespace ubsea::oracle
