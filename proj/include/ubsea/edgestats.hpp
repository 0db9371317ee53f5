#pragma once

#include <cstdint>

#include "ubsea/graph.hpp"
#include "ubsea/partition.hpp"

namespace ubsea {

/// Edges with both endpoints in community 1 (r1) and in community 2 (r2).
struct WithinCounts {
  std::int64_t r1 = 0;
  std::int64_t r2 = 0;
  bool operator==(const WithinCounts&) const = default;
};

/// Permutation-null mean and standard deviation of R_w and R_d for fixed
/// group sizes. A variance below 1e-12 * (|G|^2 + 1) is clamped to zero and
/// flagged.
struct MomentSet {
  double mu_w = 0, sigma_w = 0;
  double mu_d = 0, sigma_d = 0;
  bool degenerate_w = false;
  bool degenerate_d = false;
};

/// Change in (R1, R2) when one node switches community.
struct FlipDelta {
  std::int64_t d_r1 = 0;
  std::int64_t d_r2 = 0;
  bool operator==(const FlipDelta&) const = default;
};

WithinCounts within_counts(const Graph& g, const Partition& x);

/// ((n_x - 1) R1 + (m_x - 1) R2) / (N - 2)
double r_w(WithinCounts c, std::int64_t m_x, std::int64_t n_x);
inline double r_d(WithinCounts c) { return static_cast<double>(c.r1 - c.r2); }
double r_w(const Graph& g, const Partition& x);
double r_d(const Graph& g, const Partition& x);

/// Closed-form moments. Requires m_x, n_x >= 2 and N >= 4; throws
/// std::invalid_argument otherwise.
MomentSet perm_null_moments(const GraphConstants& c, std::int64_t m_x, std::int64_t n_x);

/// Standardized statistics; zero when the matching variance is degenerate.
double z_w(WithinCounts counts, const MomentSet& mom, std::int64_t m_x, std::int64_t n_x);
double z_d(WithinCounts counts, const MomentSet& mom);
double z_w(const Graph& g, const GraphConstants& c, const Partition& x);
double z_d(const Graph& g, const GraphConstants& c, const Partition& x);

/// Everything the moments debug surface reports for one labeling.
struct StatisticsReport {
  WithinCounts counts;
  double r_w = 0, r_d = 0;
  MomentSet moments;
  double z_w = 0, z_d = 0;
};
StatisticsReport compute_statistics(const Graph& g, const GraphConstants& c, const Partition& x);

/// Degree totals of community 1. For undirected graphs out1 == in1 is the
/// degree sum.
struct GroupDegrees {
  std::int64_t out1 = 0;
  std::int64_t in1 = 0;
};
GroupDegrees group_degrees(const Graph& g, const Partition& x);

// Modularity reference objectives. Undirected graphs use the ordered double
// sum with 2m = sum of degrees; directed graphs use k_i^out k_j^in / |G| as the
// expected count. Both throw std::invalid_argument on an edgeless graph.
double modularity_q(const Graph& g, const Partition& x);
double q_d(const Graph& g, const Partition& x);
double modularity_q(const Graph& g, WithinCounts counts, GroupDegrees deg);
double q_d(const Graph& g, WithinCounts counts, GroupDegrees deg);

/// O(deg i) change of (R1, R2) if node i flips.
FlipDelta flip_delta(const Graph& g, const Partition& x, NodeId i);

}  // namespace ubsea
