#include "ubsea/edgestats.hpp"

#include <cmath>
#include <stdexcept>

namespace ubsea {

namespace {

void require_same_size(const Graph& g, const Partition& x) {
  if (x.size() != static_cast<std::size_t>(g.node_count()))
    throw std::invalid_argument("partition length does not match node count");
}

double clamp_variance(double var, double g_size, bool& degenerate) {
  degenerate = var < 1e-12 * (g_size * g_size + 1.0);
  return degenerate ? 0.0 : var;
}

}  // namespace

WithinCounts within_counts(const Graph& g, const Partition& x) {
  require_same_size(g, x);
  WithinCounts c;
  for (const auto& [u, v] : g.edges()) {
    if (x[u] != x[v]) continue;
    if (x[u])
      ++c.r1;
    else
      ++c.r2;
  }
  return c;
}

double r_w(WithinCounts c, std::int64_t m_x, std::int64_t n_x) {
  const double N = static_cast<double>(m_x + n_x);
  return (static_cast<double>(n_x - 1) * c.r1 + static_cast<double>(m_x - 1) * c.r2) / (N - 2);
}

double r_w(const Graph& g, const Partition& x) {
  if (g.node_count() < 3) throw std::invalid_argument("R_w needs N >= 3");
  return r_w(within_counts(g, x), x.ones(), x.zeros());
}

double r_d(const Graph& g, const Partition& x) { return r_d(within_counts(g, x)); }

MomentSet perm_null_moments(const GraphConstants& c, std::int64_t m_x, std::int64_t n_x) {
  if (m_x < 2 || n_x < 2)
    throw std::invalid_argument("both communities need at least 2 nodes");
  const double m = static_cast<double>(m_x), n = static_cast<double>(n_x);
  const double N = m + n;
  const double G = static_cast<double>(c.g_size);
  const double q1 = c.directed ? static_cast<double>(c.q1) : 0.0;
  const double q2 = static_cast<double>(c.q2);

  MomentSet s;
  s.mu_w = (m - 1) * (n - 1) / ((N - 1) * (N - 2)) * G;
  s.mu_d = (m - n) / N * G;

  const double var_w = m * n * (m - 1) * (n - 1) / (N * (N - 1) * (N - 2) * (N - 2)) *
                       (G + q1 - G * G / (N - 1) + q2 / (N - 3));
  const double var_d = m * n / (N * (N - 1)) * (G + q1 + G * G * (N - 4) / N - q2);

  s.sigma_w = std::sqrt(clamp_variance(var_w, G, s.degenerate_w));
  s.sigma_d = std::sqrt(clamp_variance(var_d, G, s.degenerate_d));
  return s;
}

double z_w(WithinCounts counts, const MomentSet& mom, std::int64_t m_x, std::int64_t n_x) {
  if (mom.degenerate_w) return 0.0;
  return (r_w(counts, m_x, n_x) - mom.mu_w) / mom.sigma_w;
}

double z_d(WithinCounts counts, const MomentSet& mom) {
  if (mom.degenerate_d) return 0.0;
  return (r_d(counts) - mom.mu_d) / mom.sigma_d;
}

double z_w(const Graph& g, const GraphConstants& c, const Partition& x) {
  const auto mom = perm_null_moments(c, x.ones(), x.zeros());
  return z_w(within_counts(g, x), mom, x.ones(), x.zeros());
}

double z_d(const Graph& g, const GraphConstants& c, const Partition& x) {
  const auto mom = perm_null_moments(c, x.ones(), x.zeros());
  return z_d(within_counts(g, x), mom);
}

StatisticsReport compute_statistics(const Graph& g, const GraphConstants& c, const Partition& x) {
  StatisticsReport r;
  r.counts = within_counts(g, x);
  r.r_w = r_w(r.counts, x.ones(), x.zeros());
  r.r_d = r_d(r.counts);
  r.moments = perm_null_moments(c, x.ones(), x.zeros());
  r.z_w = z_w(r.counts, r.moments, x.ones(), x.zeros());
  r.z_d = z_d(r.counts, r.moments);
  return r;
}

GroupDegrees group_degrees(const Graph& g, const Partition& x) {
  require_same_size(g, x);
  GroupDegrees d;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    if (!x[i]) continue;
    d.out1 += g.out_degree(i);
    d.in1 += g.in_degree(i);
  }
  return d;
}

double modularity_q(const Graph& g, WithinCounts counts, GroupDegrees deg) {
  const double G = static_cast<double>(g.edge_count());
  if (G == 0) throw std::invalid_argument("modularity undefined on an edgeless graph");
  const double within = static_cast<double>(counts.r1 + counts.r2);
  if (g.directed()) {
    const double out0 = G - deg.out1, in0 = G - deg.in1;
    return within - (static_cast<double>(deg.out1) * deg.in1 + out0 * in0) / G;
  }
  const double k1 = static_cast<double>(deg.out1), k0 = 2 * G - k1;
  return 2 * within - (k1 * k1 + k0 * k0) / (2 * G);
}

double q_d(const Graph& g, WithinCounts counts, GroupDegrees deg) {
  const double G = static_cast<double>(g.edge_count());
  if (G == 0) throw std::invalid_argument("modularity undefined on an edgeless graph");
  const double diff = static_cast<double>(counts.r1 - counts.r2);
  if (g.directed()) {
    const double out0 = G - deg.out1, in0 = G - deg.in1;
    return diff - (static_cast<double>(deg.out1) * deg.in1 - out0 * in0) / G;
  }
  const double k1 = static_cast<double>(deg.out1), k0 = 2 * G - k1;
  return 2 * diff - (k1 * k1 - k0 * k0) / (2 * G);
}

double modularity_q(const Graph& g, const Partition& x) {
  return modularity_q(g, within_counts(g, x), group_degrees(g, x));
}

double q_d(const Graph& g, const Partition& x) {
  return q_d(g, within_counts(g, x), group_degrees(g, x));
}

FlipDelta flip_delta(const Graph& g, const Partition& x, NodeId i) {
  require_same_size(g, x);
  std::int64_t to_one = 0, to_zero = 0;
  auto tally = [&](std::span<const NodeId> nb) {
    for (NodeId j : nb) {
      if (x[j])
        ++to_one;
      else
        ++to_zero;
    }
  };
  tally(g.out_neighbors(i));
  if (g.directed()) tally(g.in_neighbors(i));
  if (x[i]) return {-to_one, to_zero};
  return {to_one, -to_zero};
}

}  // namespace ubsea
