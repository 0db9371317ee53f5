#include "ubsea/selection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ubsea/edgestats.hpp"

namespace ubsea {

namespace {

constexpr double kProbFloor = 1e-9;

bool same_split(const Partition& a, const Partition& b) {
  if (a.size() != b.size()) return false;
  return a == b || a == b.complement();
}

template <typename ScoreFn>
SelectionOutcome select_max(Criterion criterion, std::span<const CandidateFit> candidates,
                            ScoreFn&& score) {
  if (candidates.empty()) throw std::invalid_argument("no candidates to select from");
  SelectionOutcome out;
  out.criterion = criterion;
  std::ptrdiff_t best = -1;
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    out.kinds.push_back(candidates[k].kind);
    const bool excluded = candidates[k].fit.degenerate;
    out.excluded.push_back(excluded);
    out.scores.push_back(excluded ? 0.0 : score(candidates[k]));
    if (!excluded && (best < 0 || out.scores[k] > out.scores[best])) best = static_cast<std::ptrdiff_t>(k);
  }
  if (best < 0) throw DegenerateError("every candidate fit is degenerate");
  out.selected = static_cast<std::size_t>(best);
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (k == out.selected || out.excluded[k]) continue;
    if (out.scores[k] == out.scores[best] ||
        same_split(candidates[k].fit.labels, candidates[best].fit.labels))
      out.tie = true;
  }
  return out;
}

}  // namespace

BlockEstimates estimate_block_probs(const Graph& g, const Partition& x) {
  if (x.size() != static_cast<std::size_t>(g.node_count()))
    throw std::invalid_argument("partition length does not match node count");
  const std::int64_t n1 = x.ones(), n2 = x.zeros();
  if (n1 < 2 || n2 < 2) throw std::invalid_argument("both communities need at least 2 nodes");

  // counts[a][b]: edges from block a to block b, block 0 = label 1
  std::array<std::array<double, 2>, 2> counts{};
  for (const auto& [u, v] : g.edges()) counts[x[u] ? 0 : 1][x[v] ? 0 : 1] += 1;

  BlockEstimates est;
  est.size1 = n1;
  est.size2 = n2;
  const double N = static_cast<double>(n1 + n2);
  est.pi1 = n1 / N;
  est.pi2 = n2 / N;
  const double d1 = static_cast<double>(n1), d2 = static_cast<double>(n2);
  const double within_scale = g.directed() ? 1.0 : 0.5;
  auto& p = est.p_hat.p;
  p[0][0] = counts[0][0] / (d1 * (d1 - 1) * within_scale);
  p[1][1] = counts[1][1] / (d2 * (d2 - 1) * within_scale);
  if (g.directed()) {
    p[0][1] = counts[0][1] / (d1 * d2);
    p[1][0] = counts[1][0] / (d1 * d2);
  } else {
    p[0][1] = p[1][0] = (counts[0][1] + counts[1][0]) / (d1 * d2);
  }
  return est;
}

double gamma_sq(const BlockEstimates& est) {
  const auto& P = est.p_hat;
  const double mx = P.max();
  if (mx <= 0) return 0.0;
  const double num = 2 * est.pi1 * P.p11() - 2 * est.pi2 * P.p22() -
                     (est.pi1 - est.pi2) * (P.p12() + P.p21());
  return num * num / mx;
}

double tau_sq(const BlockEstimates& est) {
  const auto& P = est.p_hat;
  const double mx = P.max();
  if (mx <= 0) return 0.0;
  const double num = P.p11() + P.p22() - P.p12() - P.p21();
  return num * num / mx;
}

ThetaEstimates theta_mle(const Graph& g, const Partition& x) {
  if (x.size() != static_cast<std::size_t>(g.node_count()))
    throw std::invalid_argument("partition length does not match node count");
  const NodeId N = g.node_count();
  // Directed uses in + out degree against mean in + mean out, which is the
  // same ratio as total degree over mean total degree.
  std::array<double, 2> total{}, size{};
  for (NodeId i = 0; i < N; ++i) {
    const int b = x[i] ? 0 : 1;
    total[b] += static_cast<double>(g.degree(i));
    size[b] += 1;
  }
  ThetaEstimates est;
  est.theta_hat.resize(N, 1.0);
  for (NodeId i = 0; i < N; ++i) {
    const int b = x[i] ? 0 : 1;
    if (total[b] > 0) est.theta_hat[i] = static_cast<double>(g.degree(i)) / (total[b] / size[b]);
  }

  std::array<double, 2> sum{}, sum_sq{};
  for (NodeId i = 0; i < N; ++i) {
    const int b = x[i] ? 0 : 1;
    sum[b] += est.theta_hat[i];
    sum_sq[b] += est.theta_hat[i] * est.theta_hat[i];
  }
  auto pop_var = [&](int b) {
    if (size[b] == 0 || total[b] == 0) return 0.0;
    const double mean = sum[b] / size[b];
    return std::max(0.0, sum_sq[b] / size[b] - mean * mean);
  };
  est.var1 = pop_var(0);
  est.var2 = pop_var(1);
  return est;
}

PenalizedLoglik penalized_loglik(const Graph& g, const Partition& x, double lambda, Objective kind) {
  if (!(lambda >= 0)) throw std::invalid_argument("lambda must be >= 0");
  const auto blocks = estimate_block_probs(g, x);
  const auto theta = theta_mle(g, x);
  const NodeId N = g.node_count();
  const auto& th = theta.theta_hat;

  PenalizedLoglik out;
  auto prob = [&](NodeId i, NodeId j) {
    double p = blocks.p_hat.between(x[i], x[j]) * th[i] * th[j];
    if (p < kProbFloor || p > 1.0 - kProbFloor) {
      ++out.clamped;
      p = std::clamp(p, kProbFloor, 1.0 - kProbFloor);
    }
    return p;
  };

  // Every pair as a non-edge, then correct the edge terms.
  double ll = 0;
  for (NodeId i = 0; i < N; ++i) {
    const NodeId end = g.directed() ? N : i;
    for (NodeId j = 0; j < end; ++j) {
      if (i == j) continue;
      ll += std::log1p(-prob(i, j));
    }
  }
  for (const auto& [u, v] : g.edges()) {
    double p = blocks.p_hat.between(x[u], x[v]) * th[u] * th[v];
    p = std::clamp(p, kProbFloor, 1.0 - kProbFloor);
    ll += std::log(p) - std::log1p(-p);
  }
  out.loglik = ll;

  if (kind == Objective::ZdMax) {
    const auto within = within_counts(g, x);
    out.penalty = lambda * std::max(theta.var1 * static_cast<double>(within.r1),
                                    theta.var2 * static_cast<double>(within.r2));
  } else {
    out.penalty = lambda * (theta.var1 + theta.var2) * static_cast<double>(g.edge_count());
  }
  out.value = out.loglik - out.penalty;
  return out;
}

std::string_view criterion_name(Criterion c) {
  return c == Criterion::Penalized ? "penalized" : "gamma-tau";
}

Criterion parse_criterion(std::string_view name) {
  if (name == "penalized") return Criterion::Penalized;
  if (name == "gamma-tau") return Criterion::GammaTau;
  throw std::invalid_argument("unknown criterion '" + std::string(name) + "'");
}

SelectionOutcome gamma_tau_select(const Graph& g, std::span<const CandidateFit> candidates) {
  const double N = static_cast<double>(g.node_count());
  return select_max(Criterion::GammaTau, candidates, [&](const CandidateFit& c) {
    const auto est = estimate_block_probs(g, c.fit.labels);
    switch (c.kind) {
      case Objective::ZdMax: return N * gamma_sq(est);
      case Objective::ZwMax:
      case Objective::ZwMin: return N * tau_sq(est);
      default: throw std::invalid_argument("gamma-tau scores only Z_w and Z_d candidates");
    }
  });
}

SelectionOutcome penalized_select(const Graph& g, std::span<const CandidateFit> candidates,
                                  double lambda) {
  return select_max(Criterion::Penalized, candidates, [&](const CandidateFit& c) {
    return penalized_loglik(g, c.fit.labels, lambda, c.kind).value;
  });
}

}  // namespace ubsea
