#include "ubsea/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <stdexcept>

namespace ubsea {

namespace {

constexpr double kImprovement = 1e-12;

bool is_z_objective(Objective obj) {
  return obj == Objective::ZwMax || obj == Objective::ZwMin || obj == Objective::ZdMax;
}

void check_fit_preconditions(const Graph& g, const FitConfig& cfg) {
  if (cfg.restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (cfg.min_group < 2) throw std::invalid_argument("min_group must be >= 2");
  if (g.node_count() < 2 * cfg.min_group + 1)
    throw std::invalid_argument("graph too small for min_group on both sides");
  if (cfg.warm_start) {
    const auto& w = *cfg.warm_start;
    if (w.size() != static_cast<std::size_t>(g.node_count()))
      throw std::invalid_argument("warm start length does not match node count");
    if (w.ones() < cfg.min_group || w.zeros() < cfg.min_group)
      throw std::invalid_argument("warm start has a community below min_group");
  }
}

Partition start_for(const Graph& g, const FitConfig& cfg, int restart) {
  if (restart == 0 && cfg.warm_start) return *cfg.warm_start;
  return random_start(g.node_count(), cfg.min_group, cfg.seed + static_cast<std::uint64_t>(restart));
}

std::int64_t iteration_cap(const Graph& g, const FitConfig& cfg) {
  const std::int64_t n = g.node_count();
  return cfg.max_iters > 0 ? cfg.max_iters : n * n;
}

FitResult merge(std::vector<ClimbResult> runs) {
  FitResult out;
  std::size_t best = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    out.restart_values.push_back(runs[r].value.score);
    out.iterations += runs[r].flips;
    if (runs[r].value.score > runs[best].value.score) best = r;
  }
  out.labels = std::move(runs[best].labels);
  out.value = runs[best].value.score;
  out.degenerate = runs[best].value.degenerate;
  return out;
}

// Trajectory identical to hill_climb, but each candidate is scored by
// flipping a copy and recounting everything.
ClimbResult climb_by_recount(const ObjectiveEvaluator& eval, Partition x, std::int64_t max_iters) {
  const int min_group = eval.min_group();
  ClimbResult res;
  res.value = eval.evaluate(x);
  while (res.flips < max_iters) {
    NodeId best = -1;
    double best_score = 0;
    for (NodeId i = 0; i < static_cast<NodeId>(x.size()); ++i) {
      const std::int64_t m_after = x.ones() + (x[i] ? -1 : 1);
      const std::int64_t n_after = static_cast<std::int64_t>(x.size()) - m_after;
      if (m_after < min_group || n_after < min_group) continue;
      Partition y = x;
      y.flip(i);
      const double s = eval.evaluate(y).score;
      if (best < 0 || s > best_score) {
        best = i;
        best_score = s;
      }
    }
    if (best < 0 || !(best_score > res.value.score + kImprovement)) break;
    x.flip(best);
    res.value = eval.evaluate(x);
    ++res.flips;
  }
  res.labels = std::move(x);
  return res;
}

void check_exhaustive(const Graph& g, int min_group) {
  if (g.node_count() > 16) throw std::invalid_argument("exhaustive search limited to N <= 16");
  if (min_group < 2) throw std::invalid_argument("min_group must be >= 2");
  if (g.node_count() < 2 * min_group) throw std::invalid_argument("graph too small for min_group");
}

// Bit (N-1-i) of code is label i, so numeric order is lexicographic order.
Partition decode(std::uint32_t code, NodeId n) {
  std::vector<std::uint8_t> labels(n);
  for (NodeId i = 0; i < n; ++i) labels[i] = (code >> (n - 1 - i)) & 1u;
  return Partition(std::move(labels));
}

struct Candidate {
  double score = 0;
  bool degenerate = true;
  std::int64_t code = -1;

  void offer(const Candidate& o) {
    if (o.code < 0) return;
    if (code < 0 || o.score > score || (o.score == score && o.code < code)) *this = o;
  }
};

Candidate scan_codes(const ObjectiveEvaluator& eval, std::int64_t begin, std::int64_t end) {
  const NodeId n = eval.graph().node_count();
  const int min_group = eval.min_group();
  Candidate best;
  for (std::int64_t code = begin; code < end; ++code) {
    const int ones = __builtin_popcount(static_cast<unsigned>(code));
    if (ones < min_group || n - ones < min_group) continue;
    const auto v = eval.evaluate(decode(static_cast<std::uint32_t>(code), n));
    best.offer({v.score, v.degenerate, code});
  }
  return best;
}

FitResult finish_exhaustive(const ObjectiveEvaluator& eval, const Candidate& best) {
  FitResult out;
  out.labels = decode(static_cast<std::uint32_t>(best.code), eval.graph().node_count());
  out.value = best.score;
  out.degenerate = best.degenerate;
  out.restart_values = {best.score};
  return out;
}

}  // namespace

std::string_view objective_name(Objective obj) {
  switch (obj) {
    case Objective::ZwMax: return "zw-max";
    case Objective::ZwMin: return "zw-min";
    case Objective::ZdMax: return "zd";
    case Objective::QMax: return "modularity";
    case Objective::QdMax: return "qd";
  }
  return "?";
}

Objective parse_objective(std::string_view name) {
  for (auto obj : {Objective::ZwMax, Objective::ZwMin, Objective::ZdMax, Objective::QMax,
                   Objective::QdMax})
    if (objective_name(obj) == name) return obj;
  throw std::invalid_argument("unknown objective '" + std::string(name) + "'");
}

ObjectiveEvaluator::ObjectiveEvaluator(const Graph& g, Objective obj, int min_group)
    : graph_(&g), obj_(obj), min_group_(min_group), constants_(graph_constants(g)) {
  if (min_group < 2) throw std::invalid_argument("min_group must be >= 2");
  if (is_z_objective(obj)) {
    if (g.node_count() < 4) throw std::invalid_argument("Z statistics need N >= 4");
    moments_.resize(g.node_count() + 1);
    for (std::int64_t m = 2; m <= g.node_count() - 2; ++m)
      moments_[m] = perm_null_moments(constants_, m, g.node_count() - m);
  }
}

ObjectiveValue ObjectiveEvaluator::evaluate(WithinCounts counts, std::int64_t m_x,
                                            GroupDegrees deg) const {
  const std::int64_t n_x = graph_->node_count() - m_x;
  switch (obj_) {
    case Objective::ZwMax:
    case Objective::ZwMin: {
      const auto& mom = moments_.at(m_x);
      const double z = z_w(counts, mom, m_x, n_x);
      return {obj_ == Objective::ZwMin ? -z : z, mom.degenerate_w};
    }
    case Objective::ZdMax: {
      const auto& mom = moments_.at(m_x);
      return {z_d(counts, mom), mom.degenerate_d};
    }
    case Objective::QMax:
      if (graph_->edge_count() == 0) return {0.0, true};
      return {modularity_q(*graph_, counts, deg), false};
    case Objective::QdMax:
      if (graph_->edge_count() == 0) return {0.0, true};
      return {q_d(*graph_, counts, deg), false};
  }
  return {};
}

ObjectiveValue ObjectiveEvaluator::evaluate(const Partition& x) const {
  return evaluate(within_counts(*graph_, x), x.ones(), group_degrees(*graph_, x));
}

Partition random_start(NodeId n, int min_group, std::uint64_t seed) {
  if (n < 2 * min_group) throw std::invalid_argument("no valid partition for min_group");
  std::mt19937_64 rng(seed);
  std::vector<std::uint8_t> labels(n);
  for (;;) {
    std::int64_t ones = 0;
    for (auto& l : labels) {
      l = static_cast<std::uint8_t>(rng() >> 63);
      ones += l;
    }
    if (ones >= min_group && n - ones >= min_group) return Partition(std::move(labels));
  }
}

ClimbResult hill_climb(const ObjectiveEvaluator& eval, Partition x, std::int64_t max_iters,
                       std::int64_t audit_interval, std::vector<double>* path) {
  const Graph& g = eval.graph();
  const NodeId n = g.node_count();
  const int min_group = eval.min_group();

  // Per node: incident edge endpoints lying in community 1 / community 2.
  std::vector<std::int64_t> nb_one(n, 0), nb_zero(n, 0);
  auto for_each_incidence = [&](NodeId i, auto&& fn) {
    for (NodeId j : g.out_neighbors(i)) fn(j);
    if (g.directed())
      for (NodeId j : g.in_neighbors(i)) fn(j);
  };
  for (NodeId i = 0; i < n; ++i)
    for_each_incidence(i, [&](NodeId j) { ++(x[j] ? nb_one[i] : nb_zero[i]); });

  WithinCounts counts = within_counts(g, x);
  GroupDegrees deg = group_degrees(g, x);
  ClimbResult res;
  res.value = eval.evaluate(counts, x.ones(), deg);
  if (path) path->push_back(res.value.score);

  while (res.flips < max_iters) {
    NodeId best = -1;
    double best_score = 0;
    for (NodeId i = 0; i < n; ++i) {
      const bool one = x[i];
      const std::int64_t m_after = x.ones() + (one ? -1 : 1);
      if (m_after < min_group || n - m_after < min_group) continue;
      WithinCounts c = counts;
      GroupDegrees d = deg;
      const std::int64_t sign = one ? -1 : 1;
      c.r1 += sign * nb_one[i];
      c.r2 -= sign * nb_zero[i];
      d.out1 += sign * g.out_degree(i);
      d.in1 += sign * g.in_degree(i);
      const double s = eval.evaluate(c, m_after, d).score;
      if (best < 0 || s > best_score) {
        best = i;
        best_score = s;
      }
    }
    if (best < 0 || !(best_score > res.value.score + kImprovement)) break;

    const std::int64_t sign = x[best] ? -1 : 1;
    counts.r1 += sign * nb_one[best];
    counts.r2 -= sign * nb_zero[best];
    deg.out1 += sign * g.out_degree(best);
    deg.in1 += sign * g.in_degree(best);
    x.flip(best);
    for_each_incidence(best, [&](NodeId j) {
      nb_one[j] += sign;
      nb_zero[j] -= sign;
    });
    res.value = eval.evaluate(counts, x.ones(), deg);
    ++res.flips;
    if (path) path->push_back(res.value.score);

    if (audit_interval > 0 && res.flips % audit_interval == 0) {
      const auto fresh = eval.evaluate(x);
      if (!(within_counts(g, x) == counts) ||
          std::abs(fresh.score - res.value.score) > 1e-9 * (1.0 + std::abs(fresh.score)))
        throw std::logic_error("incremental objective diverged from recount");
    }
  }
  res.labels = std::move(x);
  return res;
}

FitResult greedy_fit(const Graph& g, Objective obj, const FitConfig& cfg) {
  check_fit_preconditions(g, cfg);
  const ObjectiveEvaluator eval(g, obj, cfg.min_group);
  const std::int64_t cap = iteration_cap(g, cfg);

  std::vector<ClimbResult> runs(cfg.restarts);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < cfg.restarts; ++r) {
    try {
      runs[r] = hill_climb(eval, start_for(g, cfg, r), cap, cfg.audit_interval);
    } catch (...) {
#pragma omp critical(ubsea_fit_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return merge(std::move(runs));
}

FitResult greedy_fit_serial(const Graph& g, Objective obj, const FitConfig& cfg) {
  check_fit_preconditions(g, cfg);
  const ObjectiveEvaluator eval(g, obj, cfg.min_group);
  const std::int64_t cap = iteration_cap(g, cfg);
  std::vector<ClimbResult> runs;
  for (int r = 0; r < cfg.restarts; ++r) runs.push_back(climb_by_recount(eval, start_for(g, cfg, r), cap));
  return merge(std::move(runs));
}

FitResult exhaustive_fit(const Graph& g, Objective obj, int min_group) {
  check_exhaustive(g, min_group);
  const ObjectiveEvaluator eval(g, obj, min_group);
  const std::int64_t total = std::int64_t{1} << g.node_count();
  constexpr std::int64_t kChunk = 256;
  const std::int64_t chunks = (total + kChunk - 1) / kChunk;

  Candidate best;
#pragma omp parallel
  {
    Candidate local;
#pragma omp for schedule(static)
    for (std::int64_t c = 0; c < chunks; ++c)
      local.offer(scan_codes(eval, c * kChunk, std::min(total, (c + 1) * kChunk)));
#pragma omp critical(ubsea_exhaustive_merge)
    best.offer(local);
  }
  return finish_exhaustive(eval, best);
}

FitResult exhaustive_fit_serial(const Graph& g, Objective obj, int min_group) {
  check_exhaustive(g, min_group);
  const ObjectiveEvaluator eval(g, obj, min_group);
  return finish_exhaustive(eval, scan_codes(eval, 0, std::int64_t{1} << g.node_count()));
}

}  // namespace ubsea
