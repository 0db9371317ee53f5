#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ubsea/edgestats.hpp"
#include "ubsea/graph.hpp"
#include "ubsea/partition.hpp"

namespace ubsea {

/// Statistic plus search direction. Every kind is maximized internally;
/// ZwMin maximizes -Z_w.
enum class Objective { ZwMax, ZwMin, ZdMax, QMax, QdMax };

std::string_view objective_name(Objective obj);
/// Accepts "zw-max", "zw-min", "zd", "modularity", "qd".
Objective parse_objective(std::string_view name);

struct FitConfig {
  int restarts = 20;
  std::uint64_t seed = 0;
  int min_group = 2;
  std::optional<Partition> warm_start;
  /// Flip cap per restart; 0 means N^2.
  std::int64_t max_iters = 0;
  /// When > 0, every this many accepted flips the incremental counts are
  /// checked against a full recount (std::logic_error on mismatch).
  std::int64_t audit_interval = 0;
};

struct FitResult {
  Partition labels;
  /// Maximized score at labels (-Z_w for ZwMin).
  double value = 0;
  std::vector<double> restart_values;
  std::int64_t iterations = 0;
  /// The objective at labels has zero null variance (or the graph has no
  /// edges for the modularity objectives).
  bool degenerate = false;

  /// Signed statistic at labels, i.e. value with the search direction undone.
  double statistic(Objective obj) const { return obj == Objective::ZwMin ? -value : value; }
};

struct ObjectiveValue {
  double score = 0;
  bool degenerate = false;
};

/// O(1) objective evaluation from sufficient statistics. Null moments are
/// tabulated per community size at construction.
class ObjectiveEvaluator {
 public:
  ObjectiveEvaluator(const Graph& g, Objective obj, int min_group = 2);

  const Graph& graph() const { return *graph_; }
  Objective objective() const { return obj_; }
  int min_group() const { return min_group_; }
  const GraphConstants& constants() const { return constants_; }

  ObjectiveValue evaluate(WithinCounts counts, std::int64_t m_x, GroupDegrees deg) const;
  /// From-scratch evaluation.
  ObjectiveValue evaluate(const Partition& x) const;

 private:
  const Graph* graph_;
  Objective obj_;
  int min_group_;
  GraphConstants constants_;
  std::vector<MomentSet> moments_;  // indexed by m_x
};

struct ClimbResult {
  Partition labels;
  ObjectiveValue value;
  std::int64_t flips = 0;
};

/// One greedy trajectory: repeatedly applies the single best flip (lowest
/// node index on ties) while it improves the score by more than 1e-12 and
/// keeps both groups >= min_group. Scores of accepted states are appended to
/// path when given.
ClimbResult hill_climb(const ObjectiveEvaluator& eval, Partition start, std::int64_t max_iters,
                       std::int64_t audit_interval = 0, std::vector<double>* path = nullptr);

/// Uniform random partition with both groups >= min_group, for restart r.
Partition random_start(NodeId n, int min_group, std::uint64_t seed);

/// Multi-restart greedy search; restarts run in parallel (OpenMP) and merge
/// by max score, lowest restart index on ties. Requires N >= 2 min_group + 1.
FitResult greedy_fit(const Graph& g, Objective obj, const FitConfig& cfg);

/// Sequential reference: same trajectories as greedy_fit, but every candidate
/// flip is scored by recounting the graph. O(N |E|) per sweep; for tests and
/// benchmarks.
FitResult greedy_fit_serial(const Graph& g, Objective obj, const FitConfig& cfg);

/// Global maximizer over all 2^N labelings with both groups >= min_group;
/// ties go to the lexicographically smallest label vector. N <= 16.
FitResult exhaustive_fit(const Graph& g, Objective obj, int min_group = 2);
FitResult exhaustive_fit_serial(const Graph& g, Objective obj, int min_group = 2);

}  // namespace ubsea
