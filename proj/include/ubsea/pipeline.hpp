#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ubsea/evaluation.hpp"
#include "ubsea/genmodels.hpp"
#include "ubsea/optimizer.hpp"
#include "ubsea/selection.hpp"

namespace ubsea {

struct DetectOptions {
  /// Fit a single objective; empty means fit Z_w-max, Z_w-min and Z_d and
  /// let the criterion choose.
  std::optional<Objective> method;
  Criterion criterion = Criterion::Penalized;
  double lambda = 0.12;
  int restarts = 20;
  std::uint64_t seed = 0;
  std::optional<Partition> warm_start;
};

struct DetectionReport {
  std::vector<CandidateFit> candidates;
  std::optional<SelectionOutcome> selection;
  Objective selected = Objective::ZwMax;
  Partition labels;
};

/// Candidate order for automatic selection.
inline constexpr Objective kCandidateOrder[] = {Objective::ZwMax, Objective::ZwMin, Objective::ZdMax};

DetectionReport detect(const Graph& g, const DetectOptions& opt);

struct SimulationConfig {
  bool dcsbm = false;
  ConnectivityMatrix P;
  NodeId m = 50, n = 50;
  ThetaSpec theta;
  bool directed = false;
  int reps = 50;
  std::uint64_t seed = 0;
  Criterion criterion = Criterion::Penalized;
  double lambda = 0.12;
  int restarts = 20;
  double psi = 0.1;
  /// Worker threads for replicates; 0 uses the OpenMP default.
  int jobs = 0;
};

struct SimulationRow {
  int rep = 0;
  double err_zw_max = 0, err_zw_min = 0, err_zd = 0;
  Objective selected = Objective::ZwMax;
  double err_selected = 0;
  bool success = false;
  double psi = 0.1;
  EvalRecord record() const;
};

/// One replicate: draws its graph from stream 2 rep and its restarts from
/// stream 2 rep + 1 of the base seed, so rows do not depend on scheduling.
SimulationRow run_replicate(const SimulationConfig& cfg, int rep);

/// Replicates in parallel; rows come back ordered by rep.
std::vector<SimulationRow> run_simulation(const SimulationConfig& cfg);

}  // namespace ubsea
