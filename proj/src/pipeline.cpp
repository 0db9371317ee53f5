#include "ubsea/pipeline.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ubsea {

DetectionReport detect(const Graph& g, const DetectOptions& opt) {
  FitConfig cfg;
  cfg.restarts = opt.restarts;
  cfg.seed = opt.seed;
  cfg.warm_start = opt.warm_start;

  DetectionReport rep;
  if (opt.method) {
    rep.candidates.push_back({*opt.method, greedy_fit(g, *opt.method, cfg)});
    rep.selected = *opt.method;
    rep.labels = rep.candidates.front().fit.labels;
    return rep;
  }

  for (auto kind : kCandidateOrder) rep.candidates.push_back({kind, greedy_fit(g, kind, cfg)});
  rep.selection = opt.criterion == Criterion::Penalized
                      ? penalized_select(g, rep.candidates, opt.lambda)
                      : gamma_tau_select(g, rep.candidates);
  rep.selected = rep.selection->selected_kind();
  rep.labels = rep.candidates[rep.selection->selected].fit.labels;
  return rep;
}

EvalRecord SimulationRow::record() const {
  return {err_selected, err_zd, err_zw_min, err_zw_max, psi};
}

SimulationRow run_replicate(const SimulationConfig& cfg, int rep) {
  const auto stream = static_cast<std::uint64_t>(rep) * 2;
  Rng rng(derive_seed(cfg.seed, stream));
  const auto planted = cfg.dcsbm
                           ? sample_dcsbm(cfg.P, cfg.m, cfg.n, cfg.theta, cfg.directed, rng)
                           : sample_sbm(cfg.P, cfg.m, cfg.n, cfg.directed, rng);

  DetectOptions opt;
  opt.criterion = cfg.criterion;
  opt.lambda = cfg.lambda;
  opt.restarts = cfg.restarts;
  opt.seed = derive_seed(cfg.seed, stream + 1);
  const auto det = detect(planted.graph, opt);

  SimulationRow row;
  row.rep = rep;
  for (const auto& c : det.candidates) {
    const double err = misclassification_rate(planted.truth, c.fit.labels);
    switch (c.kind) {
      case Objective::ZwMax: row.err_zw_max = err; break;
      case Objective::ZwMin: row.err_zw_min = err; break;
      case Objective::ZdMax: row.err_zd = err; break;
      default: break;
    }
  }
  row.selected = det.selected;
  row.err_selected = misclassification_rate(planted.truth, det.labels);
  row.psi = cfg.psi;
  row.success = row.record().success();
  return row;
}

std::vector<SimulationRow> run_simulation(const SimulationConfig& cfg) {
  std::vector<SimulationRow> rows(cfg.reps);
  std::exception_ptr failure;
#ifdef _OPENMP
  const int threads = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();
#endif
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int r = 0; r < cfg.reps; ++r) {
    try {
      rows[r] = run_replicate(cfg, r);
    } catch (...) {
#pragma omp critical(ubsea_sim_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

}  // namespace ubsea
