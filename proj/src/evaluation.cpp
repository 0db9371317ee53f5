#include "ubsea/evaluation.hpp"

#include <algorithm>
#include <stdexcept>

namespace ubsea {

double misclassification_rate(const Partition& truth, const Partition& est) {
  if (truth.size() != est.size()) throw std::invalid_argument("label vectors differ in length");
  if (truth.size() == 0) throw std::invalid_argument("empty label vectors");
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) mismatches += truth[i] != est[i];
  const std::size_t aligned = std::min(mismatches, truth.size() - mismatches);
  return static_cast<double>(aligned) / static_cast<double>(truth.size());
}

bool EvalRecord::success() const {
  const double best = std::min({eps_d, eps_w_min, eps_w_max});
  return eps_criterion <= (1.0 + psi) * best;
}

double success_rate(std::span<const EvalRecord> records) {
  if (records.empty()) throw std::invalid_argument("success rate over zero runs");
  std::size_t hits = 0;
  for (const auto& r : records) {
    if (r.psi != records.front().psi) throw std::invalid_argument("records use different psi");
    if (r.psi < 0) throw std::invalid_argument("psi must be >= 0");
    hits += r.success();
  }
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

}  // namespace ubsea
