#pragma once

#include <span>

#include "ubsea/partition.hpp"

namespace ubsea {

/// Fraction of mismatched labels, minimized over swapping the two community
/// names. Always in [0, 0.5].
double misclassification_rate(const Partition& truth, const Partition& est);

/// Misclassification of the criterion's pick and of each candidate in one run.
struct EvalRecord {
  double eps_criterion = 0;
  double eps_d = 0;
  double eps_w_min = 0;
  double eps_w_max = 0;
  double psi = 0.1;

  /// eps_criterion <= (1 + psi) * min(eps_d, eps_w_min, eps_w_max)
  bool success() const;
};

/// Fraction of successful runs. Throws std::invalid_argument on an empty
/// sequence or mixed psi values.
double success_rate(std::span<const EvalRecord> records);

}  // namespace ubsea
