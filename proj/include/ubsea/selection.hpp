#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "ubsea/genmodels.hpp"
#include "ubsea/graph.hpp"
#include "ubsea/optimizer.hpp"
#include "ubsea/partition.hpp"

namespace ubsea {

/// Every candidate is degenerate, so no mixing type can be chosen.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Plug-in block densities of a partition. Block 1 holds label 1.
struct BlockEstimates {
  ConnectivityMatrix p_hat;
  double pi1 = 0, pi2 = 0;
  std::int64_t size1 = 0, size2 = 0;
};

/// Edge count between blocks over available ordered pairs; within-block
/// denominators are n_a(n_a - 1), halved for undirected graphs. Both groups
/// need >= 2 nodes.
BlockEstimates estimate_block_probs(const Graph& g, const Partition& x);

/// (2 pi1 P11 - 2 pi2 P22 - (pi1 - pi2)(P12 + P21))^2 / max(P); 0 if max(P) = 0.
double gamma_sq(const BlockEstimates& est);
/// (P11 + P22 - P12 - P21)^2 / max(P); 0 if max(P) = 0.
double tau_sq(const BlockEstimates& est);

struct ThetaEstimates {
  std::vector<double> theta_hat;
  double var1 = 0, var2 = 0;
};

/// Degree-ratio estimates theta_i = k_i / mean block degree (directed: in + out
/// over mean in + mean out). A block of total degree zero gets theta = 1.
/// Variances are population variances.
ThetaEstimates theta_mle(const Graph& g, const Partition& x);

struct PenalizedLoglik {
  double loglik = 0;
  double penalty = 0;
  double value = 0;  // loglik - penalty
  /// Pairs whose modeled probability fell outside [1e-9, 1 - 1e-9].
  std::int64_t clamped = 0;
};

/// Bernoulli log-likelihood over i != j (j < i when undirected) with
/// p_ij = P_hat theta_i theta_j, minus the degree-heterogeneity penalty for
/// the candidate kind: lambda (Var1 + Var2) |E| for Z_w candidates,
/// lambda max(Var1 R1, Var2 R2) for Z_d.
PenalizedLoglik penalized_loglik(const Graph& g, const Partition& x, double lambda,
                                 Objective kind);

enum class Criterion { Penalized, GammaTau };
std::string_view criterion_name(Criterion c);
Criterion parse_criterion(std::string_view name);

struct CandidateFit {
  Objective kind;
  FitResult fit;
};

struct SelectionOutcome {
  Criterion criterion = Criterion::Penalized;
  std::size_t selected = 0;
  /// One per candidate: N gamma^2 / N tau^2, or the penalized log-likelihood.
  std::vector<double> scores;
  std::vector<bool> excluded;
  /// Another eligible candidate has the same score or the same partition.
  bool tie = false;
  Objective selected_kind() const { return kinds.at(selected); }
  std::vector<Objective> kinds;
};

/// Scores the Z_d candidate by N gamma_hat^2 and each Z_w candidate by
/// N tau_hat^2 on its own partition and picks the largest. Degenerate fits
/// are excluded; ties keep candidate order. Throws DegenerateError when
/// nothing is eligible.
SelectionOutcome gamma_tau_select(const Graph& g, std::span<const CandidateFit> candidates);

SelectionOutcome penalized_select(const Graph& g, std::span<const CandidateFit> candidates,
                                  double lambda = 0.12);

}  // namespace ubsea
