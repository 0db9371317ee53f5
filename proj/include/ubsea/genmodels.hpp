#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ubsea/graph.hpp"
#include "ubsea/partition.hpp"

namespace ubsea {

/// All randomness goes through mt19937_64, whose output sequence is fixed by
/// the standard. Continuous draws use the transforms below rather than
/// <random> distributions, so sampled graphs are identical across platforms.
using Rng = std::mt19937_64;

/// Uniform on [0, 1) with 53 random bits.
double uniform01(Rng& rng);

/// Seed of stream `stream` derived from `base` (splitmix64 finalizer). Used
/// for simulation replicates so each replicate is reproducible on its own.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

/// 2x2 block connectivity. Row/column 0 is community 1 (label 1), 1 is
/// community 2 (label 0).
struct ConnectivityMatrix {
  std::array<std::array<double, 2>, 2> p{};

  ConnectivityMatrix() = default;
  ConnectivityMatrix(double p11, double p12, double p21, double p22) : p{{{p11, p12}, {p21, p22}}} {}

  double p11() const { return p[0][0]; }
  double p12() const { return p[0][1]; }
  double p21() const { return p[1][0]; }
  double p22() const { return p[1][1]; }
  double max() const;
  /// Probability between nodes with the given labels.
  double between(std::uint8_t label_i, std::uint8_t label_j) const {
    return p[label_i ? 0 : 1][label_j ? 0 : 1];
  }
  /// Throws std::invalid_argument unless every entry is in [0, 1].
  void validate() const;
};

/// Mean-one law for the degree parameters.
struct ThetaSpec {
  enum class Kind { Constant1, Pareto, UniformLow, ShiftedExponential };
  Kind kind = Kind::Constant1;
  /// Pareto shape, uniform lower end, or exponential rate.
  double param = 0;

  static ThetaSpec constant() { return {}; }
  static ThetaSpec pareto(double shape) { return {Kind::Pareto, shape}; }
  static ThetaSpec uniform(double low) { return {Kind::UniformLow, low}; }
  static ThetaSpec exponential(double rate) { return {Kind::ShiftedExponential, rate}; }

  /// Pareto needs shape > 1, uniform low in (0, 1], exponential rate > 1.
  void validate() const;
  std::string to_string() const;
};

/// Parses "const", "pareto:SHAPE", "uniform:LOW" or "exp:RATE".
ThetaSpec parse_theta_spec(std::string_view text);

std::vector<double> sample_theta(const ThetaSpec& spec, std::size_t count, Rng& rng);

struct PlantedGraph {
  Graph graph;
  /// First m nodes carry label 1, the remaining n label 0.
  Partition truth;
  std::vector<double> thetas;
  /// Pairs whose theta_i theta_j P_ab exceeded 1.
  std::int64_t clamped_pairs = 0;
};

/// Each pair i != j (ordered when directed, i < j otherwise) is an edge with
/// probability P between their blocks. Undirected sampling needs p12 == p21.
PlantedGraph sample_sbm(const ConnectivityMatrix& P, NodeId m, NodeId n, bool directed, Rng& rng);

/// As sample_sbm with edge probability min(1, theta_i theta_j P_ab). With
/// ThetaSpec::constant() the output equals sample_sbm for the same stream.
PlantedGraph sample_dcsbm(const ConnectivityMatrix& P, NodeId m, NodeId n, const ThetaSpec& spec,
                          bool directed, Rng& rng);

}  // namespace ubsea
