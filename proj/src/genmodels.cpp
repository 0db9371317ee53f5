#include "ubsea/genmodels.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ubsea {

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double ConnectivityMatrix::max() const {
  return std::max({p[0][0], p[0][1], p[1][0], p[1][1]});
}

void ConnectivityMatrix::validate() const {
  for (const auto& row : p)
    for (double v : row)
      if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument("connectivity entries must lie in [0, 1]");
}

void ThetaSpec::validate() const {
  switch (kind) {
    case Kind::Constant1:
      return;
    case Kind::Pareto:
      if (!(param > 1.0)) throw std::invalid_argument("pareto shape must exceed 1");
      return;
    case Kind::UniformLow:
      if (!(param > 0.0 && param <= 1.0))
        throw std::invalid_argument("uniform lower end must lie in (0, 1]");
      return;
    case Kind::ShiftedExponential:
      if (!(param > 1.0)) throw std::invalid_argument("exponential rate must exceed 1");
      return;
  }
}

std::string ThetaSpec::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Constant1: return "const";
    case Kind::Pareto: os << "pareto:" << param; break;
    case Kind::UniformLow: os << "uniform:" << param; break;
    case Kind::ShiftedExponential: os << "exp:" << param; break;
  }
  return os.str();
}

ThetaSpec parse_theta_spec(std::string_view text) {
  if (text == "const") return ThetaSpec::constant();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("theta spec must be const|pareto:X|uniform:X|exp:X");
  const auto name = text.substr(0, colon);
  const auto num = text.substr(colon + 1);
  double value = 0;
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
  if (ec != std::errc{} || ptr != num.data() + num.size())
    throw std::invalid_argument("bad theta parameter '" + std::string(num) + "'");

  ThetaSpec spec;
  if (name == "pareto")
    spec = ThetaSpec::pareto(value);
  else if (name == "uniform")
    spec = ThetaSpec::uniform(value);
  else if (name == "exp")
    spec = ThetaSpec::exponential(value);
  else
    throw std::invalid_argument("unknown theta law '" + std::string(name) + "'");
  spec.validate();
  return spec;
}

std::vector<double> sample_theta(const ThetaSpec& spec, std::size_t count, Rng& rng) {
  spec.validate();
  std::vector<double> out(count, 1.0);
  const double a = spec.param;
  for (auto& t : out) {
    switch (spec.kind) {
      case ThetaSpec::Kind::Constant1:
        break;
      case ThetaSpec::Kind::Pareto: {
        // scale (a-1)/a gives mean 1; inverse CDF with u in (0, 1]
        const double u = 1.0 - uniform01(rng);
        t = (a - 1.0) / a * std::pow(u, -1.0 / a);
        break;
      }
      case ThetaSpec::Kind::UniformLow:
        t = a + (2.0 - 2.0 * a) * uniform01(rng);
        break;
      case ThetaSpec::Kind::ShiftedExponential: {
        const double u = 1.0 - uniform01(rng);
        t = -std::log(u) / a + 1.0 - 1.0 / a;
        break;
      }
    }
  }
  return out;
}

PlantedGraph sample_dcsbm(const ConnectivityMatrix& P, NodeId m, NodeId n, const ThetaSpec& spec,
                          bool directed, Rng& rng) {
  P.validate();
  if (m < 2 || n < 2) throw std::invalid_argument("both planted communities need >= 2 nodes");
  if (!directed && P.p12() != P.p21())
    throw std::invalid_argument("undirected sampling requires p12 == p21");

  const NodeId N = m + n;
  PlantedGraph out;
  std::vector<std::uint8_t> labels(N, 0);
  std::fill(labels.begin(), labels.begin() + m, 1);
  out.truth = Partition(labels);
  out.thetas = sample_theta(spec, N, rng);

  std::vector<Edge> edges;
  for (NodeId i = 0; i < N; ++i) {
    for (NodeId j = directed ? 0 : i + 1; j < N; ++j) {
      if (i == j) continue;
      double prob = out.thetas[i] * out.thetas[j] * P.between(labels[i], labels[j]);
      if (prob > 1.0) {
        prob = 1.0;
        ++out.clamped_pairs;
      }
      if (uniform01(rng) < prob) edges.emplace_back(i, j);
    }
  }
  out.graph = Graph(N, directed, std::move(edges));
  return out;
}

PlantedGraph sample_sbm(const ConnectivityMatrix& P, NodeId m, NodeId n, bool directed, Rng& rng) {
  return sample_dcsbm(P, m, n, ThetaSpec::constant(), directed, rng);
}

}  // namespace ubsea
