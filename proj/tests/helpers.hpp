#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "ubsea/genmodels.hpp"
#include "ubsea/graph.hpp"
#include "ubsea/partition.hpp"

namespace testing {

inline ubsea::Graph random_graph(int n, double p, bool directed, ubsea::Rng& rng) {
  std::vector<ubsea::Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = directed ? 0 : i + 1; j < n; ++j)
      if (i != j && ubsea::uniform01(rng) < p) edges.emplace_back(i, j);
  return ubsea::Graph(n, directed, std::move(edges));
}

/// Random labels with both groups >= 2.
inline ubsea::Partition random_labels(int n, ubsea::Rng& rng) {
  for (;;) {
    std::vector<std::uint8_t> x(n);
    for (auto& v : x) v = static_cast<std::uint8_t>(rng() >> 63);
    ubsea::Partition p(std::move(x));
    if (p.ones() >= 2 && p.zeros() >= 2) return p;
  }
}

inline std::vector<ubsea::NodeId> random_perm(int n, ubsea::Rng& rng) {
  std::vector<ubsea::NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

inline ubsea::Graph make_graph(int n, bool directed, std::vector<ubsea::Edge> edges) {
  return ubsea::Graph(n, directed, std::move(edges));
}

inline ubsea::Partition labels(std::initializer_list<int> xs) {
  std::vector<std::uint8_t> v;
  for (int x : xs) v.push_back(static_cast<std::uint8_t>(x));
  return ubsea::Partition(std::move(v));
}

/// Two K5 cliques {0..4}, {5..9} joined by the edge 4-5.
inline ubsea::Graph two_cliques() {
  std::vector<ubsea::Edge> e;
  for (int base : {0, 5})
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) e.emplace_back(base + i, base + j);
  e.emplace_back(4, 5);
  return ubsea::Graph(10, false, std::move(e));
}

class TempDir {
 public:
  TempDir() {
    char tmpl[] = "/tmp/ubsea-test-XXXXXX";
    path_ = mkdtemp(tmpl);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = (std::filesystem::path(path_) / name).string();
    std::ofstream(p) << text;
    return p;
  }
  std::string file(const std::string& name) const { return (std::filesystem::path(path_) / name).string(); }

 private:
  std::string path_;
};

}  // namespace testing
