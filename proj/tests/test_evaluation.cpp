#include <doctest.h>

#include "helpers.hpp"
#include "ubsea/evaluation.hpp"

using namespace ubsea;
using testing::labels;

TEST_CASE("misclassification rate") {
  CHECK(misclassification_rate(labels({1, 1, 0, 0}), labels({1, 1, 0, 0})) == 0.0);
  CHECK(misclassification_rate(labels({1, 1, 0, 0}), labels({0, 0, 1, 1})) == 0.0);
  CHECK(misclassification_rate(labels({1, 1, 0, 0}), labels({1, 1, 1, 0})) == 0.25);
  CHECK_THROWS_AS(misclassification_rate(labels({1, 1, 0, 0}), labels({1, 1, 0})), std::invalid_argument);

  ubsea::Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = testing::random_labels(30, rng);
    const auto b = testing::random_labels(30, rng);
    const double r = misclassification_rate(a, b);
    CHECK(r <= 0.5);
    CHECK(misclassification_rate(a.complement(), b) == r);
    CHECK(misclassification_rate(a, b.complement()) == r);
    CHECK(misclassification_rate(b, a) == r);
    const auto perm = testing::random_perm(30, rng);
    CHECK(misclassification_rate(a.relabeled(perm), b.relabeled(perm)) == r);
  }
}

TEST_CASE("success indicator boundaries") {
  CHECK(EvalRecord{0.2, 0.2, 0.3, 0.4, 0.1}.success());
  CHECK(EvalRecord{0.0, 0.0, 0.0, 0.0, 0.1}.success());
  CHECK(EvalRecord{0.11, 0.10, 0.3, 0.4, 0.1}.success());
  CHECK_FALSE(EvalRecord{0.111, 0.10, 0.3, 0.4, 0.1}.success());
  CHECK_FALSE(EvalRecord{0.01, 0.3, 0.0, 0.4, 0.1}.success());
}

TEST_CASE("success rate") {
  std::vector<EvalRecord> recs = {{0.1, 0.1, 0.2, 0.3, 0.1}, {0.3, 0.1, 0.2, 0.3, 0.1},
                                  {0.0, 0.0, 0.0, 0.5, 0.1}, {0.2, 0.4, 0.5, 0.2, 0.1}};
  CHECK(success_rate(recs) == 0.75);
  CHECK_THROWS_AS(success_rate(std::span<const EvalRecord>{}), std::invalid_argument);
  recs[1].psi = 0.2;
  CHECK_THROWS_AS(success_rate(recs), std::invalid_argument);

  // Nondecreasing in psi.
  ubsea::Rng rng(2);
  std::vector<EvalRecord> r(100);
  for (auto& e : r) {
    e.eps_criterion = 0.5 * ubsea::uniform01(rng);
    e.eps_d = 0.5 * ubsea::uniform01(rng);
    e.eps_w_min = 0.5 * ubsea::uniform01(rng);
    e.eps_w_max = 0.5 * ubsea::uniform01(rng);
  }
  double prev = -1;
  for (double psi : {0.0, 0.1, 0.5, 1.0, 3.0}) {
    for (auto& e : r) e.psi = psi;
    const double s = success_rate(r);
    CHECK(s >= prev);
    CHECK(s <= 1.0);
    prev = s;
  }
}
