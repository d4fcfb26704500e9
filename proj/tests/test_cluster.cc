// tests/test_cluster.cc
//
// AHC engine vs a from-scratch brute-force reference.

#include <algorithm>

#include "cstk/cluster/cluster.h"
#include "cstk/util/common.h"
#include "cstk/util/rng.h"
#include "doctest.h"
#include "testing/cluster_oracle.h"

using namespace cstk;
using cstk::testing::BruteForceAhc;
using cstk::testing::BruteForceCut;
using cstk::testing::RandomIntDistance;

namespace {

ScoreMatrix MakeScores(std::vector<std::string> labels,
                       const std::vector<std::vector<double>>& v) {
  ScoreMatrix s;
  s.labels = std::move(labels);
  const int n = static_cast<int>(s.labels.size());
  s.values = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.values(i, j) = v[i][j];
  return s;
}

DistanceMatrix PointsDistance(const std::vector<double>& xs) {
  DistanceMatrix d;
  const int n = static_cast<int>(xs.size());
  for (int i = 0; i < n; ++i) d.labels.push_back("p" + std::to_string(i));
  d.values = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d.values(i, j) = std::abs(xs[i] - xs[j]);
  return d;
}

}  // namespace

TEST_CASE("llr_to_distance: hand example") {
  const auto s = MakeScores({"a", "b", "c"}, {{0, 5, 2}, {5, 0, -1}, {2, -1, 0}});
  const auto d = LlrToDistance(s);
  CHECK(d.values(0, 1) == 0.0);
  CHECK(d.values(0, 2) == 3.0);
  CHECK(d.values(1, 2) == 6.0);
  CHECK(d.values(0, 0) == 0.0);
}

TEST_CASE("llr_to_distance: equal scores give all-zero distances") {
  const auto s = MakeScores({"a", "b", "c"},
                            {{0, 2.5, 2.5}, {2.5, 0, 2.5}, {2.5, 2.5, 0}});
  const auto d = LlrToDistance(s);
  CHECK(d.values(0, 1) == 0.0);
  CHECK(d.values(0, 2) == 0.0);
  CHECK(d.values(1, 2) == 0.0);
}

TEST_CASE("llr_to_distance: min off-diagonal is exactly zero, order reversed") {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformInt(7));
    ScoreMatrix s;
    for (int i = 0; i < n; ++i) s.labels.push_back("x" + std::to_string(i));
    s.values = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double v = rng.Gaussian() * 10.0;
        s.values(i, j) = v;
        s.values(j, i) = v;
      }
    const auto d = LlrToDistance(s);
    double min_offdiag = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        min_offdiag = std::min(min_offdiag, d.values(i, j));
        CHECK(d.values(i, j) >= 0.0);
      }
    CHECK(min_offdiag == 0.0);
    // Higher score must mean strictly smaller or equal distance.
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = k + 1; l < n; ++l)
            if (s.values(i, j) < s.values(k, l))
              CHECK(d.values(i, j) > d.values(k, l));
  }
}

TEST_CASE("ahc: 1-D points {0,1,10}") {
  const auto d = PointsDistance({0, 1, 10});
  SUBCASE("average linkage merges at 1 then 9.5") {
    const auto dend = Ahc(d, Linkage::kAverage);
    REQUIRE(dend.merges().size() == 2);
    CHECK(dend.merges()[0].left == 0);
    CHECK(dend.merges()[0].right == 1);
    CHECK(dend.merges()[0].height == 1.0);
    CHECK(dend.merges()[1].height == 9.5);
    CHECK(dend.Cophenetic(0, 2) == 9.5);
    CHECK(dend.Cophenetic("p0", "p2") == 9.5);
  }
  SUBCASE("complete linkage merges at 1 then 10") {
    const auto dend = Ahc(d, Linkage::kComplete);
    CHECK(dend.merges()[1].height == 10.0);
  }
}

TEST_CASE("ahc: matches brute-force reference on random integer matrices") {
  Rng rng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformInt(7));
    const auto d = RandomIntDistance(rng, n, 12);
    for (Linkage linkage : {Linkage::kAverage, Linkage::kComplete}) {
      const auto dend = Ahc(d, linkage);
      const auto ref = BruteForceAhc(d, linkage);
      REQUIRE(dend == ref);
    }
  }
}

TEST_CASE("ahc: real-valued heights match brute force within 1e-12 relative") {
  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformInt(7));
    DistanceMatrix d;
    for (int i = 0; i < n; ++i) d.labels.push_back("i" + std::to_string(i));
    d.values = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double v = rng.Uniform() * 5.0;
        d.values(i, j) = v;
        d.values(j, i) = v;
      }
    for (Linkage linkage : {Linkage::kAverage, Linkage::kComplete}) {
      const auto dend = Ahc(d, linkage);
      const auto ref = BruteForceAhc(d, linkage);
      REQUIRE(dend.merges().size() == ref.merges().size());
      for (size_t k = 0; k < ref.merges().size(); ++k) {
        CHECK(dend.merges()[k].left == ref.merges()[k].left);
        CHECK(dend.merges()[k].right == ref.merges()[k].right);
        CHECK(dend.merges()[k].height ==
              doctest::Approx(ref.merges()[k].height).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("ahc: heights are non-decreasing for both linkages") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformInt(20));
    DistanceMatrix d;
    for (int i = 0; i < n; ++i) d.labels.push_back("i" + std::to_string(i));
    d.values = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double v = rng.Uniform() * 3.0;
        d.values(i, j) = v;
        d.values(j, i) = v;
      }
    for (Linkage linkage : {Linkage::kAverage, Linkage::kComplete}) {
      const auto dend = Ahc(d, linkage);
      for (size_t k = 1; k < dend.merges().size(); ++k)
        REQUIRE(dend.merges()[k].height >= dend.merges()[k - 1].height);
    }
  }
}

TEST_CASE("ahc: invariant under input permutation") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng.UniformInt(6));
    const auto d = RandomIntDistance(rng, n, 6);
    // Shuffle items.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.UniformInt(i + 1)]);
    DistanceMatrix shuffled;
    shuffled.values = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      shuffled.labels.push_back(d.labels[perm[i]]);
      for (int j = 0; j < n; ++j)
        shuffled.values(i, j) = d.values(perm[i], perm[j]);
    }
    for (Linkage linkage : {Linkage::kAverage, Linkage::kComplete})
      REQUIRE(Ahc(d, linkage) == Ahc(shuffled, linkage));
  }
}

TEST_CASE("cophenetic: symmetric and equal to first merge height") {
  const auto d = PointsDistance({0, 2, 9});
  const auto dend = Ahc(d, Linkage::kAverage);
  CHECK(dend.Cophenetic(0, 1) == 2.0);
  CHECK(dend.Cophenetic(1, 0) == dend.Cophenetic(0, 1));
  CHECK_THROWS_AS(dend.Cophenetic("p0", "nope"), Error);
  CHECK_THROWS_AS(dend.Cophenetic(0, 0), Error);
}

TEST_CASE("cut_by_cophenetic: thresholds below first merge and above root") {
  const auto d = PointsDistance({0, 1, 10});
  const auto dend = Ahc(d, Linkage::kAverage);
  CHECK(CutByCophenetic(dend, 0.5).k == 3);
  CHECK(CutByCophenetic(dend, 9.5).k == 1);
  const auto cut = CutByCophenetic(dend, 2.0);
  CHECK(cut.k == 2);
  CHECK(cut.assignment[0] == cut.assignment[1]);
  CHECK(cut.assignment[0] != cut.assignment[2]);
}

TEST_CASE("cut_by_cophenetic: matches exhaustive cut enumeration, count "
          "non-increasing in threshold") {
  Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformInt(7));
    const auto d = RandomIntDistance(rng, n, 10);
    const auto dend =
        Ahc(d, trial % 2 ? Linkage::kAverage : Linkage::kComplete);
    int prev_k = n + 1;
    for (double t = 0.0; t <= 13.0; t += 0.5) {
      const auto cut = CutByCophenetic(dend, t);
      REQUIRE(cut == BruteForceCut(dend, t));
      REQUIRE(cut.k <= prev_k);
      prev_k = cut.k;
      // Every within-cluster cophenetic distance respects the threshold.
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (cut.assignment[i] == cut.assignment[j])
            REQUIRE(dend.Cophenetic(i, j) <= t);
    }
  }
}

TEST_CASE("cap_clusters: below the cap is unchanged") {
  const auto d = PointsDistance({0, 1, 10});
  const auto dend = Ahc(d, Linkage::kAverage);
  const auto cut = CutByCophenetic(dend, 2.0);  // k == 2
  CHECK(CapClusters(dend, cut, 8) == cut);
}

TEST_CASE("cap_clusters: chain of 10 singletons capped to 4") {
  // Gaps double, so linkage heights are strictly increasing along the chain.
  std::vector<double> xs;
  double x = 0.0;
  for (int i = 0; i < 10; ++i) {
    xs.push_back(x);
    x += 1 << i;
  }
  const auto d = PointsDistance(xs);
  const auto dend = Ahc(d, Linkage::kComplete);
  const auto singletons = CutByCophenetic(dend, 0.0);
  REQUIRE(singletons.k == 10);
  const auto capped = CapClusters(dend, singletons, 4);
  CHECK(capped.k == 4);
  // Same result as cutting exactly after the 6 lowest merges.
  const double h6 = dend.merges()[5].height;
  REQUIRE(dend.merges()[6].height > h6);
  CHECK(capped == CutByCophenetic(dend, h6));
}

TEST_CASE("cap_clusters: max_k 1 collapses everything") {
  Rng rng(41);
  const auto d = RandomIntDistance(rng, 7, 9);
  const auto dend = Ahc(d, Linkage::kAverage);
  const auto capped = CapClusters(dend, CutByCophenetic(dend, 0.0), 1);
  CHECK(capped.k == 1);
  for (int a : capped.assignment) CHECK(a == 0);
}
