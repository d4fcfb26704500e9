// core/include/cstk/cluster/cluster.h

// Copyright 2026  CSTK Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef CSTK_CLUSTER_CLUSTER_H_
#define CSTK_CLUSTER_CLUSTER_H_

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace cstk {

// Symmetric matrix of pairwise similarity scores; the diagonal is ignored.
struct ScoreMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd values;
};

// Symmetric non-negative matrix with zero diagonal.
struct DistanceMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd values;
};

enum class Linkage { kAverage, kComplete };

// One agglomeration step.  Nodes 0..n-1 are leaves in canonical (sorted
// label) order; internal node n+k is created by merge k.  left < right.
struct Merge {
  int left = 0;
  int right = 0;
  double height = 0.0;
  int size = 0;

  bool operator==(const Merge&) const = default;
};

// Full agglomeration history.  Heights are non-decreasing along the merge
// sequence for both supported linkages.
class Dendrogram {
 public:
  Dendrogram(std::vector<std::string> labels, std::vector<Merge> merges);

  int NumLeaves() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Merge>& merges() const { return merges_; }

  int LeafIndex(const std::string& label) const;  // throws on unknown leaf

  // Height of the lowest merge uniting leaves i and j.
  double Cophenetic(int leaf_i, int leaf_j) const;
  double Cophenetic(const std::string& i, const std::string& j) const;

  // One line per merge, for debugging dumps.
  std::string ToText() const;

  bool operator==(const Dendrogram&) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<Merge> merges_;
  std::vector<int> parent_;  // node -> parent node (2n-1 entries, root = -1)
};

// Flat clustering: leaf (canonical index) -> dense cluster id in [0, k).
// Ids are ordered by each cluster's smallest leaf.
struct Clustering {
  std::vector<int> assignment;
  int k = 0;

  bool operator==(const Clustering&) const = default;
};

// d[i][j] = max_offdiag(scores) - scores[i][j]; the minimum off-diagonal
// distance of the result is exactly 0.
DistanceMatrix LlrToDistance(const ScoreMatrix& scores);

// Agglomerative clustering.  Ties on the merge distance are broken by the
// lexicographically smallest (min leaf, min leaf) pair of the candidate
// clusters, making the result independent of input order.
Dendrogram Ahc(const DistanceMatrix& dist, Linkage linkage);

// Maximal subtrees whose internal merges all have height <= threshold.
Clustering CutByCophenetic(const Dendrogram& dend, double threshold);

// If clustering has more than max_k clusters, keeps applying the pending
// merges in dendrogram order (lowest first) until exactly max_k remain.
Clustering CapClusters(const Dendrogram& dend, const Clustering& clustering,
                       int max_k);

}  // namespace cstk

#endif  // CSTK_CLUSTER_CLUSTER_H_
