// core/src/cluster/cluster.cc

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

#include "cstk/cluster/cluster.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>

#include "cstk/util/common.h"
#include "cstk/util/strings.h"

namespace cstk {

namespace {

void CheckMatrix(const std::vector<std::string>& labels,
                 const Eigen::MatrixXd& values, bool distance) {
  const int n = static_cast<int>(labels.size());
  if (n < 2) ThrowError("matrix needs at least 2 items, got ", n);
  if (values.rows() != n || values.cols() != n)
    ThrowError("matrix shape ", values.rows(), "x", values.cols(),
               " does not match ", n, " labels");
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (values(i, j) != values(j, i))
        ThrowError("matrix not symmetric at (", labels[i], ",", labels[j], ")");
      if (distance && values(i, j) < 0)
        ThrowError("negative distance at (", labels[i], ",", labels[j], ")");
    }
    if (distance && values(i, i) != 0)
      ThrowError("nonzero diagonal at ", labels[i]);
  }
}

// Canonical (sorted label) item order; downstream logic is independent of
// the input permutation.
std::vector<int> CanonicalOrder(const std::vector<std::string>& labels) {
  std::vector<int> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (labels[a] != labels[b]) return labels[a] < labels[b];
    return a < b;
  });
  for (size_t i = 1; i < order.size(); ++i)
    if (labels[order[i - 1]] == labels[order[i]])
      ThrowError("duplicate item label '", labels[order[i]], "'");
  return order;
}

struct Candidate {
  double value;
  int a, b;            // cluster slots (slot id == smallest leaf index)
  uint32_t va, vb;     // slot versions at push time

  bool operator>(const Candidate& other) const {
    if (value != other.value) return value > other.value;
    if (a != other.a) return a > other.a;
    return b > other.b;
  }
};

}  // namespace

Dendrogram::Dendrogram(std::vector<std::string> labels,
                       std::vector<Merge> merges)
    : labels_(std::move(labels)), merges_(std::move(merges)) {
  const int n = NumLeaves();
  if (n < 1) ThrowError("dendrogram needs at least one leaf");
  if (static_cast<int>(merges_.size()) != n - 1)
    ThrowError("dendrogram over ", n, " leaves must have ", n - 1,
               " merges, got ", merges_.size());
  parent_.assign(2 * n - 1, -1);
  double prev_height = 0.0;
  for (size_t k = 0; k < merges_.size(); ++k) {
    const Merge& m = merges_[k];
    const int node = n + static_cast<int>(k);
    if (m.left < 0 || m.right <= m.left || m.right >= node)
      ThrowError("merge ", k, " references invalid nodes ", m.left, ",",
                 m.right);
    if (parent_[m.left] != -1 || parent_[m.right] != -1)
      ThrowError("merge ", k, " reuses an already merged node");
    if (k > 0 && m.height < prev_height)
      ThrowError("merge heights decrease at step ", k);
    prev_height = m.height;
    parent_[m.left] = node;
    parent_[m.right] = node;
  }
}

int Dendrogram::LeafIndex(const std::string& label) const {
  const auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label)
    ThrowError("unknown leaf '", label, "'");
  return static_cast<int>(it - labels_.begin());
}

double Dendrogram::Cophenetic(int leaf_i, int leaf_j) const {
  const int n = NumLeaves();
  if (leaf_i == leaf_j) ThrowError("cophenetic distance needs two leaves");
  if (leaf_i < 0 || leaf_i >= n || leaf_j < 0 || leaf_j >= n)
    ThrowError("leaf index out of range");
  // Parents always have larger node ids, so climb the smaller one.
  int a = leaf_i, b = leaf_j;
  while (a != b) {
    if (a < b) {
      a = parent_[a];
      CSTK_ASSERT(a != -1);
    } else {
      b = parent_[b];
      CSTK_ASSERT(b != -1);
    }
  }
  return merges_[a - n].height;
}

double Dendrogram::Cophenetic(const std::string& i,
                              const std::string& j) const {
  return Cophenetic(LeafIndex(i), LeafIndex(j));
}

std::string Dendrogram::ToText() const {
  std::ostringstream os;
  os << "#leaves " << NumLeaves() << '\n';
  for (int i = 0; i < NumLeaves(); ++i) os << i << '\t' << labels_[i] << '\n';
  for (size_t k = 0; k < merges_.size(); ++k) {
    const Merge& m = merges_[k];
    os << "merge\t" << m.left << '\t' << m.right << '\t'
       << DoubleToString(m.height) << '\t' << m.size << '\n';
  }
  return os.str();
}

DistanceMatrix LlrToDistance(const ScoreMatrix& scores) {
  CheckMatrix(scores.labels, scores.values, /*distance=*/false);
  const int n = static_cast<int>(scores.labels.size());
  double max_offdiag = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      max_offdiag = std::max(max_offdiag, scores.values(i, j));
  DistanceMatrix dist;
  dist.labels = scores.labels;
  dist.values = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = max_offdiag - scores.values(i, j);
      dist.values(i, j) = d;
      dist.values(j, i) = d;
    }
  }
  return dist;
}

Dendrogram Ahc(const DistanceMatrix& dist, Linkage linkage) {
  CheckMatrix(dist.labels, dist.values, /*distance=*/true);
  const int n = static_cast<int>(dist.labels.size());
  const std::vector<int> order = CanonicalOrder(dist.labels);
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = dist.labels[order[i]];

  // Original distances in canonical order.
  Eigen::MatrixXd base(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) base(i, j) = dist.values(order[i], order[j]);

  // Cluster slots: slot id == smallest canonical leaf in the cluster.
  // stat(i, j) for active i < j holds the pairwise sum (average linkage) or
  // max (complete linkage) of original distances; the comparable linkage
  // value is derived on demand, which keeps it identical to a from-scratch
  // recomputation.
  Eigen::MatrixXd stat = base;
  std::vector<bool> active(n, true);
  std::vector<uint32_t> version(n, 0);
  std::vector<int> size(n, 1);
  std::vector<int> node_id(n);
  std::iota(node_id.begin(), node_id.end(), 0);

  const bool average = linkage == Linkage::kAverage;
  auto value_of = [&](int a, int b) {
    const double s = stat(std::min(a, b), std::max(a, b));
    return average ? s / (static_cast<double>(size[a]) * size[b]) : s;
  };

  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> queue;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      queue.push({value_of(i, j), i, j, 0, 0});

  std::vector<Merge> merges;
  merges.reserve(n - 1);
  while (static_cast<int>(merges.size()) < n - 1) {
    CSTK_ASSERT(!queue.empty());
    const Candidate c = queue.top();
    queue.pop();
    if (!active[c.a] || !active[c.b] || version[c.a] != c.va ||
        version[c.b] != c.vb)
      continue;
    const int a = c.a, b = c.b;  // a < b by construction
    Merge m;
    m.left = std::min(node_id[a], node_id[b]);
    m.right = std::max(node_id[a], node_id[b]);
    m.height = c.value;
    m.size = size[a] + size[b];
    // Fold cluster b into slot a and refresh candidate pairs.
    for (int k = 0; k < n; ++k) {
      if (!active[k] || k == a || k == b) continue;
      const double sa = stat(std::min(k, a), std::max(k, a));
      const double sb = stat(std::min(k, b), std::max(k, b));
      stat(std::min(k, a), std::max(k, a)) =
          average ? sa + sb : std::max(sa, sb);
    }
    active[b] = false;
    ++version[a];
    size[a] = m.size;
    node_id[a] = n + static_cast<int>(merges.size());
    merges.push_back(m);
    for (int k = 0; k < n; ++k) {
      if (!active[k] || k == a) continue;
      const int lo = std::min(k, a), hi = std::max(k, a);
      queue.push({value_of(lo, hi), lo, hi, version[lo], version[hi]});
    }
  }
  return Dendrogram(std::move(labels), std::move(merges));
}

Clustering CutByCophenetic(const Dendrogram& dend, double threshold) {
  if (threshold < 0) ThrowError("cophenetic threshold must be >= 0");
  const auto& merges = dend.merges();
  size_t applied = 0;
  while (applied < merges.size() && merges[applied].height <= threshold)
    ++applied;
  // Heights are non-decreasing, so the applied merges form a prefix.
  const int n = dend.NumLeaves();
  std::vector<int> root(2 * n - 1);
  std::iota(root.begin(), root.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (root[x] != x) {
      root[x] = root[root[x]];
      x = root[x];
    }
    return x;
  };
  for (size_t k = 0; k < applied; ++k) {
    const int node = n + static_cast<int>(k);
    root[find(merges[k].left)] = node;
    root[find(merges[k].right)] = node;
  }
  Clustering out;
  out.assignment.assign(n, -1);
  std::vector<int> dense(2 * n - 1, -1);
  for (int leaf = 0; leaf < n; ++leaf) {
    const int r = find(leaf);
    if (dense[r] == -1) dense[r] = out.k++;
    out.assignment[leaf] = dense[r];
  }
  return out;
}

Clustering CapClusters(const Dendrogram& dend, const Clustering& clustering,
                       int max_k) {
  if (max_k < 1) ThrowError("max_k must be >= 1");
  if (clustering.k <= max_k) return clustering;
  const int n = dend.NumLeaves();
  // The clustering came from a height cut, i.e. a prefix of the merge list;
  // continuing up the dendrogram in height order means extending that
  // prefix until only max_k clusters remain.
  const size_t target = static_cast<size_t>(n - max_k);
  std::vector<int> root(2 * n - 1);
  std::iota(root.begin(), root.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (root[x] != x) {
      root[x] = root[root[x]];
      x = root[x];
    }
    return x;
  };
  for (size_t k = 0; k < target; ++k) {
    const int node = n + static_cast<int>(k);
    root[find(dend.merges()[k].left)] = node;
    root[find(dend.merges()[k].right)] = node;
  }
  Clustering out;
  out.assignment.assign(n, -1);
  std::vector<int> dense(2 * n - 1, -1);
  for (int leaf = 0; leaf < n; ++leaf) {
    const int r = find(leaf);
    if (dense[r] == -1) dense[r] = out.k++;
    out.assignment[leaf] = dense[r];
  }
  CSTK_ASSERT(out.k == max_k);
  return out;
}

}  // namespace cstk
