// core/include/cstk/scoring/plda.h

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

#ifndef CSTK_SCORING_PLDA_H_
#define CSTK_SCORING_PLDA_H_

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "cstk/cluster/cluster.h"
#include "cstk/core/types.h"

namespace cstk {

// ||x|| = 1, direction preserved.  Throws on the zero vector.
Eigen::VectorXd LengthNormalize(const Eigen::VectorXd& x);

// Two-covariance PLDA: speaker variable y ~ N(mean, B), observation
// x | y ~ N(y, W).  Scoring uses a cached simultaneous diagonalization of
// (W, B): with u = A(x - mean), A W A^T = I and A B A^T = diag(psi), the
// pair LLR decomposes per dimension
//
//   llr_d = c1 (u^2 + v^2) + c2 u v + c0,
//   c1 = -psi^2 / (2 (1+psi)(1+2psi)),  c2 = psi / (1+2psi),
//   c0 = log((1+psi)^2 / (1+2psi)) / 2.
class PldaModel {
 public:
  // between must be PSD and within PD; lda (if present) is the projection
  // applied by callers before scoring, rows = model dim.
  PldaModel(Eigen::VectorXd mean, Eigen::MatrixXd between,
            Eigen::MatrixXd within, std::optional<Eigen::MatrixXd> lda);

  int Dim() const { return static_cast<int>(mean_.size()); }
  int InputDim() const {
    return lda_ ? static_cast<int>(lda_->cols()) : Dim();
  }

  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& between_cov() const { return between_; }
  const Eigen::MatrixXd& within_cov() const { return within_; }
  const std::optional<Eigen::MatrixXd>& lda() const { return lda_; }

  // Projects an input-space vector into model space (identity without LDA).
  Eigen::VectorXd ApplyLda(const Eigen::VectorXd& x) const;

  // log p(x,y | same speaker) - log p(x,y | different speakers) for
  // model-space vectors; symmetric in (x, y).
  double Llr(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd between_;
  Eigen::MatrixXd within_;
  std::optional<Eigen::MatrixXd> lda_;
  // Cached diagonalization.
  Eigen::MatrixXd transform_;
  Eigen::ArrayXd c0_, c1_, c2_;
};

struct PldaTrainOptions {
  int em_iters = 10;
  std::optional<int> target_dim;  // estimate an LDA projection first
  double ridge = 1e-4;            // times the mean diagonal of W
};

// Moment-based initialization refined by a fixed number of EM iterations of
// the two-covariance model.  Requires >= 2 speakers; speakers with a single
// embedding contribute to the between-class statistics only.
PldaModel TrainPlda(const std::vector<Eigen::VectorXd>& embeddings,
                    const std::vector<LabelId>& speakers,
                    const PldaTrainOptions& options = {});

// Full symmetric matrix of pairwise LLRs (model-space items).  Entries are
// computed once per pair and mirrored, so the result is bit-identical for
// any job count.
ScoreMatrix PldaScoreMatrix(const std::vector<std::string>& labels,
                            const std::vector<Eigen::VectorXd>& items,
                            const PldaModel& model, int jobs = 1);

void SavePldaModel(const PldaModel& model, const std::string& path);
PldaModel LoadPldaModel(const std::string& path);

}  // namespace cstk

#endif  // CSTK_SCORING_PLDA_H_
