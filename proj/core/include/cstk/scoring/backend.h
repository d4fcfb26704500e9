// core/include/cstk/scoring/backend.h

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

#ifndef CSTK_SCORING_BACKEND_H_
#define CSTK_SCORING_BACKEND_H_

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "cstk/core/types.h"

namespace cstk {

// Affine multiclass calibration: calibrated_c = scale * raw_c + offset_c
// with a shared positive scale.  Offsets are constrained to sum to zero.
struct Calibration {
  double scale = 1.0;
  std::array<double, 2> offsets = {0.0, 0.0};

  bool operator==(const Calibration&) const = default;
};

struct BackendScore {
  std::array<double, 2> raw_loglik;    // log Gaussian density per class
  std::array<double, 2> calibrated;    // after the affine calibration
  double llr = 0.0;                    // prior-free: calibrated L1 - L2
  double posterior_llr = 0.0;          // llr + log(prior L1 / prior L2)

  LanguageTag ArgMax() const {
    return posterior_llr >= 0.0 ? LanguageTag::kL1 : LanguageTag::kL2;
  }
};

// Per-class Gaussians with a shared covariance plus calibration and priors.
class LanguageBackend {
 public:
  LanguageBackend(std::array<Eigen::VectorXd, 2> class_means,
                  Eigen::MatrixXd shared_cov, std::array<double, 2> priors,
                  Calibration calibration = {});

  int Dim() const { return static_cast<int>(class_means_[0].size()); }
  const Eigen::VectorXd& ClassMean(LanguageTag t) const {
    return class_means_[static_cast<size_t>(t)];
  }
  const Eigen::MatrixXd& shared_cov() const { return shared_cov_; }
  const std::array<double, 2>& priors() const { return priors_; }
  const Calibration& calibration() const { return calibration_; }
  void set_calibration(const Calibration& c) { calibration_ = c; }

  BackendScore Score(const Eigen::VectorXd& x) const;

 private:
  std::array<Eigen::VectorXd, 2> class_means_;
  Eigen::MatrixXd shared_cov_;
  std::array<double, 2> priors_;
  Calibration calibration_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  double log_norm_ = 0.0;  // -(d/2) log 2*pi - (1/2) log det
};

// Class means are per-class sample means; shared covariance is the pooled
// within-class covariance (plus ridge).  Both classes must be present.
LanguageBackend TrainBackend(const std::vector<Eigen::VectorXd>& embeddings,
                             const std::vector<LanguageTag>& tags,
                             const std::array<double, 2>& priors,
                             double ridge = 1e-4);

struct CalibrationReport {
  Calibration calibration;
  double cross_entropy_before = 0.0;  // at identity calibration
  double cross_entropy_after = 0.0;
  int iterations = 0;
};

// Fits scale > 0 and sum-zero offsets minimizing the multiclass (here:
// two-class) cross-entropy of softmax(calibrated scores) by damped Newton
// iteration; the objective is convex.  Throws if the gradient has not
// vanished after max_iters.
CalibrationReport TrainCalibration(
    const std::vector<std::array<double, 2>>& raw_scores,
    const std::vector<LanguageTag>& tags, int max_iters = 100,
    double grad_tol = 1e-10);

// Mean negative log softmax probability of the true class.
double MulticlassCrossEntropy(
    const std::vector<std::array<double, 2>>& scores,
    const std::vector<LanguageTag>& tags);

void SaveBackend(const LanguageBackend& backend, const std::string& path);
LanguageBackend LoadBackend(const std::string& path);

}  // namespace cstk

#endif  // CSTK_SCORING_BACKEND_H_
