// core/src/scoring/backend.cc

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

#include "cstk/scoring/backend.h"

#include <cmath>
#include <fstream>

#include "cstk/util/common.h"
#include "cstk/util/eigen_io.h"

namespace cstk {

namespace {

constexpr char kMagic[] = "CSTKLRBE";
constexpr uint32_t kVersion = 1;
constexpr double kMinScale = 1e-6;
constexpr double kPi = 3.14159265358979323846;

double Sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// CE of the binary reduction P(L1 | t) = sigmoid(a t + delta) with
// t = raw_L1 - raw_L2.
double BinaryCe(const std::vector<double>& t, const std::vector<int>& y,
                double a, double delta) {
  double ce = 0.0;
  for (size_t i = 0; i < t.size(); ++i) {
    const double z = a * t[i] + delta;
    // log(1 + exp(x)) computed stably.
    const double log1pexp =
        z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
    ce += y[i] ? log1pexp - z : log1pexp;
  }
  return ce / static_cast<double>(t.size());
}

}  // namespace

LanguageBackend::LanguageBackend(std::array<Eigen::VectorXd, 2> class_means,
                                 Eigen::MatrixXd shared_cov,
                                 std::array<double, 2> priors,
                                 Calibration calibration)
    : class_means_(std::move(class_means)),
      shared_cov_(std::move(shared_cov)),
      priors_(priors),
      calibration_(calibration) {
  const Eigen::Index d = class_means_[0].size();
  if (class_means_[1].size() != d)
    ThrowError("class means have different dimensions");
  if (shared_cov_.rows() != d || shared_cov_.cols() != d)
    ThrowError("shared covariance shape does not match class mean dimension");
  if (priors_[0] <= 0.0 || priors_[1] <= 0.0 ||
      std::abs(priors_[0] + priors_[1] - 1.0) > 1e-9)
    ThrowError("language priors must be positive and sum to 1");
  if (calibration_.scale <= 0.0)
    ThrowError("calibration scale must be positive");
  llt_.compute(shared_cov_);
  if (llt_.info() != Eigen::Success)
    ThrowError("shared covariance is not positive definite");
  double log_det = 0.0;
  for (Eigen::Index i = 0; i < d; ++i)
    log_det += 2.0 * std::log(llt_.matrixL()(i, i));
  log_norm_ = -0.5 * static_cast<double>(d) * std::log(2.0 * kPi) -
              0.5 * log_det;
}

BackendScore LanguageBackend::Score(const Eigen::VectorXd& x) const {
  if (x.size() != Dim())
    ThrowError("backend dimension mismatch: got ", x.size(), ", model has ",
               Dim());
  BackendScore out;
  for (size_t c = 0; c < 2; ++c) {
    const Eigen::VectorXd centered = x - class_means_[c];
    const double maha = centered.dot(llt_.solve(centered));
    out.raw_loglik[c] = log_norm_ - 0.5 * maha;
    out.calibrated[c] =
        calibration_.scale * out.raw_loglik[c] + calibration_.offsets[c];
  }
  out.llr = out.calibrated[0] - out.calibrated[1];
  out.posterior_llr = out.llr + std::log(priors_[0] / priors_[1]);
  return out;
}

LanguageBackend TrainBackend(const std::vector<Eigen::VectorXd>& embeddings,
                             const std::vector<LanguageTag>& tags,
                             const std::array<double, 2>& priors,
                             double ridge) {
  if (embeddings.size() != tags.size())
    ThrowError("embedding/tag count mismatch");
  if (embeddings.empty()) ThrowError("no backend training embeddings");
  const Eigen::Index d = embeddings[0].size();
  std::array<int, 2> counts = {0, 0};
  std::array<Eigen::VectorXd, 2> means = {Eigen::VectorXd::Zero(d),
                                          Eigen::VectorXd::Zero(d)};
  for (size_t i = 0; i < embeddings.size(); ++i) {
    if (embeddings[i].size() != d)
      ThrowError("backend training embeddings have mixed dimensions");
    const size_t c = static_cast<size_t>(tags[i]);
    means[c] += embeddings[i];
    ++counts[c];
  }
  if (counts[0] == 0 || counts[1] == 0)
    ThrowError("backend training needs both language classes present");
  for (size_t c = 0; c < 2; ++c) means[c] /= static_cast<double>(counts[c]);

  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
  for (size_t i = 0; i < embeddings.size(); ++i) {
    const Eigen::VectorXd centered =
        embeddings[i] - means[static_cast<size_t>(tags[i])];
    cov += centered * centered.transpose();
  }
  cov /= static_cast<double>(embeddings.size());
  cov = 0.5 * (cov + cov.transpose());
  cov.diagonal().array() += ridge * std::max(cov.diagonal().mean(), 0.0) +
                            1e-10;
  return LanguageBackend(std::move(means), std::move(cov), priors);
}

double MulticlassCrossEntropy(
    const std::vector<std::array<double, 2>>& scores,
    const std::vector<LanguageTag>& tags) {
  CSTK_ASSERT(scores.size() == tags.size());
  if (scores.empty()) ThrowError("cross-entropy of an empty score list");
  double ce = 0.0;
  for (size_t i = 0; i < scores.size(); ++i) {
    const double t = scores[i][0] - scores[i][1];
    const double log1pexp =
        t > 0 ? std::log1p(std::exp(-t)) : -t + std::log1p(std::exp(t));
    // -log softmax(true class)
    ce += tags[i] == LanguageTag::kL1 ? log1pexp : t + log1pexp;
  }
  return ce / static_cast<double>(scores.size());
}

CalibrationReport TrainCalibration(
    const std::vector<std::array<double, 2>>& raw_scores,
    const std::vector<LanguageTag>& tags, int max_iters, double grad_tol) {
  if (raw_scores.size() != tags.size())
    ThrowError("score/tag count mismatch");
  std::array<int, 2> counts = {0, 0};
  for (LanguageTag t : tags) ++counts[static_cast<size_t>(t)];
  if (counts[0] < 10 || counts[1] < 10)
    ThrowError("calibration needs >= 10 samples per class, got ", counts[0],
               "/", counts[1]);

  const size_t n = raw_scores.size();
  std::vector<double> t(n);
  std::vector<int> y(n);
  for (size_t i = 0; i < n; ++i) {
    t[i] = raw_scores[i][0] - raw_scores[i][1];
    y[i] = tags[i] == LanguageTag::kL1 ? 1 : 0;
  }

  double a = 1.0, delta = 0.0;
  double ce = BinaryCe(t, y, a, delta);
  const double ce_before = ce;
  int iters = 0;
  double grad_norm = 0.0;
  bool a_fixed = false;
  bool converged = false;
  while (iters < max_iters) {
    ++iters;
    double ga = 0.0, gd = 0.0, haa = 0.0, had = 0.0, hdd = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double p = Sigmoid(a * t[i] + delta);
      const double r = p - y[i];
      const double w = p * (1.0 - p);
      ga += r * t[i];
      gd += r;
      haa += w * t[i] * t[i];
      had += w * t[i];
      hdd += w;
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    ga *= inv_n;
    gd *= inv_n;
    haa = haa * inv_n + 1e-12;
    had *= inv_n;
    hdd = hdd * inv_n + 1e-12;
    grad_norm = a_fixed ? std::abs(gd) : std::max(std::abs(ga), std::abs(gd));
    if (grad_norm <= grad_tol) {
      converged = true;
      break;
    }
    double step_a, step_d;
    if (a_fixed) {
      step_a = 0.0;
      step_d = -gd / hdd;
    } else {
      const double det = haa * hdd - had * had;
      step_a = -(hdd * ga - had * gd) / det;
      step_d = -(haa * gd - had * ga) / det;
    }
    // Backtracking keeps the objective monotone.
    double alpha = 1.0;
    double new_ce = ce;
    for (int bt = 0; bt < 60; ++bt) {
      new_ce = BinaryCe(t, y, a + alpha * step_a, delta + alpha * step_d);
      if (new_ce <= ce) break;
      alpha *= 0.5;
    }
    if (new_ce > ce) {
      converged = true;  // no descent direction makes progress
      break;
    }
    a += alpha * step_a;
    delta += alpha * step_d;
    const double improvement = ce - new_ce;
    ce = new_ce;
    // The positivity constraint on the scale binds: pin it and keep
    // optimizing the offset alone.
    if (!a_fixed && a < kMinScale) {
      a = kMinScale;
      a_fixed = true;
      ce = BinaryCe(t, y, a, delta);
      continue;
    }
    if (improvement < 1e-13 * std::max(1.0, std::abs(ce))) {
      converged = true;
      break;
    }
  }
  if (!converged)
    ThrowError("calibration did not converge after ", max_iters,
               " iterations (gradient norm ", grad_norm, ")");
  CalibrationReport report;
  report.calibration.scale = a;
  report.calibration.offsets = {delta / 2.0, -delta / 2.0};
  report.cross_entropy_before = ce_before;
  report.cross_entropy_after = ce;
  report.iterations = iters;
  CSTK_ASSERT(report.cross_entropy_after <= report.cross_entropy_before + 1e-12);
  return report;
}

void SaveBackend(const LanguageBackend& backend, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) ThrowError("cannot open '", path, "' for writing");
  WriteMagic(out, kMagic);
  WriteRaw<uint32_t>(out, kVersion);
  WriteRaw<uint32_t>(out, static_cast<uint32_t>(backend.Dim()));
  WriteVector(out, backend.ClassMean(LanguageTag::kL1));
  WriteVector(out, backend.ClassMean(LanguageTag::kL2));
  WriteMatrix(out, backend.shared_cov());
  WriteRaw<double>(out, backend.priors()[0]);
  WriteRaw<double>(out, backend.priors()[1]);
  WriteRaw<double>(out, backend.calibration().scale);
  WriteRaw<double>(out, backend.calibration().offsets[0]);
  WriteRaw<double>(out, backend.calibration().offsets[1]);
  if (!out) ThrowError("write to '", path, "' failed");
}

LanguageBackend LoadBackend(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) ThrowError("cannot open backend model '", path, "'");
  ExpectMagic(in, kMagic, path);
  const auto version = ReadRaw<uint32_t>(in, "version");
  if (version != kVersion)
    ThrowError("unsupported backend model version ", version);
  const auto dim = ReadRaw<uint32_t>(in, "dimension");
  std::array<Eigen::VectorXd, 2> means;
  means[0] = ReadVector(in, "class mean L1");
  means[1] = ReadVector(in, "class mean L2");
  Eigen::MatrixXd cov = ReadMatrix(in, "shared covariance");
  if (means[0].size() != dim)
    ThrowError("backend model dimension mismatch in '", path, "'");
  std::array<double, 2> priors;
  priors[0] = ReadRaw<double>(in, "prior L1");
  priors[1] = ReadRaw<double>(in, "prior L2");
  Calibration calibration;
  calibration.scale = ReadRaw<double>(in, "calibration scale");
  calibration.offsets[0] = ReadRaw<double>(in, "calibration offset L1");
  calibration.offsets[1] = ReadRaw<double>(in, "calibration offset L2");
  // The constructor re-validates PD-ness and priors.
  return LanguageBackend(std::move(means), std::move(cov), priors,
                         calibration);
}

}  // namespace cstk
