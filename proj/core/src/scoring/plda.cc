// core/src/scoring/plda.cc

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

#include "cstk/scoring/plda.h"

#include <Eigen/Eigenvalues>
#include <fstream>
#include <map>

#include "cstk/util/common.h"
#include "cstk/util/eigen_io.h"
#include "cstk/util/parallel.h"

namespace cstk {

namespace {

constexpr char kMagic[] = "CSTKPLDA";
constexpr uint32_t kVersion = 1;

Eigen::MatrixXd Symmetrize(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

void AddRidge(Eigen::MatrixXd* m, double factor) {
  const double mean_diag = m->diagonal().mean();
  const double eps = factor * std::max(mean_diag, 0.0) + 1e-10;
  m->diagonal().array() += eps;
}

void CheckPd(const Eigen::MatrixXd& m, std::string_view what) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    ThrowError(what, " is not positive definite");
}

}  // namespace

Eigen::VectorXd LengthNormalize(const Eigen::VectorXd& x) {
  const double norm = x.norm();
  if (norm == 0.0) ThrowError("cannot length-normalize the zero vector");
  return x / norm;
}

PldaModel::PldaModel(Eigen::VectorXd mean, Eigen::MatrixXd between,
                     Eigen::MatrixXd within, std::optional<Eigen::MatrixXd> lda)
    : mean_(std::move(mean)),
      between_(std::move(between)),
      within_(std::move(within)),
      lda_(std::move(lda)) {
  const Eigen::Index d = mean_.size();
  if (between_.rows() != d || between_.cols() != d || within_.rows() != d ||
      within_.cols() != d)
    ThrowError("PLDA covariance shapes do not match mean dimension ", d);
  if (lda_ && lda_->rows() != d)
    ThrowError("LDA projection rows must equal PLDA dimension");
  CheckPd(within_, "within covariance");

  // Simultaneous diagonalization: A W A^T = I, A B A^T = diag(psi).
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> wsolve(within_);
  if (wsolve.info() != Eigen::Success ||
      wsolve.eigenvalues().minCoeff() <= 0.0)
    ThrowError("within covariance is not positive definite");
  const Eigen::MatrixXd whiten =
      wsolve.eigenvalues().array().rsqrt().matrix().asDiagonal() *
      wsolve.eigenvectors().transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> bsolve(
      Symmetrize(whiten * between_ * whiten.transpose()));
  if (bsolve.info() != Eigen::Success)
    ThrowError("between covariance diagonalization failed");
  Eigen::ArrayXd psi = bsolve.eigenvalues().array();
  // B is PSD up to round-off; clamp tiny negatives.
  if (psi.minCoeff() < -1e-8 * std::max(1.0, psi.abs().maxCoeff()))
    ThrowError("between covariance is not positive semi-definite");
  psi = psi.max(0.0);
  transform_ = bsolve.eigenvectors().transpose() * whiten;
  c1_ = -psi.square() / (2.0 * (1.0 + psi) * (1.0 + 2.0 * psi));
  c2_ = psi / (1.0 + 2.0 * psi);
  c0_ = ((1.0 + psi).square() / (1.0 + 2.0 * psi)).log() / 2.0;
}

Eigen::VectorXd PldaModel::ApplyLda(const Eigen::VectorXd& x) const {
  if (!lda_) return x;
  if (x.size() != lda_->cols())
    ThrowError("LDA input dimension mismatch: got ", x.size(), ", expected ",
               lda_->cols());
  return *lda_ * x;
}

double PldaModel::Llr(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  if (x.size() != Dim() || y.size() != Dim())
    ThrowError("PLDA dimension mismatch: got ", x.size(), " and ", y.size(),
               ", model has ", Dim());
  const Eigen::ArrayXd u = (transform_ * (x - mean_)).array();
  const Eigen::ArrayXd v = (transform_ * (y - mean_)).array();
  return (c1_ * (u.square() + v.square()) + c2_ * u * v + c0_).sum();
}

PldaModel TrainPlda(const std::vector<Eigen::VectorXd>& embeddings,
                    const std::vector<LabelId>& speakers,
                    const PldaTrainOptions& options) {
  if (embeddings.size() != speakers.size())
    ThrowError("embedding/label count mismatch");
  if (embeddings.empty()) ThrowError("no training embeddings");
  const Eigen::Index d = embeddings[0].size();
  for (const auto& e : embeddings)
    if (e.size() != d) ThrowError("training embeddings have mixed dimensions");

  std::map<LabelId, std::vector<int>> by_speaker;
  for (size_t i = 0; i < speakers.size(); ++i)
    by_speaker[speakers[i]].push_back(static_cast<int>(i));
  const int num_speakers = static_cast<int>(by_speaker.size());
  if (num_speakers < 2)
    ThrowError("PLDA training needs >= 2 speakers, got ", num_speakers);

  // Optional LDA on between/within scatter, estimated before PLDA.
  std::optional<Eigen::MatrixXd> lda;
  std::vector<Eigen::VectorXd> data;
  if (options.target_dim) {
    const int target = *options.target_dim;
    if (target < 1 || target > d)
      ThrowError("LDA target dimension ", target, " out of range for d=", d);
    Eigen::VectorXd global = Eigen::VectorXd::Zero(d);
    for (const auto& e : embeddings) global += e;
    global /= static_cast<double>(embeddings.size());
    Eigen::MatrixXd sb = Eigen::MatrixXd::Zero(d, d);
    Eigen::MatrixXd sw = Eigen::MatrixXd::Zero(d, d);
    for (const auto& [label, idx] : by_speaker) {
      Eigen::VectorXd m = Eigen::VectorXd::Zero(d);
      for (int i : idx) m += embeddings[i];
      m /= static_cast<double>(idx.size());
      sb += static_cast<double>(idx.size()) * (m - global) *
            (m - global).transpose();
      for (int i : idx)
        sw += (embeddings[i] - m) * (embeddings[i] - m).transpose();
    }
    sb /= static_cast<double>(embeddings.size());
    sw /= static_cast<double>(embeddings.size());
    AddRidge(&sw, options.ridge);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solve(
        Symmetrize(sb), Symmetrize(sw));
    if (solve.info() != Eigen::Success)
      ThrowError("LDA eigensolve failed (singular within-class scatter)");
    // Eigenvalues ascend; take the trailing target_dim directions.
    Eigen::MatrixXd proj(target, d);
    for (int k = 0; k < target; ++k)
      proj.row(k) = solve.eigenvectors().col(d - 1 - k).transpose();
    lda = proj;
    data.reserve(embeddings.size());
    for (const auto& e : embeddings) data.push_back(proj * e);
  } else {
    data = embeddings;
  }
  const Eigen::Index dim = data[0].size();

  // Moment initialization.
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
  for (const auto& e : data) mean += e;
  mean /= static_cast<double>(data.size());

  Eigen::MatrixXd between = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd within = Eigen::MatrixXd::Zero(dim, dim);
  int within_count = 0;
  for (const auto& [label, idx] : by_speaker) {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(dim);
    for (int i : idx) m += data[i];
    m /= static_cast<double>(idx.size());
    between += (m - mean) * (m - mean).transpose();
    for (int i : idx) {
      within += (data[i] - m) * (data[i] - m).transpose();
      ++within_count;
    }
  }
  between = Symmetrize(between / num_speakers);
  if (within_count <= num_speakers)
    ThrowError(
        "singular within-class scatter: every speaker has a single "
        "embedding; provide more data per speaker");
  within = Symmetrize(within / within_count);
  AddRidge(&within, options.ridge);

  // Fixed-count EM refinement of the two-covariance model; the mean stays
  // at the data mean.
  for (int iter = 0; iter < options.em_iters; ++iter) {
    const Eigen::LLT<Eigen::MatrixXd> b_llt(between +
                                            1e-10 * Eigen::MatrixXd::Identity(
                                                        dim, dim));
    const Eigen::LLT<Eigen::MatrixXd> w_llt(within);
    const Eigen::MatrixXd b_inv =
        b_llt.solve(Eigen::MatrixXd::Identity(dim, dim));
    const Eigen::MatrixXd w_inv =
        w_llt.solve(Eigen::MatrixXd::Identity(dim, dim));
    Eigen::MatrixXd new_between = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::MatrixXd new_within = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& [label, idx] : by_speaker) {
      const double n_s = static_cast<double>(idx.size());
      Eigen::VectorXd sum = Eigen::VectorXd::Zero(dim);
      for (int i : idx) sum += data[i];
      const Eigen::MatrixXd lambda = b_inv + n_s * w_inv;
      const Eigen::LLT<Eigen::MatrixXd> lambda_llt(Symmetrize(lambda));
      const Eigen::MatrixXd cov =
          lambda_llt.solve(Eigen::MatrixXd::Identity(dim, dim));
      const Eigen::VectorXd post_mean =
          lambda_llt.solve(b_inv * mean + w_inv * sum);
      new_between += cov + (post_mean - mean) * (post_mean - mean).transpose();
      for (int i : idx)
        new_within += (data[i] - post_mean) * (data[i] - post_mean).transpose();
      new_within += n_s * cov;
    }
    between = Symmetrize(new_between / num_speakers);
    within = Symmetrize(new_within / within_count);
    AddRidge(&within, options.ridge);
  }
  return PldaModel(std::move(mean), std::move(between), std::move(within),
                   std::move(lda));
}

ScoreMatrix PldaScoreMatrix(const std::vector<std::string>& labels,
                            const std::vector<Eigen::VectorXd>& items,
                            const PldaModel& model, int jobs) {
  if (labels.size() != items.size())
    ThrowError("label/item count mismatch in score matrix");
  const int n = static_cast<int>(items.size());
  if (n < 2) ThrowError("score matrix needs >= 2 items, got ", n);
  ScoreMatrix out;
  out.labels = labels;
  out.values = Eigen::MatrixXd::Zero(n, n);
  ParallelFor(static_cast<size_t>(n), jobs, [&](size_t i) {
    for (int j = static_cast<int>(i) + 1; j < n; ++j) {
      const double llr = model.Llr(items[i], items[j]);
      out.values(static_cast<int>(i), j) = llr;
      out.values(j, static_cast<int>(i)) = llr;
    }
  });
  return out;
}

void SavePldaModel(const PldaModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) ThrowError("cannot open '", path, "' for writing");
  WriteMagic(out, kMagic);
  WriteRaw<uint32_t>(out, kVersion);
  WriteRaw<uint32_t>(out, static_cast<uint32_t>(model.Dim()));
  WriteVector(out, model.mean());
  WriteMatrix(out, model.between_cov());
  WriteMatrix(out, model.within_cov());
  WriteRaw<uint8_t>(out, model.lda() ? 1 : 0);
  if (model.lda()) WriteMatrix(out, *model.lda());
  if (!out) ThrowError("write to '", path, "' failed");
}

PldaModel LoadPldaModel(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) ThrowError("cannot open PLDA model '", path, "'");
  ExpectMagic(in, kMagic, path);
  const auto version = ReadRaw<uint32_t>(in, "version");
  if (version != kVersion)
    ThrowError("unsupported PLDA model version ", version);
  const auto dim = ReadRaw<uint32_t>(in, "dimension");
  Eigen::VectorXd mean = ReadVector(in, "mean");
  Eigen::MatrixXd between = ReadMatrix(in, "between covariance");
  Eigen::MatrixXd within = ReadMatrix(in, "within covariance");
  if (mean.size() != dim)
    ThrowError("PLDA model dimension mismatch in '", path, "'");
  std::optional<Eigen::MatrixXd> lda;
  if (ReadRaw<uint8_t>(in, "lda flag")) lda = ReadMatrix(in, "lda");
  // The constructor re-validates PD/PSD-ness.
  return PldaModel(std::move(mean), std::move(between), std::move(within),
                   std::move(lda));
}

}  // namespace cstk
