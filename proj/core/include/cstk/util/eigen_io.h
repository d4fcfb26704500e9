// core/include/cstk/util/eigen_io.h

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

#ifndef CSTK_UTIL_EIGEN_IO_H_
#define CSTK_UTIL_EIGEN_IO_H_

#include <Eigen/Dense>
#include <iostream>

#include "cstk/util/binary_io.h"

namespace cstk {

// Matrices are stored as uint64 rows, uint64 cols, then row-major float64.
inline void WriteMatrix(std::ostream& os, const Eigen::MatrixXd& m) {
  WriteRaw<uint64_t>(os, static_cast<uint64_t>(m.rows()));
  WriteRaw<uint64_t>(os, static_cast<uint64_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) WriteRaw<double>(os, m(r, c));
}

inline Eigen::MatrixXd ReadMatrix(std::istream& is, std::string_view what) {
  const auto rows = ReadRaw<uint64_t>(is, what);
  const auto cols = ReadRaw<uint64_t>(is, what);
  Eigen::MatrixXd m(rows, cols);
  for (uint64_t r = 0; r < rows; ++r)
    for (uint64_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          ReadRaw<double>(is, what);
  return m;
}

inline void WriteVector(std::ostream& os, const Eigen::VectorXd& v) {
  WriteMatrix(os, v);
}

inline Eigen::VectorXd ReadVector(std::istream& is, std::string_view what) {
  const Eigen::MatrixXd m = ReadMatrix(is, what);
  if (m.cols() != 1) ThrowError("expected a column vector in ", what);
  return m.col(0);
}

}  // namespace cstk

#endif  // CSTK_UTIL_EIGEN_IO_H_
