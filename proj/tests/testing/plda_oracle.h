// tests/testing/plda_oracle.h
//
// Numerical-integration reference for the 1-D two-covariance PLDA ratio:
//
//   p_same(x1, x2) = \int N(y; mu, B) N(x1; y, W) N(x2; y, W) dy
//   p_diff(x1, x2) = N(x1; mu, B+W) N(x2; mu, B+W)
//
// integrated with composite Simpson over a wide bracket.  Shares no code
// with the production scorer.

#ifndef CSTK_TESTS_TESTING_PLDA_ORACLE_H_
#define CSTK_TESTS_TESTING_PLDA_ORACLE_H_

#include <algorithm>
#include <cmath>

namespace cstk::testing {

inline double NormalPdf(double x, double mean, double var) {
  const double d = x - mean;
  return std::exp(-0.5 * d * d / var) / std::sqrt(2.0 * 3.14159265358979323846 * var);
}

inline double QuadraturePldaLlr(double x1, double x2, double mu, double b,
                                double w) {
  const double sigma = std::sqrt(std::max(b, w) + 1.0);
  const double lo = std::min({mu, x1, x2}) - 14.0 * sigma;
  const double hi = std::max({mu, x1, x2}) + 14.0 * sigma;
  const int n = 200000;  // even
  const double h = (hi - lo) / n;
  auto f = [&](double y) {
    return NormalPdf(y, mu, b) * NormalPdf(x1, y, w) * NormalPdf(x2, y, w);
  };
  double sum = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  const double p_same = sum * h / 3.0;
  const double p_diff = NormalPdf(x1, mu, b + w) * NormalPdf(x2, mu, b + w);
  return std::log(p_same) - std::log(p_diff);
}

}  // namespace cstk::testing

#endif  // CSTK_TESTS_TESTING_PLDA_ORACLE_H_
