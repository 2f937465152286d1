#include "wdne/linalg.hpp"

#include "wdne/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace wdne {

namespace {

constexpr int kJacobiSweepLimit = 100;
constexpr double kJacobiTolFactor = 1e-12;   // of the Frobenius norm
constexpr double kEigenvalueClamp = 1e-12;   // of the largest |eigenvalue|

double off_diagonal_norm(const Matrix& a) {
  const std::size_t d = a.rows();
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) s += a(i, j) * a(i, j);
  return std::sqrt(2.0 * s);
}

// One rotation zeroing a(p,q), accumulating into the eigenvector matrix v.
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const std::size_t d = a.rows();
  const double apq = a(p, q);
  if (apq == 0.0) return;

  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  const double app = a(p, p);
  const double aqq = a(q, q);
  a(p, p) = app - t * apq;
  a(q, q) = aqq + t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  for (std::size_t r = 0; r < d; ++r) {
    if (r != p && r != q) {
      const double arp = a(r, p);
      const double arq = a(r, q);
      a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
      a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
    }
    const double vrp = v(r, p);
    const double vrq = v(r, q);
    v(r, p) = vrp - s * (vrq + tau * vrp);
    v(r, q) = vrq + s * (vrp - tau * vrq);
  }
}

} // namespace

SymMatrix::SymMatrix(std::size_t order) : order_(order), entries_(order, order) {
  if (order == 0) throw ConfigError("SymMatrix order must be >= 1");
}

SymMatrix SymMatrix::from_matrix(const Matrix& m) {
  if (m.rows() != m.cols())
    throw ConfigError("SymMatrix requires a square matrix, got " +
                      std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  SymMatrix s(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) {
      if (m(i, j) != m(j, i))
        throw ConfigError("matrix is not symmetric at (" + std::to_string(i) +
                          "," + std::to_string(j) + ")");
      s.set(i, j, m(i, j));
    }
  return s;
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double x : entries_.data()) m = std::max(m, std::abs(x));
  return m;
}

double SymMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double x : entries_.data()) s += x * x;
  return std::sqrt(s);
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < order_; ++i) t += entries_(i, i);
  return t;
}

CovarianceResult covariance(const Matrix& X) {
  const std::size_t n = X.rows();
  const std::size_t d = X.cols();
  if (n < 1 || d < 1) throw ConfigError("covariance requires n >= 1 and d >= 1");

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (!std::isfinite(X(i, j)))
        throw DataError("non-finite value at row " + std::to_string(i) +
                        ", column " + std::to_string(j));

  Vector mean(d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) mean[j] += X(i, j);
  for (std::size_t j = 0; j < d; ++j) mean[j] /= static_cast<double>(n);

  SymMatrix cov(d);
  Vector centered(d);
  Matrix acc(d, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) centered[j] = X(i, j) - mean[j];
    for (std::size_t j = 0; j < d; ++j) {
      const double cj = centered[j];
      for (std::size_t k = j; k < d; ++k) acc(j, k) += cj * centered[k];
    }
  }
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j; k < d; ++k)
      cov.set(j, k, acc(j, k) / static_cast<double>(n));

  return {std::move(mean), std::move(cov)};
}

EigenDecomposition eigen_sym(const SymMatrix& S) {
  const std::size_t d = S.order();
  for (double x : S.entries().data())
    if (!std::isfinite(x)) throw DataError("non-finite entry in symmetric matrix");

  Matrix a = S.entries();
  Matrix v(d, d);
  for (std::size_t i = 0; i < d; ++i) v(i, i) = 1.0;

  const double tol = kJacobiTolFactor * S.frobenius_norm();
  int sweep = 0;
  for (; sweep < kJacobiSweepLimit; ++sweep) {
    if (off_diagonal_norm(a) <= tol) break;
    for (std::size_t p = 0; p + 1 < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) rotate(a, v, p, q);
  }
  if (sweep == kJacobiSweepLimit && off_diagonal_norm(a) > tol)
    throw NumericError("Jacobi did not converge after " +
                       std::to_string(kJacobiSweepLimit) +
                       " sweeps; off-diagonal norm = " +
                       std::to_string(off_diagonal_norm(a)));

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

  EigenDecomposition out;
  out.values.resize(d);
  out.vectors = Matrix(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const std::size_t src = order[j];
    out.values[j] = a(src, src);
    // canonical sign: entry of largest magnitude made positive
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double mag = std::abs(v(i, src));
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    const double sign = v(arg, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < d; ++i) out.vectors(i, j) = sign * v(i, src);
  }

  double lambda_max = 0.0;
  for (double x : out.values) lambda_max = std::max(lambda_max, std::abs(x));
  for (double& x : out.values)
    if (std::abs(x) < kEigenvalueClamp * lambda_max) x = 0.0;

  return out;
}

} // namespace wdne
