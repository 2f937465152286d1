#pragma once

#include "wdne/matrix.hpp"

#include <cstddef>

namespace wdne {

/// Symmetric matrix; the setter writes both (i,j) and (j,i) so the
/// symmetry invariant holds exactly by construction.
class SymMatrix {
public:
  explicit SymMatrix(std::size_t order);

  /// Builds from a full matrix, which must be exactly symmetric.
  static SymMatrix from_matrix(const Matrix& m);

  std::size_t order() const { return order_; }

  double operator()(std::size_t i, std::size_t j) const {
    return entries_(i, j);
  }
  void set(std::size_t i, std::size_t j, double value) {
    entries_(i, j) = value;
    entries_(j, i) = value;
  }

  const Matrix& entries() const { return entries_; }

  double max_abs() const;
  double frobenius_norm() const;
  double trace() const;

private:
  std::size_t order_;
  Matrix entries_;
};

/// Eigenvalues in descending order; column j of `vectors` is the unit
/// eigenvector for values[j], sign-canonicalized so the largest-magnitude
/// entry is positive.
struct EigenDecomposition {
  Vector values;
  Matrix vectors;
};

struct CovarianceResult {
  Vector mean;
  SymMatrix cov;
};

/// Column mean and covariance with divisor n.
CovarianceResult covariance(const Matrix& X);

/// Cyclic Jacobi diagonalization of a symmetric matrix.
EigenDecomposition eigen_sym(const SymMatrix& S);

} // namespace wdne
