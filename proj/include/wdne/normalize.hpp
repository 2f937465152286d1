#pragma once

#include "wdne/linalg.hpp"
#include "wdne/matrix.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace wdne {

enum class NormalizationMode { Raw, PcaOnly, WdnePositive, WdneNegative };

std::string to_string(NormalizationMode mode);
/// Parses "raw", "pca", "wdne+", "wdne-".
NormalizationMode parse_mode(const std::string& tag);

/// Fitted transform. `components` row j holds the eigenvector with the
/// j-th largest eigenvalue; `weights[j]` multiplies component j.
/// Raw mode keeps no basis and transforms as the identity.
struct NormalizationModel {
  NormalizationMode mode = NormalizationMode::Raw;
  std::size_t input_dim = 0;
  std::size_t retained = 0;
  Vector mean;        // d
  Matrix components;  // retained x d
  Vector eigenvalues; // retained, descending
  Vector weights;     // retained, in [0,1]
};

/// weights[j] = lambda_j / lambda_1. Eigenvalues must be descending and
/// non-negative with lambda_1 > 0.
Vector positive_weights(const Vector& eigenvalues);

/// Reversed weighting: weights[j] = lambda_{k-1-j} / lambda_0.
Vector negative_weights(const Vector& eigenvalues);

/// Fits a model on X. `retained` defaults to the full dimension.
NormalizationModel fit(const Matrix& X, NormalizationMode mode,
                       std::optional<std::size_t> retained = std::nullopt);

/// Raw: x unchanged. Otherwise component j of the result is
/// weights[j] * u_j . (x - mean).
Vector transform(const NormalizationModel& model, std::span<const double> x);

/// Row-wise transform.
Matrix transform_table(const NormalizationModel& model, const Matrix& X);

} // namespace wdne
