#include "wdne/normalize.hpp"

#include "wdne/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wdne {

std::string to_string(NormalizationMode mode) {
  switch (mode) {
    case NormalizationMode::Raw: return "raw";
    case NormalizationMode::PcaOnly: return "pca";
    case NormalizationMode::WdnePositive: return "wdne+";
    case NormalizationMode::WdneNegative: return "wdne-";
  }
  return "?";
}

NormalizationMode parse_mode(const std::string& tag) {
  if (tag == "raw") return NormalizationMode::Raw;
  if (tag == "pca") return NormalizationMode::PcaOnly;
  if (tag == "wdne+") return NormalizationMode::WdnePositive;
  if (tag == "wdne-") return NormalizationMode::WdneNegative;
  throw ConfigError("unknown normalization mode '" + tag +
                    "' (expected raw, pca, wdne+ or wdne-)");
}

namespace {

void check_spectrum(const Vector& eigenvalues) {
  if (eigenvalues.empty()) throw ConfigError("empty eigenvalue vector");
  if (eigenvalues.front() <= 0.0)
    throw DataError("degenerate spectrum: largest eigenvalue is not positive "
                    "(all-zero variance data)");
  for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
    if (eigenvalues[j] < 0.0)
      throw DataError("negative eigenvalue at position " + std::to_string(j));
    if (j > 0 && eigenvalues[j] > eigenvalues[j - 1])
      throw ConfigError("eigenvalues not in descending order");
  }
}

} // namespace

Vector positive_weights(const Vector& eigenvalues) {
  check_spectrum(eigenvalues);
  Vector w(eigenvalues.size());
  for (std::size_t j = 0; j < w.size(); ++j)
    w[j] = eigenvalues[j] / eigenvalues.front();
  return w;
}

Vector negative_weights(const Vector& eigenvalues) {
  Vector w = positive_weights(eigenvalues);
  std::reverse(w.begin(), w.end());
  return w;
}

NormalizationModel fit(const Matrix& X, NormalizationMode mode,
                       std::optional<std::size_t> retained) {
  const std::size_t d = X.cols();
  NormalizationModel model;
  model.mode = mode;
  model.input_dim = d;

  if (mode == NormalizationMode::Raw) {
    model.retained = d;
    return model;
  }

  if (X.rows() < 2)
    throw ConfigError("fitting a non-raw normalization requires n >= 2");
  const std::size_t k = retained.value_or(d);
  if (k < 1 || k > d)
    throw ConfigError("retained dimension " + std::to_string(k) +
                      " out of range [1, " + std::to_string(d) + "]");

  auto [mean, cov] = covariance(X);
  EigenDecomposition eig = eigen_sym(cov);

  model.retained = k;
  model.mean = std::move(mean);
  model.components = Matrix(k, d);
  model.eigenvalues.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    model.eigenvalues[j] = eig.values[j];
    for (std::size_t i = 0; i < d; ++i) model.components(j, i) = eig.vectors(i, j);
  }

  switch (mode) {
    case NormalizationMode::PcaOnly:
      model.weights.assign(k, 1.0);
      break;
    case NormalizationMode::WdnePositive:
      model.weights = positive_weights(model.eigenvalues);
      break;
    case NormalizationMode::WdneNegative:
      model.weights = negative_weights(model.eigenvalues);
      break;
    case NormalizationMode::Raw:
      break;
  }
  return model;
}

Vector transform(const NormalizationModel& model, std::span<const double> x) {
  if (x.size() != model.input_dim)
    throw DataError("transform expects dimension " +
                    std::to_string(model.input_dim) + ", got " +
                    std::to_string(x.size()));

  if (model.mode == NormalizationMode::Raw) return Vector(x.begin(), x.end());

  Vector centered(model.input_dim);
  for (std::size_t i = 0; i < centered.size(); ++i)
    centered[i] = x[i] - model.mean[i];

  Vector out(model.retained);
  for (std::size_t j = 0; j < model.retained; ++j)
    out[j] = model.weights[j] * dot(model.components.row(j), centered);
  return out;
}

Matrix transform_table(const NormalizationModel& model, const Matrix& X) {
  Matrix out(X.rows(), model.retained);
  for (std::size_t i = 0; i < X.rows(); ++i) {
    Vector row = transform(model, X.row(i));
    out.set_row(i, row);
  }
  return out;
}

} // namespace wdne
