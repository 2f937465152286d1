#include "wdne/matrix.hpp"

#include <algorithm>
#include <cassert>

namespace wdne {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    assert(r.size() == cols_);
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Vector Matrix::row_copy(std::size_t i) const {
  auto r = row(i);
  return Vector(r.begin(), r.end());
}

void Matrix::set_row(std::size_t i, std::span<const double> values) {
  assert(values.size() == cols_);
  std::copy(values.begin(), values.end(), data_.begin() + i * cols_);
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

} // namespace wdne
