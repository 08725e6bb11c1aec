#include "antitai/weights.hpp"

#include <cmath>
#include <string>

#include "antitai/error.hpp"

namespace antitai {

WeightMatrix::WeightMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  if (!(fill >= 0.0) || !std::isfinite(fill)) {
    throw InvalidArgument("weights must be finite and nonnegative");
  }
}

double WeightMatrix::at(NodeId x, NodeId y) const {
  if (x >= rows_ || y >= cols_) {
    throw InvalidNode("weight index (" + std::to_string(x) + "," + std::to_string(y) +
                      ") out of range");
  }
  return (*this)(x, y);
}

void WeightMatrix::set(NodeId x, NodeId y, double value) {
  if (x >= rows_ || y >= cols_) {
    throw InvalidNode("weight index (" + std::to_string(x) + "," + std::to_string(y) +
                      ") out of range");
  }
  // The path-tree recurrence adds the forced pair unconditionally, which is
  // only optimal when no weight is negative.
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw InvalidArgument("weights must be finite and nonnegative");
  }
  data_[x * cols_ + y] = value;
}

WeightMatrix WeightMatrix::transposed() const {
  WeightMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = (*this)(i, j);
  }
  return t;
}

bool WeightMatrix::all_integral() const {
  for (double v : data_) {
    if (v != std::floor(v) || v > 9.0e15) return false;
  }
  return true;
}

}  // namespace antitai
