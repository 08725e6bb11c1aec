#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "antitai/error.hpp"
#include "antitai/tree.hpp"

namespace antitai {

// Nonnegative weights w(x, y) over V1 x V2, row-major.
class WeightMatrix {
 public:
  WeightMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(NodeId x, NodeId y) const { return data_[x * cols_ + y]; }
  double at(NodeId x, NodeId y) const;
  // Rejects negative and non-finite values.
  void set(NodeId x, NodeId y, double value);

  WeightMatrix transposed() const;
  bool all_integral() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

// Throws InvalidArgument unless w is |t1| x |t2|.
template <class Order1, class Order2>
void check_shape(const Order1& t1, const Order2& t2, const WeightMatrix& w) {
  if (w.rows() != t1.size() || w.cols() != t2.size()) {
    throw InvalidArgument("weight matrix is " + std::to_string(w.rows()) + "x" +
                          std::to_string(w.cols()) + " but the inputs have " +
                          std::to_string(t1.size()) + "x" + std::to_string(t2.size()) +
                          " nodes");
  }
}

}  // namespace antitai
