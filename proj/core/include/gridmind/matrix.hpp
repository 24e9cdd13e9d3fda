#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace gridmind {

// Dense row-major matrix. Connection matrices are indexed [input][output]
// so summing an input neuron's row is a contiguous scan.
template <typename T>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int r, int c) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return data_[static_cast<size_t>(r) * cols_ + c];
  }
  T operator()(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return data_[static_cast<size_t>(r) * cols_ + c];
  }

  const T* row(int r) const { return data_.data() + static_cast<size_t>(r) * cols_; }
  T* row(int r) { return data_.data() + static_cast<size_t>(r) * cols_; }

  T column_sum(int c) const {
    T s{};
    for (int r = 0; r < rows_; ++r) s += (*this)(r, c);
    return s;
  }
  T row_sum(int r) const {
    T s{};
    const T* p = row(r);
    for (int c = 0; c < cols_; ++c) s += p[c];
    return s;
  }

  const std::vector<T>& data() const { return data_; }
  std::vector<T>& data() { return data_; }

  bool operator==(const Mat&) const = default;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntMat = Mat<int32_t>;
using RealMat = Mat<double>;

}  // namespace gridmind
