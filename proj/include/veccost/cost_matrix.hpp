#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace veccost {

// Dense n x m cost matrix. Rows index player 1 actions, columns index
// player 2 actions. Storage is row-major; indices are 0-based.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  // Throws DimensionError on ragged or empty input and InputError on
  // non-finite entries.
  CostMatrix(std::initializer_list<std::initializer_list<double>> rows);
  static CostMatrix FromRows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<const double> data() const { return data_; }
  std::vector<double> col(std::size_t j) const;

  std::vector<std::vector<double>> ToRows() const;
  CostMatrix Transposed() const;

  bool SameShape(const CostMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  double FrobeniusNormSquared() const;
  double MaxAbs() const;

  CostMatrix& operator+=(const CostMatrix& other);
  CostMatrix& operator-=(const CostMatrix& other);
  CostMatrix& operator*=(double scale);

  friend bool operator==(const CostMatrix&, const CostMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

CostMatrix operator+(CostMatrix lhs, const CostMatrix& rhs);
CostMatrix operator-(CostMatrix lhs, const CostMatrix& rhs);
CostMatrix operator*(double scale, CostMatrix m);
CostMatrix operator-(CostMatrix m);

// Throws DimensionError when shapes differ; `what` names the operation.
void RequireSameShape(const CostMatrix& a, const CostMatrix& b,
                      const char* what);

}  // namespace veccost
