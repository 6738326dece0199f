#include "veccost/cost_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "veccost/errors.hpp"

namespace veccost {

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

CostMatrix::CostMatrix(
    std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> tmp;
  tmp.reserve(rows.size());
  for (const auto& r : rows) tmp.emplace_back(r);
  *this = FromRows(tmp);
}

CostMatrix CostMatrix::FromRows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw DimensionError("cost matrix must have at least one row and column");
  }
  CostMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) {
      throw DimensionError("ragged matrix: row " + std::to_string(i + 1) +
                           " has " + std::to_string(rows[i].size()) +
                           " entries, expected " + std::to_string(m.cols_));
    }
    for (std::size_t j = 0; j < m.cols_; ++j) {
      if (!std::isfinite(rows[i][j])) {
        throw InputError("non-finite entry at row " + std::to_string(i + 1) +
                         ", column " + std::to_string(j + 1));
      }
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

std::vector<double> CostMatrix::col(std::size_t j) const {
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

std::vector<std::vector<double>> CostMatrix::ToRows() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    out[i].assign(row(i).begin(), row(i).end());
  }
  return out;
}

CostMatrix CostMatrix::Transposed() const {
  CostMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double CostMatrix::FrobeniusNormSquared() const {
  double sum = 0.0;
  for (double v : data_) sum += v * v;
  return sum;
}

double CostMatrix::MaxAbs() const {
  double best = 0.0;
  for (double v : data_) best = std::max(best, std::abs(v));
  return best;
}

CostMatrix& CostMatrix::operator+=(const CostMatrix& other) {
  RequireSameShape(*this, other, "matrix addition");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

CostMatrix& CostMatrix::operator-=(const CostMatrix& other) {
  RequireSameShape(*this, other, "matrix subtraction");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

CostMatrix& CostMatrix::operator*=(double scale) {
  for (double& v : data_) v *= scale;
  return *this;
}

CostMatrix operator+(CostMatrix lhs, const CostMatrix& rhs) {
  lhs += rhs;
  return lhs;
}

CostMatrix operator-(CostMatrix lhs, const CostMatrix& rhs) {
  lhs -= rhs;
  return lhs;
}

CostMatrix operator*(double scale, CostMatrix m) {
  m *= scale;
  return m;
}

CostMatrix operator-(CostMatrix m) {
  m *= -1.0;
  return m;
}

void RequireSameShape(const CostMatrix& a, const CostMatrix& b,
                      const char* what) {
  if (!a.SameShape(b)) {
    throw DimensionError(std::string(what) + ": shape mismatch (" +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + ")");
  }
}

}  // namespace veccost
