#include "szilard/sparse.hpp"

#include <algorithm>
#include <cmath>

namespace szilard {

CsrMatrix::CsrMatrix(std::size_t dim, std::vector<Triplet> triplets) : dim_(dim) {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  row_ptr_.assign(dim + 1, 0);
  cols_.reserve(triplets.size());
  values_.reserve(triplets.size());
  for (std::size_t i = 0; i < triplets.size();) {
    const auto& t = triplets[i];
    double v = 0.0;
    std::size_t j = i;
    for (; j < triplets.size() && triplets[j].row == t.row && triplets[j].col == t.col; ++j) {
      v += triplets[j].value;
    }
    if (v != 0.0) {
      cols_.push_back(t.col);
      values_.push_back(v);
      ++row_ptr_[t.row + 1];
    }
    i = j;
  }
  for (std::size_t r = 0; r < dim; ++r) row_ptr_[r + 1] += row_ptr_[r];
}

double CsrMatrix::at(std::size_t row, std::size_t col) const {
  const auto begin = cols_.begin() + row_ptr_[row];
  const auto end = cols_.begin() + row_ptr_[row + 1];
  const auto it = std::lower_bound(begin, end, static_cast<std::int32_t>(col));
  if (it == end || *it != static_cast<std::int32_t>(col)) return 0.0;
  return values_[it - cols_.begin()];
}

double CsrMatrix::asymmetry() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::int64_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      worst = std::max(worst, std::abs(values_[p] - at(cols_[p], r)));
    }
  }
  return worst;
}

bool CsrMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::int64_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
      if (static_cast<std::size_t>(cols_[p]) != r) return false;
    }
  }
  return true;
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(dim_);
  for (std::size_t r = 0; r < dim_; ++r) d[r] = at(r, r);
  return d;
}

}  // namespace szilard
