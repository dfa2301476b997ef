#pragma once

#include <cstdint>
#include <vector>

#include "szilard/kernels.hpp"

namespace szilard {

/// Square sparse matrix in CSR form. Built from unordered triplets;
/// duplicates are summed.
class CsrMatrix {
 public:
  struct Triplet {
    std::int32_t row;
    std::int32_t col;
    double value;
  };

  CsrMatrix() = default;
  CsrMatrix(std::size_t dim, std::vector<Triplet> triplets);

  std::size_t dim() const { return dim_; }
  std::size_t nonzeros() const { return values_.size(); }

  kernels::CsrView view() const { return {row_ptr_, cols_, values_}; }

  double at(std::size_t row, std::size_t col) const;
  /// Largest |A_ij - A_ji| over stored entries.
  double asymmetry() const;
  bool is_diagonal() const;
  std::vector<double> diagonal() const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::int64_t> row_ptr_{0};
  std::vector<std::int32_t> cols_;
  std::vector<double> values_;
};

}  // namespace szilard
