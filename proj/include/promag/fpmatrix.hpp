#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "promag/scalars.hpp"

namespace promag {

// Sparse row: (column, value) pairs with value in [1, p), sorted by column.
using SparseRow = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

struct SparseFpMatrix {
  std::uint32_t p = 2;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<SparseRow> data;  // size == rows
};

// Incremental row-echelon form over F_p. Pivot rows are normalized to lead
// coefficient 1 and keyed by their leading column; absorbed rows are reduced
// left to right with a dense accumulator.
class FpEchelon {
public:
  FpEchelon(std::uint32_t p, std::size_t cols);

  // Reduce the row against the current pivots; install the residue as a new
  // pivot if it is nonzero. Returns true when the rank grew.
  bool absorb(const SparseRow& row);

  // True when the row lies in the current row space.
  bool reduces_to_zero(const SparseRow& row) const;

  std::size_t rank() const { return pivots_.size(); }
  std::size_t cols() const { return cols_; }
  std::uint32_t p() const { return field_.p(); }

private:
  // Shared elimination loop; returns the residue from new_pivot on (empty if
  // the row reduced to zero).
  SparseRow reduce(const SparseRow& row) const;

  PrimeField field_;
  std::size_t cols_;
  std::map<std::uint32_t, SparseRow> pivots_;
  mutable std::vector<std::uint64_t> work_;  // dense accumulator, size cols
};

std::size_t rank_fp(const SparseFpMatrix& m);

}  // namespace promag
