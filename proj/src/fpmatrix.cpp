#include "promag/fpmatrix.hpp"

namespace promag {

FpEchelon::FpEchelon(std::uint32_t p, std::size_t cols)
    : field_(p), cols_(cols), work_(cols, 0) {}

SparseRow FpEchelon::reduce(const SparseRow& row) const {
  const std::uint64_t p = field_.p();
  for (auto [c, v] : row) {
    if (c >= cols_) fail(Errc::bad_argument, "column index out of range");
    work_[c] = (work_[c] + v) % p;
  }
  SparseRow residue;
  for (std::uint32_t c = 0; c < cols_; ++c) {
    std::uint64_t v = work_[c] % p;
    if (v == 0) {
      work_[c] = 0;
      continue;
    }
    auto it = pivots_.find(c);
    if (it == pivots_.end()) {
      residue.emplace_back(c, static_cast<std::uint32_t>(v));
      work_[c] = 0;
      continue;
    }
    // Subtract v * pivot; the lead entry (c, 1) cancels work_[c] and every
    // other pivot entry sits at a column still ahead of the scan.
    for (auto [pc, pv] : it->second) work_[pc] = (work_[pc] + (p - v) * pv) % p;
    work_[c] = 0;
  }
  return residue;
}

bool FpEchelon::absorb(const SparseRow& row) {
  SparseRow residue = reduce(row);
  if (residue.empty()) return false;
  std::uint32_t lead = residue.front().second;
  if (lead != 1) {
    std::uint64_t inv = field_.inverse({lead}).v;
    for (auto& [c, v] : residue) v = static_cast<std::uint32_t>((v * inv) % field_.p());
  }
  pivots_.emplace(residue.front().first, std::move(residue));
  return true;
}

bool FpEchelon::reduces_to_zero(const SparseRow& row) const { return reduce(row).empty(); }

std::size_t rank_fp(const SparseFpMatrix& m) {
  FpEchelon ech(m.p, m.cols);
  for (const SparseRow& row : m.data) ech.absorb(row);
  return ech.rank();
}

}  // namespace promag
