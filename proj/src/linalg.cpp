#include "gplane/linalg.hpp"

#include <algorithm>

#include "gplane/check.hpp"

namespace gplane {

OnlineRref::OnlineRref(const FieldCtx* F, u32 ncols) : F_(F), ncols_(ncols) {
  check(F != nullptr && ncols >= 1, "bad OnlineRref arguments");
}

u32 OnlineRref::reduce(Row& row) const {
  check(row.size() == ncols_, "row width mismatch");
  for (size_t b = 0; b < basis_.size(); ++b) {
    const FieldElem& c = row[pivots_[b]];
    if (c.is_zero()) continue;
    FieldElem f = c;  // basis rows have pivot value 1
    for (u32 j = pivots_[b]; j < ncols_; ++j) row[j] -= f * basis_[b][j];
  }
  for (u32 j = 0; j < ncols_; ++j)
    if (!row[j].is_zero()) return j;
  return ncols_;
}

bool OnlineRref::offer(Row row) {
  u32 piv = reduce(row);
  if (piv == ncols_) return false;
  FieldElem inv = row[piv].inverse();
  for (u32 j = piv; j < ncols_; ++j) row[j] *= inv;
  // back-substitute into existing basis rows to stay fully reduced
  for (size_t b = 0; b < basis_.size(); ++b) {
    FieldElem c = basis_[b][piv];
    if (c.is_zero()) continue;
    for (u32 j = piv; j < ncols_; ++j) basis_[b][j] -= c * row[j];
  }
  // insert keeping pivot columns strictly increasing
  size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
  basis_.insert(basis_.begin() + pos, std::move(row));
  pivots_.insert(pivots_.begin() + pos, piv);
  return true;
}

bool OnlineRref::in_span(Row row) const { return reduce(row) == ncols_; }

std::vector<Row> OnlineRref::nullspace() const {
  std::vector<Row> out;
  std::vector<bool> is_pivot(ncols_, false);
  for (u32 pcol : pivots_) is_pivot[pcol] = true;
  for (u32 free = 0; free < ncols_; ++free) {
    if (is_pivot[free]) continue;
    Row v(ncols_, F_->zero());
    v[free] = F_->one();
    for (size_t b = 0; b < basis_.size(); ++b) {
      // pivot variable = -(coefficient of the free column in basis row b)
      v[pivots_[b]] = -basis_[b][free];
    }
    out.push_back(std::move(v));
  }
  return out;
}

u32 rank_of(const FieldCtx* F, const std::vector<Row>& rows, u32 ncols) {
  OnlineRref rr(F, ncols);
  for (const Row& r : rows) rr.offer(r);
  return rr.rank();
}

std::vector<Row> nullspace_of(const FieldCtx* F, const std::vector<Row>& rows, u32 ncols) {
  OnlineRref rr(F, ncols);
  for (const Row& r : rows) rr.offer(r);
  return rr.nullspace();
}

std::optional<Row> solve_linear(const FieldCtx* F, const std::vector<Row>& A, const Row& b) {
  check(A.size() == b.size(), "solve_linear: row count mismatch");
  if (A.empty()) return Row{};
  u32 ncols = static_cast<u32>(A[0].size());
  // reduce the augmented system [A | b]
  OnlineRref rr(F, ncols + 1);
  for (size_t i = 0; i < A.size(); ++i) {
    Row r = A[i];
    r.push_back(b[i]);
    rr.offer(std::move(r));
  }
  // inconsistent iff some basis row has its pivot in the augmented column
  for (u32 pcol : rr.pivots())
    if (pcol == ncols) return std::nullopt;
  Row x(ncols, F->zero());
  // fully reduced basis: pivot variable value = augmented entry
  for (size_t bidx = 0; bidx < rr.basis().size(); ++bidx)
    x[rr.pivots()[bidx]] = rr.basis()[bidx][ncols];
  return x;
}

}  // namespace gplane
