#pragma once

#include <optional>
#include <vector>

#include "gplane/field.hpp"

namespace gplane {

using Row = std::vector<FieldElem>;

// Incremental row-reduction over a field context.  Rows are offered one at a
// time and reduced against the current basis; independent remainders join the
// basis.  The basis is kept fully reduced (RREF), so ranks, nullspaces and
// membership tests are deterministic regardless of offer order... the basis
// itself does depend on offer order only through which rows arrived, not on
// any tie-breaking.
class OnlineRref {
 public:
  OnlineRref(const FieldCtx* F, u32 ncols);

  // Returns true when the row increased the rank.
  bool offer(Row row);
  // True when the row is in the current row span (row is not inserted).
  bool in_span(Row row) const;

  u32 rank() const { return static_cast<u32>(basis_.size()); }
  u32 ncols() const { return ncols_; }
  const std::vector<Row>& basis() const { return basis_; }
  const std::vector<u32>& pivots() const { return pivots_; }

  // Canonical nullspace basis: one vector per free column, value 1 at the
  // free column, pivots filled by back-substitution, ordered by free column.
  std::vector<Row> nullspace() const;

 private:
  const FieldCtx* F_;
  u32 ncols_;
  std::vector<Row> basis_;    // basis_[i] has pivot at pivots_[i]; pivots_ strictly increasing
  std::vector<u32> pivots_;
  // Reduces row in place against the basis; returns pivot column or ncols_.
  u32 reduce(Row& row) const;
};

u32 rank_of(const FieldCtx* F, const std::vector<Row>& rows, u32 ncols);
std::vector<Row> nullspace_of(const FieldCtx* F, const std::vector<Row>& rows, u32 ncols);

// One solution x of A x = b (free variables set to zero), or nullopt when
// inconsistent.  A is given as rows; all rows must have size ncols.
std::optional<Row> solve_linear(const FieldCtx* F, const std::vector<Row>& A,
                                const Row& b);

}  // namespace gplane
