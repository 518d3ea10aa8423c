// The group algebra F_p G as dense vectors indexed by normal forms, with
// powers of the augmentation ideal computed by Gaussian elimination.
#pragma once

#include <cstdint>
#include <vector>

#include "cyclicp/subgroups.hpp"

namespace cyclicp {

inline constexpr i64 kDefaultAlgebraCap = 729;

using AlgVector = std::vector<std::uint8_t>;

class AlgebraCtx {
 public:
  /// Throws CapExceeded when |G| > cap.
  explicit AlgebraCtx(GroupPtr ctx, i64 cap = kDefaultAlgebraCap);

  const GroupCtx& group() const { return *ctx_; }
  const GroupPtr& group_ptr() const { return ctx_; }
  i64 dim() const { return dim_; }
  i64 p() const { return ctx_->p(); }

  /// v * (gen - 1) for gen in {b1, b2} (0 or 1).
  AlgVector times_gen_minus_one(const AlgVector& v, int gen) const;
  /// Basis vector of g minus that of the identity.
  AlgVector g_minus_one(const Element& g) const;

 private:
  GroupPtr ctx_;
  i64 dim_;
  std::vector<i64> right_b1_, right_b2_;  // index(g) -> index(g * b_i)
};

/// Row-echelon basis over F_p: each row has a leading 1 in its pivot column
/// and zeros before it.
class IdealBasis {
 public:
  IdealBasis(i64 dim, i64 p) : p_(p), pivot_row_(static_cast<size_t>(dim), -1) {}

  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<AlgVector>& rows() const { return rows_; }
  /// Reduces v against the basis in place; returns true when v ends up zero.
  bool reduce(AlgVector& v) const;
  bool contains(AlgVector v) const { return reduce(v); }
  /// Adds v if it is independent; returns whether the rank grew.
  bool insert(AlgVector v);

 private:
  i64 p_;
  std::vector<AlgVector> rows_;
  std::vector<int> pivot_row_;
};

/// Echelon basis of Delta(G)^n, n >= 1.
IdealBasis aug_ideal_power(const AlgebraCtx& actx, int n);
/// Delta^1, Delta^2, ..., ending with the first zero ideal.
std::vector<IdealBasis> aug_ideal_powers(const AlgebraCtx& actx);

/// {g : g - 1 in Delta^n}.
SubgroupSet dimension_subgroup(const AlgebraCtx& actx, int n);
SubgroupSet dimension_subgroup(const AlgebraCtx& actx, const IdealBasis& power);

}  // namespace cyclicp
