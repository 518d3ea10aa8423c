#include "cyclicp/grpalg.hpp"

#include <stdexcept>
#include <string>

#include "cyclicp/errors.hpp"

namespace cyclicp {

AlgebraCtx::AlgebraCtx(GroupPtr ctx, i64 cap) : ctx_(std::move(ctx)) {
  if (ctx_->log_order() > 40 || ctx_->order() > cap) {
    throw CapExceeded("group algebra of dimension p^" + std::to_string(ctx_->log_order()) +
                      " exceeds cap " + std::to_string(cap));
  }
  dim_ = ctx_->order();
  right_b1_.resize(static_cast<size_t>(dim_));
  right_b2_.resize(static_cast<size_t>(dim_));
  for (i64 i = 0; i < dim_; ++i) {
    const Element g = ctx_->element_at(i);
    right_b1_[i] = ctx_->index(el_mul(*ctx_, g, ctx_->b1()));
    right_b2_[i] = ctx_->index(el_mul(*ctx_, g, ctx_->b2()));
  }
}

AlgVector AlgebraCtx::times_gen_minus_one(const AlgVector& v, int gen) const {
  const auto& perm = gen == 0 ? right_b1_ : right_b2_;
  const int p = static_cast<int>(ctx_->p());
  AlgVector out(v.size(), 0);
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i]) out[perm[i]] = v[i];
  }
  for (size_t i = 0; i < v.size(); ++i) out[i] = static_cast<std::uint8_t>((out[i] + p - v[i]) % p);
  return out;
}

AlgVector AlgebraCtx::g_minus_one(const Element& g) const {
  AlgVector v(static_cast<size_t>(dim_), 0);
  const i64 idx = ctx_->index(g);
  if (idx == 0) return v;
  v[idx] = 1;
  v[0] = static_cast<std::uint8_t>(ctx_->p() - 1);
  return v;
}

bool IdealBasis::reduce(AlgVector& v) const {
  const int p = static_cast<int>(p_);
  bool zero = true;
  for (size_t col = 0; col < v.size(); ++col) {
    if (v[col] == 0) continue;
    const int r = pivot_row_[col];
    if (r < 0) {
      zero = false;
      continue;
    }
    const int c = p - v[col];
    const AlgVector& row = rows_[r];
    for (size_t j = col; j < v.size(); ++j) {
      if (row[j]) v[j] = static_cast<std::uint8_t>((v[j] + c * row[j]) % p);
    }
  }
  return zero;
}

bool IdealBasis::insert(AlgVector v) {
  if (reduce(v)) return false;
  size_t lead = 0;
  while (v[lead] == 0) ++lead;
  const i64 inv = invmod(v[lead], p_);
  for (size_t j = lead; j < v.size(); ++j) {
    v[j] = static_cast<std::uint8_t>(v[j] * inv % p_);
  }
  pivot_row_[lead] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(v));
  return true;
}

namespace {

IdealBasis first_power(const AlgebraCtx& actx) {
  IdealBasis basis(actx.dim(), actx.p());
  for (i64 i = 1; i < actx.dim(); ++i) basis.insert(actx.g_minus_one(actx.group().element_at(i)));
  return basis;
}

// Delta^(n+1) = Delta^n (b1 - 1) + Delta^n (b2 - 1), since Delta^n kG = Delta^n
// and Delta = kG(b1 - 1) + kG(b2 - 1).
IdealBasis next_power(const AlgebraCtx& actx, const IdealBasis& cur) {
  IdealBasis next(actx.dim(), actx.p());
  for (const AlgVector& row : cur.rows()) {
    for (int gen = 0; gen < 2; ++gen) next.insert(actx.times_gen_minus_one(row, gen));
  }
  return next;
}

}  // namespace

IdealBasis aug_ideal_power(const AlgebraCtx& actx, int n) {
  if (n < 1) throw std::invalid_argument("aug_ideal_power: n must be >= 1");
  IdealBasis cur = first_power(actx);
  for (int k = 1; k < n && cur.rank() > 0; ++k) cur = next_power(actx, cur);
  return cur;
}

std::vector<IdealBasis> aug_ideal_powers(const AlgebraCtx& actx) {
  std::vector<IdealBasis> out{first_power(actx)};
  while (out.back().rank() > 0) out.push_back(next_power(actx, out.back()));
  return out;
}

SubgroupSet dimension_subgroup(const AlgebraCtx& actx, const IdealBasis& power) {
  std::vector<Element> members;
  for (i64 i = 1; i < actx.dim(); ++i) {
    const Element g = actx.group().element_at(i);
    if (power.contains(actx.g_minus_one(g))) members.push_back(g);
  }
  SubgroupSet s = gen_subgroup(actx.group_ptr(), members, actx.dim());
  if (s.size() != static_cast<i64>(members.size()) + 1) {
    throw std::logic_error("dimension subgroup membership is not closed");
  }
  return s;
}

SubgroupSet dimension_subgroup(const AlgebraCtx& actx, int n) {
  return dimension_subgroup(actx, aug_ideal_power(actx, n));
}

}  // namespace cyclicp
