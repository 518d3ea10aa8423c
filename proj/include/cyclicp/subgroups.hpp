// Subgroups of a realized group held as explicit element sets.
//
// Everything here is brute force over normal forms and is meant for groups of
// a few thousand elements.
#pragma once

#include <cstdint>
#include <vector>

#include "cyclicp/presentation.hpp"

namespace cyclicp {

class SubgroupSet {
 public:
  const GroupCtx& ctx() const { return *ctx_; }
  const GroupPtr& ctx_ptr() const { return ctx_; }
  /// Sorted by normal-form index.
  const std::vector<Element>& elements() const { return elements_; }
  /// A generating set; not necessarily minimal.
  const std::vector<Element>& generators() const { return gens_; }
  i64 size() const { return static_cast<i64>(elements_.size()); }
  bool contains(const Element& g) const { return member_[ctx_->index(g)] != 0; }
  bool trivial() const { return elements_.size() == 1; }
  /// log_p of the order.
  int log_order() const;

  /// Same underlying set (generators are ignored).
  bool operator==(const SubgroupSet& o) const { return member_ == o.member_; }
  bool subset_of(const SubgroupSet& o) const;

 private:
  friend class SubgroupBuilder;
  SubgroupSet() = default;

  GroupPtr ctx_;
  std::vector<Element> elements_;
  std::vector<Element> gens_;
  std::vector<std::uint8_t> member_;
};

/// Smallest subgroup containing gens. Throws CapExceeded when |G| > cap.
SubgroupSet gen_subgroup(const GroupPtr& ctx, const std::vector<Element>& gens,
                         i64 cap = kDefaultGroupCap);
SubgroupSet whole_group(const GroupPtr& ctx, i64 cap = kDefaultGroupCap);
SubgroupSet trivial_subgroup(const GroupPtr& ctx, i64 cap = kDefaultGroupCap);

/// <S, T>.
SubgroupSet join(const SubgroupSet& s, const SubgroupSet& t);
SubgroupSet intersect(const SubgroupSet& s, const SubgroupSet& t);
/// Smallest subgroup containing `seeds` and normalized by `ambient`.
SubgroupSet normal_closure(const SubgroupSet& ambient, const std::vector<Element>& seeds);
bool is_normal(const SubgroupSet& n, const SubgroupSet& s);
/// [S, T], built from commutators of generators and closed under conjugation by <S, T>.
SubgroupSet commutator(const SubgroupSet& s, const SubgroupSet& t);
SubgroupSet derived_subgroup(const SubgroupSet& s);

/// Z(G) by testing commutation with b1 and b2.
SubgroupSet center_bf(const GroupPtr& ctx, i64 cap = kDefaultGroupCap);
/// Closed-form generators of Z(G); canonical contexts only.
std::vector<Element> center_closed(const GroupCtx& ctx);

/// C_G(G') = {g : [a, g] = 1}.
SubgroupSet centralizer_comm_bf(const GroupPtr& ctx, i64 cap = kDefaultGroupCap);
/// Closed-form generators of C_G(G'); canonical contexts only.
std::vector<Element> centralizer_comm_closed(const GroupCtx& ctx);

/// gamma_i(S) with gamma_1 = S.
SubgroupSet lower_central(const SubgroupSet& s, int i);
SubgroupSet lower_central(const GroupPtr& ctx, int i, i64 cap = kDefaultGroupCap);
/// gamma_1(S), gamma_2(S), ..., ending with the trivial subgroup.
std::vector<SubgroupSet> lower_central_series(const SubgroupSet& s);
/// 0 for the trivial group, 1 for abelian, and so on.
int nilpotency_class(const SubgroupSet& s);

/// <g in S : g^(p^n) = 1>.
SubgroupSet omega(const SubgroupSet& s, int n);
/// <g^(p^n) : g in S>.
SubgroupSet mho(const SubgroupSet& s, int n);
/// <g in S : g^(p^n) in N>; N must be a normal subgroup of S.
SubgroupSet omega_rel(const SubgroupSet& s, const SubgroupSet& n, int k);
/// The set {g in S : g^(p^k) in N} itself, which need not be a subgroup in general.
std::vector<Element> power_preimage(const SubgroupSet& s, const SubgroupSet& n, int k);

/// Largest element order in S.
i64 exponent(const SubgroupSet& s);

/// D_n(S) = prod over i p^j >= n of mho_j(gamma_i(S)).
SubgroupSet jennings(const SubgroupSet& s, int n);
/// D_1(S), D_2(S), ..., ending with the first trivial term.
std::vector<SubgroupSet> jennings_series(const SubgroupSet& s);

/// G / <a^(p^(m-1))> as a raw context with m - 1. Throws InvalidParams when m = 1.
GroupPtr socle_quotient(const GroupCtx& ctx);
/// Image of g under G -> G / Soc(G').
Element socle_image(const GroupCtx& ctx, const Element& g);

/// Orders of the cyclic factors of S/N, descending. Throws std::invalid_argument
/// when N is not a normal subgroup of S or S/N is not abelian.
std::vector<i64> abelian_invariants(const SubgroupSet& s, const SubgroupSet& n);

}  // namespace cyclicp
