// Classifying parameter vectors and the groups they present.
//
// For a valid vector I = (p, m, n1, n2, o1, o2, o1', o2', u1, u2) the group is
//
//   < b1, b2, a = [b2, b1] | a^(p^m) = 1, a^(b_i) = a^(r_i),
//                            b_i^(p^(n_i)) = a^(u_i p^(m - o_i')) >
//
// with r1 = 1 + p^(m - o1) and r2 = 1 + p^(m - o2) if o2 > o1, r1^(p^(o1 - o2))
// otherwise. Every element has a unique normal form b1^x b2^y a^z with
// 0 <= x < p^n1, 0 <= y < p^n2, 0 <= z < p^m.
#pragma once

#include <array>
#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cyclicp/arith.hpp"

namespace cyclicp {

inline constexpr i64 kDefaultGroupCap = 6561;  // 3^8

struct ParamVector {
  i64 p = 0, m = 0, n1 = 0, n2 = 0, o1 = 0, o2 = 0, o1p = 0, o2p = 0, u1 = 0, u2 = 0;

  std::array<i64, 10> tuple() const { return {p, m, n1, n2, o1, o2, o1p, o2p, u1, u2}; }
  /// Entries 1-8, i.e. everything but (u1, u2).
  std::array<i64, 8> head() const { return {p, m, n1, n2, o1, o2, o1p, o2p}; }

  auto operator<=>(const ParamVector&) const = default;
};

std::string to_string(const ParamVector& v);

struct ValidityReport {
  bool valid = false;
  /// Clause labels from {1, 2, 4a, 4b, 4c, 5, 5a, 5b, 7, 8a, 8b}. A disjunctive
  /// clause that fails lists every alternative.
  std::vector<std::string> violated;
};

ValidityReport validate_params(const ParamVector& v);

/// a1 = min(o1', o2 + min(n1 - n2 + o1' - o2', 0)).
i64 bound_exponent_a1(const ParamVector& v);
/// a2, by the three-way case split on (o1, o2).
i64 bound_exponent_a2(const ParamVector& v);

/// (r1, r2) as residues mod p^m from (p, m, o1, o2).
std::pair<Residue, Residue> conjugation_residues(i64 p, i64 m, i64 o1, i64 o2);

struct DerivedParams {
  Residue r1{0, 1}, r2{0, 1};
  i64 a1 = 0, a2 = 0;
  i64 t = 0;  // m - max(o1, o2)
  i64 delta1 = 0, delta2 = 0;
  i64 order = 0;    // p^(m + n1 + n2)
  i64 s_shift = 0;  // n1 + o1' - n2 - o2' - o1 + o2
};

/// Throws InvalidParams when validate_params fails.
DerivedParams derive_params(const ParamVector& v);

/// Presentation data for a group that need not come from a canonical vector
/// (socle quotients).
struct RawPresentation {
  i64 p = 0, m = 0, n1 = 0, n2 = 0;
  i64 r1 = 0, r2 = 0, w1 = 0, w2 = 0;
};

struct Element {
  i64 x = 0, y = 0, z = 0;
  auto operator<=>(const Element&) const = default;
};

std::string to_string(const Element& g);

class GroupCtx {
 public:
  i64 p() const { return raw_.p; }
  i64 m() const { return raw_.m; }
  i64 n1() const { return raw_.n1; }
  i64 n2() const { return raw_.n2; }
  i64 pm() const { return pm_; }
  i64 pn1() const { return pn1_; }
  i64 pn2() const { return pn2_; }
  i64 r1() const { return raw_.r1; }
  i64 r2() const { return raw_.r2; }
  i64 w1() const { return raw_.w1; }
  i64 w2() const { return raw_.w2; }
  const RawPresentation& raw() const { return raw_; }

  /// log_p |G| = m + n1 + n2.
  i64 log_order() const { return raw_.m + raw_.n1 + raw_.n2; }
  /// |G|; throws std::overflow_error for astronomically large groups.
  i64 order() const { return ipow(raw_.p, static_cast<int>(log_order())); }

  /// The vector this context was built from, absent for raw presentations.
  const std::optional<ParamVector>& params() const { return params_; }
  bool canonical() const { return params_.has_value(); }

  Element identity() const { return {0, 0, 0}; }
  Element b1() const { return {1 % pn1_, 0, 0}; }
  Element b2() const { return {0, 1 % pn2_, 0}; }
  Element a() const { return {0, 0, 1 % pm_}; }

  bool in_range(const Element& g) const {
    return g.x >= 0 && g.x < pn1_ && g.y >= 0 && g.y < pn2_ && g.z >= 0 && g.z < pm_;
  }
  /// Position of g in the lexicographic (x, y, z) order.
  i64 index(const Element& g) const { return (g.x * pn2_ + g.y) * pm_ + g.z; }
  Element element_at(i64 idx) const;

  // r1^u, r2^y, S(r1, u), S(r2, y) mod p^m for exponents in normal-form range.
  i64 r1_pow(i64 u) const;
  i64 r2_pow(i64 y) const;
  i64 s1(i64 u) const;
  i64 s2(i64 y) const;

 private:
  friend std::shared_ptr<const GroupCtx> make_group(const ParamVector&);
  friend std::shared_ptr<const GroupCtx> make_group(const RawPresentation&);

  GroupCtx(const RawPresentation& raw, std::optional<ParamVector> params);

  RawPresentation raw_;
  std::optional<ParamVector> params_;
  i64 pm_ = 1, pn1_ = 1, pn2_ = 1;
  std::vector<i64> r1pow_, r2pow_, s1_, s2_;
};

using GroupPtr = std::shared_ptr<const GroupCtx>;

/// Canonical path: validates the vector, throws InvalidParams otherwise.
GroupPtr make_group(const ParamVector& v);
/// Raw path: checks that the relations define a group of order p^(m+n1+n2).
GroupPtr make_group(const RawPresentation& raw);

Element el_mul(const GroupCtx& ctx, const Element& g, const Element& h);
Element el_inv(const GroupCtx& ctx, const Element& g);
Element el_pow(const GroupCtx& ctx, const Element& g, i64 k);
/// Order of g, a power of p.
i64 el_order(const GroupCtx& ctx, const Element& g);
/// h^-1 g h.
Element el_conj(const GroupCtx& ctx, const Element& g, const Element& h);
/// [g, h] = g^-1 h^-1 g h.
Element el_comm(const GroupCtx& ctx, const Element& g, const Element& h);

/// r(g) mod p^m, i.e. a^g = a^r(g).
Residue r_of(const GroupCtx& ctx, const Element& g);
/// o(g) = m - v_p(r(g) - 1), reading r(g) in [2, p^m + 1].
i64 o_of(const GroupCtx& ctx, const Element& g);

/// All normal forms in lexicographic order. Throws CapExceeded past `cap`.
std::vector<Element> enumerate_elements(const GroupCtx& ctx, i64 cap = kDefaultGroupCap);

/// Every valid vector for prime p with p^(m+n1+n2) <= max_order, sorted
/// lexicographically on the 10-tuple.
std::vector<ParamVector> enumerate_vectors(i64 p, i64 max_order);

}  // namespace cyclicp
