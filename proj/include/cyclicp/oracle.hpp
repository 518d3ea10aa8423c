// Independent checks: a rewriting collector that uses nothing but the
// defining relations, and brute-force comparisons of the closed-form power
// and commutator identities against element arithmetic.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cyclicp/presentation.hpp"

namespace cyclicp {

enum class Gen { b1, b2, a };

struct Letter {
  Gen gen;
  i64 exp;
};

using Word = std::vector<Letter>;

inline constexpr std::size_t kMaxWordLength = 64;

enum class Strategy { left_to_right, right_to_left };

/// Normal form of a word. Each syllable exponent is first reduced mod |G|;
/// the rest is single-letter rewriting with
///   a b_i -> b_i a^(r_i),  b2 b1 -> b1 b2 a,  b_i^(p^n_i) -> a^(w_i),  a^(p^m) -> 1.
/// Throws CapExceeded for words longer than kMaxWordLength syllables or
/// groups above `cap`.
Element collect(const GroupCtx& ctx, const Word& w, Strategy strategy = Strategy::left_to_right,
                i64 cap = kDefaultGroupCap);

/// b1^x b2^y a^z.
Word word_of(const Element& g);
/// Concatenation.
Word operator+(Word lhs, const Word& rhs);

struct IdentityCheck {
  IdentityCheck() = default;
  explicit IdentityCheck(std::string n) : name(std::move(n)) {}

  std::string name;
  i64 checks = 0;
  bool pass = true;
  std::string counterexample;  // first failure, empty on pass
};

struct OracleOptions {
  /// Groups up to this order are checked exhaustively, larger ones by sampling.
  i64 exhaustive_order = 243;
  i64 samples = 10000;
  std::uint64_t seed = 1;
};

/// Exp, Comma, Commb1, Commb2, conj-r and double-conj identities.
std::vector<IdentityCheck> verify_closed_forms(const GroupCtx& ctx, const OracleOptions& opt);

/// el_mul against collect on element pairs (all pairs up to exhaustive_order,
/// otherwise `samples` seeded random pairs), plus the two sweep strategies on
/// random words.
std::vector<IdentityCheck> verify_collector(const GroupCtx& ctx, const OracleOptions& opt);

}  // namespace cyclicp
