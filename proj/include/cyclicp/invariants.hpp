// Recovering the classifying vector of a realized group by basis search, and
// the invariants computed from it: O(G), type invariants, quotient
// parameters, presentations of C_G(G') and the recursive fingerprint.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cyclicp/grpalg.hpp"
#include "cyclicp/subgroups.hpp"
#include "json.hpp"

namespace cyclicp {

inline constexpr i64 kDefaultBasisCap = 729;

struct Caps {
  i64 group = kDefaultGroupCap;
  i64 algebra = kDefaultAlgebraCap;
  i64 basis = kDefaultBasisCap;
};

/// A basis (b1, b2) of G together with o(b_i), o'_i(b) and u_i(b).
/// u_i(b) is the least positive representative modulo p^(o'_i(b)), and 1
/// when o'_i(b) = 0.
struct BasisPair {
  Element b1, b2;
  i64 o1 = 0, o2 = 0;
  i64 o1p = 0, o2p = 0;
  i64 u1 = 0, u2 = 0;
};

struct Extraction {
  ParamVector inv;
  /// A basis in B_r realizing o', u.
  BasisPair witness;
  /// Candidate bases examined over all three stages.
  i64 scanned = 0;
};

/// Every stage is an exhaustive lex min/max over bases. Works on raw
/// contexts too. Throws CapExceeded when |G| > basis_cap.
Extraction extract_inv_detail(const GroupPtr& ctx, i64 basis_cap = kDefaultBasisCap);
ParamVector extract_inv(const GroupPtr& ctx, i64 basis_cap = kDefaultBasisCap);

/// Same result, but (o1, o2) and (o1', o2') are taken from the first basis
/// satisfying the characterizations of when a basis already attains them.
Extraction extract_inv_pruned_detail(const GroupPtr& ctx, i64 basis_cap = kDefaultBasisCap);
ParamVector extract_inv_pruned(const GroupPtr& ctx, i64 basis_cap = kDefaultBasisCap);

/// min_lex (|b1 C|, |b2 C|, -|b1|, -|b2|) over bases, C = C_G(G').
std::array<i64, 4> big_O(const GroupPtr& ctx, i64 basis_cap = kDefaultBasisCap);
/// (p^o1, p^o2, -p^(n1 + o1'), -p^(n2 + o2')).
std::array<i64, 4> big_O_closed(const ParamVector& v);

/// Type invariants from the parameters. Three entries when max(o1', o2') < m;
/// for metacyclic groups the two entries log_p exp(G) and log_p |G| minus it.
std::vector<i64> type_invariants(const ParamVector& v);
std::vector<i64> type_invariants(const GroupCtx& ctx);
/// omega_n = log_p |Omega_n / Omega_(n-1)| and e_i = #{n : omega_n >= i}.
std::vector<i64> type_invariants_def(const GroupPtr& ctx, i64 cap = kDefaultGroupCap);

/// (p, m - 1, n1, n2, o1~, o2~, o1'~, o2'~) of G / Soc(G'); u1 and u2 are
/// returned as 0 since only extraction determines them. Throws InvalidParams
/// for invalid vectors and for m = 1.
ParamVector quotient_params(const ParamVector& v);

enum class DeltaCase {
  o1_zero,
  o2_zero,
  s_positive,
  s_negative,
  s_zero_trivial,   // e = 0
  s_zero_lower,     // e = m - n1 + o1 - o2
  s_zero_oprime,    // e = o1' - o2
  s_zero_ell,       // e = o1' - l
};

std::string to_string(DeltaCase c);

/// < x, y, z | [y, x] = z^(p^c), z central, x^(p^x_exp) = z^(p^x_rhs),
///             y^(p^y_exp) = z^(p^y_rhs), z^(p^m) = 1 >
/// with images x1, y1, z1 in G.
struct DeltaPresentation {
  DeltaCase kind = DeltaCase::o1_zero;
  i64 p = 0, m = 0;
  i64 c = 0, x_exp = 0, x_rhs = 0, y_exp = 0, y_rhs = 0;
  Element x1, y1, z1;
  // Auxiliary quantities for the o1 o2 > 0 cases.
  i64 s = 0;
  std::optional<i64> e, ell;
  i64 w = 0, alpha = 0;

  std::array<i64, 6> relator_exponents() const { return {c, x_exp, x_rhs, y_exp, y_rhs, m}; }
  /// log_p of the order of the class-2 group presented: x_exp + y_exp plus
  /// the order of z once [y, x^(p^x_exp)] = [y^(p^y_exp), x] = 1 is imposed.
  i64 log_order() const;
};

/// Canonical contexts only.
DeltaPresentation centralizer_presentation(const GroupCtx& ctx);

struct DeltaCheck {
  bool relations = false;
  bool generates = false;
  bool order_match = false;
  /// For the s = 0 cases, p^e = |mho_(n1 - o1 + o2)(C_G(G'))|; true elsewhere.
  bool e_match = true;
  std::string failure;  // first failing item, empty on pass

  bool pass() const { return relations && generates && order_match && e_match; }
};

DeltaCheck verify_delta(const GroupPtr& ctx, const DeltaPresentation& d,
                        i64 cap = kDefaultGroupCap);

struct InvariantReport {
  std::vector<i64> abelianization;  // G/G'
  i64 exponent = 0;
  i64 meet_order = 0;                    // |Z(G) n G'|
  std::vector<i64> center_mod_meet;      // Z / (Z n G')
  std::vector<i64> jennings_group;       // |D_i / D_(i+1)| for G
  std::vector<i64> jennings_derived;     // ... for G'
  std::vector<i64> jennings_centralizer; // ... for C = C_G(G')
  std::vector<i64> centralizer_mod_derived;     // C / G'
  std::vector<i64> centralizer_abelianization;  // C / C'
  i64 centralizer_exponent = 0;
  std::vector<i64> type;
  i64 nilpotency_class = 0;
  std::array<i64, 4> big_o{};
  bool metacyclic = false;
};

/// Every field is computed from the group itself. O(G) falls back to the
/// closed form for canonical contexts above the basis cap.
InvariantReport invariant_report(const GroupPtr& ctx, const Caps& caps = {});

/// levels[0] describes G, levels[k] its k-th iterated socle quotient.
struct Fingerprint {
  std::vector<InvariantReport> levels;
  std::size_t depth() const { return levels.size(); }
};

Fingerprint fingerprint(const GroupPtr& ctx, const Caps& caps = {});

nlohmann::json to_json(const InvariantReport& r);
/// {"quotient": <nested or absent>, "report": {...}}, keys sorted.
nlohmann::json to_json(const Fingerprint& f);
std::string serialize(const Fingerprint& f);

/// "level <k>: <field>" for the first field that differs, scanning levels
/// outward and fields in key order; nullopt when the fingerprints agree.
std::optional<std::string> first_difference(const Fingerprint& a, const Fingerprint& b);

}  // namespace cyclicp
