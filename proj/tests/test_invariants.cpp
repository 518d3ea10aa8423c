#include <map>

#include "cyclicp/errors.hpp"
#include "cyclicp/invariants.hpp"
#include "doctest.h"

using namespace cyclicp;

namespace {

const ParamVector kI0{3, 2, 3, 2, 0, 1, 1, 1, 1, 1};
const ParamVector kI0u2{3, 2, 3, 2, 0, 1, 1, 1, 2, 1};
const ParamVector kHeis{3, 1, 1, 1, 0, 0, 0, 0, 1, 1};

std::vector<ParamVector> small_vectors() {
  auto out = enumerate_vectors(3, 729);
  for (const auto& v : enumerate_vectors(5, 625)) out.push_back(v);
  return out;
}

}  // namespace

TEST_CASE("extraction examples") {
  CHECK(extract_inv(make_group(kI0), 2187) == kI0);
  CHECK(extract_inv(make_group(kI0u2), 2187) == kI0u2);
  CHECK(extract_inv(make_group(kHeis)) == kHeis);
  const ParamVector q{3, 1, 3, 2, 0, 0, 0, 0, 1, 1};
  CHECK(extract_inv(socle_quotient(*make_group(kI0))) == q);
  CHECK_THROWS_AS(extract_inv(make_group(kI0)), CapExceeded);
}

TEST_CASE("witness basis lies in B_r and realizes the vector") {
  auto g = make_group(kI0);
  const Extraction ex = extract_inv_detail(g, 2187);
  const auto [r1, r2] = conjugation_residues(3, 2, 0, 1);
  CHECK(r_of(*g, ex.witness.b1) == r1);
  CHECK(r_of(*g, ex.witness.b2) == r2);
  CHECK(el_order(*g, ex.witness.b1) == 81);
  CHECK(el_order(*g, ex.witness.b2) == 27);
  CHECK(ex.witness.u1 == 1);
  CHECK(ex.witness.u2 == 1);
}

TEST_CASE("round trip on every small group") {
  for (const auto& v : small_vectors()) {
    auto g = make_group(v);
    const Extraction full = extract_inv_detail(g);
    const Extraction pruned = extract_inv_pruned_detail(g);
    INFO(to_string(v));
    REQUIRE(full.inv == v);
    REQUIRE(pruned.inv == v);
    CHECK(pruned.scanned <= full.scanned);
  }
}

TEST_CASE("a basis with o(b1) = 0 already attains (o1, o2)") {
  auto g = make_group(kI0);
  const Extraction pruned = extract_inv_pruned_detail(g, 2187);
  CHECK(pruned.inv == kI0);
  CHECK(pruned.witness.o1 == 0);
}

TEST_CASE("O(G)") {
  CHECK(big_O(make_group(kI0), 2187) == std::array<i64, 4>{1, 3, -81, -27});
  CHECK(big_O_closed(kI0) == std::array<i64, 4>{1, 3, -81, -27});
  CHECK(big_O(make_group(kHeis)) == std::array<i64, 4>{1, 1, -3, -3});
  for (const auto& v : small_vectors()) {
    INFO(to_string(v));
    REQUIRE(big_O(make_group(v)) == big_O_closed(v));
  }
}

TEST_CASE("type invariants") {
  CHECK(type_invariants(kI0) == std::vector<i64>{4, 2, 1});
  CHECK(type_invariants_def(make_group(kI0)) == std::vector<i64>{4, 2, 1});
  CHECK(type_invariants(*make_group(kHeis)) == std::vector<i64>{1, 1, 1});
  CHECK(type_invariants_def(make_group(kHeis)) == std::vector<i64>{1, 1, 1});
  int metacyclic = 0;
  for (i64 p : {3, 5}) {
    for (const auto& v : enumerate_vectors(p, p == 3 ? 2187 : 3125)) {
      auto g = make_group(v);
      const auto e = type_invariants(v);
      INFO(to_string(v));
      REQUIRE(e == type_invariants_def(g, 3125));
      i64 sum = 0;
      for (i64 x : e) sum += x;
      CHECK(sum == v.m + v.n1 + v.n2);
      CHECK(ipow(p, static_cast<int>(e[0])) == exponent(whole_group(g, 3125)));
      if (e.size() == 2) ++metacyclic;
    }
  }
  CHECK(metacyclic > 0);
}

TEST_CASE("quotient parameters") {
  CHECK(quotient_params(kI0) == ParamVector{3, 1, 3, 2, 0, 0, 0, 0, 0, 0});
  CHECK_THROWS_AS(quotient_params(kHeis), InvalidParams);
  ParamVector bad = kI0;
  bad.u1 = 3;
  CHECK_THROWS_AS(quotient_params(bad), InvalidParams);

  for (i64 p : {3, 5}) {
    for (const auto& v : enumerate_vectors(p, p == 3 ? 2187 : 3125)) {
      if (v.m < 2) continue;
      const ParamVector got = extract_inv(socle_quotient(*make_group(v)));
      INFO(to_string(v));
      REQUIRE(got.head() == quotient_params(v).head());
    }
  }
}

TEST_CASE("quotient parameters keep o1' in the exceptional branch") {
  // Smallest enumerated vector with o1 = 0, min(o1', o2) > 0 and
  // o2' = o1' + o2 + n1 - n2.
  const ParamVector v{3, 3, 3, 3, 0, 1, 1, 2, 1, 1};
  REQUIRE(validate_params(v).valid);
  const ParamVector q = quotient_params(v);
  CHECK(q.o1p == v.o1p);
  CHECK(extract_inv(socle_quotient(*make_group(v)), 6561).head() == q.head());
}

TEST_CASE("centralizer presentation of the smallest open case") {
  auto g = make_group(kI0);
  const DeltaPresentation d = centralizer_presentation(*g);
  CHECK(d.kind == DeltaCase::o1_zero);
  CHECK(d.c == 1);
  CHECK(d.x_exp == 3);
  CHECK(d.x_rhs == 1);
  CHECK(d.y_exp == 1);
  CHECK(d.y_rhs == 1);
  CHECK(d.x1 == g->b1());
  CHECK(d.y1 == el_pow(*g, g->b2(), 3));
  CHECK(d.z1 == g->a());
  const DeltaCheck chk = verify_delta(g, d);
  CHECK(chk.pass());
  CHECK(ipow(3, static_cast<int>(d.log_order())) == 729);
  CHECK(centralizer_presentation(*make_group(kI0u2)).relator_exponents() == d.relator_exponents());
}

TEST_CASE("centralizer presentations verify on every enumerated group") {
  std::map<std::array<i64, 8>, std::array<i64, 6>> by_head;
  for (i64 p : {3, 5}) {
    for (const auto& v : enumerate_vectors(p, p == 3 ? 2187 : 3125)) {
      auto g = make_group(v);
      const DeltaPresentation d = centralizer_presentation(*g);
      const DeltaCheck chk = verify_delta(g, d);
      INFO(to_string(v) << " " << to_string(d.kind) << " " << chk.failure);
      REQUIRE(chk.pass());
      auto [it, fresh] = by_head.emplace(v.head(), d.relator_exponents());
      if (!fresh) CHECK(it->second == d.relator_exponents());
    }
  }
}

TEST_CASE("centralizer presentations with o1 o2 > 0") {
  // These first appear at order 3^9.
  std::map<DeltaCase, int> seen;
  for (const auto& v : enumerate_vectors(3, 59049)) {
    if (v.o1 * v.o2 == 0) continue;
    auto g = make_group(v);
    const DeltaPresentation d = centralizer_presentation(*g);
    const DeltaCheck chk = verify_delta(g, d, 59049);
    INFO(to_string(v) << " " << to_string(d.kind) << " " << chk.failure);
    REQUIRE(chk.pass());
    ++seen[d.kind];
  }
  CHECK(seen[DeltaCase::s_positive] > 0);
  CHECK(seen[DeltaCase::s_negative] > 0);
  CHECK(seen[DeltaCase::s_zero_trivial] > 0);
  CHECK(seen[DeltaCase::s_zero_ell] > 0);

  // With s = 0 the exponent e depends on v_p(u1 - u2), so the relators are
  // not determined by the first eight entries alone.
  auto d11 = centralizer_presentation(*make_group(ParamVector{3, 3, 4, 2, 2, 1, 1, 2, 1, 1}));
  auto d21 = centralizer_presentation(*make_group(ParamVector{3, 3, 4, 2, 2, 1, 1, 2, 2, 1}));
  CHECK(d11.e == 0);
  CHECK(d21.e == 1);
  CHECK(d11.relator_exponents() != d21.relator_exponents());
}

TEST_CASE("a flipped relator exponent is caught") {
  auto g = make_group(kI0);
  DeltaPresentation d = centralizer_presentation(*g);
  d.c += 1;
  const DeltaCheck chk = verify_delta(g, d);
  CHECK_FALSE(chk.pass());
  CHECK_FALSE(chk.failure.empty());
}

TEST_CASE("fingerprints") {
  const Fingerprint f1 = fingerprint(make_group(kI0));
  const Fingerprint f2 = fingerprint(make_group(kI0u2));
  CHECK(f1.depth() == 2);
  CHECK(serialize(f1) == serialize(f2));
  CHECK_FALSE(first_difference(f1, f2).has_value());
  const auto& top = f1.levels[0];
  CHECK(top.big_o == std::array<i64, 4>{1, 3, -81, -27});
  CHECK(top.type == std::vector<i64>{4, 2, 1});
  CHECK(top.abelianization == std::vector<i64>{27, 9});
  CHECK(top.nilpotency_class == 3);
  CHECK(top.centralizer_exponent == 81);
  const Fingerprint h = fingerprint(make_group(kHeis));
  CHECK(h.depth() == 1);
  CHECK(h.levels[0].nilpotency_class == 2);
  CHECK(h.levels[0].exponent == 3);
  CHECK(first_difference(f1, h).has_value());
}

TEST_CASE("fingerprint coincidence and separation up to order 729") {
  std::map<std::array<i64, 8>, std::string> by_head;
  for (const auto& v : enumerate_vectors(3, 729)) {
    const std::string s = serialize(fingerprint(make_group(v)));
    auto [it, fresh] = by_head.emplace(v.head(), s);
    INFO(to_string(v));
    if (!fresh) REQUIRE(it->second == s);
  }
  for (auto i = by_head.begin(); i != by_head.end(); ++i) {
    for (auto j = std::next(i); j != by_head.end(); ++j) {
      const auto& a = i->first;
      const auto& b = j->first;
      if ((a[4] != b[4] || a[5] != b[5] || a[6] != b[6] || a[7] != b[7])) {
        CHECK(i->second != j->second);
      }
    }
  }
}
