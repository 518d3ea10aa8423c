#include "cyclicp/invariants.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "cyclicp/errors.hpp"

namespace cyclicp {

namespace {

struct Image {
  i64 x, y;
  i64 o;  // o(g) for any lift g
};

struct Lift {
  Element g;
  i64 oprime;  // |g| = p^(n_i + oprime)
  i64 power;   // g^(p^(n_i)) = a^power
};

// Shared setup for the three extraction stages.
class BasisSearch {
 public:
  BasisSearch(const GroupPtr& ctx, i64 cap) : ctx_(ctx), c_(*ctx) {
    if (c_.order() > cap) {
      throw CapExceeded("basis search needs |G| = " + std::to_string(c_.order()) +
                        " <= basis cap " + std::to_string(cap));
    }
    const SubgroupSet whole = whole_group(ctx, cap);
    const SubgroupSet gp = derived_subgroup(whole);
    if (!(gp == gen_subgroup(ctx, {c_.a()}, cap))) {
      throw std::logic_error("derived subgroup is not generated by a");
    }
    const std::vector<i64> ab = abelian_invariants(whole, gp);
    if (ab.size() != 2 || ab[0] != c_.pn1() || ab[1] != c_.pn2()) {
      throw std::logic_error("abelianization does not match the normal form");
    }
    p_ = c_.p();
    m_ = gp.log_order();
    n1_ = c_.n1();
    n2_ = c_.n2();
    for (i64 x = 0; x < c_.pn1(); ++x) {
      for (i64 y = 0; y < c_.pn2(); ++y) {
        const i64 lg = image_log_order(x, y);
        if (lg != n1_ && lg != n2_) continue;
        const Image img{x, y, o_of(c_, Element{x, y, 0})};
        if (lg == n1_) first_.push_back(img);
        if (lg == n2_) second_.push_back(img);
      }
    }
  }

  const GroupCtx& c() const { return c_; }
  i64 p() const { return p_; }
  i64 m() const { return m_; }
  i64 n1() const { return n1_; }
  i64 n2() const { return n2_; }
  const std::vector<Image>& first() const { return first_; }
  const std::vector<Image>& second() const { return second_; }

  bool independent(i64 x1, i64 y1, i64 x2, i64 y2) const {
    return mod(mod(x1, p_) * mod(y2, p_) - mod(x2, p_) * mod(y1, p_), p_) != 0;
  }

  // Lifts g of images of order p^(n_i) with r(g) = r, as needed for B_r.
  std::vector<Lift> lifts(const std::vector<Image>& images, i64 n, const Residue& r) const {
    std::vector<Lift> out;
    const i64 pn = ipow(p_, static_cast<int>(n));
    for (const Image& img : images) {
      if (r_of(c_, Element{img.x, img.y, 0}) != r) continue;
      for (i64 z = 0; z < c_.pm(); ++z) {
        const Element g{img.x, img.y, z};
        const i64 ord = el_order(c_, g);
        const Element pw = el_pow(c_, g, pn);
        if (pw.x != 0 || pw.y != 0) throw std::logic_error("b^(p^n) outside G'");
        out.push_back({g, vp_capped(ord, p_, 64) - n, pw.z});
      }
    }
    return out;
  }

  // u_i(b) from b_i^(p^(n_i)) = a^power and [b2, b1] = a^j.
  i64 u_value(i64 power, i64 oprime, i64 j_inv) const {
    if (oprime == 0) return 1;
    const i64 k = mulmod(power, j_inv, c_.pm());
    const i64 step = ipow(p_, static_cast<int>(m_ - oprime));
    if (k == 0 || vp_capped(k, p_, static_cast<int>(m_)) != m_ - oprime) {
      throw std::logic_error("order of b_i disagrees with its p^n_i-th power");
    }
    return mod(k / step, ipow(p_, static_cast<int>(oprime)));
  }

  i64 comm_exponent_inverse(const Element& b1, const Element& b2) const {
    const Element c = el_comm(c_, b2, b1);
    if (c.x != 0 || c.y != 0 || c.z % p_ == 0) {
      throw std::logic_error("[b2, b1] does not generate G'");
    }
    return invmod(c.z, c_.pm());
  }

 private:
  i64 image_log_order(i64 x, i64 y) const {
    const i64 lx = x == 0 ? 0 : n1_ - vp_capped(x, p_, static_cast<int>(n1_));
    const i64 ly = y == 0 ? 0 : n2_ - vp_capped(y, p_, static_cast<int>(n2_));
    return std::max(lx, ly);
  }

  GroupPtr ctx_;
  const GroupCtx& c_;
  i64 p_ = 0, m_ = 0, n1_ = 0, n2_ = 0;
  std::vector<Image> first_, second_;
};

bool attains_o(const BasisSearch& s, i64 ob1, i64 ob2) {
  if (ob1 == 0) return true;
  if (ob2 == 0 && ob2 < ob1 && s.n2() < s.n1()) return true;
  return 0 < ob2 && ob2 < ob1 && ob1 < ob2 + s.n1() - s.n2();
}

bool attains_oprime(const BasisSearch& s, i64 o1, i64 o2, i64 q1, i64 q2) {
  const i64 d = s.n1() - s.n2();
  if (o1 == 0) return q1 <= q2 && q2 <= q1 + o2 + d;
  if (o2 == 0) return q1 + std::min<i64>(0, d - o1) <= q2 && q2 <= q1 + d;
  return q1 <= q2 && q2 <= q1 + d;
}

Extraction extract(const GroupPtr& ctx, i64 cap, bool pruned) {
  const BasisSearch s(ctx, cap);
  Extraction ex;

  // (o1, o2): min_lex over bases; o(g) only depends on gG'.
  std::optional<std::pair<i64, i64>> best_o;
  for (const Image& i1 : s.first()) {
    for (const Image& i2 : s.second()) {
      if (!s.independent(i1.x, i1.y, i2.x, i2.y)) continue;
      ++ex.scanned;
      if (pruned) {
        if (attains_o(s, i1.o, i2.o)) {
          best_o = std::pair{i1.o, i2.o};
          break;
        }
      } else if (!best_o || std::pair{i1.o, i2.o} < *best_o) {
        best_o = std::pair{i1.o, i2.o};
      }
    }
    if (pruned && best_o) break;
  }
  if (!best_o) throw std::logic_error("no basis found");
  const auto [o1, o2] = *best_o;

  const auto [r1, r2] = conjugation_residues(s.p(), s.m(), o1, o2);
  const std::vector<Lift> l1 = s.lifts(s.first(), s.n1(), r1);
  const std::vector<Lift> l2 = s.lifts(s.second(), s.n2(), r2);

  // (o1', o2'): max_lex over B_r.
  std::optional<std::pair<i64, i64>> best_op;
  for (const Lift& b1 : l1) {
    for (const Lift& b2 : l2) {
      if (!s.independent(b1.g.x, b1.g.y, b2.g.x, b2.g.y)) continue;
      ++ex.scanned;
      const std::pair cand{b1.oprime, b2.oprime};
      if (pruned) {
        if (attains_oprime(s, o1, o2, cand.first, cand.second)) {
          best_op = cand;
          break;
        }
      } else if (!best_op || cand > *best_op) {
        best_op = cand;
      }
    }
    if (pruned && best_op) break;
  }
  if (!best_op) throw std::logic_error("B_r is empty");
  const auto [o1p, o2p] = *best_op;

  // (u2, u1): min_lex over B_r with o'(b) = (o1', o2').
  std::optional<std::pair<i64, i64>> best_u;
  for (const Lift& b1 : l1) {
    if (b1.oprime != o1p) continue;
    for (const Lift& b2 : l2) {
      if (b2.oprime != o2p || !s.independent(b1.g.x, b1.g.y, b2.g.x, b2.g.y)) continue;
      ++ex.scanned;
      const i64 j_inv = s.comm_exponent_inverse(b1.g, b2.g);
      const std::pair cand{s.u_value(b2.power, o2p, j_inv), s.u_value(b1.power, o1p, j_inv)};
      if (!best_u || cand < *best_u) {
        best_u = cand;
        ex.witness = {b1.g, b2.g, o1, o2, o1p, o2p, cand.second, cand.first};
      }
    }
  }
  if (!best_u) throw std::logic_error("no basis attains (o1', o2')");

  ex.inv = {s.p(), s.m(), s.n1(), s.n2(), o1, o2, o1p, o2p, best_u->second, best_u->first};
  return ex;
}

const ParamVector& require_canonical(const GroupCtx& c) {
  if (!c.canonical()) throw std::invalid_argument("operation needs a canonical context");
  return *c.params();
}

i64 log_p_of(i64 n, i64 p) { return vp_capped(n, p, 64); }

std::vector<i64> jennings_orders(const SubgroupSet& s) {
  const std::vector<SubgroupSet> series = jennings_series(s);
  std::vector<i64> out;
  for (size_t i = 0; i + 1 < series.size(); ++i) out.push_back(series[i].size() / series[i + 1].size());
  return out;
}

}  // namespace

Extraction extract_inv_detail(const GroupPtr& ctx, i64 basis_cap) {
  return extract(ctx, basis_cap, false);
}

ParamVector extract_inv(const GroupPtr& ctx, i64 basis_cap) {
  return extract(ctx, basis_cap, false).inv;
}

Extraction extract_inv_pruned_detail(const GroupPtr& ctx, i64 basis_cap) {
  return extract(ctx, basis_cap, true);
}

ParamVector extract_inv_pruned(const GroupPtr& ctx, i64 basis_cap) {
  return extract(ctx, basis_cap, true).inv;
}

std::array<i64, 4> big_O(const GroupPtr& ctx, i64 basis_cap) {
  const BasisSearch s(ctx, basis_cap);
  const GroupCtx& c = s.c();
  const SubgroupSet cent = centralizer_comm_bf(ctx, basis_cap);

  // Distinct (|gC|, |g|) over the lifts of each image; the key of a basis
  // depends on nothing else.
  auto profile = [&](const Image& img) {
    std::vector<std::pair<i64, i64>> out;
    for (i64 z = 0; z < c.pm(); ++z) {
      const Element g{img.x, img.y, z};
      i64 mod_c = 1;
      for (Element h = g; !cent.contains(h); h = el_pow(c, h, c.p())) mod_c *= c.p();
      out.emplace_back(mod_c, el_order(c, g));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  std::vector<std::vector<std::pair<i64, i64>>> prof1, prof2;
  for (const Image& img : s.first()) prof1.push_back(profile(img));
  for (const Image& img : s.second()) prof2.push_back(profile(img));

  std::optional<std::array<i64, 4>> best;
  for (size_t i = 0; i < s.first().size(); ++i) {
    const Image& i1 = s.first()[i];
    for (size_t j = 0; j < s.second().size(); ++j) {
      const Image& i2 = s.second()[j];
      if (!s.independent(i1.x, i1.y, i2.x, i2.y)) continue;
      for (const auto& [c1, ord1] : prof1[i]) {
        for (const auto& [c2, ord2] : prof2[j]) {
          const std::array<i64, 4> key{c1, c2, -ord1, -ord2};
          if (!best || key < *best) best = key;
        }
      }
    }
  }
  if (!best) throw std::logic_error("no basis found");
  return *best;
}

std::array<i64, 4> big_O_closed(const ParamVector& v) {
  return {ipow(v.p, static_cast<int>(v.o1)), ipow(v.p, static_cast<int>(v.o2)),
          -ipow(v.p, static_cast<int>(v.n1 + v.o1p)), -ipow(v.p, static_cast<int>(v.n2 + v.o2p))};
}

std::vector<i64> type_invariants(const ParamVector& v) {
  const i64 mx = std::max(v.o1p, v.o2p);
  const i64 e1 = std::max(v.n1 + v.o1p, v.n2 + v.o2p);
  if (mx < v.m) return {e1, v.n1 + v.n2 + mx - e1, v.m - mx};
  return {e1, v.n1 + v.n2 + v.m - e1};
}

std::vector<i64> type_invariants(const GroupCtx& ctx) {
  return type_invariants(require_canonical(ctx));
}

std::vector<i64> type_invariants_def(const GroupPtr& ctx, i64 cap) {
  const SubgroupSet whole = whole_group(ctx, cap);
  std::vector<i64> omegas;
  i64 prev = 1;
  for (int n = 1; prev < whole.size(); ++n) {
    const SubgroupSet om = omega(whole, n);
    omegas.push_back(log_p_of(om.size() / prev, ctx->p()));
    prev = om.size();
  }
  std::vector<i64> e;
  for (i64 i = 1;; ++i) {
    const i64 cnt = std::count_if(omegas.begin(), omegas.end(), [i](i64 w) { return w >= i; });
    if (cnt == 0) break;
    e.push_back(cnt);
  }
  return e;
}

ParamVector quotient_params(const ParamVector& v) {
  const ValidityReport rep = validate_params(v);
  if (!rep.valid) throw InvalidParams("invalid vector " + to_string(v));
  if (v.m < 2) throw InvalidParams("quotient by Soc(G') needs m >= 2");
  ParamVector q{v.p, v.m - 1, v.n1, v.n2, std::max<i64>(0, v.o1 - 1), std::max<i64>(0, v.o2 - 1),
                0, 0, 0, 0};
  const bool keep1 = v.o1 == 0 && 0 < std::min(v.o1p, v.o2) && v.o2p == v.o1p + v.o2 + v.n1 - v.n2;
  q.o1p = keep1 ? v.o1p : std::max<i64>(0, v.o1p - 1);
  const bool keep2 =
      v.o2 == 0 && v.n1 - v.n2 < v.o1 && 0 < v.o2p && v.o2p == v.o1p + v.n1 - v.n2 - v.o1;
  q.o2p = keep2 ? v.o2p : std::max<i64>(0, v.o2p - 1);
  return q;
}

std::string to_string(DeltaCase c) {
  switch (c) {
    case DeltaCase::o1_zero: return "o1=0";
    case DeltaCase::o2_zero: return "o2=0<o1";
    case DeltaCase::s_positive: return "s>0";
    case DeltaCase::s_negative: return "s<0";
    case DeltaCase::s_zero_trivial: return "s=0,e=0";
    case DeltaCase::s_zero_lower: return "s=0,e=m-n1+o1-o2";
    case DeltaCase::s_zero_oprime: return "s=0,e=o1'-o2";
    case DeltaCase::s_zero_ell: return "s=0,e=o1'-l";
  }
  return "?";
}

i64 DeltaPresentation::log_order() const {
  for (i64 e : relator_exponents()) {
    if (e < 0) throw std::invalid_argument("negative relator exponent");
  }
  return x_exp + y_exp + std::min({m, c + x_exp, c + y_exp});
}

DeltaPresentation centralizer_presentation(const GroupCtx& ctx) {
  const ParamVector& v = require_canonical(ctx);
  const i64 p = v.p, m = v.m;
  auto pp = [p](i64 e) { return ipow(p, static_cast<int>(e)); };
  auto pw = [&ctx](const Element& g, i64 k) { return el_pow(ctx, g, k); };
  const Element b1 = ctx.b1(), b2 = ctx.b2(), a = ctx.a();

  DeltaPresentation d;
  d.p = p;
  d.m = m;
  if (v.o1 == 0) {
    d.kind = DeltaCase::o1_zero;
    d.c = v.o2;
    d.x_exp = v.n1;
    d.x_rhs = m - v.o1p;
    d.y_exp = v.n2 - v.o2;
    d.y_rhs = m - v.o2p;
    d.x1 = pw(b1, v.u2);
    d.y1 = pw(b2, v.u1 * pp(v.o2));
    d.z1 = pw(a, v.u1 * v.u2);
    return d;
  }
  if (v.o2 == 0) {
    d.kind = DeltaCase::o2_zero;
    d.c = v.o1;
    d.x_exp = v.n1 - v.o1;
    d.x_rhs = m - v.o1p;
    d.y_exp = v.n2;
    d.y_rhs = m - v.o2p;
    d.x1 = pw(b1, v.u2 * pp(v.o1));
    d.y1 = pw(b2, v.u1);
    d.z1 = pw(a, v.u1 * v.u2);
    return d;
  }

  const Element x0 = el_mul(ctx, pw(b1, pp(v.o1 - v.o2)), el_inv(ctx, b2));
  d.s = v.n1 + v.o1p - v.n2 - v.o2p - v.o1 + v.o2;
  d.c = v.o1;
  d.x_exp = v.n1 - v.o1 + v.o2;
  d.y_exp = v.n2 - v.o2;
  d.y_rhs = m - v.o2p;
  if (d.s != 0) {
    if (d.s > 0) {
      d.kind = DeltaCase::s_positive;
      d.alpha = v.u1 - v.u2 * pp(d.s);
      d.x_rhs = m - v.o1p;
    } else {
      d.kind = DeltaCase::s_negative;
      d.alpha = v.u1 * pp(-d.s) - v.u2;
      d.x_rhs = m - v.o1p + d.s;
    }
    d.x1 = pw(x0, v.u2);
    d.y1 = pw(b2, d.alpha * pp(v.o2));
    d.z1 = pw(a, d.alpha * v.u2);
    return d;
  }

  const i64 diff = v.u1 - v.u2;
  if (diff != 0) {
    d.ell = vp_capped(diff, p, 64);
    d.w = diff / pp(*d.ell);
  }
  const i64 lower = m - v.n1 + v.o1 - v.o2;
  const i64 base = std::max({v.o1p - v.o2, lower, i64{0}});
  d.e = d.ell ? std::max(base, v.o1p - *d.ell) : base;
  if (*d.e == base) {
    d.x_rhs = m;  // x^(p^x_exp) = 1
    d.y1 = pw(b2, v.u1 * pp(v.o2));
    d.z1 = pw(a, v.u1 * v.u2);
    if (*d.e == 0) {
      d.kind = DeltaCase::s_zero_trivial;
      d.x1 = pw(x0, v.u2);
    } else if (*d.e == lower) {
      d.kind = DeltaCase::s_zero_lower;
      Element corr = ctx.identity();
      if (d.ell) {
        const i64 k = m - v.o1p - v.n1 + *d.ell + v.o1 - v.o2;
        if (k < 0) throw VerificationFailure("negative exponent in the s=0 correction term");
        corr = pw(a, -d.w * pp(k));
      }
      d.x1 = pw(el_mul(ctx, x0, corr), v.u2);
    } else {
      d.kind = DeltaCase::s_zero_oprime;
      const i64 inv_u2 = invmod(v.u2, ctx.pm());
      const Element t = el_mul(ctx, pw(b1, pp(v.o1 - v.o2)), pw(b2, -1 + (v.u2 - v.u1) * inv_u2));
      d.x1 = pw(t, v.u2);
    }
    return d;
  }
  d.kind = DeltaCase::s_zero_ell;
  d.x_rhs = m - *d.e;
  d.x1 = pw(x0, v.u2);
  d.y1 = pw(b2, d.w * pp(v.o2));
  d.z1 = pw(a, d.w * v.u2);
  return d;
}

DeltaCheck verify_delta(const GroupPtr& ctx, const DeltaPresentation& d, i64 cap) {
  const GroupCtx& c = *ctx;
  DeltaCheck out;
  auto fail = [&out](const std::string& what) {
    if (out.failure.empty()) out.failure = what;
  };
  std::array<i64, 6> ex = d.relator_exponents();
  if (std::any_of(ex.begin(), ex.end(), [](i64 e) { return e < 0; })) {
    fail("negative relator exponent");
    return out;
  }
  auto pw = [&c](const Element& g, i64 k) { return el_pow(c, g, k); };
  auto pp = [&d](i64 e) { return ipow(d.p, static_cast<int>(e)); };
  const Element id = c.identity();

  out.relations = true;
  auto rel = [&](bool ok, const char* what) {
    if (!ok) {
      out.relations = false;
      fail(std::string("relation ") + what);
    }
  };
  rel(el_comm(c, d.y1, d.x1) == pw(d.z1, pp(d.c)), "[y,x]=z^(p^c)");
  rel(el_comm(c, d.z1, d.x1) == id, "[z,x]=1");
  rel(el_comm(c, d.z1, d.y1) == id, "[z,y]=1");
  rel(pw(d.x1, pp(d.x_exp)) == pw(d.z1, pp(d.x_rhs)), "x power");
  rel(pw(d.y1, pp(d.y_exp)) == pw(d.z1, pp(d.y_rhs)), "y power");
  rel(pw(d.z1, pp(d.m)) == id, "z^(p^m)=1");

  const SubgroupSet cent = centralizer_comm_bf(ctx, cap);
  out.generates = gen_subgroup(ctx, {d.x1, d.y1, d.z1}, cap) == cent;
  if (!out.generates) fail("images do not generate C_G(G')");
  out.order_match = pp(d.log_order()) == cent.size();
  if (!out.order_match) fail("|Delta| != |C_G(G')|");
  if (d.e) {
    out.e_match = mho(cent, static_cast<int>(d.x_exp)).log_order() == *d.e;
    if (!out.e_match) fail("p^e != |mho(C_G(G'))|");
  }
  return out;
}

InvariantReport invariant_report(const GroupPtr& ctx, const Caps& caps) {
  const GroupCtx& c = *ctx;
  const SubgroupSet whole = whole_group(ctx, caps.group);
  const SubgroupSet gp = derived_subgroup(whole);
  const SubgroupSet z = center_bf(ctx, caps.group);
  const SubgroupSet cent = centralizer_comm_bf(ctx, caps.group);
  const SubgroupSet meet = intersect(z, gp);

  InvariantReport r;
  r.abelianization = abelian_invariants(whole, gp);
  r.exponent = exponent(whole);
  r.meet_order = meet.size();
  r.center_mod_meet = abelian_invariants(z, meet);
  r.jennings_group = jennings_orders(whole);
  r.jennings_derived = jennings_orders(gp);
  r.jennings_centralizer = jennings_orders(cent);
  r.centralizer_mod_derived = abelian_invariants(cent, gp);
  r.centralizer_abelianization = abelian_invariants(cent, derived_subgroup(cent));
  r.centralizer_exponent = exponent(cent);
  r.type = type_invariants_def(ctx, caps.group);
  r.nilpotency_class = nilpotency_class(whole);
  if (c.order() <= caps.basis) {
    r.big_o = big_O(ctx, caps.basis);
  } else if (c.canonical()) {
    r.big_o = big_O_closed(*c.params());
  } else {
    throw CapExceeded("O(G) of a raw context needs |G| <= basis cap");
  }
  r.metacyclic = r.type.size() <= 2;
  return r;
}

Fingerprint fingerprint(const GroupPtr& ctx, const Caps& caps) {
  Fingerprint f;
  GroupPtr cur = ctx;
  while (true) {
    f.levels.push_back(invariant_report(cur, caps));
    if (cur->m() <= 1) break;
    cur = socle_quotient(*cur);
  }
  return f;
}

nlohmann::json to_json(const InvariantReport& r) {
  nlohmann::json j;
  j["abelianization"] = r.abelianization;
  j["big_o"] = r.big_o;
  j["center_mod_meet"] = r.center_mod_meet;
  j["centralizer_abelianization"] = r.centralizer_abelianization;
  j["centralizer_exponent"] = r.centralizer_exponent;
  j["centralizer_mod_derived"] = r.centralizer_mod_derived;
  j["class"] = r.nilpotency_class;
  j["exponent"] = r.exponent;
  j["jennings_centralizer"] = r.jennings_centralizer;
  j["jennings_derived"] = r.jennings_derived;
  j["jennings_group"] = r.jennings_group;
  j["meet_order"] = r.meet_order;
  j["metacyclic"] = r.metacyclic;
  j["type"] = r.type;
  return j;
}

nlohmann::json to_json(const Fingerprint& f) {
  nlohmann::json out;
  for (auto it = f.levels.rbegin(); it != f.levels.rend(); ++it) {
    nlohmann::json level;
    level["report"] = to_json(*it);
    if (!out.is_null()) level["quotient"] = std::move(out);
    out = std::move(level);
  }
  return out;
}

std::string serialize(const Fingerprint& f) { return to_json(f).dump(); }

std::optional<std::string> first_difference(const Fingerprint& a, const Fingerprint& b) {
  const size_t n = std::min(a.depth(), b.depth());
  for (size_t k = 0; k < n; ++k) {
    const nlohmann::json ja = to_json(a.levels[k]);
    const nlohmann::json jb = to_json(b.levels[k]);
    for (auto it = ja.begin(); it != ja.end(); ++it) {
      if (!jb.contains(it.key()) || jb.at(it.key()) != it.value()) {
        return "level " + std::to_string(k) + ": " + it.key();
      }
    }
  }
  if (a.depth() != b.depth()) return std::string("depth");
  return std::nullopt;
}

}  // namespace cyclicp
