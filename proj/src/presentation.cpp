#include "cyclicp/presentation.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "cyclicp/errors.hpp"

namespace cyclicp {

namespace {

constexpr i64 kTableLimit = i64{1} << 20;

// u <= p^a without overflowing for large a.
bool le_pow(i64 u, i64 p, i64 a) {
  if (a < 0) return false;
  i64 acc = 1;
  for (i64 i = 0; i < a; ++i) {
    if (acc > u) return true;
    acc *= p;
  }
  return u <= acc;
}

i64 pow_or_throw(i64 p, i64 e) { return ipow(p, static_cast<int>(e)); }

}  // namespace

std::string to_string(const ParamVector& v) {
  std::ostringstream os;
  os << '(' << v.p << ',' << v.m << ',' << v.n1 << ',' << v.n2 << ',' << v.o1 << ',' << v.o2
     << ',' << v.o1p << ',' << v.o2p << ',' << v.u1 << ',' << v.u2 << ')';
  return os.str();
}

std::string to_string(const Element& g) {
  std::ostringstream os;
  os << '(' << g.x << ',' << g.y << ',' << g.z << ')';
  return os.str();
}

i64 bound_exponent_a1(const ParamVector& v) {
  return std::min(v.o1p, v.o2 + std::min<i64>(v.n1 - v.n2 + v.o1p - v.o2p, 0));
}

i64 bound_exponent_a2(const ParamVector& v) {
  if (v.o1 == 0) return 0;
  if (v.o2 == 0) {
    return std::min({v.o1, v.o2p, v.o2p - v.o1p + std::max<i64>(0, v.o1 + v.n2 - v.n1)});
  }
  return std::min(v.o1 - v.o2, v.o2p - v.o1p);
}

ValidityReport validate_params(const ParamVector& v) {
  ValidityReport rep;
  auto fail = [&rep](std::initializer_list<const char*> labels) {
    for (const char* l : labels) rep.violated.emplace_back(l);
  };
  const bool p_ok = v.p > 2 && is_prime(v.p);

  // (1); p = 2 is outside the family handled here.
  if (!p_ok || !(v.n1 >= v.n2 && v.n2 >= 1)) fail({"1"});

  // (2)
  bool c2 = true;
  for (auto [o, op, u] : {std::array{v.o1, v.o1p, v.u1}, std::array{v.o2, v.o2p, v.u2}}) {
    if (!(0 <= o && o < v.m)) c2 = false;
    if (!(0 <= op && op <= v.m - o)) c2 = false;
    if (v.p < 2 || u % v.p == 0) c2 = false;
  }
  if (!c2) fail({"2"});

  // (4)
  const bool c4a = v.o1 == 0 && v.o1p <= v.o2p && v.o2p <= v.o1p + v.o2 + v.n1 - v.n2;
  const bool c4b = v.o2 == 0 && 0 < v.o1 && v.n2 < v.n1 &&
                   v.o1p + std::min<i64>(0, v.n1 - v.n2 - v.o1) <= v.o2p &&
                   v.o2p <= v.o1p + v.n1 - v.n2;
  const bool c4c = 0 < v.o2 && v.o2 < v.o1 && v.o1 < v.o2 + v.n1 - v.n2 && v.o1p <= v.o2p &&
                   v.o2p <= v.o1p + v.n1 - v.n2;
  if (!(c4a || c4b || c4c)) fail({"4a", "4b", "4c"});

  // (5)
  if (!(v.o2 + v.o1p <= v.m && v.m <= v.n1)) fail({"5"});
  const bool c5a = v.o1 + v.o2p <= v.m && v.m <= v.n2;
  bool c5b = 2 * v.m - v.o1 - v.o2p == v.n2 && v.n2 < v.m;
  if (c5b) c5b = p_ok && mod(v.u2 - 1, pow_or_throw(v.p, v.m - v.n2)) == 0;
  if (!(c5a || c5b)) fail({"5a", "5b"});

  // (7)
  const i64 a1 = bound_exponent_a1(v);
  if (!(p_ok && v.u1 >= 1 && le_pow(v.u1, v.p, a1))) fail({"7"});

  // (8)
  const i64 a2 = bound_exponent_a2(v);
  const bool c8a = p_ok && v.u2 >= 1 && le_pow(v.u2, v.p, a2);
  bool c8b = p_ok && v.o1 * v.o2 != 0 && v.n1 - v.n2 + v.o1p - v.o2p == 0 && 0 < a1 && a2 >= 0 &&
             mod(v.u1, v.p) == 1;
  if (c8b) {
    const i64 pa2 = pow_or_throw(v.p, a2);
    c8b = 1 + pa2 <= v.u2 && v.u2 <= 2 * pa2;
  }
  if (!(c8a || c8b)) fail({"8a", "8b"});

  rep.valid = rep.violated.empty();
  return rep;
}

std::pair<Residue, Residue> conjugation_residues(i64 p, i64 m, i64 o1, i64 o2) {
  const i64 pm = pow_or_throw(p, m);
  Residue r1(1 + pow_or_throw(p, m - o1), pm);
  if (o2 > o1) return {r1, Residue(1 + pow_or_throw(p, m - o2), pm)};
  return {r1, r1.pow(pow_or_throw(p, o1 - o2))};
}

DerivedParams derive_params(const ParamVector& v) {
  auto rep = validate_params(v);
  if (!rep.valid) throw InvalidParams("invalid parameter vector " + to_string(v));

  DerivedParams d;
  std::tie(d.r1, d.r2) = conjugation_residues(v.p, v.m, v.o1, v.o2);
  d.a1 = bound_exponent_a1(v);
  d.a2 = bound_exponent_a2(v);
  d.t = v.m - std::max(v.o1, v.o2);
  d.order = pow_or_throw(v.p, v.m + v.n1 + v.n2);
  d.s_shift = v.n1 + v.o1p - v.n2 - v.o2p - v.o1 + v.o2;

  const i64 pm = d.r1.modulus();
  const i64 step1 = pow_or_throw(v.p, v.m - v.o1);
  const i64 step2 = pow_or_throw(v.p, v.m - v.o2);

  // S(r2, delta1 p^(m-o1)) = 1 - r1 and
  // S(r1, delta2 p^(m-o2)) r2^(delta1 p^(m-o1)) = r2 - 1, with 1 <= delta_i <= p^(o_i).
  const i64 y1 = geom_sum_invert(d.r2.value(), Residue(1, pm) - d.r1);
  if (y1 % step1 != 0) throw std::logic_error("delta1 congruence has no admissible solution");
  d.delta1 = y1 / step1 == 0 ? pow_or_throw(v.p, v.o1) : y1 / step1;

  const Residue twist = d.r2.pow(d.delta1 * step1);
  const Residue rhs = (d.r2 - Residue(1, pm)) * twist.pow(-1);
  const i64 y2 = geom_sum_invert(d.r1.value(), rhs);
  if (y2 % step2 != 0) throw std::logic_error("delta2 congruence has no admissible solution");
  d.delta2 = y2 / step2 == 0 ? pow_or_throw(v.p, v.o2) : y2 / step2;
  return d;
}

GroupCtx::GroupCtx(const RawPresentation& raw, std::optional<ParamVector> params)
    : raw_(raw), params_(std::move(params)) {
  pm_ = ipow(raw.p, static_cast<int>(raw.m));
  pn1_ = ipow(raw.p, static_cast<int>(raw.n1));
  pn2_ = ipow(raw.p, static_cast<int>(raw.n2));
  raw_.r1 = mod(raw.r1, pm_);
  raw_.r2 = mod(raw.r2, pm_);
  raw_.w1 = mod(raw.w1, pm_);
  raw_.w2 = mod(raw.w2, pm_);

  auto fill = [this](i64 r, i64 len, std::vector<i64>& pw, std::vector<i64>& sum) {
    if (len > kTableLimit) return;
    pw.resize(len);
    sum.resize(len);
    i64 cur = 1 % pm_, s = 0;
    for (i64 u = 0; u < len; ++u) {
      pw[u] = cur;
      sum[u] = s;
      s = mod(s + cur, pm_);
      cur = mulmod(cur, r, pm_);
    }
  };
  fill(raw_.r1, pn1_, r1pow_, s1_);
  fill(raw_.r2, pn2_, r2pow_, s2_);
}

Element GroupCtx::element_at(i64 idx) const {
  Element g;
  g.z = idx % pm_;
  idx /= pm_;
  g.y = idx % pn2_;
  g.x = idx / pn2_;
  return g;
}

i64 GroupCtx::r1_pow(i64 u) const {
  return r1pow_.empty() ? powmod(raw_.r1, u, pm_) : r1pow_[u];
}
i64 GroupCtx::r2_pow(i64 y) const {
  return r2pow_.empty() ? powmod(raw_.r2, y, pm_) : r2pow_[y];
}
i64 GroupCtx::s1(i64 u) const {
  return s1_.empty() ? geom_sum(raw_.r1, u, pm_).value() : s1_[u];
}
i64 GroupCtx::s2(i64 y) const {
  return s2_.empty() ? geom_sum(raw_.r2, y, pm_).value() : s2_[y];
}

namespace {

// The relations define a group of order p^(m+n1+n2) exactly when conjugation
// by b_i is an automorphism of <a> of the right order and b_i^(p^n_i) = a^w_i
// is compatible with conjugation by both generators.
std::vector<std::string> consistency_violations(const RawPresentation& raw) {
  std::vector<std::string> bad;
  if (!(raw.p > 2 && is_prime(raw.p))) {
    bad.emplace_back("p must be an odd prime");
    return bad;
  }
  if (raw.m < 1 || raw.n1 < 1 || raw.n2 < 1) {
    bad.emplace_back("m, n1, n2 must be positive");
    return bad;
  }
  const i64 pm = ipow(raw.p, static_cast<int>(raw.m));
  const i64 pn1 = ipow(raw.p, static_cast<int>(raw.n1));
  const i64 pn2 = ipow(raw.p, static_cast<int>(raw.n2));
  const i64 r1 = mod(raw.r1, pm), r2 = mod(raw.r2, pm);
  const i64 w1 = mod(raw.w1, pm), w2 = mod(raw.w2, pm);
  if (mod(r1, raw.p) != 1 || mod(r2, raw.p) != 1) bad.emplace_back("r_i != 1 mod p");
  if (powmod(r1, pn1, pm) != 1 % pm) bad.emplace_back("r1^(p^n1) != 1");
  if (powmod(r2, pn2, pm) != 1 % pm) bad.emplace_back("r2^(p^n2) != 1");
  if (mulmod(w1, r1 - 1, pm) != 0) bad.emplace_back("w1 (r1 - 1) != 0");
  if (mulmod(w2, r2 - 1, pm) != 0) bad.emplace_back("w2 (r2 - 1) != 0");
  if (mod(mulmod(w1, r2 - 1, pm) + geom_sum(r1, pn1, pm).value(), pm) != 0) {
    bad.emplace_back("w1 (r2 - 1) + S(r1, p^n1) != 0");
  }
  if (mod(mulmod(w2, r1 - 1, pm) - geom_sum(r2, pn2, pm).value(), pm) != 0) {
    bad.emplace_back("w2 (r1 - 1) - S(r2, p^n2) != 0");
  }
  return bad;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : "; ") + s;
  return out;
}

}  // namespace

GroupPtr make_group(const ParamVector& v) {
  auto rep = validate_params(v);
  if (!rep.valid) {
    std::vector<std::string> labels;
    for (const auto& l : rep.violated) labels.push_back("(" + l + ")");
    throw InvalidParams("invalid parameter vector " + to_string(v) + ": " + join(labels));
  }
  const i64 pm = ipow(v.p, static_cast<int>(v.m));
  auto [r1, r2] = conjugation_residues(v.p, v.m, v.o1, v.o2);
  RawPresentation raw{v.p,
                      v.m,
                      v.n1,
                      v.n2,
                      r1.value(),
                      r2.value(),
                      mod(v.u1 * ipow(v.p, static_cast<int>(v.m - v.o1p)), pm),
                      mod(v.u2 * ipow(v.p, static_cast<int>(v.m - v.o2p)), pm)};
  if (auto bad = consistency_violations(raw); !bad.empty()) {
    throw std::logic_error("valid vector " + to_string(v) + " gives inconsistent relations: " +
                           join(bad));
  }
  return GroupPtr(new GroupCtx(raw, v));
}

GroupPtr make_group(const RawPresentation& raw) {
  if (auto bad = consistency_violations(raw); !bad.empty()) {
    throw InvalidParams("inconsistent raw presentation: " + join(bad));
  }
  return GroupPtr(new GroupCtx(raw, std::nullopt));
}

namespace {

inline void check_member(const GroupCtx& ctx, const Element& g) {
  if (!ctx.in_range(g)) throw ContextMismatch("element " + to_string(g) + " not in context");
}

}  // namespace

Element el_mul(const GroupCtx& ctx, const Element& g, const Element& h) {
  check_member(ctx, g);
  check_member(ctx, h);
  const i64 pm = ctx.pm();
  // b1^x b2^y a^z b1^u = b1^(x+u) b2^y a^(S(r1,u) S(r2,y) + z r1^u), then the
  // a-block moves past b2^v.
  i64 x = g.x + h.x;
  i64 y = g.y + h.y;
  i64 z = mod(static_cast<i64>((static_cast<i128>(ctx.s1(h.x)) * ctx.s2(g.y) +
                                static_cast<i128>(g.z) * ctx.r1_pow(h.x)) %
                               pm),
              pm);
  z = mod(mulmod(z, ctx.r2_pow(h.y), pm) + h.z, pm);
  if (x >= ctx.pn1()) {
    // b1^(p^n1) = a^w1, which then passes the b2-block.
    x -= ctx.pn1();
    const i64 yr = y >= ctx.pn2() ? y - ctx.pn2() : y;
    z = mod(z + mulmod(ctx.w1(), ctx.r2_pow(yr), pm), pm);
  }
  if (y >= ctx.pn2()) {
    y -= ctx.pn2();
    z = mod(z + ctx.w2(), pm);
  }
  return {x, y, z};
}

Element el_inv(const GroupCtx& ctx, const Element& g) {
  check_member(ctx, g);
  // (b1^x b2^y a^z)^-1 = a^-z b2^-y b1^-x, and b_i^-k = b_i^(p^n_i - k) a^-w_i.
  const Element az{0, 0, mod(-g.z, ctx.pm())};
  const Element by = g.y == 0 ? Element{} : Element{0, ctx.pn2() - g.y, mod(-ctx.w2(), ctx.pm())};
  const Element bx = g.x == 0 ? Element{} : Element{ctx.pn1() - g.x, 0, mod(-ctx.w1(), ctx.pm())};
  return el_mul(ctx, el_mul(ctx, az, by), bx);
}

Element el_pow(const GroupCtx& ctx, const Element& g, i64 k) {
  Element base = k < 0 ? el_inv(ctx, g) : g;
  check_member(ctx, base);
  if (k < 0) k = -k;
  Element acc = ctx.identity();
  while (k > 0) {
    if (k & 1) acc = el_mul(ctx, acc, base);
    k >>= 1;
    if (k > 0) base = el_mul(ctx, base, base);
  }
  return acc;
}

i64 el_order(const GroupCtx& ctx, const Element& g) {
  check_member(ctx, g);
  i64 order = 1;
  Element h = g;
  while (h != ctx.identity()) {
    h = el_pow(ctx, h, ctx.p());
    order *= ctx.p();
  }
  return order;
}

Element el_conj(const GroupCtx& ctx, const Element& g, const Element& h) {
  return el_mul(ctx, el_mul(ctx, el_inv(ctx, h), g), h);
}

Element el_comm(const GroupCtx& ctx, const Element& g, const Element& h) {
  // g^-1 h^-1 g h = (hg)^-1 (gh)
  return el_mul(ctx, el_inv(ctx, el_mul(ctx, h, g)), el_mul(ctx, g, h));
}

Residue r_of(const GroupCtx& ctx, const Element& g) {
  check_member(ctx, g);
  return Residue(mulmod(ctx.r1_pow(g.x), ctx.r2_pow(g.y), ctx.pm()), ctx.pm());
}

i64 o_of(const GroupCtx& ctx, const Element& g) {
  const Residue r = r_of(ctx, g);
  return ctx.m() - vp_capped(mod(r.value() - 1, ctx.pm()), ctx.p(), static_cast<int>(ctx.m()));
}

std::vector<Element> enumerate_elements(const GroupCtx& ctx, i64 cap) {
  if (ctx.log_order() > 62 || ctx.order() > cap) {
    throw CapExceeded("group of order p^" + std::to_string(ctx.log_order()) +
                      " exceeds cap " + std::to_string(cap));
  }
  std::vector<Element> out;
  out.reserve(static_cast<size_t>(ctx.order()));
  for (i64 x = 0; x < ctx.pn1(); ++x)
    for (i64 y = 0; y < ctx.pn2(); ++y)
      for (i64 z = 0; z < ctx.pm(); ++z) out.push_back({x, y, z});
  return out;
}

std::vector<ParamVector> enumerate_vectors(i64 p, i64 max_order) {
  std::vector<ParamVector> out;
  if (!(p > 2 && is_prime(p))) return out;
  int max_log = 0;
  for (i64 q = p; q <= max_order; q *= p) ++max_log;
  for (i64 total = 3; total <= max_log; ++total) {
    for (i64 m = 1; m <= total - 2; ++m) {
      for (i64 n2 = 1; m + n2 < total; ++n2) {
        const i64 n1 = total - m - n2;
        if (n1 < n2 || n1 < m) continue;
        for (i64 o1 = 0; o1 < m; ++o1)
          for (i64 o2 = 0; o2 < m; ++o2)
            for (i64 o1p = 0; o1p <= m - o1; ++o1p)
              for (i64 o2p = 0; o2p <= m - o2; ++o2p) {
                ParamVector v{p, m, n1, n2, o1, o2, o1p, o2p, 1, 1};
                const i64 a1 = bound_exponent_a1(v), a2 = bound_exponent_a2(v);
                if (a1 < 0 || a2 < 0) continue;
                const i64 u1_max = ipow(p, static_cast<int>(a1));
                const i64 u2_max = 2 * ipow(p, static_cast<int>(a2));
                for (i64 u1 = 1; u1 <= u1_max; ++u1)
                  for (i64 u2 = 1; u2 <= u2_max; ++u2) {
                    v.u1 = u1;
                    v.u2 = u2;
                    if (validate_params(v).valid) out.push_back(v);
                  }
              }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cyclicp
