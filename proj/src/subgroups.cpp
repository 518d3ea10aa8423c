#include "cyclicp/subgroups.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "cyclicp/errors.hpp"

namespace cyclicp {

class SubgroupBuilder {
 public:
  SubgroupBuilder(GroupPtr ctx, i64 cap) : ctx_(std::move(ctx)) {
    if (ctx_->log_order() > 40 || ctx_->order() > cap) {
      throw CapExceeded("group of order p^" + std::to_string(ctx_->log_order()) +
                        " exceeds cap " + std::to_string(cap));
    }
    member_.assign(static_cast<size_t>(ctx_->order()), 0);
    member_[0] = 1;
    elems_.push_back(ctx_->identity());
  }

  bool contains(const Element& g) const { return member_[ctx_->index(g)] != 0; }
  size_t size() const { return elems_.size(); }

  // Adds g as a generator unless it is already in the subgroup.
  bool add(const Element& g) {
    if (contains(g)) return false;
    gens_.push_back(g);
    const GroupCtx& c = *ctx_;
    const size_t old_size = elems_.size();
    // Old elements already absorb the old generators.
    for (size_t i = 0; i < elems_.size(); ++i) {
      if (i < old_size) {
        push(el_mul(c, elems_[i], g));
      } else {
        const Element e = elems_[i];
        for (const Element& s : gens_) push(el_mul(c, e, s));
      }
    }
    return true;
  }

  SubgroupSet finish() && {
    SubgroupSet s;
    s.ctx_ = ctx_;
    std::sort(elems_.begin(), elems_.end());
    s.elements_ = std::move(elems_);
    s.gens_ = std::move(gens_);
    s.member_ = std::move(member_);
    return s;
  }

 private:
  void push(const Element& h) {
    auto& bit = member_[ctx_->index(h)];
    if (!bit) {
      bit = 1;
      elems_.push_back(h);
    }
  }

  GroupPtr ctx_;
  std::vector<Element> elems_, gens_;
  std::vector<std::uint8_t> member_;
};

namespace {

// The cap was already enforced when the ambient subgroup was built.
constexpr i64 kNoCap = i64{1} << 40;

SubgroupBuilder builder_like(const SubgroupSet& s) { return SubgroupBuilder(s.ctx_ptr(), kNoCap); }

Element pow_p(const GroupCtx& c, Element g, int n) {
  for (int i = 0; i < n && g != c.identity(); ++i) g = el_pow(c, g, c.p());
  return g;
}

void check_same_ctx(const SubgroupSet& s, const SubgroupSet& t) {
  if (s.ctx_ptr() != t.ctx_ptr()) throw ContextMismatch("subgroups of different contexts");
}

}  // namespace

int SubgroupSet::log_order() const {
  int k = 0;
  for (i64 n = size(); n > 1; n /= ctx_->p()) ++k;
  return k;
}

bool SubgroupSet::subset_of(const SubgroupSet& o) const {
  return std::all_of(elements_.begin(), elements_.end(),
                     [&](const Element& g) { return o.contains(g); });
}

SubgroupSet gen_subgroup(const GroupPtr& ctx, const std::vector<Element>& gens, i64 cap) {
  SubgroupBuilder b(ctx, cap);
  for (const Element& g : gens) {
    if (!ctx->in_range(g)) throw ContextMismatch("generator " + to_string(g) + " not in context");
    b.add(g);
  }
  return std::move(b).finish();
}

SubgroupSet whole_group(const GroupPtr& ctx, i64 cap) {
  return gen_subgroup(ctx, {ctx->b1(), ctx->b2()}, cap);
}

SubgroupSet trivial_subgroup(const GroupPtr& ctx, i64 cap) { return gen_subgroup(ctx, {}, cap); }

SubgroupSet join(const SubgroupSet& s, const SubgroupSet& t) {
  check_same_ctx(s, t);
  auto b = builder_like(s);
  for (const Element& g : s.generators()) b.add(g);
  for (const Element& g : t.generators()) b.add(g);
  return std::move(b).finish();
}

SubgroupSet intersect(const SubgroupSet& s, const SubgroupSet& t) {
  check_same_ctx(s, t);
  auto b = builder_like(s);
  const SubgroupSet& small = s.size() <= t.size() ? s : t;
  const SubgroupSet& big = s.size() <= t.size() ? t : s;
  for (const Element& g : small.elements()) {
    if (big.contains(g)) b.add(g);
  }
  return std::move(b).finish();
}

SubgroupSet normal_closure(const SubgroupSet& ambient, const std::vector<Element>& seeds) {
  const GroupCtx& c = ambient.ctx();
  auto b = builder_like(ambient);
  for (const Element& g : seeds) b.add(g);
  // Conjugates of generators by ambient generators; new generators get queued too.
  std::vector<Element> queue = seeds;
  for (size_t i = 0; i < queue.size(); ++i) {
    for (const Element& s : ambient.generators()) {
      const Element h = el_conj(c, queue[i], s);
      if (b.add(h)) queue.push_back(h);
    }
  }
  return std::move(b).finish();
}

bool is_normal(const SubgroupSet& n, const SubgroupSet& s) {
  check_same_ctx(n, s);
  if (!n.subset_of(s)) return false;
  const GroupCtx& c = n.ctx();
  for (const Element& x : n.generators()) {
    for (const Element& g : s.generators()) {
      if (!n.contains(el_conj(c, x, g))) return false;
    }
  }
  return true;
}

SubgroupSet commutator(const SubgroupSet& s, const SubgroupSet& t) {
  check_same_ctx(s, t);
  const GroupCtx& c = s.ctx();
  std::vector<Element> seeds;
  for (const Element& x : s.generators()) {
    for (const Element& y : t.generators()) seeds.push_back(el_comm(c, x, y));
  }
  return normal_closure(join(s, t), seeds);
}

SubgroupSet derived_subgroup(const SubgroupSet& s) { return commutator(s, s); }

SubgroupSet center_bf(const GroupPtr& ctx, i64 cap) {
  SubgroupBuilder b(ctx, cap);
  const GroupCtx& c = *ctx;
  for (const Element& g : enumerate_elements(c, cap)) {
    if (el_mul(c, g, c.b1()) == el_mul(c, c.b1(), g) &&
        el_mul(c, g, c.b2()) == el_mul(c, c.b2(), g)) {
      b.add(g);
    }
  }
  return std::move(b).finish();
}

namespace {

const ParamVector& require_canonical(const GroupCtx& c) {
  if (!c.canonical()) throw std::invalid_argument("closed form needs a canonical context");
  return *c.params();
}

}  // namespace

std::vector<Element> center_closed(const GroupCtx& c) {
  const ParamVector& v = require_canonical(c);
  const i64 pm = ipow(v.p, static_cast<int>(v.m));
  std::vector<Element> gens{el_pow(c, c.b1(), pm), el_pow(c, c.b2(), pm)};
  if (v.o1 == 0) {
    gens.push_back(el_mul(c, el_pow(c, c.b1(), ipow(v.p, static_cast<int>(v.m - v.o2))), c.a()));
  } else {
    const i64 delta1 = derive_params(v).delta1;
    const Element x = el_pow(c, c.b1(), -delta1 * ipow(v.p, static_cast<int>(v.m - v.o2)));
    const Element y = el_pow(c, c.b2(), delta1 * ipow(v.p, static_cast<int>(v.m - v.o1)));
    gens.push_back(el_mul(c, el_mul(c, x, y), c.a()));
  }
  return gens;
}

SubgroupSet centralizer_comm_bf(const GroupPtr& ctx, i64 cap) {
  SubgroupBuilder b(ctx, cap);
  const GroupCtx& c = *ctx;
  for (const Element& g : enumerate_elements(c, cap)) {
    if (el_comm(c, c.a(), g) == c.identity()) b.add(g);
  }
  return std::move(b).finish();
}

std::vector<Element> centralizer_comm_closed(const GroupCtx& c) {
  const ParamVector& v = require_canonical(c);
  if (v.o1 == 0) return {c.a(), c.b1(), el_pow(c, c.b2(), ipow(v.p, static_cast<int>(v.o2)))};
  return {c.a(), el_pow(c, c.b1(), ipow(v.p, static_cast<int>(v.o1))),
          el_mul(c, el_pow(c, c.b1(), ipow(v.p, static_cast<int>(v.o1 - v.o2))),
                 el_inv(c, c.b2()))};
}

std::vector<SubgroupSet> lower_central_series(const SubgroupSet& s) {
  std::vector<SubgroupSet> out{s};
  while (!out.back().trivial()) {
    SubgroupSet next = commutator(out.back(), s);
    if (next == out.back()) throw std::logic_error("lower central series stalls");
    out.push_back(std::move(next));
  }
  return out;
}

SubgroupSet lower_central(const SubgroupSet& s, int i) {
  if (i < 1) throw std::invalid_argument("lower_central: i must be >= 1");
  SubgroupSet cur = s;
  for (int k = 1; k < i && !cur.trivial(); ++k) cur = commutator(cur, s);
  return cur;
}

SubgroupSet lower_central(const GroupPtr& ctx, int i, i64 cap) {
  return lower_central(whole_group(ctx, cap), i);
}

int nilpotency_class(const SubgroupSet& s) {
  return static_cast<int>(lower_central_series(s).size()) - 1;
}

SubgroupSet omega(const SubgroupSet& s, int n) {
  const GroupCtx& c = s.ctx();
  auto b = builder_like(s);
  for (const Element& g : s.elements()) {
    if (pow_p(c, g, n) == c.identity()) b.add(g);
  }
  return std::move(b).finish();
}

SubgroupSet mho(const SubgroupSet& s, int n) {
  const GroupCtx& c = s.ctx();
  auto b = builder_like(s);
  for (const Element& g : s.elements()) b.add(pow_p(c, g, n));
  return std::move(b).finish();
}

std::vector<Element> power_preimage(const SubgroupSet& s, const SubgroupSet& n, int k) {
  check_same_ctx(s, n);
  const GroupCtx& c = s.ctx();
  std::vector<Element> out;
  for (const Element& g : s.elements()) {
    if (n.contains(pow_p(c, g, k))) out.push_back(g);
  }
  return out;
}

SubgroupSet omega_rel(const SubgroupSet& s, const SubgroupSet& n, int k) {
  if (!is_normal(n, s)) throw std::invalid_argument("omega_rel: N is not normal in S");
  auto b = builder_like(s);
  for (const Element& g : power_preimage(s, n, k)) b.add(g);
  return std::move(b).finish();
}

i64 exponent(const SubgroupSet& s) {
  i64 e = 1;
  for (const Element& g : s.elements()) e = std::max(e, el_order(s.ctx(), g));
  return e;
}

namespace {

SubgroupSet jennings_from(const SubgroupSet& s, const std::vector<SubgroupSet>& lcs, int n) {
  const i64 p = s.ctx().p();
  auto b = builder_like(s);
  // gamma_i for i = 1 .. class; mho_j is decreasing in j, so only the least
  // admissible j matters for each i.
  for (size_t idx = 0; idx + 1 < lcs.size(); ++idx) {
    const i64 i = static_cast<i64>(idx) + 1;
    int j = 0;
    for (i64 q = i; q < n; q *= p) ++j;
    const SubgroupSet powers = mho(lcs[idx], j);
    for (const Element& g : powers.generators()) b.add(g);
  }
  return std::move(b).finish();
}

}  // namespace

SubgroupSet jennings(const SubgroupSet& s, int n) {
  if (n < 1) throw std::invalid_argument("jennings: n must be >= 1");
  return jennings_from(s, lower_central_series(s), n);
}

std::vector<SubgroupSet> jennings_series(const SubgroupSet& s) {
  const auto lcs = lower_central_series(s);
  std::vector<SubgroupSet> out{s};
  for (int n = 2; !out.back().trivial(); ++n) out.push_back(jennings_from(s, lcs, n));
  return out;
}

GroupPtr socle_quotient(const GroupCtx& c) {
  if (c.m() < 2) throw InvalidParams("socle quotient needs m >= 2");
  RawPresentation raw = c.raw();
  raw.m -= 1;
  const i64 q = c.pm() / c.p();
  raw.r1 = mod(raw.r1, q);
  raw.r2 = mod(raw.r2, q);
  raw.w1 = mod(raw.w1, q);
  raw.w2 = mod(raw.w2, q);
  return make_group(raw);
}

Element socle_image(const GroupCtx& c, const Element& g) {
  return {g.x, g.y, mod(g.z, c.pm() / c.p())};
}

std::vector<i64> abelian_invariants(const SubgroupSet& s, const SubgroupSet& n) {
  if (!is_normal(n, s)) throw std::invalid_argument("abelian_invariants: N is not normal in S");
  const GroupCtx& c = s.ctx();
  for (const Element& x : s.generators()) {
    for (const Element& y : s.generators()) {
      if (!n.contains(el_comm(c, x, y))) {
        throw std::invalid_argument("abelian_invariants: S/N is not abelian");
      }
    }
  }
  const i64 p = c.p();
  const i64 quotient = s.size() / n.size();
  // counts[k] = |Omega_k(S/N)|; factors of order >= p^k number
  // log_p(counts[k] / counts[k-1]).
  std::vector<i64> counts{1};
  while (counts.back() < quotient) {
    const int k = static_cast<int>(counts.size());
    counts.push_back(static_cast<i64>(power_preimage(s, n, k).size()) / n.size());
  }
  std::vector<int> at_least;  // at_least[k-1] = #factors of order >= p^k
  for (size_t k = 1; k < counts.size(); ++k) {
    int d = 0;
    for (i64 r = counts[k] / counts[k - 1]; r > 1; r /= p) ++d;
    at_least.push_back(d);
  }
  std::vector<i64> out;
  for (size_t k = at_least.size(); k-- > 0;) {
    const int exact = at_least[k] - (k + 1 < at_least.size() ? at_least[k + 1] : 0);
    for (int i = 0; i < exact; ++i) out.push_back(ipow(p, static_cast<int>(k + 1)));
  }
  return out;
}

}  // namespace cyclicp
