#include "cyclicp/oracle.hpp"

#include <random>
#include <sstream>

#include "cyclicp/errors.hpp"

namespace cyclicp {

namespace {

// Works directly from the raw presentation data; deliberately does not call
// el_mul or any of the closed-form sums.
class Collector {
 public:
  explicit Collector(const GroupCtx& ctx) : raw_(ctx.raw()), order_(ctx.order()) {
    pm_ = pn1_ = pn2_ = 1;
    for (i64 i = 0; i < raw_.m; ++i) pm_ *= raw_.p;
    for (i64 i = 0; i < raw_.n1; ++i) pn1_ *= raw_.p;
    for (i64 i = 0; i < raw_.n2; ++i) pn2_ *= raw_.p;
    r1_ = reduce(raw_.r1);
    r2_ = reduce(raw_.r2);
    w1_ = reduce(raw_.w1);
    w2_ = reduce(raw_.w2);
  }

  Element run(const Word& w, Strategy strategy) const {
    Element st{0, 0, 0};
    if (strategy == Strategy::left_to_right) {
      for (const Letter& l : w) {
        const i64 k = reduce_exp(l.exp);
        for (i64 i = 0; i < k; ++i) append(st, l.gen);
      }
    } else {
      for (auto it = w.rbegin(); it != w.rend(); ++it) {
        const i64 k = reduce_exp(it->exp);
        for (i64 i = 0; i < k; ++i) prepend(st, it->gen);
      }
    }
    return st;
  }

 private:
  i64 reduce(i64 v) const {
    v %= pm_;
    return v < 0 ? v + pm_ : v;
  }
  // g^|G| = 1 for every g.
  i64 reduce_exp(i64 e) const {
    e %= order_;
    return e < 0 ? e + order_ : e;
  }
  i64 times(i64 u, i64 v) const { return static_cast<i64>(static_cast<i128>(u) * v % pm_); }

  // a^c b2^k = b2^k a^(c r2^k), one b2 at a time.
  i64 past_b2(i64 c, i64 k) const {
    for (i64 i = 0; i < k; ++i) c = times(c, r2_);
    return c;
  }

  // (b1^x b2^y a^z) * letter
  void append(Element& st, Gen gen) const {
    switch (gen) {
      case Gen::a:
        st.z = reduce(st.z + 1);
        return;
      case Gen::b2:
        st.z = times(st.z, r2_);
        if (++st.y == pn2_) {
          st.y = 0;
          st.z = reduce(st.z + w2_);
        }
        return;
      case Gen::b1: {
        const i64 tail = times(st.z, r1_);
        // b2^y b1 = b1 (b2 a)^y; collect (b2 a)^y factor by factor.
        i64 c = 0;
        for (i64 j = 0; j < st.y; ++j) c = reduce(times(c, r2_) + 1);
        st.z = reduce(c + tail);
        if (++st.x == pn1_) {
          st.x = 0;
          st.z = reduce(st.z + past_b2(w1_, st.y));
        }
        return;
      }
    }
  }

  // letter * (b1^x b2^y a^z)
  void prepend(Element& st, Gen gen) const {
    switch (gen) {
      case Gen::a: {
        i64 c = 1;
        for (i64 i = 0; i < st.x; ++i) c = times(c, r1_);
        st.z = reduce(st.z + past_b2(c, st.y));
        return;
      }
      case Gen::b2: {
        // b2 a^c b1 = b2 b1 a^(c r1) = b1 b2 a^(1 + c r1)
        i64 c = 0;
        for (i64 i = 0; i < st.x; ++i) c = reduce(1 + times(c, r1_));
        st.z = reduce(st.z + past_b2(c, st.y));
        if (++st.y == pn2_) {
          st.y = 0;
          st.z = reduce(st.z + w2_);
        }
        return;
      }
      case Gen::b1:
        if (++st.x == pn1_) {
          st.x = 0;
          st.z = reduce(st.z + past_b2(w1_, st.y));
        }
        return;
    }
  }

  RawPresentation raw_;
  i64 order_;
  i64 pm_, pn1_, pn2_;
  i64 r1_, r2_, w1_, w2_;
};

std::string describe(const Word& w) {
  std::ostringstream os;
  for (const Letter& l : w) {
    os << (l.gen == Gen::b1 ? "b1" : l.gen == Gen::b2 ? "b2" : "a") << '^' << l.exp << ' ';
  }
  return os.str();
}

class Sampler {
 public:
  Sampler(const GroupCtx& ctx, std::uint64_t seed) : ctx_(ctx), rng_(seed) {}
  Element element() {
    return ctx_.element_at(static_cast<i64>(rng_() % static_cast<std::uint64_t>(ctx_.order())));
  }
  i64 below(i64 n) { return static_cast<i64>(rng_() % static_cast<std::uint64_t>(n)); }
  std::mt19937_64& rng() { return rng_; }

 private:
  const GroupCtx& ctx_;
  std::mt19937_64 rng_;
};

// Runs `body` on every element (exhaustive) or on `samples` random ones.
template <class F>
void for_elements(const GroupCtx& ctx, const OracleOptions& opt, Sampler& s, F&& body) {
  if (ctx.order() <= opt.exhaustive_order) {
    for (i64 i = 0; i < ctx.order(); ++i) body(ctx.element_at(i));
  } else {
    for (i64 i = 0; i < opt.samples; ++i) body(s.element());
  }
}

template <class F>
void for_pairs(const GroupCtx& ctx, const OracleOptions& opt, Sampler& s, F&& body) {
  if (ctx.order() <= opt.exhaustive_order) {
    for (i64 i = 0; i < ctx.order(); ++i)
      for (i64 j = 0; j < ctx.order(); ++j) body(ctx.element_at(i), ctx.element_at(j));
  } else {
    for (i64 i = 0; i < opt.samples; ++i) {
      const Element g = s.element();
      body(g, s.element());
    }
  }
}

void record(IdentityCheck& c, bool ok, const std::string& what) {
  ++c.checks;
  if (!ok && c.pass) {
    c.pass = false;
    c.counterexample = what;
  }
}

Element a_power(const GroupCtx& ctx, i64 e) { return {0, 0, mod(e, ctx.pm())}; }

}  // namespace

Element collect(const GroupCtx& ctx, const Word& w, Strategy strategy, i64 cap) {
  if (w.size() > kMaxWordLength) {
    throw CapExceeded("word of " + std::to_string(w.size()) + " syllables exceeds " +
                      std::to_string(kMaxWordLength));
  }
  if (ctx.log_order() > 40 || ctx.order() > cap) {
    throw CapExceeded("collector cap " + std::to_string(cap) + " exceeded");
  }
  return Collector(ctx).run(w, strategy);
}

Word word_of(const Element& g) { return {{Gen::b1, g.x}, {Gen::b2, g.y}, {Gen::a, g.z}}; }

Word operator+(Word lhs, const Word& rhs) {
  lhs.insert(lhs.end(), rhs.begin(), rhs.end());
  return lhs;
}

std::vector<IdentityCheck> verify_closed_forms(const GroupCtx& ctx, const OracleOptions& opt) {
  const i64 p = ctx.p(), pm = ctx.pm();
  const i64 r1 = ctx.r1(), r2 = ctx.r2();
  Sampler s(ctx, opt.seed);
  IdentityCheck exp_c{"Exp"}, comma{"Comma"}, commb1{"Commb1"}, commb2{"Commb2"};
  IdentityCheck conj_r{"conj-r"}, dconj{"double-conj"};

  for_elements(ctx, opt, s, [&](const Element& g) {
    const i64 order = el_order(ctx, g);
    const i64 rx = powmod(r1, g.x, pm), ry = powmod(r2, g.y, pm);
    for (i64 q = 1; q <= order; q *= p) {
      const i64 e_a = mod(geom_sum(r1, g.x, pm).value() * geom_sum(r2, g.y, pm).value() % pm *
                                  double_sum(rx, ry, q, pm).value() +
                              g.z * geom_sum(mulmod(rx, ry, pm), q, pm).value(),
                          pm);
      const Word rhs{{Gen::b1, g.x * q}, {Gen::b2, g.y * q}, {Gen::a, e_a}};
      record(exp_c, el_pow(ctx, g, q) == collect(ctx, rhs),
             to_string(g) + "^" + std::to_string(q));
    }
    const i64 e_lo = ctx.order() <= opt.exhaustive_order ? 0 : s.below(pm);
    const i64 e_hi = ctx.order() <= opt.exhaustive_order ? pm : e_lo + 1;
    for (i64 e = e_lo; e < e_hi; ++e) {
      record(comma,
             el_comm(ctx, a_power(ctx, e), g) == a_power(ctx, e * (mulmod(rx, ry, pm) - 1)),
             "a^" + std::to_string(e) + ", " + to_string(g));
    }
    record(commb1,
           el_comm(ctx, g, ctx.b1()) ==
               a_power(ctx, geom_sum(r2, g.y, pm).value() + g.z * (r1 - 1)),
           to_string(g));
    record(commb2,
           el_comm(ctx, g, ctx.b2()) ==
               a_power(ctx, -geom_sum(r1, g.x, pm).value() * ry % pm + g.z * (r2 - 1)),
           to_string(g));
  });

  const std::vector<i64> exps{0, 1, 2, p, p + 1, p * p, 2 * p * p + 1};
  const bool exhaustive = ctx.order() <= opt.exhaustive_order;

  // conj-r: (hg)^n = h^n g^S(r, n) whenever g^h = g^r.
  std::vector<i64> pos(static_cast<size_t>(ctx.order()), -1);
  auto check_conj = [&](const Element& h, const Element& g, i64 r, i64 gorder) {
    for (i64 n : exps) {
      const Element lhs = el_pow(ctx, el_mul(ctx, h, g), n);
      const Element rhs =
          el_mul(ctx, el_pow(ctx, h, n), el_pow(ctx, g, geom_sum(r, n, gorder).value()));
      record(conj_r, lhs == rhs,
             "h=" + to_string(h) + " g=" + to_string(g) + " n=" + std::to_string(n));
    }
  };
  auto with_powers = [&](const Element& g, auto&& body) {
    std::vector<Element> pw{ctx.identity()};
    for (Element cur = g; cur != ctx.identity(); cur = el_mul(ctx, cur, g)) pw.push_back(cur);
    for (size_t k = 0; k < pw.size(); ++k) pos[ctx.index(pw[k])] = static_cast<i64>(k);
    body(static_cast<i64>(pw.size()));
    for (const Element& x : pw) pos[ctx.index(x)] = -1;
  };
  if (exhaustive) {
    for (i64 i = 0; i < ctx.order(); ++i) {
      const Element g = ctx.element_at(i);
      with_powers(g, [&](i64 gorder) {
        for (i64 j = 0; j < ctx.order(); ++j) {
          const Element h = ctx.element_at(j);
          const i64 r = pos[ctx.index(el_conj(ctx, g, h))];
          if (r >= 0) check_conj(h, g, r, gorder);
        }
      });
    }
  } else {
    for (i64 i = 0; i < opt.samples / static_cast<i64>(exps.size()) + 1; ++i) {
      Element g = s.element();
      const Element h = s.element();
      // Fall back to g in G', which h always normalizes.
      bool normal = false;
      with_powers(g, [&](i64) { normal = pos[ctx.index(el_conj(ctx, g, h))] >= 0; });
      if (!normal) g = a_power(ctx, s.below(pm));
      with_powers(g, [&](i64 gorder) { check_conj(h, g, pos[ctx.index(el_conj(ctx, g, h))], gorder); });
    }
  }

  // double-conj: with c = [h, g], a^g = a^r and a^h = a^s give (gh)^n = g^n h^n c^T(r, s, n).
  auto check_dconj = [&](const Element& g, const Element& h, i64 n) {
    const Element c = el_comm(ctx, h, g);
    const i64 r = r_of(ctx, g).value(), t = r_of(ctx, h).value();
    const Element lhs = el_pow(ctx, el_mul(ctx, g, h), n);
    const Element rhs = el_mul(ctx, el_mul(ctx, el_pow(ctx, g, n), el_pow(ctx, h, n)),
                               el_pow(ctx, c, double_sum(r, t, n, pm).value()));
    record(dconj, lhs == rhs,
           "g=" + to_string(g) + " h=" + to_string(h) + " n=" + std::to_string(n));
  };
  if (exhaustive) {
    for_pairs(ctx, opt, s, [&](const Element& g, const Element& h) {
      for (i64 n : {i64{1}, i64{2}, p, p * p + 1}) check_dconj(g, h, n);
    });
  } else {
    for (i64 i = 0; i < opt.samples; ++i) {
      const Element g = s.element();
      check_dconj(g, s.element(), exps[static_cast<size_t>(s.below(static_cast<i64>(exps.size())))]);
    }
  }
  return {exp_c, comma, commb1, commb2, conj_r, dconj};
}

std::vector<IdentityCheck> verify_collector(const GroupCtx& ctx, const OracleOptions& opt) {
  Sampler s(ctx, opt.seed);
  IdentityCheck pairs{"collect = el_mul on pairs"}, words{"collect = el_mul on words"},
      sweep{"left-to-right = right-to-left"};
  for_pairs(ctx, opt, s, [&](const Element& g, const Element& h) {
    record(pairs, collect(ctx, word_of(g) + word_of(h)) == el_mul(ctx, g, h),
           to_string(g) + " * " + to_string(h));
  });

  const i64 n_words = std::min<i64>(opt.samples, 2000);
  const i64 small = ctx.p() * ctx.p();
  for (i64 i = 0; i < n_words; ++i) {
    Word w;
    const i64 len = 1 + s.below(8);
    for (i64 k = 0; k < len; ++k) {
      const Gen gen = static_cast<Gen>(s.below(3));
      w.push_back({gen, s.below(2 * small + 1) - small});
    }
    Element folded = ctx.identity();
    for (const Letter& l : w) {
      const Element base = l.gen == Gen::b1 ? ctx.b1() : l.gen == Gen::b2 ? ctx.b2() : ctx.a();
      folded = el_mul(ctx, folded, el_pow(ctx, base, l.exp));
    }
    const Element ltr = collect(ctx, w, Strategy::left_to_right);
    record(words, ltr == folded, describe(w));
    // Right-to-left sweeps cost O(x) per letter; keep them to modest groups.
    if (ctx.order() <= 729 || i < 200) {
      record(sweep, ltr == collect(ctx, w, Strategy::right_to_left), describe(w));
    }
  }
  return {pairs, words, sweep};
}

}  // namespace cyclicp
