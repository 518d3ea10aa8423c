#include "cyclicp/suites.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include "cyclicp/errors.hpp"
#include "cyclicp/oracle.hpp"

namespace cyclicp {

namespace {

// Check results in first-seen order; merging keeps the earliest failure.
class Tally {
 public:
  explicit Tally(std::string suite) : suite_(std::move(suite)) {}

  void check(const std::string& name, bool ok, const std::string& locus, i64 count = 1) {
    CheckResult& r = slot(name);
    r.checks += count;
    if (!ok && r.pass) {
      r.pass = false;
      r.locus = locus;
    }
  }
  void skip(const std::string& name) { ++slot(name).skipped; }

  void merge(const Tally& o) {
    for (const CheckResult& r : o.results_) {
      CheckResult& mine = slot(r.name);
      mine.checks += r.checks;
      mine.skipped += r.skipped;
      if (!r.pass && mine.pass) {
        mine.pass = false;
        mine.locus = r.locus;
      }
    }
  }

  const std::vector<CheckResult>& results() const { return results_; }

 private:
  CheckResult& slot(const std::string& name) {
    auto it = std::find_if(results_.begin(), results_.end(),
                           [&](const CheckResult& r) { return r.name == name; });
    if (it != results_.end()) return *it;
    results_.push_back({suite_, name, 0, 0, true, ""});
    return results_.back();
  }

  std::string suite_;
  std::vector<CheckResult> results_;
};

// Runs body(v, tally) for each vector and merges in vector order. Cap
// overruns count as skips; any other exception is a failure.
template <class Body>
Tally per_vector(const std::string& suite, const std::vector<ParamVector>& vs, unsigned jobs,
                 Body body) {
  std::vector<Tally> slots(vs.size(), Tally(suite));
  parallel_for(vs.size(), jobs, [&](std::size_t i) {
    try {
      body(vs[i], slots[i]);
    } catch (const CapExceeded&) {
      slots[i].skip("cap");
    } catch (const std::exception& e) {
      slots[i].check("no_exception", false, to_string(vs[i]) + " " + e.what());
    }
  });
  Tally out(suite);
  for (const Tally& t : slots) out.merge(t);
  return out;
}

i64 pow_i(i64 p, i64 e) { return ipow(p, static_cast<int>(e)); }

Element a_power(const GroupCtx& c, i64 k) {
  return k >= c.m() ? c.identity() : el_pow(c, c.a(), pow_i(c.p(), k));
}

}  // namespace

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::vector<CheckResult> suite_arith(i64 p) {
  Tally t("arith");
  const i64 p4 = pow_i(p, 4);
  const int K = 12;
  const i64 pk = pow_i(p, K);
  auto loc = [](i64 s, i64 n, i64 extra = -1) {
    return "s=" + std::to_string(s) + " n=" + std::to_string(n) +
           (extra >= 0 ? " k=" + std::to_string(extra) : "");
  };
  for (i64 s = 1; s < p4; s += p) {
    const int a = s == 1 ? K : vp_capped(s - 1, p, K);
    for (i64 n = 1; n < p4; ++n) {
      const int vn = vp_capped(n, p, K);
      const int lhs = vp_capped(mod(powmod(s, n, pk) - 1, pk), p, K);
      t.check("valuation_of_power", lhs == std::min(K, a + vn), loc(s, n));
      t.check("valuation_of_geom_sum", vp_capped(geom_sum(s, n, pk).value(), p, K) == vn, loc(s, n));
      for (i64 k = 1; k <= 4; ++k) {
        const i64 q = pow_i(p, k);
        if (a >= k || n % pow_i(p, k - a) == 0) {
          t.check("geom_sum_congruence", geom_sum(s, n, q).value() == mod(n, q), loc(s, n, k));
        }
      }
    }
    for (i64 k = 1; k <= 4; ++k) {
      t.check("multiplicative_order", mult_order(s, pow_i(p, k)) == pow_i(p, std::max<i64>(0, k - a)),
              loc(s, 0, k));
    }
    for (i64 u = 1; u < p4; u += p) {
      for (i64 k = 1; k <= 4; ++k) {
        const i64 q = pow_i(p, k);
        t.check("double_sum_vanishes", double_sum(s, u, q, q).value() == 0,
                "s=" + std::to_string(s) + " t=" + std::to_string(u) + " k=" + std::to_string(k));
      }
    }
  }
  for (i64 k = 1; k <= 4; ++k) {
    const i64 q = pow_i(p, k);
    for (i64 r = 1; r < q; r += p) {
      std::vector<char> hit(static_cast<std::size_t>(q), 0);
      for (i64 x = 0; x < q; ++x) {
        const i64 y = geom_sum_invert(r, Residue(x, q));
        const bool ok = y >= 0 && y < q && geom_sum(r, y, q).value() == x && !hit[y];
        if (ok) hit[y] = 1;
        t.check("geom_sum_invert", ok,
                "r=" + std::to_string(r) + " x=" + std::to_string(x) + " k=" + std::to_string(k));
      }
    }
  }
  return t.results();
}

std::vector<CheckResult> suite_group(const std::vector<ParamVector>& vs, const SuiteConfig& cfg) {
  return per_vector("group", vs, cfg.jobs, [&](const ParamVector& v, Tally& t) {
    const std::string at = to_string(v);
    t.check("valid", validate_params(v).valid, at);
    auto g = make_group(v);
    const GroupCtx& c = *g;
    t.check("generator_orders",
            el_order(c, c.b1()) == pow_i(v.p, v.n1 + v.o1p) &&
                el_order(c, c.b2()) == pow_i(v.p, v.n2 + v.o2p) && el_order(c, c.a()) == c.pm(),
            at);
    const DerivedParams d = derive_params(v);
    t.check("conjugation", r_of(c, c.b1()) == d.r1 && r_of(c, c.b2()) == d.r2, at);
    t.check("commutator", el_comm(c, c.b2(), c.b1()) == c.a(), at);

    std::mt19937_64 rng(cfg.seed ^ static_cast<std::uint64_t>(c.order()));
    auto pick = [&] { return c.element_at(static_cast<i64>(rng() % static_cast<std::uint64_t>(c.order()))); };
    const i64 samples = std::min<i64>(cfg.identity_samples, 2000);
    for (i64 i = 0; i < samples; ++i) {
      const Element x = pick(), y = pick(), z = pick();
      const bool ok = el_mul(c, el_mul(c, x, y), z) == el_mul(c, x, el_mul(c, y, z));
      t.check("associativity", ok, at + " " + to_string(x) + to_string(y) + to_string(z));
      t.check("inverse", el_mul(c, x, el_inv(c, x)) == c.identity() &&
                             el_mul(c, el_inv(c, x), x) == c.identity(),
              at + " " + to_string(x));
    }
  }).results();
}

std::vector<CheckResult> suite_subgroups(const std::vector<ParamVector>& vs, const SuiteConfig& cfg) {
  return per_vector("subgroups", vs, cfg.jobs, [&](const ParamVector& v, Tally& t) {
    const std::string at = to_string(v);
    auto g = make_group(v);
    const GroupCtx& c = *g;
    const i64 cap = cfg.caps.group;
    const SubgroupSet whole = whole_group(g, cap);
    const SubgroupSet gp = gen_subgroup(g, {c.a()}, cap);
    t.check("derived_subgroup", derived_subgroup(whole) == gp, at);

    const SubgroupSet z = center_bf(g, cap);
    t.check("center", gen_subgroup(g, center_closed(c), cap) == z, at);

    const i64 mx = std::max(v.o1, v.o2);
    const i64 tt = v.m - mx;
    const SubgroupSet meet = intersect(z, gp);
    t.check("center_meet_derived", meet == gen_subgroup(g, {a_power(c, mx)}, cap), at);
    t.check("center_meet_order", meet.size() == pow_i(v.p, tt), at);
    const SubgroupSet zg = join(z, gp);
    t.check("center_quotient",
            abelian_invariants(whole, zg) == std::vector<i64>{c.pm(), pow_i(v.p, tt)}, at);

    const SubgroupSet cent = centralizer_comm_bf(g, cap);
    t.check("centralizer_closed", gen_subgroup(g, centralizer_comm_closed(c), cap) == cent, at);
    t.check("centralizer_omega", omega_rel(whole, zg, static_cast<int>(tt)) == cent, at);
    t.check("centralizer_preimage",
            power_preimage(whole, zg, static_cast<int>(tt)) == cent.elements(), at);
    t.check("centralizer_derived",
            derived_subgroup(cent) == mho(gp, static_cast<int>(v.m - tt)), at);

    t.check("exponent", exponent(whole) == pow_i(v.p, std::max(v.n1 + v.o1p, v.n2 + v.o2p)), at);
    const i64 cls = 1 + (v.m + tt - 1) / tt;
    t.check("nilpotency_class", nilpotency_class(whole) == cls, at);
    const auto lcs = lower_central_series(whole);
    for (std::size_t i = 2; i <= lcs.size(); ++i) {
      const SubgroupSet expect = gen_subgroup(g, {a_power(c, (static_cast<i64>(i) - 2) * tt)}, cap);
      t.check("lower_central", lcs[i - 1] == expect, at + " i=" + std::to_string(i));
    }
    if (v.o1 == 0) {
      t.check("centralizer_exponent", exponent(cent) == pow_i(v.p, v.n1 + v.o1p), at);
    }
    if (v.o2 == 0) {
      t.check("centralizer_exponent",
              exponent(cent) == pow_i(v.p, std::max(v.n1 + v.o1p - v.o1, v.n2 + v.o2p)), at);
    }
  }).results();
}

std::vector<CheckResult> suite_algebra(const std::vector<ParamVector>& vs, const SuiteConfig& cfg) {
  return per_vector("algebra", vs, cfg.jobs, [&](const ParamVector& v, Tally& t) {
    auto g = make_group(v);
    const AlgebraCtx actx(g, cfg.caps.algebra);
    const auto series = jennings_series(whole_group(g, cfg.caps.group));
    const auto powers = aug_ideal_powers(actx);
    // Past the last listed term both sides are trivial.
    const std::size_t len = std::max(series.size(), powers.size());
    for (std::size_t n = 1; n <= len; ++n) {
      const SubgroupSet& jn = series[std::min(n, series.size()) - 1];
      const SubgroupSet dn = dimension_subgroup(actx, powers[std::min(n, powers.size()) - 1]);
      t.check("dimension_subgroup", dn == jn, to_string(v) + " n=" + std::to_string(n));
    }
  }).results();
}

std::vector<CheckResult> suite_invariants(const std::vector<ParamVector>& vs, const SuiteConfig& cfg) {
  struct PerVector {
    std::optional<std::array<i64, 6>> relators;
    std::optional<std::string> fp;
  };
  std::vector<PerVector> extra(vs.size());
  std::vector<Tally> slots(vs.size(), Tally("invariants"));

  parallel_for(vs.size(), cfg.jobs, [&](std::size_t i) {
    const ParamVector& v = vs[i];
    Tally& t = slots[i];
    const std::string at = to_string(v);
    try {
      auto g = make_group(v);
      const i64 order = g->order();
      if (order <= cfg.caps.basis) {
        t.check("round_trip", extract_inv(g, cfg.caps.basis) == v, at);
        t.check("pruned_extraction", extract_inv_pruned(g, cfg.caps.basis) == v, at);
        t.check("big_O", big_O(g, cfg.caps.basis) == big_O_closed(v), at);
      } else {
        t.skip("round_trip");
      }
      if (order <= cfg.caps.group) {
        const auto e = type_invariants(v);
        t.check("type_invariants", e == type_invariants_def(g, cfg.caps.group), at);
        i64 sum = 0;
        for (i64 x : e) sum += x;
        t.check("type_sum", sum == v.m + v.n1 + v.n2, at);

        DeltaPresentation d = centralizer_presentation(*g);
        if (cfg.inject_fault) d.c += 1;
        const DeltaCheck dc = verify_delta(g, d, cfg.caps.group);
        t.check("delta", dc.pass(), at + " " + to_string(d.kind) + ": " + dc.failure);
        extra[i].relators = d.relator_exponents();
      } else {
        t.skip("delta");
      }
      if (v.m >= 2 && order / v.p <= cfg.caps.basis) {
        const ParamVector q = extract_inv(socle_quotient(*g), cfg.caps.basis);
        t.check("quotient_params", q.head() == quotient_params(v).head(),
                at + " extracted " + to_string(q));
      }
      if (order <= cfg.caps.basis) extra[i].fp = serialize(fingerprint(g, cfg.caps));
    } catch (const CapExceeded&) {
      t.skip("cap");
    } catch (const std::exception& e) {
      t.check("no_exception", false, at + " " + e.what());
    }
  });

  Tally out("invariants");
  for (const Tally& t : slots) out.merge(t);

  std::map<std::array<i64, 8>, std::size_t> first_of;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    auto [it, fresh] = first_of.emplace(vs[i].head(), i);
    if (fresh) continue;
    const std::size_t j = it->second;
    const std::string at = to_string(vs[j]) + " vs " + to_string(vs[i]);
    if (extra[i].relators && extra[j].relators) {
      out.check("delta_u_independence", *extra[i].relators == *extra[j].relators, at);
    }
    if (extra[i].fp && extra[j].fp) {
      out.check("fingerprint_coincidence", *extra[i].fp == *extra[j].fp, at);
    }
  }
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      const auto& a = vs[i];
      const auto& b = vs[j];
      if (std::array{a.o1, a.o2, a.o1p, a.o2p} == std::array{b.o1, b.o2, b.o1p, b.o2p}) continue;
      if (!extra[i].fp || !extra[j].fp) continue;
      out.check("fingerprint_separation", *extra[i].fp != *extra[j].fp,
                to_string(a) + " vs " + to_string(b));
    }
  }
  return out.results();
}

std::vector<CheckResult> suite_oracle(const std::vector<ParamVector>& vs, const SuiteConfig& cfg) {
  return per_vector("oracle", vs, cfg.jobs, [&](const ParamVector& v, Tally& t) {
    auto g = make_group(v);
    if (g->order() > cfg.caps.group) throw CapExceeded("group above cap");
    OracleOptions opt;
    opt.exhaustive_order = cfg.exhaustive_order;
    opt.seed = cfg.seed;
    opt.samples = cfg.collector_samples;
    for (const IdentityCheck& ic : verify_collector(*g, opt)) {
      t.check("collector:" + ic.name, ic.pass && ic.checks > 0,
              to_string(v) + " " + ic.counterexample, ic.checks);
    }
    opt.samples = cfg.identity_samples;
    for (const IdentityCheck& ic : verify_closed_forms(*g, opt)) {
      t.check("identity:" + ic.name, ic.pass && ic.checks > 0,
              to_string(v) + " " + ic.counterexample, ic.checks);
    }
  }).results();
}

std::vector<CheckResult> run_suite(const std::string& name, i64 p, const std::vector<ParamVector>& vs,
                                   const SuiteConfig& cfg) {
  if (name == "arith") return suite_arith(p);
  if (name == "group") return suite_group(vs, cfg);
  if (name == "subgroups") return suite_subgroups(vs, cfg);
  if (name == "algebra") return suite_algebra(vs, cfg);
  if (name == "invariants") return suite_invariants(vs, cfg);
  if (name == "oracle") return suite_oracle(vs, cfg);
  throw std::invalid_argument("unknown suite " + name);
}

}  // namespace cyclicp
