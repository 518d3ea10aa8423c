#include "cyclicp/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "cyclicp/errors.hpp"

namespace cyclicp {

namespace {

using nlohmann::json;

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

json element_json(const Element& g) { return json::array({g.x, g.y, g.z}); }

json raw_json(const RawPresentation& r) {
  return {{"p", r.p}, {"m", r.m}, {"n1", r.n1}, {"n2", r.n2},
          {"r1", r.r1}, {"r2", r.r2}, {"w1", r.w1}, {"w2", r.w2}};
}

json head_json(const ParamVector& v) {
  const auto h = v.head();
  return json(std::vector<i64>(h.begin(), h.end()));
}

std::vector<ParamVector> collect_vectors(const std::vector<std::string>& inline_vectors,
                                         const std::string& file) {
  std::vector<ParamVector> out;
  for (const std::string& s : inline_vectors) out.push_back(parse_vector(s));
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw InputError("cannot read " + file);
    std::string line;
    while (std::getline(in, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      out.push_back(parse_vector(line));
    }
  }
  return out;
}

std::vector<ParamVector> expect_vectors(const std::vector<std::string>& inline_vectors,
                                        const std::string& file, std::size_t n) {
  auto vs = collect_vectors(inline_vectors, file);
  if (vs.size() != n) {
    throw InputError("expected " + std::to_string(n) + " vector(s), got " + std::to_string(vs.size()));
  }
  return vs;
}

json validity_json(const ParamVector& v, const ValidityReport& rep) {
  return {{"vector", vector_json(v)}, {"valid", rep.valid}, {"violated", rep.violated}};
}

json delta_json(const DeltaPresentation& d, const DeltaCheck& chk) {
  json j{{"case", to_string(d.kind)},
         {"relators",
          {{"comm", d.c}, {"x_exp", d.x_exp}, {"x_rhs", d.x_rhs}, {"y_exp", d.y_exp},
           {"y_rhs", d.y_rhs}, {"z_exp", d.m}}},
         {"images", {{"x", element_json(d.x1)}, {"y", element_json(d.y1)}, {"z", element_json(d.z1)}}},
         {"log_order", d.log_order()},
         {"verified", chk.pass()},
         {"failure", chk.failure}};
  if (d.kind != DeltaCase::o1_zero && d.kind != DeltaCase::o2_zero) j["s"] = d.s;
  if (d.e) j["e"] = *d.e;
  return j;
}

json quotient_chain(const GroupPtr& g, const ParamVector& v, const Caps& caps) {
  json chain = json::array();
  GroupPtr cur = g;
  std::optional<ParamVector> known = v;
  chain.push_back({{"level", 0}, {"raw", raw_json(cur->raw())}, {"vector", vector_json(v)}});
  for (int level = 1; cur->m() > 1; ++level) {
    json entry{{"level", level}};
    std::optional<ParamVector> predicted;
    if (known) predicted = quotient_params(*known);
    cur = socle_quotient(*cur);
    entry["raw"] = raw_json(cur->raw());
    entry["predicted_head"] = predicted ? head_json(*predicted) : json(nullptr);
    known.reset();
    if (cur->order() <= caps.basis) {
      known = extract_inv(cur, caps.basis);
      entry["extracted"] = vector_json(*known);
      // The u entries of a quotient come from extraction only.
      entry["u_source"] = "extraction";
    } else {
      entry["extracted"] = nullptr;
    }
    chain.push_back(entry);
  }
  return chain;
}

json base_report(const char* command, const RunConfig& cfg) {
  return {{"command", command}, {"version", kToolVersion}, {"config", to_json(cfg)}};
}

int cmd_validate(const ParamVector& v, const RunConfig& cfg, std::ostream& out) {
  const ValidityReport rep = validate_params(v);
  json j = base_report("validate", cfg);
  j.update(validity_json(v, rep));
  out << j.dump() << "\n";
  return rep.valid ? kExitOk : kExitNegative;
}

int cmd_describe(const ParamVector& v, const RunConfig& cfg, std::ostream& out) {
  const ValidityReport rep = validate_params(v);
  if (!rep.valid) {
    json j = base_report("describe", cfg);
    j.update(validity_json(v, rep));
    out << j.dump() << "\n";
    return kExitNegative;
  }
  auto g = make_group(v);
  if (g->order() > cfg.caps.group) {
    throw CapExceeded("|G| = " + std::to_string(g->order()) + " exceeds the group cap");
  }
  const DerivedParams d = derive_params(v);
  json j = base_report("describe", cfg);
  j["vector"] = vector_json(v);
  j["order"] = g->order();
  j["derived"] = {{"r1", d.r1.value()}, {"r2", d.r2.value()}, {"a1", d.a1},       {"a2", d.a2},
                  {"t", d.t},           {"delta1", d.delta1}, {"delta2", d.delta2}, {"s", d.s_shift}};
  j["big_o"] = big_O_closed(v);
  j["big_o_search"] = g->order() <= cfg.caps.basis ? json(big_O(g, cfg.caps.basis)) : json(nullptr);
  j["type_invariants"] = type_invariants(v);
  j["metacyclic"] = std::max(v.o1p, v.o2p) == v.m;
  const DeltaPresentation delta = centralizer_presentation(*g);
  j["centralizer_presentation"] = delta_json(delta, verify_delta(g, delta, cfg.caps.group));
  j["quotient_chain"] = quotient_chain(g, v, cfg.caps);
  j["fingerprint"] = to_json(fingerprint(g, cfg.caps));
  out << j.dump() << "\n";
  return kExitOk;
}

int cmd_enumerate(i64 p, i64 max_order, const RunConfig& cfg, std::ostream& out) {
  if (p <= 2 || !is_prime(p)) throw InputError("--p must be an odd prime");
  if (max_order < 1) throw InputError("--max-order must be positive");
  const auto vs = enumerate_vectors(p, max_order);
  for (const auto& v : vs) out << json{{"vector", vector_json(v)}}.dump() << "\n";
  json j = base_report("enumerate", cfg);
  j["p"] = p;
  j["max_order"] = max_order;
  j["count"] = vs.size();
  out << j.dump() << "\n";
  return kExitOk;
}

int cmd_verify(i64 p, i64 max_order, const std::vector<std::string>& suites, bool inject_fault,
               const RunConfig& cfg, std::ostream& out) {
  if (p <= 2 || !is_prime(p)) throw InputError("--p must be an odd prime");
  if (max_order < 1) throw InputError("--max-order must be positive");
  for (const auto& s : suites) {
    if (std::find(kSuiteNames.begin(), kSuiteNames.end(), s) == kSuiteNames.end()) {
      throw InputError("unknown suite " + s);
    }
  }
  SuiteConfig sc;
  sc.caps = cfg.caps;
  sc.collector_samples = cfg.collector_samples;
  sc.identity_samples = cfg.identity_samples;
  sc.seed = cfg.seed;
  sc.jobs = cfg.jobs;
  sc.inject_fault = inject_fault;
  const auto vs = enumerate_vectors(p, max_order);
  bool pass = true;
  json failures = json::array();
  for (const auto& s : kSuiteNames) {
    if (std::find(suites.begin(), suites.end(), s) == suites.end()) continue;
    for (const CheckResult& r : run_suite(s, p, vs, sc)) {
      out << json{{"suite", r.suite}, {"check", r.name},     {"checks", r.checks},
                  {"skipped", r.skipped}, {"pass", r.pass}, {"locus", r.locus}}
                 .dump()
          << "\n";
      if (!r.pass) {
        pass = false;
        failures.push_back({{"suite", r.suite}, {"check", r.name}, {"locus", r.locus}});
      }
    }
  }
  json j = base_report("verify", cfg);
  j["p"] = p;
  j["max_order"] = max_order;
  j["groups"] = vs.size();
  j["suites"] = suites;
  j["pass"] = pass;
  j["failures"] = failures;
  out << j.dump() << "\n";
  return pass ? kExitOk : kExitNegative;
}

int cmd_compare(const ParamVector& a, const ParamVector& b, const RunConfig& cfg, std::ostream& out) {
  json j = base_report("compare", cfg);
  j["a"] = vector_json(a);
  j["b"] = vector_json(b);
  for (const auto* v : {&a, &b}) {
    const ValidityReport rep = validate_params(*v);
    if (!rep.valid) {
      j["invalid"] = validity_json(*v, rep);
      out << j.dump() << "\n";
      return kExitNegative;
    }
  }
  for (const auto* v : {&a, &b}) {
    if (make_group(*v)->order() > cfg.caps.group) {
      throw CapExceeded(to_string(*v) + " exceeds the group cap");
    }
  }
  const Fingerprint fa = fingerprint(make_group(a), cfg.caps);
  const Fingerprint fb = fingerprint(make_group(b), cfg.caps);
  const auto diff = first_difference(fa, fb);
  j["first_difference"] = diff ? json(*diff) : json(nullptr);
  if (a == b) {
    j["verdict"] = "identical";
  } else if (!diff) {
    j["verdict"] = "indistinguishable by computed invariants";
  } else {
    j["verdict"] = "distinguished";
  }
  out << j.dump() << "\n";
  return kExitOk;
}

void emit_error(std::ostream& err, int code, const std::string& msg) {
  err << json{{"error", msg}, {"exit", code}}.dump() << "\n";
}

}  // namespace

nlohmann::json to_json(const RunConfig& cfg) {
  return {{"group_cap", cfg.caps.group},
          {"algebra_cap", cfg.caps.algebra},
          {"basis_cap", cfg.caps.basis},
          {"collector_samples", cfg.collector_samples},
          {"identity_samples", cfg.identity_samples},
          {"seed", cfg.seed},
          {"jobs", cfg.jobs}};
}

ParamVector parse_vector(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  std::array<i64, 10> f{};
  static const std::array<const char*, 10> keys = {"p",  "m",   "n1",  "n2", "o1",
                                                   "o2", "o1p", "o2p", "u1", "u2"};
  auto as_int = [](const json& x) {
    if (!x.is_number_integer()) throw InputError("vector entries must be integers");
    return x.get<i64>();
  };
  if (j.is_array()) {
    if (j.size() != 10) throw InputError("vector arrays need 10 entries");
    for (std::size_t i = 0; i < 10; ++i) f[i] = as_int(j[i]);
  } else if (j.is_object()) {
    for (std::size_t i = 0; i < 10; ++i) {
      if (!j.contains(keys[i])) throw InputError(std::string("missing key ") + keys[i]);
      f[i] = as_int(j[keys[i]]);
    }
    if (j.size() != 10) throw InputError("unexpected keys in vector object");
  } else {
    throw InputError("a vector is a JSON array or object");
  }
  return {f[0], f[1], f[2], f[3], f[4], f[5], f[6], f[7], f[8], f[9]};
}

nlohmann::json vector_json(const ParamVector& v) {
  const auto t = v.tuple();
  return json(std::vector<i64>(t.begin(), t.end()));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite 2-generated p-groups with cyclic commutator subgroup"};
  app.name(args.empty() ? "cyclicp" : args[0]);
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);

  RunConfig cfg;
  app.add_option("--group-cap", cfg.caps.group, "Largest group handled by brute force")
      ->check(CLI::PositiveNumber);
  app.add_option("--algebra-cap", cfg.caps.algebra, "Largest group algebra built")
      ->check(CLI::PositiveNumber);
  app.add_option("--basis-cap", cfg.caps.basis, "Largest group searched for bases")
      ->check(CLI::PositiveNumber);
  app.add_option("--collector-samples", cfg.collector_samples, "Random pairs per group")
      ->check(CLI::PositiveNumber);
  app.add_option("--identity-samples", cfg.identity_samples, "Random identity checks per group")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "Write output here instead of stdout");

  std::vector<std::string> vectors;
  std::string file;
  auto add_inputs = [&](CLI::App* sub) {
    sub->add_option("--vector", vectors, "Parameter vector as JSON")->allow_extra_args(false);
    sub->add_option("--file", file, "File with one JSON vector per line");
  };
  i64 p = 0, max_order = 0;
  std::vector<std::string> suites = kSuiteNames;
  bool inject_fault = false;

  CLI::App* validate = app.add_subcommand("validate", "Check a vector against the conditions");
  add_inputs(validate);
  CLI::App* describe = app.add_subcommand("describe", "Full invariant report of one group");
  add_inputs(describe);
  CLI::App* enumerate = app.add_subcommand("enumerate", "List all valid vectors up to an order");
  enumerate->add_option("--p", p, "Odd prime")->required();
  enumerate->add_option("--max-order", max_order, "Largest group order")->required();
  CLI::App* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("--p", p, "Odd prime")->required();
  verify->add_option("--max-order", max_order, "Largest group order")->required();
  verify->add_option("--suites", suites, "Comma-separated subset of the suites")->delimiter(',');
  verify->add_flag("--inject-fault", inject_fault)->group("");
  CLI::App* compare = app.add_subcommand("compare", "Compare the fingerprints of two groups");
  add_inputs(compare);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    emit_error(err, kExitInput, e.what());
    return kExitInput;
  }

  std::ofstream file_out;
  if (!cfg.out.empty()) {
    file_out.open(cfg.out);
    if (!file_out) {
      emit_error(err, kExitInput, "cannot write " + cfg.out);
      return kExitInput;
    }
  }
  std::ostream& o = cfg.out.empty() ? out : file_out;

  try {
    if (*validate) return cmd_validate(expect_vectors(vectors, file, 1)[0], cfg, o);
    if (*describe) return cmd_describe(expect_vectors(vectors, file, 1)[0], cfg, o);
    if (*enumerate) return cmd_enumerate(p, max_order, cfg, o);
    if (*verify) return cmd_verify(p, max_order, suites, inject_fault, cfg, o);
    if (*compare) {
      const auto vs = expect_vectors(vectors, file, 2);
      return cmd_compare(vs[0], vs[1], cfg, o);
    }
  } catch (const InputError& e) {
    emit_error(err, kExitInput, e.what());
    return kExitInput;
  } catch (const CapExceeded& e) {
    emit_error(err, kExitCap, e.what());
    return kExitCap;
  } catch (const std::overflow_error& e) {
    emit_error(err, kExitCap, e.what());
    return kExitCap;
  } catch (const std::invalid_argument& e) {
    emit_error(err, kExitInput, e.what());
    return kExitInput;
  }
  emit_error(err, kExitInput, "no command");
  return kExitInput;
}

}  // namespace cyclicp
