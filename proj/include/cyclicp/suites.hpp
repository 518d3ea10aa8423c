// Verification campaigns over enumerated parameter vectors, shared by the
// `verify` command and the acceptance driver.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cyclicp/invariants.hpp"

namespace cyclicp {

struct SuiteConfig {
  Caps caps;
  /// Groups up to this order get exhaustive element-pair checks.
  i64 exhaustive_order = 243;
  /// Random pairs per larger group for el_mul against the collector.
  i64 collector_samples = 100000;
  /// Random tuples per larger group for the closed-form identities.
  i64 identity_samples = 10000;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  /// Flip the commutator exponent of every centralizer presentation before
  /// verifying it; used to exercise failure reporting.
  bool inject_fault = false;
};

struct CheckResult {
  std::string suite;
  std::string name;
  i64 checks = 0;
  /// Groups left out because they exceed a cap.
  i64 skipped = 0;
  bool pass = true;
  std::string locus;  // first failure: vector and detail
};

inline const std::vector<std::string> kSuiteNames = {"arith",   "group",      "subgroups",
                                                     "algebra", "invariants", "oracle"};

/// Identities for v_p, S and T with every argument below p^4, and the
/// inverse of n -> S(r, n) mod p^k for k <= 4.
std::vector<CheckResult> suite_arith(i64 p);
/// Validity, relation consistency and element arithmetic of each group.
std::vector<CheckResult> suite_group(const std::vector<ParamVector>& vs, const SuiteConfig& cfg);
/// Center, centralizer of G', lower central series and exponents against
/// their closed forms.
std::vector<CheckResult> suite_subgroups(const std::vector<ParamVector>& vs, const SuiteConfig& cfg);
/// Dimension subgroups from the group algebra against the Jennings formula.
std::vector<CheckResult> suite_algebra(const std::vector<ParamVector>& vs, const SuiteConfig& cfg);
/// Extraction round trip, O(G), type invariants, quotient parameters,
/// centralizer presentations and fingerprint coincidence/separation.
std::vector<CheckResult> suite_invariants(const std::vector<ParamVector>& vs, const SuiteConfig& cfg);
/// el_mul against the collector and the closed-form identities.
std::vector<CheckResult> suite_oracle(const std::vector<ParamVector>& vs, const SuiteConfig& cfg);

/// Dispatch by name; throws std::invalid_argument for unknown suites.
std::vector<CheckResult> run_suite(const std::string& name, i64 p, const std::vector<ParamVector>& vs,
                                   const SuiteConfig& cfg);

/// Runs fn(0), ..., fn(n - 1) on up to `jobs` threads.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace cyclicp
