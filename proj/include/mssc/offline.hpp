#pragma once

#include <optional>
#include <vector>

#include "mssc/core.hpp"

namespace mssc {

// Largest universe the exhaustive oracles accept.
inline constexpr int kMaxDynamicOracleN = 7;
inline constexpr int kMaxStaticOracleN = 8;

struct OfflineStep {
  std::optional<Element> moved;  // element brought to the front, if any
  Cost access = 0;
  Cost reorder = 0;
};

// Play of an offline list. perms[t] is the list after step t (perms[0] is the
// starting list). initial_reorder is paid before the first request and is
// zero except for constructed strategies that set up their list up front.
struct OfflineTrace {
  std::vector<Permutation> perms;
  std::vector<OfflineStep> steps;
  Cost initial_reorder = 0;

  Cost total() const;
  Cost total_access() const;
  Cost total_reorder() const;
};

struct OptResult {
  Cost cost = 0;
  std::vector<Permutation> perms;  // pi*_0 .. pi*_m
  std::vector<StepCost> steps;
};

// Exact optimum over all offline strategies that start from the instance's
// initial list: min over pi_1..pi_m of sum_t access(pi_{t-1}, R_t) +
// d(pi_{t-1}, pi_t). DP over all n! lists; ties resolve to the
// lexicographically smallest list sequence. Throws OracleTooLarge for n > 7.
OptResult opt_dynamic_bruteforce(const Instance& inst);

struct FixedResult {
  Permutation perm;
  Cost cost = 0;  // access cost only
};

// Access cost of serving every request from the fixed list sigma.
Cost fixed_access_cost(const Instance& inst, const Permutation& sigma);

// Fixed list minimizing total access cost (lexicographically smallest among
// ties). Throws OracleTooLarge for n > 8.
FixedResult best_fixed_permutation(const Instance& inst);

// Serves inst by moving choices[t] to the front after the step-t access.
// Throws IllegalChoice if choices[t] is not in R_t, TraceMismatch on a length
// mismatch.
OfflineTrace mtfb_replay(const Instance& inst, const std::vector<Element>& choices);

// The element of each request that the OPT trace holds nearest its front when
// the request is served (read from perms[t-1]).
std::vector<Element> opt_front_choices(const Instance& inst, const OptResult& opt);

// Singleton instance J with R'_t = {opt_front_choices[t]}.
Instance singleton_reduction(const Instance& inst, const OptResult& opt);

// MTF-based offline play that reorders exactly as move-to-front does on the
// singleton reduction. Throws TraceMismatch if opt does not belong to inst.
OfflineTrace derive_mtfb_from_opt(const Instance& inst, const OptResult& opt);

}  // namespace mssc
