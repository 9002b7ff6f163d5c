#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mssc/core.hpp"
#include "mssc/dlm.hpp"
#include "mssc/offline.hpp"
#include "mssc/rational.hpp"

namespace mssc {

// Lower-bound construction against DLM with a fixed budget divisor c:
// n = r^2 + c r elements; each phase is c+1 requests, each holding the last r
// elements of the online list.
struct PhaseConfig {
  int r = 2;
  int c = 1;
  int phases = 1;

  int n() const { return r * r + c * r; }
  int block_size() const { return c + r; }
  // Throws RequiresRAtLeast2 for r < 2, BadConfig for c < 1 or phases < 1.
  void validate() const;
};

class AdaptiveAdversary {
 public:
  explicit AdaptiveAdversary(PhaseConfig config);

  // The last r elements of the online list. Advances the phase clock.
  Request next_request(const Permutation& current);

  const PhaseConfig& config() const { return config_; }
  int phase() const { return phase_; }
  int position_in_phase() const { return position_; }

 private:
  PhaseConfig config_;
  int phase_ = 0;
  int position_ = 0;  // 0..c
};

// Per-phase observations of the online run, and the offline play's input.
struct PhaseRecord {
  int block = 0;                    // index of the tail block requested (0 = last block of the start list)
  std::vector<Element> tail_set;    // last c+r online elements at phase start, front to back
  std::vector<Element> window;      // last r-1 online elements at phase start, front to back
  std::vector<Request> requests;
  Cost alg_cost = 0;
  Cost alg_access = 0;
  Cost alg_reorder = 0;

  bool budgets_zero_after = false;
  bool front_is_cyclic_shift = false;
  bool others_shifted_by_block = false;
  // Largest budget among the window elements after the first c requests, and
  // smallest among them right after the (c+1)-th request's increments.
  Rational window_budget_max_after_c;
  Rational window_budget_min_at_last;
};

struct LowerBoundPlay {
  PhaseConfig config;
  Permutation initial;
  std::vector<PhaseRecord> phases;
  std::vector<StepReport> steps;
  Instance recorded;  // the emitted requests as a static instance

  Cost alg_total() const;
};

// Runs the adaptive adversary against DLM with divisor c from the identity
// list, checking the phase structure after every phase.
LowerBoundPlay play_lower_bound(const PhaseConfig& config);

struct LbOfflinePlay {
  OfflineTrace trace;
  Cost setup_cost = 0;             // moving the kept set to the front
  std::vector<Cost> phase_costs;   // front move of the phase's kept element + accesses
  std::vector<Element> kept;       // elements held at the front throughout
};

// Cheap offline play for the recorded phases: keep a subset of each tail
// block at the front and, before each phase, move the kept element present in
// the phase's last-(r-1) window to position 1. Throws ScheduleMismatch if the
// phases do not request the start list's tail blocks cyclically.
LbOfflinePlay lb_offline_strategy(const PhaseConfig& config, const Permutation& initial,
                                  const std::vector<PhaseRecord>& schedule);

// Every (r-1)-th element of a block (1-based indices r-1, 2(r-1), ...), plus
// the block's last element when r-1 does not divide the block size, so that
// every cyclic window of r-1 consecutive block elements contains one.
std::vector<Element> kept_subset(const std::vector<Element>& block, int r);

struct RequestDistribution {
  enum class Kind { kUniform, kZipf };
  Kind kind = Kind::kUniform;
  double exponent = 1.0;  // zipf only

  static RequestDistribution uniform() { return {}; }
  static RequestDistribution zipf(double s) { return {Kind::kZipf, s}; }
  // "uniform" or "zipf:<s>"; throws BadConfig otherwise.
  static RequestDistribution parse(const std::string& text);
  std::string str() const;
};

// m requests over n elements; each draws a size k uniform in 1..r and then k
// distinct elements, element i weighted 1/(i+1)^s under zipf. The initial list
// is the identity. Deterministic for a given seed.
Instance random_instance(int n, int r, int m, RequestDistribution dist, std::uint64_t seed);

}  // namespace mssc
