#include <algorithm>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "mssc/adversary.hpp"
#include "mssc/error.hpp"
#include "mssc/instance_io.hpp"

using namespace mssc;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::kIo;
}

std::vector<std::pair<int, int>> structure_grid() {
  std::vector<std::pair<int, int>> out;
  for (int r : {2, 3, 4}) {
    for (int c : {1, 2, r}) out.emplace_back(r, c);
  }
  return out;
}

}  // namespace

TEST(PhaseConfig, Validation) {
  EXPECT_EQ(code_of([] { PhaseConfig{1, 1, 1}.validate(); }), ErrorCode::kRequiresRAtLeast2);
  EXPECT_EQ(code_of([] { PhaseConfig{2, 0, 1}.validate(); }), ErrorCode::kBadConfig);
  EXPECT_EQ(code_of([] { PhaseConfig{2, 1, 0}.validate(); }), ErrorCode::kBadConfig);
  const PhaseConfig cfg{3, 2, 1};
  EXPECT_EQ(cfg.n(), 15);
  EXPECT_EQ(cfg.n() % cfg.block_size(), 0);
}

TEST(AdaptiveAdversary, RequestsTheTail) {
  AdaptiveAdversary adv(PhaseConfig{2, 1, 3});
  const Request req = adv.next_request(Permutation::identity(6));
  EXPECT_EQ(req, Request({4, 5}));
  EXPECT_EQ(adv.position_in_phase(), 1);
  adv.next_request(Permutation::from_order({5, 4, 3, 2, 1, 0}));
  EXPECT_EQ(adv.phase(), 1);
  EXPECT_EQ(adv.position_in_phase(), 0);
  EXPECT_EQ(code_of([&] { adv.next_request(Permutation::identity(5)); }), ErrorCode::kDomainMismatch);
}

TEST(PlayLowerBound, OnePhaseFetchesFromTheTailSet) {
  const LowerBoundPlay play = play_lower_bound(PhaseConfig{3, 2, 1});
  const PhaseRecord& rec = play.phases[0];
  const std::set<Element> tail(rec.tail_set.begin(), rec.tail_set.end());
  std::set<Element> fetched;
  for (const StepReport& s : play.steps) {
    for (const FetchRecord& f : s.fetched) {
      EXPECT_TRUE(tail.count(f.element));
      fetched.insert(f.element);
    }
  }
  EXPECT_EQ(fetched, tail);
  EXPECT_TRUE(rec.budgets_zero_after);
}

TEST(PlayLowerBound, PhaseStructureForAllConfigs) {
  for (auto [r, c] : structure_grid()) {
    const PhaseConfig cfg{r, c, 3 * r};
    const LowerBoundPlay play = play_lower_bound(cfg);
    const int n = cfg.n();
    ASSERT_EQ(static_cast<int>(play.phases.size()), cfg.phases);
    EXPECT_EQ(static_cast<int>(play.steps.size()), cfg.phases * (c + 1));
    for (std::size_t k = 0; k < play.phases.size(); ++k) {
      const PhaseRecord& rec = play.phases[k];
      EXPECT_TRUE(rec.budgets_zero_after) << "r=" << r << " c=" << c << " phase " << k;
      EXPECT_TRUE(rec.front_is_cyclic_shift) << "r=" << r << " c=" << c << " phase " << k;
      EXPECT_TRUE(rec.others_shifted_by_block) << "r=" << r << " c=" << c << " phase " << k;
      EXPECT_LE(rec.window_budget_max_after_c, Rational(n - r + 1));
      EXPECT_GE(rec.window_budget_min_at_last, Rational(n));
      EXPECT_GE(rec.alg_cost, Cost{c + r} * (n - r));
      EXPECT_EQ(rec.block, static_cast<int>(k % r));
    }
  }
}

TEST(PlayLowerBound, PerPhaseCostFloorExamples) {
  // r=2, c=2, n=8: floor (c+r)(n-r) = 24; r=2, c=1, n=6: floor 12.
  for (const PhaseRecord& rec : play_lower_bound(PhaseConfig{2, 2, 6}).phases) EXPECT_GE(rec.alg_cost, 24);
  for (const PhaseRecord& rec : play_lower_bound(PhaseConfig{2, 1, 6}).phases) EXPECT_GE(rec.alg_cost, 12);
}

TEST(PlayLowerBound, RecordedInstanceReplaysToSameCost) {
  const LowerBoundPlay play = play_lower_bound(PhaseConfig{3, 1, 8});
  const Instance back = parse_instance(instance_to_json(play.recorded));
  AlgState s(back.initial, DivisorMode::fixed(1));
  Cost total = 0;
  for (const Request& req : back.requests) total += serve(s, req).total();
  EXPECT_EQ(total, play.alg_total());
}

TEST(KeptSubset, StrideAndCoverage) {
  EXPECT_EQ(kept_subset({10, 11, 12, 13, 14, 15}, 3), (std::vector<Element>{11, 13, 15}));
  EXPECT_EQ(kept_subset({10, 11, 12, 13, 14}, 3), (std::vector<Element>{11, 13, 14}));
  EXPECT_EQ(code_of([] { kept_subset({1, 2}, 1); }), ErrorCode::kRequiresRAtLeast2);
  for (int r = 2; r <= 8; ++r) {
    for (int c = 1; c <= 10; ++c) {
      std::vector<Element> block(c + r);
      for (int i = 0; i < c + r; ++i) block[i] = i;
      const auto kept = kept_subset(block, r);
      const std::set<Element> ks(kept.begin(), kept.end());
      EXPECT_LE(static_cast<int>(kept.size()) * r, 2 * c + 3 * r) << "r=" << r << " c=" << c;
      if ((c + r) % (r - 1) == 0) {
        EXPECT_EQ(static_cast<int>(kept.size()), (c + r) / (r - 1));
      }
      // Every cyclic window of r-1 consecutive elements holds a kept element.
      for (int start = 0; start < c + r; ++start) {
        bool hit = false;
        for (int j = 0; j < r - 1; ++j) hit = hit || ks.count(block[(start + j) % (c + r)]);
        EXPECT_TRUE(hit) << "r=" << r << " c=" << c << " start " << start;
      }
    }
  }
}

TEST(LbOffline, PerPhaseCostCeilingAndTrace) {
  for (auto [r, c] : structure_grid()) {
    const PhaseConfig cfg{r, c, 4 * r};
    const LowerBoundPlay play = play_lower_bound(cfg);
    const LbOfflinePlay off = lb_offline_strategy(cfg, play.initial, play.phases);
    EXPECT_LE(static_cast<int>(off.kept.size()), 2 * c + 3 * r);
    for (Cost pc : off.phase_costs) EXPECT_LE(pc, 3 * c + 3 * r) << "r=" << r << " c=" << c;
    Cost phases = 0;
    for (Cost pc : off.phase_costs) phases += pc;
    EXPECT_EQ(off.trace.total(), phases + off.setup_cost);
    // The trace's lists reproduce its own costs.
    ASSERT_EQ(off.trace.steps.size(), play.recorded.requests.size());
    for (std::size_t t = 0; t < off.trace.steps.size(); ++t) {
      EXPECT_EQ(off.trace.steps[t].access, access_cost(off.trace.perms[t], play.recorded.requests[t]));
    }
  }
}

TEST(LbOffline, ScheduleMismatch) {
  const PhaseConfig cfg{2, 1, 4};
  LowerBoundPlay play = play_lower_bound(cfg);
  std::swap(play.phases[0], play.phases[1]);
  EXPECT_EQ(code_of([&] { lb_offline_strategy(cfg, play.initial, play.phases); }), ErrorCode::kScheduleMismatch);
}

TEST(RandomInstance, SingletonsWhenRIsOne) {
  const Instance inst = random_instance(10, 1, 100, RequestDistribution::uniform(), 3);
  for (const Request& req : inst.requests) EXPECT_EQ(req.size(), 1);
  EXPECT_EQ(inst.initial, Permutation::identity(10));
}

TEST(RandomInstance, DeterministicUnderSeed) {
  const auto x = instance_to_json(random_instance(20, 4, 200, RequestDistribution::zipf(1.3), 77));
  EXPECT_EQ(x, instance_to_json(random_instance(20, 4, 200, RequestDistribution::zipf(1.3), 77)));
  EXPECT_NE(x, instance_to_json(random_instance(20, 4, 200, RequestDistribution::zipf(1.3), 78)));
}

TEST(RandomInstance, SizesWithinRangeAndAllUsed) {
  const Instance inst = random_instance(12, 4, 2000, RequestDistribution::uniform(), 5);
  inst.validate();
  std::map<int, int> sizes;
  for (const Request& req : inst.requests) ++sizes[req.size()];
  EXPECT_EQ(sizes.size(), 4u);
}

TEST(RandomInstance, ZipfIsFrontWeighted) {
  const int n = 50, m = 10000;
  const Instance inst = random_instance(n, 3, m, RequestDistribution::zipf(1.1), 9);
  std::vector<int> freq(n);
  for (const Request& req : inst.requests) {
    for (Element z : req.elements()) ++freq[z];
  }
  const int top = *std::max_element(freq.begin(), freq.end());
  EXPECT_GT(top * n, m);
  EXPECT_EQ(std::max_element(freq.begin(), freq.end()) - freq.begin(), 0);
}

TEST(RandomInstance, BadParameters) {
  EXPECT_EQ(code_of([] { random_instance(3, 4, 1, RequestDistribution::uniform(), 0); }), ErrorCode::kBadConfig);
  EXPECT_EQ(code_of([] { random_instance(3, 0, 1, RequestDistribution::uniform(), 0); }), ErrorCode::kBadConfig);
  EXPECT_EQ(code_of([] { random_instance(3, 1, 1, RequestDistribution::zipf(-1), 0); }), ErrorCode::kBadConfig);
  EXPECT_EQ(code_of([] { RequestDistribution::parse("zipf:"); }), ErrorCode::kBadConfig);
  EXPECT_EQ(code_of([] { RequestDistribution::parse("pareto"); }), ErrorCode::kBadConfig);
  EXPECT_EQ(RequestDistribution::parse("zipf:1.5").exponent, 1.5);
}
