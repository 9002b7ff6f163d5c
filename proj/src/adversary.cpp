#include "mssc/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace mssc {
namespace {

std::vector<Element> tail_of(const Permutation& pi, int count) {
  std::vector<Element> out;
  for (Position pos = pi.size() - count + 1; pos <= pi.size(); ++pos) out.push_back(pi.at(pos));
  return out;
}

// Block i holds the start list's positions n-(i+1)L+1 .. n-iL, in list order.
std::vector<std::vector<Element>> tail_blocks(const PhaseConfig& config, const Permutation& initial) {
  const int len = config.block_size();
  std::vector<std::vector<Element>> blocks(config.r);
  for (int i = 0; i < config.r; ++i) {
    for (Position pos = config.n() - (i + 1) * len + 1; pos <= config.n() - i * len; ++pos) {
      blocks[i].push_back(initial.at(pos));
    }
  }
  return blocks;
}

bool same_set(std::vector<Element> a, std::vector<Element> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

bool is_rotation(const std::vector<Element>& original, const std::vector<Element>& candidate) {
  if (original.size() != candidate.size()) return false;
  if (original.empty()) return true;
  auto it = std::find(original.begin(), original.end(), candidate.front());
  if (it == original.end()) return false;
  std::vector<Element> rotated(original.begin(), original.end());
  std::rotate(rotated.begin(), rotated.begin() + (it - original.begin()), rotated.end());
  return rotated == candidate;
}

class IncrementCapture : public ServeObserver {
 public:
  explicit IncrementCapture(std::set<Element> watched) : watched_(std::move(watched)) {}
  void after_increment(const AlgState& state, Element y) override {
    if (watched_.count(y)) seen_.push_back(state.budget(y));
  }
  const std::vector<Rational>& seen() const { return seen_; }

 private:
  std::set<Element> watched_;
  std::vector<Rational> seen_;
};

}  // namespace

void PhaseConfig::validate() const {
  if (r < 2) {
    throw Error(ErrorCode::kRequiresRAtLeast2, "the phase construction needs r >= 2, got r=" + std::to_string(r));
  }
  if (c < 1) throw Error(ErrorCode::kBadConfig, "c must be a positive integer, got " + std::to_string(c));
  if (phases < 1) throw Error(ErrorCode::kBadConfig, "phases must be positive, got " + std::to_string(phases));
}

AdaptiveAdversary::AdaptiveAdversary(PhaseConfig config) : config_(config) { config_.validate(); }

Request AdaptiveAdversary::next_request(const Permutation& current) {
  if (current.size() != config_.n()) {
    throw Error(ErrorCode::kDomainMismatch, "adversary expects n=" + std::to_string(config_.n()) +
                                                ", list has " + std::to_string(current.size()) + " elements");
  }
  Request req(tail_of(current, config_.r));
  if (++position_ == config_.c + 1) {
    position_ = 0;
    ++phase_;
  }
  return req;
}

Cost LowerBoundPlay::alg_total() const {
  Cost sum = 0;
  for (const auto& s : steps) sum += s.total();
  return sum;
}

LowerBoundPlay play_lower_bound(const PhaseConfig& config) {
  config.validate();
  const int n = config.n();
  const int len = config.block_size();

  LowerBoundPlay play;
  play.config = config;
  play.initial = Permutation::identity(n);
  play.recorded.initial = play.initial;
  play.recorded.r = config.r;

  const auto blocks = tail_blocks(config, play.initial);
  AlgState state(play.initial, DivisorMode::fixed(config.c));
  AdaptiveAdversary adversary(config);

  for (int k = 0; k < config.phases; ++k) {
    const Permutation start = state.permutation();
    PhaseRecord rec;
    rec.tail_set = tail_of(start, len);
    rec.window = tail_of(start, config.r - 1);
    rec.block = -1;
    for (int i = 0; i < config.r; ++i) {
      if (same_set(blocks[i], rec.tail_set)) rec.block = i;
    }

    for (int j = 0; j <= config.c; ++j) {
      Request req = adversary.next_request(state.permutation());
      IncrementCapture capture(std::set<Element>(rec.window.begin(), rec.window.end()));
      StepReport step = serve(state, req, &capture);
      if (j == config.c) {
        const auto& seen = capture.seen();
        rec.window_budget_min_at_last = seen.empty() ? Rational(0) : *std::min_element(seen.begin(), seen.end());
      }
      rec.alg_access += step.access;
      rec.alg_reorder += step.reorder;
      rec.requests.push_back(req);
      play.recorded.requests.push_back(std::move(req));
      play.steps.push_back(std::move(step));
      if (j == config.c - 1) {
        Rational mx = 0;
        for (Element b : rec.window) mx = std::max(mx, state.budget(b));
        rec.window_budget_max_after_c = mx;
      }
    }
    rec.alg_cost = rec.alg_access + rec.alg_reorder;

    const Permutation& end = state.permutation();
    rec.budgets_zero_after =
        std::all_of(state.budgets().begin(), state.budgets().end(), [](const Rational& b) { return b == 0; });
    std::vector<Element> front(end.order().begin(), end.order().begin() + len);
    rec.front_is_cyclic_shift = is_rotation(rec.tail_set, front);
    const std::set<Element> tail(rec.tail_set.begin(), rec.tail_set.end());
    rec.others_shifted_by_block = true;
    for (Element z = 0; z < n; ++z) {
      if (!tail.count(z) && end.position(z) != start.position(z) + len) rec.others_shifted_by_block = false;
    }
    play.phases.push_back(std::move(rec));
  }
  return play;
}

std::vector<Element> kept_subset(const std::vector<Element>& block, int r) {
  if (r < 2) throw Error(ErrorCode::kRequiresRAtLeast2, "kept subset needs r >= 2");
  const int stride = r - 1;
  const int len = static_cast<int>(block.size());
  std::vector<Element> kept;
  for (int idx = stride; idx <= len; idx += stride) kept.push_back(block[idx - 1]);
  if (len % stride != 0) kept.push_back(block.back());
  return kept;
}

LbOfflinePlay lb_offline_strategy(const PhaseConfig& config, const Permutation& initial,
                                  const std::vector<PhaseRecord>& schedule) {
  config.validate();
  if (initial.size() != config.n()) {
    throw Error(ErrorCode::kDomainMismatch, "start list has " + std::to_string(initial.size()) +
                                                " elements, construction needs " + std::to_string(config.n()));
  }
  const auto blocks = tail_blocks(config, initial);

  LbOfflinePlay play;
  for (const auto& block : blocks) {
    for (Element z : kept_subset(block, config.r)) play.kept.push_back(z);
  }
  const std::set<Element> kept(play.kept.begin(), play.kept.end());

  // Setup: stable partition of the start list with the kept set in front.
  std::vector<Element> order(initial.order().begin(), initial.order().end());
  std::stable_partition(order.begin(), order.end(), [&](Element z) { return kept.count(z) > 0; });
  Permutation off = Permutation::from_order(order);
  play.setup_cost = inversion_distance(initial, off);
  play.trace.perms.push_back(initial);
  play.trace.initial_reorder = play.setup_cost;

  for (std::size_t k = 0; k < schedule.size(); ++k) {
    const PhaseRecord& rec = schedule[k];
    const int expected = static_cast<int>(k % config.r);
    if (rec.block != expected || !same_set(rec.tail_set, blocks[expected])) {
      throw Error(ErrorCode::kScheduleMismatch, "phase " + std::to_string(k) + " requests block " +
                                                    std::to_string(rec.block) + ", cyclic order expects " +
                                                    std::to_string(expected));
    }
    auto target = std::find_if(rec.window.begin(), rec.window.end(), [&](Element z) { return kept.count(z) > 0; });
    if (target == rec.window.end()) {
      throw Error(ErrorCode::kScheduleMismatch, "phase " + std::to_string(k) + " window holds no kept element");
    }
    for (const Request& req : rec.requests) {
      if (!req.contains(*target)) {
        throw Error(ErrorCode::kScheduleMismatch, "phase " + std::to_string(k) + " has a request without element " +
                                                      std::to_string(*target));
      }
    }

    // The front move is paid after the last request of the previous phase, or
    // before the first request for phase 0.
    const Cost move = off.move_to_front(*target);
    if (k == 0) {
      play.trace.initial_reorder += move;
      play.trace.perms.front() = off;
    } else {
      play.trace.steps.back().moved = *target;
      play.trace.steps.back().reorder = move;
      play.trace.perms.back() = off;
    }
    Cost phase_cost = move;
    for (const Request& req : rec.requests) {
      OfflineStep step;
      step.access = access_cost(off, req);
      phase_cost += step.access;
      play.trace.steps.push_back(step);
      play.trace.perms.push_back(off);
    }
    play.phase_costs.push_back(phase_cost);
  }
  return play;
}

RequestDistribution RequestDistribution::parse(const std::string& text) {
  if (text == "uniform") return uniform();
  if (text.rfind("zipf:", 0) == 0) {
    try {
      std::size_t used = 0;
      double s = std::stod(text.substr(5), &used);
      if (used == text.size() - 5 && s > 0 && std::isfinite(s)) return zipf(s);
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorCode::kBadConfig, "distribution must be 'uniform' or 'zipf:<s>' with s > 0, got '" + text + "'");
}

std::string RequestDistribution::str() const {
  if (kind == Kind::kUniform) return "uniform";
  std::ostringstream os;
  os << "zipf:" << exponent;
  return os.str();
}

Instance random_instance(int n, int r, int m, RequestDistribution dist, std::uint64_t seed) {
  if (n < 1 || r < 1 || r > n || m < 0) {
    throw Error(ErrorCode::kBadConfig, "need 1 <= r <= n and m >= 0, got n=" + std::to_string(n) +
                                           " r=" + std::to_string(r) + " m=" + std::to_string(m));
  }
  if (dist.kind == RequestDistribution::Kind::kZipf && !(dist.exponent > 0)) {
    throw Error(ErrorCode::kBadConfig, "zipf exponent must be positive");
  }
  std::mt19937_64 rng(seed);
  std::vector<double> weights(n, 1.0);
  if (dist.kind == RequestDistribution::Kind::kZipf) {
    for (int i = 0; i < n; ++i) weights[i] = 1.0 / std::pow(static_cast<double>(i + 1), dist.exponent);
  }

  Instance inst;
  inst.initial = Permutation::identity(n);
  inst.r = r;
  inst.requests.reserve(m);
  std::uniform_int_distribution<int> size_dist(1, r);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < m; ++t) {
    const int k = size_dist(rng);
    std::vector<double> w = weights;
    std::vector<Element> picked;
    for (int j = 0; j < k; ++j) {
      const double total = std::accumulate(w.begin(), w.end(), 0.0);
      double u = unit(rng) * total;
      Element chosen = -1;
      for (Element z = 0; z < n; ++z) {
        if (w[z] == 0.0) continue;
        chosen = z;  // last positive-weight element absorbs rounding
        if (u < w[z]) break;
        u -= w[z];
      }
      picked.push_back(chosen);
      w[chosen] = 0.0;
    }
    inst.requests.emplace_back(std::move(picked));
  }
  return inst;
}

}  // namespace mssc
