#include "mssc/offline.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace mssc {
namespace {

// All n! lists of a universe in lexicographic order of their element
// sequence, with the pairwise inversion distances between them.
class ListTable {
 public:
  explicit ListTable(int n) : n_(n) {
    std::vector<Element> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    do {
      lists_.push_back(Permutation::from_order(order));
    } while (std::next_permutation(order.begin(), order.end()));

    // Bit (x,y) of a list's signature is set when x precedes y; the distance
    // between two lists is the popcount of the XOR of their signatures.
    const std::size_t count = lists_.size();
    signatures_.reserve(count);
    for (const Permutation& p : lists_) {
      std::uint64_t sig = 0;
      int bit = 0;
      for (Element x = 0; x < n; ++x) {
        for (Element y = x + 1; y < n; ++y, ++bit) {
          if (p.position(x) < p.position(y)) sig |= std::uint64_t{1} << bit;
        }
      }
      signatures_.push_back(sig);
    }
    distance_.resize(count * count);
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = 0; j < count; ++j) {
        distance_[i * count + j] = static_cast<std::uint8_t>(std::popcount(signatures_[i] ^ signatures_[j]));
      }
    }
  }

  std::size_t size() const { return lists_.size(); }
  const Permutation& list(std::size_t i) const { return lists_[i]; }
  int distance(std::size_t i, std::size_t j) const { return distance_[i * lists_.size() + j]; }

  std::size_t index_of(const Permutation& p) const {
    auto it = std::lower_bound(lists_.begin(), lists_.end(), p, [](const Permutation& a, const Permutation& b) {
      return std::lexicographical_compare(a.order().begin(), a.order().end(), b.order().begin(), b.order().end());
    });
    return static_cast<std::size_t>(it - lists_.begin());
  }

 private:
  int n_;
  std::vector<Permutation> lists_;
  std::vector<std::uint64_t> signatures_;
  std::vector<std::uint8_t> distance_;
};

// Tables are immutable once built and shared across calls and threads.
std::shared_ptr<const ListTable> table_for(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const ListTable>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const ListTable>(n);
  return slot;
}

void check_oracle_size(const Instance& inst, int limit, const char* oracle) {
  if (inst.n() > limit) {
    throw Error(ErrorCode::kOracleTooLarge, std::string(oracle) + " supports n <= " + std::to_string(limit) +
                                                ", got n=" + std::to_string(inst.n()));
  }
}

}  // namespace

Cost OfflineTrace::total() const { return initial_reorder + total_access() + total_reorder(); }

Cost OfflineTrace::total_access() const {
  Cost sum = 0;
  for (const auto& s : steps) sum += s.access;
  return sum;
}

Cost OfflineTrace::total_reorder() const {
  Cost sum = 0;
  for (const auto& s : steps) sum += s.reorder;
  return sum;
}

OptResult opt_dynamic_bruteforce(const Instance& inst) {
  check_oracle_size(inst, kMaxDynamicOracleN, "dynamic OPT oracle");
  inst.validate();
  const auto table = table_for(inst.n());
  const std::size_t count = table->size();
  const int m = inst.m();

  // cost_to_go[t][i]: cheapest cost of serving R_{t+1}..R_m from list i.
  std::vector<std::vector<Cost>> cost_to_go(m + 1, std::vector<Cost>(count, 0));
  std::vector<std::vector<Cost>> access(m, std::vector<Cost>(count));
  for (int t = 0; t < m; ++t) {
    for (std::size_t i = 0; i < count; ++i) access[t][i] = access_cost(table->list(i), inst.requests[t]);
  }
  for (int t = m - 1; t >= 0; --t) {
    const auto& next = cost_to_go[t + 1];
    for (std::size_t i = 0; i < count; ++i) {
      Cost best = std::numeric_limits<Cost>::max();
      for (std::size_t j = 0; j < count; ++j) best = std::min(best, table->distance(i, j) + next[j]);
      cost_to_go[t][i] = access[t][i] + best;
    }
  }

  OptResult result;
  std::size_t cur = table->index_of(inst.initial);
  result.cost = cost_to_go[0][cur];
  result.perms.push_back(inst.initial);
  for (int t = 0; t < m; ++t) {
    const Cost target = cost_to_go[t][cur] - access[t][cur];
    std::size_t chosen = count;
    for (std::size_t j = 0; j < count; ++j) {
      if (table->distance(cur, j) + cost_to_go[t + 1][j] == target) {
        chosen = j;
        break;
      }
    }
    result.steps.push_back({access[t][cur], table->distance(cur, chosen)});
    result.perms.push_back(table->list(chosen));
    cur = chosen;
  }
  return result;
}

Cost fixed_access_cost(const Instance& inst, const Permutation& sigma) {
  if (sigma.size() != inst.n()) {
    throw Error(ErrorCode::kDomainMismatch, "fixed list has " + std::to_string(sigma.size()) +
                                                " elements, instance has " + std::to_string(inst.n()));
  }
  Cost total = 0;
  for (const Request& req : inst.requests) total += access_cost(sigma, req);
  return total;
}

FixedResult best_fixed_permutation(const Instance& inst) {
  check_oracle_size(inst, kMaxStaticOracleN, "best fixed permutation oracle");
  inst.validate();
  std::vector<Element> order(inst.n());
  for (int i = 0; i < inst.n(); ++i) order[i] = i;

  // Requests as bitmasks; the access cost under a list is the first position
  // whose element is in the mask.
  std::vector<std::uint32_t> masks;
  masks.reserve(inst.m());
  for (const Request& req : inst.requests) {
    std::uint32_t mask = 0;
    for (Element z : req.elements()) mask |= 1u << z;
    masks.push_back(mask);
  }

  std::vector<Element> best_order;
  Cost best = std::numeric_limits<Cost>::max();
  do {
    Cost cost = 0;
    for (std::uint32_t mask : masks) {
      Position pos = 1;
      while (!(mask & (1u << order[pos - 1]))) ++pos;
      cost += pos;
      if (cost >= best) break;
    }
    if (cost < best) {
      best = cost;
      best_order = order;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return {Permutation::from_order(std::move(best_order)), best};
}

OfflineTrace mtfb_replay(const Instance& inst, const std::vector<Element>& choices) {
  if (static_cast<int>(choices.size()) != inst.m()) {
    throw Error(ErrorCode::kTraceMismatch, std::to_string(choices.size()) + " choices for " +
                                               std::to_string(inst.m()) + " requests");
  }
  OfflineTrace trace;
  Permutation cur = inst.initial;
  trace.perms.push_back(cur);
  for (int t = 0; t < inst.m(); ++t) {
    const Request& req = inst.requests[t];
    const Element chosen = choices[t];
    if (!req.contains(chosen)) {
      throw Error(ErrorCode::kIllegalChoice, "step " + std::to_string(t) + ": element " + std::to_string(chosen) +
                                                 " is not in the request");
    }
    OfflineStep step;
    step.moved = chosen;
    step.access = access_cost(cur, req);
    step.reorder = cur.move_to_front(chosen);
    trace.steps.push_back(step);
    trace.perms.push_back(cur);
  }
  return trace;
}

std::vector<Element> opt_front_choices(const Instance& inst, const OptResult& opt) {
  if (static_cast<int>(opt.perms.size()) != inst.m() + 1 || !(opt.perms.front() == inst.initial)) {
    throw Error(ErrorCode::kTraceMismatch, "OPT trace does not belong to this instance");
  }
  std::vector<Element> choices;
  choices.reserve(inst.m());
  for (int t = 0; t < inst.m(); ++t) {
    const Permutation& pi = opt.perms[t];
    if (pi.size() != inst.n()) throw Error(ErrorCode::kTraceMismatch, "OPT list size differs from instance");
    const Request& req = inst.requests[t];
    Element best = req.elements().front();
    for (Element z : req.elements()) {
      if (pi.position(z) < pi.position(best)) best = z;
    }
    choices.push_back(best);
  }
  return choices;
}

Instance singleton_reduction(const Instance& inst, const OptResult& opt) {
  Instance reduced;
  reduced.initial = inst.initial;
  reduced.r = 1;
  for (Element z : opt_front_choices(inst, opt)) reduced.requests.emplace_back(std::vector<Element>{z});
  return reduced;
}

OfflineTrace derive_mtfb_from_opt(const Instance& inst, const OptResult& opt) {
  return mtfb_replay(inst, opt_front_choices(inst, opt));
}

}  // namespace mssc
