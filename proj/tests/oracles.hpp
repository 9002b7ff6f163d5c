#pragma once

// Test-only reference implementations. They share types with the library but
// none of its algorithmic code paths.

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "mssc/core.hpp"
#include "mssc/rational.hpp"

namespace mssc::testing {

// O(n^2) pair count.
inline Cost brute_inversions(const Permutation& a, const Permutation& b) {
  Cost count = 0;
  for (Element x = 0; x < a.size(); ++x) {
    for (Element y = x + 1; y < a.size(); ++y) {
      if ((a.position(x) < a.position(y)) != (b.position(x) < b.position(y))) ++count;
    }
  }
  return count;
}

inline Permutation random_permutation(int n, std::mt19937_64& rng) {
  std::vector<Element> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  return Permutation::from_order(order);
}

inline std::vector<Permutation> all_permutations(int n) {
  std::vector<Element> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_order(order));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

// Literal step interpreter: the list is a plain vector scanned linearly, a
// fetch is the explicit adjacent-swap loop, and qualifying elements are
// searched by a fresh scan from the tail each round.
struct ReferenceDlm {
  std::vector<Element> list;  // list[i] at position i+1
  std::vector<Rational> budget;
  int fixed_c = 0;            // 0: divide by |R|

  explicit ReferenceDlm(const Permutation& start, int c = 0)
      : list(start.order().begin(), start.order().end()), budget(start.size(), Rational(0)), fixed_c(c) {}

  int pos(Element z) const {
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i] == z) return static_cast<int>(i) + 1;
    }
    return -1;
  }

  Cost fetch(Element z) {
    Cost swaps = 0;
    for (int i = pos(z); i >= 2; --i) {
      std::swap(list[i - 1], list[i - 2]);
      ++swaps;
    }
    budget[z] = 0;
    return swaps;
  }

  // Returns (access, reorder, fetched elements in order).
  std::tuple<Cost, Cost, std::vector<Element>> serve(const std::vector<Element>& req) {
    Element x = req[0];
    for (Element z : req) {
      if (pos(z) < pos(x)) x = z;
    }
    const int ell = pos(x);
    std::vector<Element> fetched{x};
    Cost reorder = fetch(x);
    const int s = fixed_c > 0 ? fixed_c : static_cast<int>(req.size());
    for (Element y : req) {
      if (y != x) budget[y] = budget[y] + Rational(ell, s);
    }
    for (;;) {
      Element pick = -1;
      for (int i = static_cast<int>(list.size()); i >= 1; --i) {
        if (budget[list[i - 1]] >= i) {
          pick = list[i - 1];
          break;
        }
      }
      if (pick < 0) break;
      fetched.push_back(pick);
      reorder += fetch(pick);
    }
    return {ell, reorder, fetched};
  }
};

// Minimum cost over every sequence of lists pi_1..pi_m (tiny instances only).
inline Cost brute_force_opt(const Instance& inst) {
  const auto lists = all_permutations(inst.n());
  Cost best = std::numeric_limits<Cost>::max();
  std::function<void(int, const Permutation&, Cost)> go = [&](int t, const Permutation& cur, Cost acc) {
    if (acc >= best) return;
    if (t == inst.m()) {
      best = acc;
      return;
    }
    const Cost access = access_cost(cur, inst.requests[t]);
    for (const Permutation& next : lists) go(t + 1, next, acc + access + brute_inversions(cur, next));
  };
  go(0, inst.initial, 0);
  return best;
}

// Cost of every MTF-based play, by enumerating all per-step choices.
inline std::vector<Cost> all_mtfb_costs(const Instance& inst) {
  std::vector<Cost> out;
  std::function<void(int, Permutation, Cost)> go = [&](int t, Permutation cur, Cost acc) {
    if (t == inst.m()) {
      out.push_back(acc);
      return;
    }
    const Request& req = inst.requests[t];
    Position access = inst.n() + 1;
    for (Element z : req.elements()) access = std::min(access, cur.position(z));
    for (Element z : req.elements()) {
      Permutation next = cur;
      const Position from = next.position(z);
      next.move_to_front(z);
      go(t + 1, next, acc + access + (from - 1));
    }
  };
  go(0, inst.initial, 0);
  return out;
}

inline Instance make_instance(const std::vector<Element>& initial, int r,
                              const std::vector<std::vector<Element>>& requests) {
  Instance inst;
  inst.initial = Permutation::from_order(initial);
  inst.r = r;
  for (const auto& req : requests) inst.requests.emplace_back(req);
  return inst;
}

}  // namespace mssc::testing
