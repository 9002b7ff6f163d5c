#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mssc/error.hpp"

namespace mssc {

// Elements are dense ids 0..n-1. Positions are 1-based, so the element at the
// list front has position 1 and an access there costs 1.
using Element = int;
using Position = int;
using Cost = std::int64_t;

class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(int n);
  // order[i] is the element at position i+1. Throws InvalidInstance unless
  // `order` is a permutation of 0..order.size()-1.
  static Permutation from_order(std::vector<Element> order);

  int size() const { return static_cast<int>(order_.size()); }
  bool contains(Element z) const { return z >= 0 && z < size(); }

  // Throws UnknownElement for ids outside 0..n-1.
  Position position(Element z) const;
  // Throws InvalidPosition for positions outside 1..n.
  Element at(Position pos) const;

  std::span<const Element> order() const { return order_; }

  // Moves z to position 1, shifting the elements that preceded it back by one.
  // Returns the number of adjacent swaps used, i.e. old position - 1.
  Cost move_to_front(Element z);

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<Element> order);
  void check_consistent() const;

  std::vector<Element> order_;     // position-1 -> element
  std::vector<Position> position_; // element -> position
};

// A requested set. Elements are kept sorted; duplicates and empty sets are
// rejected at construction.
class Request {
 public:
  Request() = default;
  // Throws EmptyRequest / DuplicateElement / UnknownElement (ids < 0).
  explicit Request(std::vector<Element> elements);

  std::span<const Element> elements() const { return elements_; }
  int size() const { return static_cast<int>(elements_.size()); }
  bool contains(Element z) const;

  friend bool operator==(const Request&, const Request&) = default;

 private:
  std::vector<Element> elements_;
};

struct Instance {
  Permutation initial;
  std::vector<Request> requests;
  int r = 1;

  int n() const { return initial.size(); }
  int m() const { return static_cast<int>(requests.size()); }

  // Throws InvalidInstance (with the offending request index) if any request
  // exceeds r or mentions an element outside the universe.
  void validate() const;
};

struct StepCost {
  Cost access = 0;
  Cost reorder = 0;
  Cost total() const { return access + reorder; }
};

// min over z in R of pi(z).
Position access_cost(const Permutation& pi, const Request& request);

// Number of unordered pairs ordered differently by the two permutations
// (Kendall tau distance). O(n log n) merge-sort count.
Cost inversion_distance(const Permutation& a, const Permutation& b);

std::pair<Permutation, Cost> move_to_front(Permutation pi, Element z);

struct PositionSplit {
  int p = 0;          // position = 2^p + q
  std::int64_t q = 0; // 0 <= q < 2^p
};

// Throws InvalidPosition for pos < 1.
PositionSplit position_decompose(std::int64_t pos);

}  // namespace mssc
