#include "mssc/core.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <string>

namespace mssc {
namespace {

// Counts inversions of seq[lo, hi) while merge-sorting it, using scratch as
// the merge buffer.
Cost count_inversions(std::vector<Position>& seq, std::vector<Position>& scratch, std::size_t lo,
                      std::size_t hi) {
  if (hi - lo < 2) return 0;
  std::size_t mid = lo + (hi - lo) / 2;
  Cost count = count_inversions(seq, scratch, lo, mid) + count_inversions(seq, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (seq[i] <= seq[j]) {
      scratch[k++] = seq[i++];
    } else {
      count += static_cast<Cost>(mid - i);
      scratch[k++] = seq[j++];
    }
  }
  while (i < mid) scratch[k++] = seq[i++];
  while (j < hi) scratch[k++] = seq[j++];
  std::copy(scratch.begin() + lo, scratch.begin() + hi, seq.begin() + lo);
  return count;
}

}  // namespace

Permutation::Permutation(std::vector<Element> order)
    : order_(std::move(order)), position_(order_.size(), 0) {
  for (std::size_t i = 0; i < order_.size(); ++i) position_[order_[i]] = static_cast<Position>(i + 1);
}

Permutation Permutation::identity(int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidInstance, "permutation size must be positive, got " + std::to_string(n));
  std::vector<Element> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  return Permutation(std::move(order));
}

Permutation Permutation::from_order(std::vector<Element> order) {
  const int n = static_cast<int>(order.size());
  if (n < 1) throw Error(ErrorCode::kInvalidInstance, "permutation must be non-empty");
  std::vector<bool> seen(n, false);
  for (int i = 0; i < n; ++i) {
    Element z = order[i];
    if (z < 0 || z >= n) {
      throw Error(ErrorCode::kInvalidInstance,
                  "element " + std::to_string(z) + " at position " + std::to_string(i + 1) +
                      " is outside 0.." + std::to_string(n - 1));
    }
    if (seen[z]) {
      throw Error(ErrorCode::kInvalidInstance,
                  "element " + std::to_string(z) + " appears twice (again at position " +
                      std::to_string(i + 1) + ")");
    }
    seen[z] = true;
  }
  return Permutation(std::move(order));
}

Position Permutation::position(Element z) const {
  if (!contains(z)) {
    throw Error(ErrorCode::kUnknownElement,
                "element " + std::to_string(z) + " not in universe of size " + std::to_string(size()));
  }
  return position_[z];
}

Element Permutation::at(Position pos) const {
  if (pos < 1 || pos > size()) {
    throw Error(ErrorCode::kInvalidPosition,
                "position " + std::to_string(pos) + " outside 1.." + std::to_string(size()));
  }
  return order_[pos - 1];
}

Cost Permutation::move_to_front(Element z) {
  const Position from = position(z);
  for (Position i = from; i >= 2; --i) {
    Element prev = order_[i - 2];
    order_[i - 1] = prev;
    position_[prev] = i;
  }
  order_[0] = z;
  position_[z] = 1;
  check_consistent();
  return from - 1;
}

void Permutation::check_consistent() const {
#ifndef NDEBUG
  for (std::size_t i = 0; i < order_.size(); ++i) {
    assert(position_[order_[i]] == static_cast<Position>(i + 1));
  }
#endif
}

Request::Request(std::vector<Element> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw Error(ErrorCode::kEmptyRequest, "request has no elements");
  std::sort(elements_.begin(), elements_.end());
  if (elements_.front() < 0) {
    throw Error(ErrorCode::kUnknownElement, "negative element id " + std::to_string(elements_.front()));
  }
  if (auto dup = std::adjacent_find(elements_.begin(), elements_.end()); dup != elements_.end()) {
    throw Error(ErrorCode::kDuplicateElement, "element " + std::to_string(*dup) + " repeated in request");
  }
}

bool Request::contains(Element z) const {
  return std::binary_search(elements_.begin(), elements_.end(), z);
}

void Instance::validate() const {
  if (r < 1) throw Error(ErrorCode::kInvalidInstance, "r must be positive, got " + std::to_string(r));
  if (initial.size() < 1) throw Error(ErrorCode::kInvalidInstance, "initial permutation is empty");
  for (int t = 0; t < m(); ++t) {
    const Request& req = requests[t];
    if (req.size() == 0) throw Error(ErrorCode::kInvalidInstance, "requests[" + std::to_string(t) + "] is empty");
    if (req.size() > r) {
      throw Error(ErrorCode::kInvalidInstance, "requests[" + std::to_string(t) + "] has " +
                                                   std::to_string(req.size()) + " elements, exceeds r=" +
                                                   std::to_string(r));
    }
    if (req.elements().back() >= n()) {
      throw Error(ErrorCode::kInvalidInstance, "requests[" + std::to_string(t) + "] mentions element " +
                                                   std::to_string(req.elements().back()) +
                                                   " but n=" + std::to_string(n()));
    }
  }
}

Position access_cost(const Permutation& pi, const Request& request) {
  if (request.size() == 0) throw Error(ErrorCode::kEmptyRequest, "request has no elements");
  Position best = pi.size() + 1;
  for (Element z : request.elements()) best = std::min(best, pi.position(z));
  return best;
}

Cost inversion_distance(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDomainMismatch, "permutations over " + std::to_string(a.size()) + " and " +
                                                std::to_string(b.size()) + " elements");
  }
  // Read b's positions in a's list order; inversions of that sequence are the
  // pairs the two lists disagree on.
  std::vector<Position> seq;
  seq.reserve(a.size());
  for (Element z : a.order()) seq.push_back(b.position(z));
  std::vector<Position> scratch(seq.size());
  return count_inversions(seq, scratch, 0, seq.size());
}

std::pair<Permutation, Cost> move_to_front(Permutation pi, Element z) {
  Cost cost = pi.move_to_front(z);
  return {std::move(pi), cost};
}

PositionSplit position_decompose(std::int64_t pos) {
  if (pos < 1) throw Error(ErrorCode::kInvalidPosition, "position must be >= 1, got " + std::to_string(pos));
  const auto upos = static_cast<std::uint64_t>(pos);
  const int p = std::bit_width(upos) - 1;
  return {p, pos - (std::int64_t{1} << p)};
}

}  // namespace mssc
