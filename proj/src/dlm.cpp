#include "mssc/dlm.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mssc {

DivisorMode DivisorMode::fixed(int c) {
  if (c < 1) throw Error(ErrorCode::kBadConfig, "budget divisor c must be a positive integer, got " + std::to_string(c));
  return {Kind::kFixedConstant, c};
}

AlgState::AlgState(Permutation initial, DivisorMode mode)
    : perm_(std::move(initial)), budgets_(perm_.size(), Rational(0)), mode_(mode) {
  if (mode_.is_fixed() && mode_.c < 1) {
    throw Error(ErrorCode::kBadConfig, "budget divisor c must be a positive integer");
  }
}

const Rational& AlgState::budget(Element z) const {
  if (!perm_.contains(z)) {
    throw Error(ErrorCode::kUnknownElement, "element " + std::to_string(z) + " not in universe");
  }
  return budgets_[z];
}

void AlgState::set_budget(Element z, Rational value) {
  if (!perm_.contains(z)) {
    throw Error(ErrorCode::kUnknownElement, "element " + std::to_string(z) + " not in universe");
  }
  if (value < 0) throw Error(ErrorCode::kBadConfig, "budgets are non-negative");
  budgets_[z] = value;
}

Cost fetch(AlgState& state, Element z) {
  Cost cost = state.perm_.move_to_front(z);
  state.budgets_[z] = 0;
  return cost;
}

std::vector<Element> qualifying_elements(const AlgState& state) {
  std::vector<Element> out;
  const Permutation& pi = state.permutation();
  for (Position pos = pi.size(); pos >= 1; --pos) {
    Element z = pi.at(pos);
    if (state.budgets()[z] >= pos) out.push_back(z);
  }
  return out;
}

StepReport serve(AlgState& state, const Request& request, ServeObserver* observer) {
  const Permutation& pi = state.perm_;
  if (request.size() == 0) throw Error(ErrorCode::kEmptyRequest, "request has no elements");

  Element x = request.elements().front();
  for (Element z : request.elements()) {
    if (pi.position(z) < pi.position(x)) x = z;
  }

  StepReport report;
  report.ell = pi.position(x);
  report.access = report.ell;

  auto do_fetch = [&](Element z) {
    const Position from = pi.position(z);
    if (observer) observer->before_fetch(state, z);
    Cost cost = fetch(state, z);
    report.reorder += cost;
    report.fetched.push_back({z, from});
    if (observer) observer->after_fetch(state, z, cost);
  };

  do_fetch(x);

  const std::int64_t divisor = state.mode_.is_fixed() ? state.mode_.c : request.size();
  const Rational delta(report.ell, divisor);
  for (Element y : request.elements()) {
    if (y == x) continue;
    state.budgets_[y] += delta;
    report.budget_increments.push_back({y, delta});
    if (observer) observer->after_increment(state, y);
  }

  // Each fetch removes its element from {z : b(z) >= pi(z)} and can only
  // remove others (they move back with unchanged budgets), so at most n rounds.
  const int limit = state.size();
  for (;;) {
    std::vector<Element> qualifying = qualifying_elements(state);
    if (qualifying.empty()) break;
    if (report.cascade_iterations == limit) {
      throw std::logic_error("threshold loop exceeded n iterations");
    }
    do_fetch(qualifying.front());
    ++report.cascade_iterations;
  }
  return report;
}

}  // namespace mssc
