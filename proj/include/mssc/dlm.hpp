#pragma once

#include <utility>
#include <vector>

#include "mssc/core.hpp"
#include "mssc/rational.hpp"

namespace mssc {

struct StepReport;
class ServeObserver;

// Budget increments are l/s (s = request cardinality) for the base algorithm,
// or l/c for a fixed positive integer c.
struct DivisorMode {
  enum class Kind { kPerRequestCardinality, kFixedConstant };
  Kind kind = Kind::kPerRequestCardinality;
  int c = 0;

  static DivisorMode per_request() { return {}; }
  static DivisorMode fixed(int c);  // throws BadConfig for c < 1
  bool is_fixed() const { return kind == Kind::kFixedConstant; }
};

// State of the lazy move-to-front algorithm: its list plus one exact budget per
// element. Budgets start at zero.
class AlgState {
 public:
  explicit AlgState(Permutation initial, DivisorMode mode = DivisorMode::per_request());

  const Permutation& permutation() const { return perm_; }
  const std::vector<Rational>& budgets() const { return budgets_; }
  const Rational& budget(Element z) const;
  DivisorMode mode() const { return mode_; }
  int size() const { return perm_.size(); }

  // Direct budget assignment, for constructing audit fixtures.
  void set_budget(Element z, Rational value);

 private:
  friend Cost fetch(AlgState& state, Element z);
  friend StepReport serve(AlgState& state, const Request& request, ServeObserver* observer);

  Permutation perm_;
  std::vector<Rational> budgets_;
  DivisorMode mode_;
};

struct FetchRecord {
  Element element = 0;
  Position from = 0;  // position at the moment of the fetch
};

struct BudgetIncrement {
  Element element = 0;
  Rational delta;
};

struct StepReport {
  Cost access = 0;
  Cost reorder = 0;   // sum over fetched of (from - 1)
  Position ell = 0;   // position of the cheapest requested element at step start
  std::vector<FetchRecord> fetched;  // in execution order; fetched[0] is the accessed element
  std::vector<BudgetIncrement> budget_increments;
  int cascade_iterations = 0;  // fetches performed by the threshold loop

  Cost total() const { return access + reorder; }
};

// Hooks fired inside serve(), used by auditors to snapshot intermediate
// states. The state passed is the live one; observers must not retain it.
class ServeObserver {
 public:
  virtual ~ServeObserver() = default;
  virtual void before_fetch(const AlgState& /*state*/, Element /*z*/) {}
  virtual void after_fetch(const AlgState& /*state*/, Element /*z*/, Cost /*cost*/) {}
  virtual void after_increment(const AlgState& /*state*/, Element /*y*/) {}
};

// Moves z to the front and resets its budget. Budgets of the shifted elements
// are untouched. Returns the swap count.
Cost fetch(AlgState& state, Element z);

// Elements with b(z) >= pi(z), in decreasing order of current position.
// Fetching them in this order leaves them at the front in their prior
// relative order.
std::vector<Element> qualifying_elements(const AlgState& state);

// One step: access and fetch the cheapest requested element x (l = pi(x)),
// add l/s (or l/c) to every other requested element's budget, then fetch the
// deepest element with b(z) >= pi(z) and re-scan until none qualifies.
StepReport serve(AlgState& state, const Request& request, ServeObserver* observer = nullptr);

}  // namespace mssc
