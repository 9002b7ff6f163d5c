#include "mssc/potentials.hpp"

#include <string>

namespace mssc {
namespace {

int level(std::int64_t pos) { return position_decompose(pos).p; }

void require_same_universe(const PairState& a, const PairState& b) {
  if (a.alg.size() != b.alg.size() || a.off.size() != b.off.size() || a.alg.size() != a.off.size() ||
      a.budgets.size() != b.budgets.size() || static_cast<int>(a.budgets.size()) != a.alg.size()) {
    throw Error(ErrorCode::kDomainMismatch, "pair states are over different universes");
  }
}

Rational pow2(int e) { return Rational(std::int64_t{1} << e); }

}  // namespace

PotentialParams PotentialParams::for_r(int r) {
  if (r < 1) throw Error(ErrorCode::kBadConfig, "r must be positive, got " + std::to_string(r));
  PotentialParams params;
  params.r = r;
  params.alpha = 2;
  params.gamma = Rational(5) * r;
  params.beta = Rational(15, 2) * r + 5;
  // 6 beta = 45 r + 30 is an integer; kappa is the least k with 2^k >= it.
  const Rational six_beta = params.beta * 6;
  int k = 0;
  while (pow2(k) < six_beta) ++k;
  params.kappa = k;
  return params;
}

bool PotentialParams::satisfies_relations() const {
  return alpha >= 2 && gamma >= (alpha + 3) * r && beta >= alpha + 3 + Rational(3, 2) * gamma &&
         pow2(kappa) >= beta * 6;
}

Rational PotentialParams::stage1_coefficient() const { return (alpha + 3) * pow2(kappa + 1); }

Rational PotentialParams::stage2_coefficient() const { return beta * pow2(kappa + 3); }

PairState PairState::of(const AlgState& state, const Permutation& off) {
  if (state.size() != off.size()) {
    throw Error(ErrorCode::kDomainMismatch, "online list has " + std::to_string(state.size()) +
                                                " elements, offline list " + std::to_string(off.size()));
  }
  return {state.permutation(), state.budgets(), off};
}

Rational element_phi(std::int64_t pos, std::int64_t off_pos, const Rational& budget,
                     const PotentialParams& params) {
  if (level(pos) <= level(off_pos) + params.kappa) return params.alpha * budget;
  return params.beta * pos - params.gamma * budget;
}

Rational element_psi(std::int64_t pos, std::int64_t off_pos, const PotentialParams& params) {
  if (level(pos) <= level(off_pos) + params.kappa - 1) return 0;
  return params.beta * 2 * position_decompose(pos).q;
}

bool element_is_safe(std::int64_t pos, std::int64_t off_pos, const PotentialParams& params) {
  return level(pos) <= level(off_pos) + params.kappa - 1;
}

Rational phi_z(const PairState& pair, const PotentialParams& params, Element z) {
  const Position pos = pair.alg.position(z);
  return element_phi(pos, pair.off.position(z), pair.budgets.at(z), params);
}

Rational psi_z(const PairState& pair, const PotentialParams& params, Element z) {
  return element_psi(pair.alg.position(z), pair.off.position(z), params);
}

bool is_safe(const PairState& pair, const PotentialParams& params, Element w) {
  return element_is_safe(pair.alg.position(w), pair.off.position(w), params);
}

Potentials total_potential(const PairState& pair, const PotentialParams& params) {
  Potentials total;
  for (Element z = 0; z < pair.size(); ++z) {
    total.phi += phi_z(pair, params, z);
    total.psi += psi_z(pair, params, z);
  }
  return total;
}

const char* stage_name(AuditStage stage) {
  switch (stage) {
    case AuditStage::kStage1: return "stage1";
    case AuditStage::kStage2: return "stage2";
    case AuditStage::kFetch: return "fetch";
  }
  return "?";
}

Rational AuditVerdict::lhs() const { return delta_alg + delta_phi + delta_psi; }

AuditVerdict audit_stage1(const PairState& before, const PairState& after, const StepReport& step,
                          Cost off_access, const PotentialParams& params) {
  require_same_universe(before, after);
  if (!(before.off == after.off)) {
    throw Error(ErrorCode::kDomainMismatch, "offline list changed during stage 1");
  }
  const Potentials p0 = total_potential(before, params);
  const Potentials p1 = total_potential(after, params);

  AuditVerdict v;
  v.stage = AuditStage::kStage1;
  v.delta_alg = step.access + step.reorder;
  v.delta_phi = p1.phi - p0.phi;
  v.delta_psi = p1.psi - p0.psi;
  v.delta_off = off_access;
  v.bound = params.stage1_coefficient() * off_access;
  v.pass = v.lhs() <= v.bound;
  return v;
}

AuditVerdict audit_stage2(const PairState& before, const PairState& after, Element moved,
                          const PotentialParams& params) {
  require_same_universe(before, after);
  if (!(before.alg == after.alg) || before.budgets != after.budgets) {
    throw Error(ErrorCode::kDomainMismatch, "online state changed during stage 2");
  }
  const Position from = before.off.position(moved);
  if (!(move_to_front(before.off, moved).first == after.off)) {
    throw Error(ErrorCode::kDomainMismatch, "offline list change is not a move of element " +
                                                std::to_string(moved) + " to the front");
  }

  AuditVerdict v;
  v.stage = AuditStage::kStage2;
  v.delta_alg = 0;
  v.delta_off = from - 1;
  for (Element z = 0; z < before.size(); ++z) {
    const Rational dphi = phi_z(after, params, z) - phi_z(before, params, z);
    const Rational dpsi = psi_z(after, params, z) - psi_z(before, params, z);
    v.delta_phi += dphi;
    v.delta_psi += dpsi;
    if (z != moved && before.off.position(z) < from && (dphi > 0 || dpsi > 0)) {
      v.detail += "element " + std::to_string(z) + " shifted back on offline list with dPhi=" + dphi.str() +
                  " dPsi=" + dpsi.str() + "; ";
    }
  }
  v.bound = params.stage2_coefficient() * (from - 1);
  v.pass = v.lhs() <= v.bound && v.detail.empty();
  return v;
}

AuditVerdict audit_fetch(const PairState& before, const PairState& after, Element z, Cost fetch_cost,
                         const PotentialParams& params) {
  require_same_universe(before, after);
  if (!(before.off == after.off)) {
    throw Error(ErrorCode::kDomainMismatch, "offline list changed during a fetch");
  }
  const Position from = before.alg.position(z);

  AuditVerdict v;
  v.stage = AuditStage::kFetch;
  v.delta_alg = fetch_cost;
  v.delta_off = 0;
  const Rational three_beta = params.beta * 3;
  for (Element w = 0; w < before.size(); ++w) {
    const Rational dphi = phi_z(after, params, w) - phi_z(before, params, w);
    const Rational dpsi = psi_z(after, params, w) - psi_z(before, params, w);
    v.delta_psi += dpsi;
    if (w == z) continue;
    v.delta_phi += dphi;
    if (before.alg.position(w) < from) {
      const Rational limit = is_safe(before, params, w) ? Rational(0) : three_beta;
      if (dphi + dpsi > limit) {
        v.detail += "shifted element " + std::to_string(w) + " has dPhi+dPsi=" + (dphi + dpsi).str() +
                    " > " + limit.str() + "; ";
      }
    }
  }
  v.bound = Rational(2) * from;
  v.pass = v.lhs() <= v.bound && v.detail.empty();
  return v;
}

}  // namespace mssc
