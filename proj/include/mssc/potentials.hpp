#pragma once

#include <string>
#include <vector>

#include "mssc/core.hpp"
#include "mssc/dlm.hpp"
#include "mssc/rational.hpp"

namespace mssc {

// Constants of the amortized analysis for maximum request size r:
// alpha = 2, gamma = 5r, beta = 7.5r + 5, kappa = ceil(log2(6 beta)).
struct PotentialParams {
  int r = 1;
  Rational alpha;
  Rational gamma;
  Rational beta;
  int kappa = 0;

  static PotentialParams for_r(int r);  // throws BadConfig for r < 1

  // alpha >= 2, gamma >= (3+alpha) r, beta >= 3 + alpha + 1.5 gamma, 2^kappa >= 6 beta.
  bool satisfies_relations() const;

  // (3 + alpha) * 2^(kappa+1): per-step multiplier of the offline access cost.
  Rational stage1_coefficient() const;
  // beta * 2^(kappa+3): multiplier of the offline move cost.
  Rational stage2_coefficient() const;
};

// Snapshot of the online list (with budgets) against an offline list.
struct PairState {
  Permutation alg;
  std::vector<Rational> budgets;
  Permutation off;

  static PairState of(const AlgState& state, const Permutation& off);
  int size() const { return alg.size(); }
};

// Per-element potentials as functions of (online position, offline position,
// budget). These carry the whole definition; the PairState overloads below
// only look the arguments up.
Rational element_phi(std::int64_t pos, std::int64_t off_pos, const Rational& budget,
                     const PotentialParams& params);
Rational element_psi(std::int64_t pos, std::int64_t off_pos, const PotentialParams& params);
bool element_is_safe(std::int64_t pos, std::int64_t off_pos, const PotentialParams& params);

Rational phi_z(const PairState& pair, const PotentialParams& params, Element z);
Rational psi_z(const PairState& pair, const PotentialParams& params, Element z);
bool is_safe(const PairState& pair, const PotentialParams& params, Element w);

struct Potentials {
  Rational phi;
  Rational psi;
  Rational sum() const { return phi + psi; }
};

Potentials total_potential(const PairState& pair, const PotentialParams& params);

enum class AuditStage { kStage1, kStage2, kFetch };
const char* stage_name(AuditStage stage);

struct AuditVerdict {
  AuditStage stage = AuditStage::kStage1;
  Rational delta_alg;  // online cost charged in the audited interval
  Rational delta_phi;
  Rational delta_psi;
  Rational delta_off;  // offline cost charged in the audited interval
  Rational bound;      // right-hand side the left-hand side is compared with
  bool pass = true;
  // Non-empty when a per-element sub-check failed (shifted-element bounds).
  std::string detail;

  // Left-hand side of the audited inequality.
  Rational lhs() const;
};

// One serve() on the online side with the offline list fixed:
// dAlg + dPhi + dPsi <= (3 + alpha) 2^(kappa+1) * off_access.
AuditVerdict audit_stage1(const PairState& before, const PairState& after, const StepReport& step,
                          Cost off_access, const PotentialParams& params);

// The offline list moves `moved` to its front, online state fixed:
// dPhi + dPsi <= beta 2^(kappa+3) (pi*(moved) - 1). Also checks that each
// element shifted back on the offline list has dPhi_w <= 0 and dPsi_w <= 0.
AuditVerdict audit_stage2(const PairState& before, const PairState& after, Element moved,
                          const PotentialParams& params);

// One fetch(z) on the online side:
// cost + dPsi + sum_{w != z} dPhi_w <= 2 pi(z). Also checks each shifted
// element: dPhi_w + dPsi_w <= 0 if it was safe, <= 3 beta otherwise.
AuditVerdict audit_fetch(const PairState& before, const PairState& after, Element z, Cost fetch_cost,
                         const PotentialParams& params);

}  // namespace mssc
