#pragma once

#include "lfs/sparse.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace lfs {

// Finite-extension construction of a sparse oracle: at stage s+1 = <e,i>,
// search for a sparse extension tau of sigma_s and a witness n on which
// Phi_e^tau and R_i converge to different values (case a); otherwise extend
// by one zero bit (case b, budget-approximated).

struct FEStageRecord {
  enum class Outcome { DiagonalFound, FallbackBudgetLimited, FallbackNoWitnessPossible };
  std::uint64_t e = 0;
  std::uint64_t i = 0;
  Outcome outcome = Outcome::FallbackBudgetLimited;
  SparsePrefix tau;          // DiagonalFound only
  std::uint64_t witness = 0; // word index n, DiagonalFound only
  int value_phi = 0;
  int value_r = 0;
  std::uint64_t search_steps = 0;  // accounted simulated machine steps
};

struct FEState {
  SparsePrefix sigma;
  std::uint64_t stage = 0;
  std::vector<FEStageRecord> log;
};

// The case (a) search for a fixed pair (e,i): scans t = 1..budget, all
// length-t sparse extensions of sigma in length-lex order and all witnesses
// with index <= t. Deterministic: the first hit in (t, tau, n) order wins.
FEStageRecord fe_search(const Enumeration& en, const SparsePrefix& sigma,
                        std::uint64_t e, std::uint64_t i, std::uint64_t budget);

// One construction stage: handles (e,i) = unpair(state.stage) and advances
// the stage counter. Requires budget >= 1.
FEState fe_stage(const Enumeration& en, FEState state, std::uint64_t budget);

FEState fe_run(const Enumeration& en, std::uint64_t stages, std::uint64_t budget);

// The case (b) simulator: at stage t it runs Phi_e^tau(n) with budget t for
// every length-t sparse prefix tau extending base and returns the first
// convergence (ties broken length-lex). psi_steps accounts every simulated
// machine step across all stages.
struct PsiResult {
  bool found = false;
  int value = 0;
  SparsePrefix winner;
  std::uint64_t phi_steps = 0;  // step count of the winning computation
  std::uint64_t psi_steps = 0;  // simulator's accounted cost
};

PsiResult psi_simulate(const Enumeration& en, std::uint64_t e,
                       const SparsePrefix& base, std::uint64_t n,
                       std::uint64_t max_stage);

}  // namespace lfs
