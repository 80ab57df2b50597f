#include "lfs/finite_extension.hpp"

#include <stdexcept>

namespace lfs {

namespace {

// Every run outcome carries its consumed step count in `steps`
// (BudgetExceeded reports the full budget).
std::uint64_t accounted(const RunResult& r) { return r.steps; }

}  // namespace

FEStageRecord fe_search(const Enumeration& en, const SparsePrefix& sigma,
                        std::uint64_t e, std::uint64_t i, std::uint64_t budget) {
  FEStageRecord rec;
  rec.e = e;
  rec.i = i;
  Program pe = en.program(e);
  Program pi = en.program(i);

  for (std::uint64_t t = 1; t <= budget; ++t) {
    if (t < sigma.length) continue;
    // R_i runs once per (t, n); results reused across all tau.
    std::vector<RunResult> ri(t + 1);
    for (std::uint64_t n = 0; n <= t; ++n) {
      ri[n] = run_plain(pi, index_to_word(Nat(n)), t);
      rec.search_steps += accounted(ri[n]);
    }
    for (const SparsePrefix& tau : enumerate_sparse_prefixes(t, sigma)) {
      OracleView ov = OracleView::finite_prefix(tau.to_bits());
      for (std::uint64_t n = 0; n <= t; ++n) {
        RunResult rphi = run(pe, ov, index_to_word(Nat(n)), t);
        rec.search_steps += accounted(rphi);
        if (rphi.halted() && ri[n].halted() && rphi.bit != ri[n].bit) {
          rec.outcome = FEStageRecord::Outcome::DiagonalFound;
          rec.tau = tau;
          rec.witness = n;
          rec.value_phi = rphi.bit;
          rec.value_r = ri[n].bit;
          return rec;
        }
      }
    }
  }
  rec.outcome = FEStageRecord::Outcome::FallbackBudgetLimited;
  return rec;
}

FEState fe_stage(const Enumeration& en, FEState state, std::uint64_t budget) {
  if (budget == 0) throw std::invalid_argument("fe_stage: budget must be >= 1");
  auto [e, i] = unpair(Nat(state.stage));
  FEStageRecord rec = fe_search(en, state.sigma, to_u64(e), to_u64(i), budget);
  if (rec.outcome == FEStageRecord::Outcome::DiagonalFound) {
    state.sigma = rec.tau;
  } else {
    state.sigma.length += 1;  // sigma_{s+1} = sigma_s 0
  }
  state.stage += 1;
  state.log.push_back(std::move(rec));
  return state;
}

FEState fe_run(const Enumeration& en, std::uint64_t stages, std::uint64_t budget) {
  FEState st;
  for (std::uint64_t s = 0; s < stages; ++s) st = fe_stage(en, std::move(st), budget);
  return st;
}

PsiResult psi_simulate(const Enumeration& en, std::uint64_t e,
                       const SparsePrefix& base, std::uint64_t n,
                       std::uint64_t max_stage) {
  PsiResult res;
  Program pe = en.program(e);
  Word input = index_to_word(Nat(n));
  for (std::uint64_t t = 1; t <= max_stage; ++t) {
    if (t < base.length) continue;
    // Within a stage the fastest convergence wins; ties go to the
    // length-lex-first tau (the enumeration order).
    for (const SparsePrefix& tau : enumerate_sparse_prefixes(t, base)) {
      RunResult r = run(pe, OracleView::finite_prefix(tau.to_bits()), input, t);
      res.psi_steps += r.steps;
      if (r.halted() && (!res.found || r.steps < res.phi_steps)) {
        res.found = true;
        res.value = r.bit;
        res.winner = tau;
        res.phi_steps = r.steps;
      }
    }
    if (res.found) return res;  // full stage accounted, then stop
  }
  return res;
}

}  // namespace lfs
