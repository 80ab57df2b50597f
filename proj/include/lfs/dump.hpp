#pragma once

#include "lfs/machine.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace lfs {

// Finite-stage c.e.-set construction under the dump rule (adding x at stage
// t adds all of [x,t]): L-strategies build a fast functional Psi over the
// bounded family of candidate prefixes, P-strategies hold followers awaiting
// enumeration, and a round-robin scheduler arbitrates with finite injury.
// P-dumps below an active L are gated by R_i-confirmation
// while the L carries on as if the dump had already happened.

struct CESet {
  std::set<std::uint64_t> members;
  struct Interval {
    std::uint64_t stage;
    std::uint64_t x;
    std::uint64_t t;
  };
  std::vector<Interval> history;

  bool contains(std::uint64_t y) const { return members.count(y) != 0; }
  // Characteristic string of length len.
  std::string prefix(std::uint64_t len) const;
  OracleView oracle() const;
};

// A union with the closed interval [x,t]; requires x <= t.
CESet dump(CESet a, std::uint64_t x, std::uint64_t t);

// Checks the dump-closure invariant: members equal the union of recorded
// intervals and every interval is fully contained.
bool dump_closure_holds(const CESet& a);

// A length-s string that could still be a prefix of the final set given the
// dump discipline: chi of A union [x,s) for some x <= s (x = s meaning no
// future dump reaches below s).
struct CandidatePrefix {
  std::string bits;
  std::optional<std::uint64_t> dump_from;  // x realizing this candidate
};

std::vector<CandidatePrefix> candidates_with_origin(const CESet& a, std::uint64_t s);
// Deduplicated candidate strings, lexicographically sorted; count <= s+1.
std::vector<std::string> candidate_prefixes(const CESet& a, std::uint64_t s);

struct PsiEntry {
  int bit = 0;
  std::string alpha;            // the candidate whose computation defined it
  std::uint64_t steps = 0;      // its convergence time
  // Dumps (x, stage-at-definition) needed to make alpha a prefix of A; empty
  // when alpha is already the plain prefix.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> realize_dumps;
};

struct LStrategyState {
  std::uint64_t e = 0;
  std::uint64_t i = 0;
  std::map<std::uint64_t, PsiEntry> psi;  // word index -> entry
  enum class Status { Active, SatisfiedByDiagonal, PendingConfirmation };
  Status status = Status::Active;
  // PendingConfirmation only: the interval [x,t] awaiting commitment.
  std::optional<std::pair<std::uint64_t, std::uint64_t>> pending_interval;
};

struct PStrategyState {
  std::uint64_t e = 0;
  std::optional<std::uint64_t> follower;
  enum class Status { WaitingForFollower, WaitingForWe, Enumerated };
  Status status = Status::WaitingForFollower;
  std::uint64_t injuries = 0;
};

struct DumpRequest {
  std::uint64_t x = 0;
  std::uint64_t t = 0;
};

// A diagonalization decision produced by an L-step: the witness, the alpha
// realizing psi(witness), and the dumps to commit.
struct DiagRequest {
  std::uint64_t witness = 0;
  std::string alpha;
  std::vector<DumpRequest> dumps;
};

struct LStepResult {
  LStrategyState state;
  std::vector<std::uint64_t> newly_defined;  // psi points defined this step
  std::optional<DiagRequest> diagonal;
};

// Extends Psi on all x <= s where it is undefined, simulating Phi_e over all
// candidate prefixes (including pretend candidates while a dump is pending),
// then checks for a diagonalization opportunity against R_i.
LStepResult l_strategy_step(const Enumeration& en, LStrategyState l,
                            const CESet& a, std::uint64_t s);

struct PStepResult {
  PStrategyState state;
  std::optional<DumpRequest> request;
  bool follower_assigned = false;
};

// Assigns a fresh follower (supplied by the scheduler) if none, then waits
// for it to show up in W_e[s].
PStepResult p_strategy_step(const Enumeration& en, PStrategyState p,
                            std::uint64_t s, std::uint64_t fresh);

enum class ConfirmOutcome { Confirmed, StillWaiting, DiagonalizedInstead };

// Requires l.status == PendingConfirmation: waits until R_i converges on all
// psi-defined points; agreement commits the dump, disagreement diagonalizes.
ConfirmOutcome confirm_pending(const Enumeration& en, const LStrategyState& l,
                               std::uint64_t s);

struct CeEvent {
  std::uint64_t stage = 0;
  std::string strategy;  // "L0", "P1", ...
  std::string action;    // follower-assigned, dump-requested, dump-committed,
                         // psi-defined, diagonalized, confirmed, injured
  std::map<std::string, std::string> payload;
};

struct CeResult {
  CESet a;
  std::vector<LStrategyState> l_states;
  std::vector<PStrategyState> p_states;
  std::vector<CeEvent> trace;
  // Per-strategy activation stages, for pacing checks.
  std::vector<std::vector<std::uint64_t>> activations;
};

// Runs the scheduler: strategies are interleaved L0, P0, L1, P1, ... in
// decreasing priority and act in strict round-robin, one per stage. Any
// committed dump injures all lower-priority strategies.
CeResult ce_run(const Enumeration& en,
                const std::vector<std::pair<std::uint64_t, std::uint64_t>>& l_reqs,
                const std::vector<std::uint64_t>& p_reqs, std::uint64_t stages);

}  // namespace lfs
