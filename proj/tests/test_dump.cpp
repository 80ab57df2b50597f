#include "lfs/dump.hpp"

#include <doctest.h>

#include <algorithm>

using namespace lfs;

namespace {

// Halts (output 1) in one step iff the oracle holds the empty word; keeps
// re-asking otherwise. Oracle-sensitive, unlike the shipped corpus machines.
Program ask_empty_program() {
  Program p;
  p.num_states = 3;
  p.start = 0;
  p.accept0 = 1;
  p.accept1 = 2;
  p.transitions.assign(3, {});
  p.transitions[0][0] = {'0', Move::Stay, QAction::Ask, 0, 2};
  p.transitions[0][1] = {'1', Move::Stay, QAction::Ask, 0, 2};
  p.transitions[0][2] = {kBlank, Move::Stay, QAction::Ask, 0, 2};
  for (int s = 0; s < 3; ++s) {
    p.transitions[1][s] = {static_cast<char>(s == 2 ? kBlank : '0' + s), Move::Stay,
                           QAction::None, 1, 0};
    p.transitions[2][s] = {static_cast<char>(s == 2 ? kBlank : '0' + s), Move::Stay,
                           QAction::None, 2, 0};
  }
  return p;
}

Enumeration sensitive_enumeration() {
  Enumeration en = default_enumeration();
  en.planted[0] = ask_empty_program();
  en.names[0] = "ASK_EMPTY";
  return en;
}

std::size_t count_events(const CeResult& r, const std::string& action) {
  return std::count_if(r.trace.begin(), r.trace.end(),
                       [&](const CeEvent& e) { return e.action == action; });
}

}  // namespace

TEST_CASE("dump rule and closure") {
  CESet a = dump(CESet{}, 2, 5);
  CHECK(a.members == std::set<std::uint64_t>{2, 3, 4, 5});
  CHECK(dump_closure_holds(a));
  a = dump(a, 0, 1);
  CHECK(a.members == std::set<std::uint64_t>{0, 1, 2, 3, 4, 5});
  CHECK(dump_closure_holds(a));
  CHECK_THROWS_AS(dump(CESet{}, 5, 2), std::invalid_argument);
  // a hand-edited set with no covering interval fails the check
  CESet bad = a;
  bad.members.insert(9);
  CHECK(!dump_closure_holds(bad));
}

TEST_CASE("candidate prefixes") {
  CHECK(candidate_prefixes(CESet{}, 3) ==
        std::vector<std::string>{"000", "001", "011", "111"});
  CHECK(candidate_prefixes(CESet{}, 0) == std::vector<std::string>{""});
  CESet a = dump(CESet{}, 1, 1);
  auto c = candidate_prefixes(a, 3);
  CHECK(c == std::vector<std::string>{"010", "011", "111"});  // dedup at x=1
  for (std::uint64_t s = 0; s <= 40; ++s)
    CHECK(candidate_prefixes(a, s).size() <= s + 1);
  // origins: the plain prefix carries no dump, the rest remember their x
  auto co = candidates_with_origin(CESet{}, 2);
  CHECK(co[0].bits == "00");
  CHECK(!co[0].dump_from);
  for (std::size_t i = 1; i < co.size(); ++i) CHECK(co[i].dump_from);
}

TEST_CASE("L-step defines psi lexicographically on ties and diagonalizes") {
  Enumeration en = default_enumeration();
  LStrategyState l;
  l.e = 2;  // constant 1, oracle-blind: every candidate converges in 1 step
  l.i = 2;
  LStepResult r = l_strategy_step(en, l, CESet{}, 2);
  CHECK(r.newly_defined == std::vector<std::uint64_t>{0, 1, 2});
  CHECK(!r.diagonal);
  for (auto x : r.newly_defined) {
    CHECK(r.state.psi.at(x).bit == 1);
    CHECK(r.state.psi.at(x).alpha == std::string(2, '0'));
    CHECK(r.state.psi.at(x).realize_dumps.empty());
  }

  // against the constant-0 machine the very first point diagonalizes
  l.i = 1;
  LStepResult d = l_strategy_step(en, l, CESet{}, 2);
  REQUIRE(d.diagonal);
  CHECK(d.diagonal->witness == 0);
  CHECK(d.state.status == LStrategyState::Status::SatisfiedByDiagonal);
}

TEST_CASE("confirmation outcomes") {
  Enumeration en = default_enumeration();
  LStrategyState l;
  l.e = 2;
  l.i = 2;
  CHECK_THROWS_AS(confirm_pending(en, l, 3), std::invalid_argument);

  l = l_strategy_step(en, l, CESet{}, 2).state;
  l.status = LStrategyState::Status::PendingConfirmation;
  l.pending_interval = {0, 3};
  CHECK(confirm_pending(en, l, 3) == ConfirmOutcome::Confirmed);

  LStrategyState waiting = l;
  waiting.i = 5;  // the looper never converges
  CHECK(confirm_pending(en, waiting, 3) == ConfirmOutcome::StillWaiting);

  LStrategyState mism = l;
  mism.i = 1;  // converges to 0 against psi's 1
  CHECK(confirm_pending(en, mism, 3) == ConfirmOutcome::DiagonalizedInstead);
}

TEST_CASE("scheduler: lone P-strategy enumerates its follower") {
  Enumeration en = default_enumeration();
  CeResult r = ce_run(en, {}, {3}, 20);
  CHECK(r.a.members == std::set<std::uint64_t>{2});
  CHECK(r.p_states[0].status == PStrategyState::Status::Enumerated);
  CHECK(r.p_states[0].injuries == 0);
  CHECK(dump_closure_holds(r.a));
  CHECK(count_events(r, "dump-committed") == 1);
}

TEST_CASE("scheduler: no requirements, no enumeration") {
  CeResult r = ce_run(default_enumeration(), {}, {}, 50);
  CHECK(r.a.members.empty());
  CHECK(r.trace.empty());
}

TEST_CASE("scheduler: confirmation gate commits after agreement") {
  Enumeration en = default_enumeration();
  CeResult r = ce_run(en, {{2, 2}}, {3}, 12);
  CHECK(r.a.members == std::set<std::uint64_t>{3, 4, 5});
  CHECK(r.l_states[0].status == LStrategyState::Status::Active);
  CHECK(r.p_states[0].status == PStrategyState::Status::Enumerated);
  // the request precedes the confirmation which precedes the commit
  std::size_t req = 0, conf = 0, commit = 0;
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    if (r.trace[i].action == "dump-requested") req = i;
    if (r.trace[i].action == "confirmed") conf = i;
    if (r.trace[i].action == "dump-committed") commit = i;
  }
  CHECK(req < conf);
  CHECK(conf < commit);
}

TEST_CASE("scheduler: unconfirmable gate blocks the dump forever") {
  Enumeration en = default_enumeration();
  CeResult r = ce_run(en, {{0, 5}}, {3}, 30);  // R_i never converges
  CHECK(r.a.members.empty());
  CHECK(r.l_states[0].status == LStrategyState::Status::PendingConfirmation);
  CHECK(r.p_states[0].status == PStrategyState::Status::WaitingForWe);
  CHECK(count_events(r, "dump-requested") == 1);
  CHECK(count_events(r, "dump-committed") == 0);
}

TEST_CASE("scheduler: diagonal dump commits and injures lower priority") {
  Enumeration en = sensitive_enumeration();
  // Phi_0 halts only on candidates starting with 1, so psi is realized by a
  // dump from 0; R_1 = constant 0 disagrees and the L diagonalizes at once.
  CeResult r = ce_run(en, {{0, 1}}, {3}, 8);
  CHECK(r.l_states[0].status == LStrategyState::Status::SatisfiedByDiagonal);
  CHECK(r.p_states[0].injuries == 1);
  CHECK(r.a.members.count(0) == 1);  // the diagonal's realizing dump
  CHECK(r.p_states[0].status == PStrategyState::Status::Enumerated);
  CHECK(count_events(r, "diagonalized") == 1);
  CHECK(count_events(r, "injured") == 1);
  CHECK(dump_closure_holds(r.a));
  // the follower assigned after the injury-producing stage is fresh: larger
  // than every number mentioned before it
  for (const auto& ev : r.trace)
    if (ev.action == "follower-assigned")
      CHECK(std::stoull(ev.payload.at("x")) > ev.stage - 1);
}

TEST_CASE("round-robin pacing") {
  Enumeration en = default_enumeration();
  CeResult r = ce_run(en, {{2, 2}, {4, 4}}, {3, 5}, 40);
  // slots L0,P0,L1,P1 each act every 4th stage
  REQUIRE(r.activations.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t j = 0; j < r.activations[k].size(); ++j)
      CHECK(r.activations[k][j] == k + 1 + 4 * j);
    CHECK(r.activations[k].size() == 10);
  }
}

TEST_CASE("candidate bound and realized prefix along a full run") {
  Enumeration en = sensitive_enumeration();
  CeResult r = ce_run(en, {{0, 1}, {2, 2}}, {3, 1}, 60);
  CHECK(dump_closure_holds(r.a));
  // replay: at each stage, the set as of that stage admits the final prefix
  // among its candidates
  for (std::uint64_t s = 1; s <= 60; ++s) {
    CESet at_stage;
    for (const auto& iv : r.a.history) {
      if (iv.stage > s) continue;
      for (std::uint64_t y = iv.x; y <= iv.t; ++y) at_stage.members.insert(y);
      at_stage.history.push_back(iv);
    }
    auto cands = candidate_prefixes(at_stage, s);
    CHECK(cands.size() <= s + 1);
    std::string realized = r.a.prefix(s);
    // every member beyond s came from a dump reaching t >= its stage >= x
    CHECK(std::find(cands.begin(), cands.end(), realized) != cands.end());
  }
}
