#include "lfs/dump.hpp"

#include <algorithm>
#include <stdexcept>

namespace lfs {

std::string CESet::prefix(std::uint64_t len) const {
  std::string s(len, '0');
  for (std::uint64_t m : members) {
    if (m >= len) break;
    s[m] = '1';
  }
  return s;
}

OracleView CESet::oracle() const {
  return OracleView::generated([members = members](const Word& w) {
    if (w.size() >= 63) return false;
    std::uint64_t val = 0;
    for (char c : w) val = (val << 1) | (c == '1' ? 1u : 0u);
    std::uint64_t idx = (std::uint64_t{1} << w.size()) - 1 + val;
    return members.count(idx) != 0;
  });
}

CESet dump(CESet a, std::uint64_t x, std::uint64_t t) {
  if (x > t) throw std::invalid_argument("dump: x > t");
  for (std::uint64_t y = x; y <= t; ++y) a.members.insert(y);
  a.history.push_back({t, x, t});
  return a;
}

bool dump_closure_holds(const CESet& a) {
  std::set<std::uint64_t> from_history;
  for (const auto& iv : a.history)
    for (std::uint64_t y = iv.x; y <= iv.t; ++y) from_history.insert(y);
  return from_history == a.members;
}

std::vector<CandidatePrefix> candidates_with_origin(const CESet& a, std::uint64_t s) {
  std::vector<CandidatePrefix> out;
  std::set<std::string> seen;
  // x = s first (no dump), then descending; duplicates keep the smallest dump.
  for (std::uint64_t x = s + 1; x-- > 0;) {
    std::string bits = a.prefix(s);
    for (std::uint64_t y = x; y < s; ++y) bits[y] = '1';
    if (!seen.insert(bits).second) continue;
    CandidatePrefix c;
    c.bits = std::move(bits);
    if (x < s) c.dump_from = x;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::string> candidate_prefixes(const CESet& a, std::uint64_t s) {
  std::vector<std::string> out;
  for (auto& c : candidates_with_origin(a, s)) out.push_back(c.bits);
  std::sort(out.begin(), out.end());
  return out;
}

LStepResult l_strategy_step(const Enumeration& en, LStrategyState l,
                            const CESet& a, std::uint64_t s) {
  LStepResult res;
  Program pe = en.program(l.e);
  Program pi = en.program(l.i);

  // Candidate pool: the plain candidates, augmented (while a dump is
  // pending) with the candidates of the as-if set.
  struct Cand {
    std::string bits;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> realize;
  };
  std::vector<Cand> pool;
  std::set<std::string> seen;
  for (auto& c : candidates_with_origin(a, s)) {
    if (!seen.insert(c.bits).second) continue;
    Cand cd;
    cd.bits = c.bits;
    if (c.dump_from) cd.realize.push_back({*c.dump_from, s});
    pool.push_back(std::move(cd));
  }
  if (l.status == LStrategyState::Status::PendingConfirmation && l.pending_interval) {
    auto [px, pt] = *l.pending_interval;
    CESet pretend = dump(a, px, pt);
    for (auto& c : candidates_with_origin(pretend, s)) {
      if (!seen.insert(c.bits).second) continue;
      Cand cd;
      cd.bits = c.bits;
      cd.realize.push_back({px, pt});
      if (c.dump_from) cd.realize.push_back({*c.dump_from, s});
      pool.push_back(std::move(cd));
    }
  }

  for (std::uint64_t x = 0; x <= s; ++x) {
    if (l.psi.count(x)) continue;
    Word input = index_to_word(Nat(x));
    const Cand* best = nullptr;
    RunResult best_run;
    for (const Cand& cd : pool) {
      RunResult r = run(pe, OracleView::finite_prefix(cd.bits), input, s);
      if (!r.halted()) continue;
      if (!best || r.steps < best_run.steps ||
          (r.steps == best_run.steps && cd.bits < best->bits)) {
        best = &cd;
        best_run = r;
      }
    }
    if (best) {
      PsiEntry entry;
      entry.bit = best_run.bit;
      entry.alpha = best->bits;
      entry.steps = best_run.steps;
      entry.realize_dumps = best->realize;
      l.psi.emplace(x, std::move(entry));
      res.newly_defined.push_back(x);
    }
  }

  // Diagonalization: the first psi-defined x where R_i converges to a
  // different value wins; alpha must still be realizable against A.
  for (const auto& [x, entry] : l.psi) {
    RunResult r = run_plain(pi, index_to_word(Nat(x)), s);
    if (!r.halted() || r.bit == entry.bit) continue;
    CESet sim = a;
    for (auto [dx, dt] : entry.realize_dumps) sim = dump(sim, dx, std::max(dt, s));
    if (sim.prefix(entry.alpha.size()) != entry.alpha) continue;  // stale alpha
    DiagRequest dr;
    dr.witness = x;
    dr.alpha = entry.alpha;
    for (auto [dx, dt] : entry.realize_dumps) dr.dumps.push_back({dx, std::max(dt, s)});
    res.diagonal = std::move(dr);
    l.status = LStrategyState::Status::SatisfiedByDiagonal;
    l.pending_interval.reset();
    break;
  }

  res.state = std::move(l);
  return res;
}

PStepResult p_strategy_step(const Enumeration& en, PStrategyState p,
                            std::uint64_t s, std::uint64_t fresh) {
  PStepResult res;
  if (p.status == PStrategyState::Status::Enumerated) {
    res.state = std::move(p);
    return res;
  }
  if (!p.follower) {
    p.follower = fresh;
    p.status = PStrategyState::Status::WaitingForWe;
    res.follower_assigned = true;
    res.state = std::move(p);
    return res;
  }
  std::uint64_t x = *p.follower;
  if (x <= s && run_plain(en.program(p.e), index_to_word(Nat(x)), s).halted())
    res.request = DumpRequest{x, s};
  res.state = std::move(p);
  return res;
}

ConfirmOutcome confirm_pending(const Enumeration& en, const LStrategyState& l,
                               std::uint64_t s) {
  if (l.status != LStrategyState::Status::PendingConfirmation)
    throw std::invalid_argument("confirm_pending: strategy not pending");
  Program pi = en.program(l.i);
  bool all_converged = true;
  for (const auto& [x, entry] : l.psi) {
    RunResult r = run_plain(pi, index_to_word(Nat(x)), s);
    if (!r.halted()) {
      all_converged = false;
      continue;
    }
    if (r.bit != entry.bit) return ConfirmOutcome::DiagonalizedInstead;
  }
  return all_converged ? ConfirmOutcome::Confirmed : ConfirmOutcome::StillWaiting;
}

namespace {

struct Slot {
  bool is_l;
  std::size_t idx;  // into l_states / p_states
  std::string id;
};

}  // namespace

CeResult ce_run(const Enumeration& en,
                const std::vector<std::pair<std::uint64_t, std::uint64_t>>& l_reqs,
                const std::vector<std::uint64_t>& p_reqs, std::uint64_t stages) {
  CeResult res;
  std::vector<Slot> slots;
  for (std::size_t j = 0; j < std::max(l_reqs.size(), p_reqs.size()); ++j) {
    if (j < l_reqs.size()) {
      LStrategyState l;
      l.e = l_reqs[j].first;
      l.i = l_reqs[j].second;
      res.l_states.push_back(l);
      slots.push_back({true, res.l_states.size() - 1, "L" + std::to_string(j)});
    }
    if (j < p_reqs.size()) {
      PStrategyState p;
      p.e = p_reqs[j];
      res.p_states.push_back(p);
      slots.push_back({false, res.p_states.size() - 1, "P" + std::to_string(j)});
    }
  }
  res.activations.assign(slots.size(), {});

  struct Pending {
    std::size_t p_slot;
    DumpRequest req;
    std::set<std::size_t> waiting;  // gater slot indices
  };
  std::optional<Pending> pending;

  std::uint64_t next_fresh = 1;
  auto mention = [&](std::uint64_t n) { next_fresh = std::max(next_fresh, n + 1); };

  auto emit = [&](std::uint64_t stage, const std::string& strat, const std::string& action,
                  std::map<std::string, std::string> payload) {
    res.trace.push_back({stage, strat, action, std::move(payload)});
  };

  auto check_invariants = [&](std::uint64_t s) {
    if (!dump_closure_holds(res.a)) throw std::logic_error("ce_run: dump closure violated");
    if (candidate_prefixes(res.a, s).size() > s + 1)
      throw std::logic_error("ce_run: candidate bound violated");
  };

  auto drop_pending = [&]() {
    if (!pending) return;
    for (std::size_t g : pending->waiting) {
      LStrategyState& gl = res.l_states[slots[g].idx];
      if (gl.status == LStrategyState::Status::PendingConfirmation) {
        gl.status = LStrategyState::Status::Active;
        gl.pending_interval.reset();
      }
    }
    pending.reset();
  };

  auto injure_below = [&](std::size_t committer, std::uint64_t s) {
    for (std::size_t j = committer + 1; j < slots.size(); ++j) {
      if (slots[j].is_l) {
        LStrategyState& lj = res.l_states[slots[j].idx];
        lj.psi.clear();
        lj.status = LStrategyState::Status::Active;
        lj.pending_interval.reset();
        if (pending) pending->waiting.erase(j);
      } else {
        PStrategyState& pj = res.p_states[slots[j].idx];
        pj.follower.reset();
        pj.status = PStrategyState::Status::WaitingForFollower;
        pj.injuries += 1;
      }
      emit(s, slots[j].id, "injured", {});
    }
    if (pending && pending->p_slot > committer) drop_pending();
  };

  auto commit_pending = [&](std::uint64_t s) {
    if (!pending) return;
    Pending pd = *pending;
    pending.reset();
    res.a = dump(res.a, pd.req.x, std::max(pd.req.t, s));
    mention(std::max(pd.req.t, s));
    res.p_states[slots[pd.p_slot].idx].status = PStrategyState::Status::Enumerated;
    emit(s, slots[pd.p_slot].id, "dump-committed",
         {{"x", std::to_string(pd.req.x)},
          {"t", std::to_string(std::max(pd.req.t, s))}});
    check_invariants(s);
  };

  for (std::uint64_t s = 1; s <= stages && !slots.empty(); ++s) {
    mention(s);
    std::size_t k = static_cast<std::size_t>((s - 1) % slots.size());
    res.activations[k].push_back(s);
    const Slot& slot = slots[k];

    if (slot.is_l) {
      LStrategyState& l = res.l_states[slot.idx];
      if (l.status == LStrategyState::Status::SatisfiedByDiagonal) continue;
      LStepResult r = l_strategy_step(en, l, res.a, s);
      l = r.state;
      for (std::uint64_t x : r.newly_defined)
        emit(s, slot.id, "psi-defined",
             {{"x", std::to_string(x)},
              {"bit", std::to_string(l.psi.at(x).bit)},
              {"alpha", l.psi.at(x).alpha}});
      if (r.diagonal) {
        for (const DumpRequest& d : r.diagonal->dumps) {
          res.a = dump(res.a, d.x, d.t);
          mention(d.t);
          emit(s, slot.id, "dump-committed",
               {{"x", std::to_string(d.x)}, {"t", std::to_string(d.t)}});
        }
        emit(s, slot.id, "diagonalized",
             {{"witness", std::to_string(r.diagonal->witness)},
              {"alpha", r.diagonal->alpha}});
        mention(r.diagonal->witness);
        check_invariants(s);
        if (pending) pending->waiting.erase(k);
        injure_below(k, s);
        if (pending && pending->waiting.empty()) commit_pending(s);
      } else if (l.status == LStrategyState::Status::PendingConfirmation) {
        ConfirmOutcome oc = confirm_pending(en, l, s);
        if (oc == ConfirmOutcome::Confirmed) {
          l.status = LStrategyState::Status::Active;
          l.pending_interval.reset();
          emit(s, slot.id, "confirmed", {});
          if (pending) {
            pending->waiting.erase(k);
            if (pending->waiting.empty()) commit_pending(s);
          }
        }
        // StillWaiting: nothing; DiagonalizedInstead cannot be reached here
        // because l_strategy_step checks the same condition first.
      }
    } else {
      PStrategyState& p = res.p_states[slot.idx];
      if (p.status == PStrategyState::Status::Enumerated) continue;
      PStepResult r = p_strategy_step(en, p, s, next_fresh);
      p = r.state;
      if (r.follower_assigned) {
        mention(*p.follower);
        emit(s, slot.id, "follower-assigned", {{"x", std::to_string(*p.follower)}});
      }
      if (r.request && !pending) {
        emit(s, slot.id, "dump-requested",
             {{"x", std::to_string(r.request->x)}, {"t", std::to_string(r.request->t)}});
        std::set<std::size_t> gaters;
        for (std::size_t j = 0; j < k; ++j)
          if (slots[j].is_l &&
              res.l_states[slots[j].idx].status == LStrategyState::Status::Active)
            gaters.insert(j);
        if (gaters.empty()) {
          res.a = dump(res.a, r.request->x, r.request->t);
          mention(r.request->t);
          p.status = PStrategyState::Status::Enumerated;
          emit(s, slot.id, "dump-committed",
               {{"x", std::to_string(r.request->x)},
                {"t", std::to_string(r.request->t)}});
          check_invariants(s);
        } else {
          pending = Pending{k, *r.request, gaters};
          for (std::size_t g : gaters) {
            LStrategyState& gl = res.l_states[slots[g].idx];
            gl.status = LStrategyState::Status::PendingConfirmation;
            gl.pending_interval = {r.request->x, r.request->t};
          }
        }
      }
    }
  }
  return res;
}

}  // namespace lfs
