#include "lfs/blum.hpp"

#include <doctest.h>

using namespace lfs;

namespace {

// From-scratch reconstruction with no threaded registry: for each length the
// set of inactive indices is recomputed by replaying all previous lengths.
BuildRResult naive_build_R(const Enumeration& en, const BudgetSchedule& sched,
                           std::uint64_t max_len) {
  BuildRResult out;
  out.r.horizon = max_len;
  out.reg.horizon = max_len;
  auto winner_at = [&](std::uint64_t n, const std::set<std::uint64_t>& inactive)
      -> std::optional<std::tuple<std::uint64_t, std::uint64_t, int>> {
    for (std::uint64_t e = 0; e <= n; ++e) {
      if (inactive.count(e)) continue;
      Nat b = sched.budget(e, n);
      std::uint64_t cap = b > kStepCap ? kStepCap : static_cast<std::uint64_t>(b);
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        RunResult r = run_plain(en.program(e), word_of(n, v), cap);
        if (r.halted()) return {{e, v, r.bit}};
      }
    }
    return std::nullopt;
  };
  for (std::uint64_t n = 0; n <= max_len; ++n) {
    std::set<std::uint64_t> inactive;
    for (std::uint64_t m = 0; m < n; ++m)  // recompute activity from scratch
      if (auto w = winner_at(m, inactive)) inactive.insert(std::get<0>(*w));
    auto w = winner_at(n, inactive);
    if (w) {
      auto [e, v, bit] = *w;
      out.r.one_value[n] = bit == 0 ? std::optional<std::uint64_t>(v) : std::nullopt;
      out.reg.records[e] = {word_of(n, v), bit, n};
    } else {
      out.r.one_value[n] = std::nullopt;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("construction under the doubling schedule") {
  Enumeration en = default_enumeration();
  auto built = build_R(en, BudgetSchedule::simple_2exp(), 8);
  // hand-run: the first five planted machines fall, one per length, smallest
  // index first; everything past them loops
  CHECK(theta(built.reg, 0) == Word(""));
  CHECK(theta(built.reg, 1) == Word("0"));
  CHECK(theta(built.reg, 2) == Word("00"));
  CHECK(theta(built.reg, 3) == Word("000"));
  CHECK(theta(built.reg, 4) == Word("0000"));
  CHECK(!theta(built.reg, 5));
  // outputs: query machine and const-0 and parity give 0 (R = 1), const-1
  // and halt-all give 1 (R = 0)
  CHECK(built.r.bit("") == 1);
  CHECK(built.r.bit("0") == 1);
  CHECK(built.r.bit("00") == 0);
  CHECK(built.r.bit("000") == 0);
  CHECK(built.r.bit("0000") == 1);
  CHECK(built.r.bit("0101") == 0);
  CHECK(built.r.bit("00000") == 0);
  CHECK_THROWS_AS(built.r.bit("000000000"), std::out_of_range);
}

TEST_CASE("one string per length, both schedules") {
  Enumeration en = default_enumeration();
  for (auto sched : {BudgetSchedule::simple_2exp(), BudgetSchedule::iterated()}) {
    auto built = build_R(en, sched, 10);
    for (std::uint64_t n = 0; n <= 10; ++n) {
      std::uint64_t count = 0;
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v)
        count += built.r.bit(word_of(n, v));
      CHECK(count <= 1);
    }
    // registry: one deactivation per length, budget/value conditions hold
    std::set<std::uint64_t> lengths;
    for (const auto& [i, rec] : built.reg.records) {
      CHECK(lengths.insert(rec.length).second);
      CHECK(i <= rec.length);
      Nat b = sched.budget(i, rec.length);
      std::uint64_t cap = b > kStepCap ? kStepCap : static_cast<std::uint64_t>(b);
      RunResult r = run_plain(en.program(i), rec.x, cap);
      CHECK(r.halted());
      CHECK(r.bit == rec.bit);
      CHECK(built.r.bit(rec.x) == 1 - rec.bit);
    }
  }
}

TEST_CASE("naive reconstruction matches") {
  Enumeration en = default_enumeration();
  for (auto sched : {BudgetSchedule::simple_2exp(), BudgetSchedule::iterated()}) {
    auto a = build_R(en, sched, 8);
    auto b = naive_build_R(en, sched, 8);
    CHECK(a.r.one_value == b.r.one_value);
    REQUIRE(a.reg.records.size() == b.reg.records.size());
    for (const auto& [i, rec] : a.reg.records) {
      CHECK(b.reg.records.at(i).x == rec.x);
      CHECK(b.reg.records.at(i).bit == rec.bit);
    }
  }
}

TEST_CASE("empty enumeration yields the all-zero set") {
  Enumeration empty;
  auto built = build_R(empty, BudgetSchedule::simple_2exp(), 3);
  CHECK(built.reg.records.empty());
  for (std::uint64_t n = 0; n <= 3; ++n)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v)
      CHECK(built.r.bit(word_of(n, v)) == 0);
}

TEST_CASE("table and registry serialization round trip") {
  Enumeration en = default_enumeration();
  auto built = build_R(en, BudgetSchedule::iterated(), 7);
  RTable r2 = parse_rtable(serialize_rtable(built.r));
  CHECK(r2.one_value == built.r.one_value);
  CHECK(r2.horizon == built.r.horizon);
  DiagRegistry g2 = parse_registry(serialize_registry(built.reg), built.reg.horizon);
  CHECK(g2.records.size() == built.reg.records.size());
  for (const auto& [i, rec] : built.reg.records) {
    CHECK(g2.records.at(i).x == rec.x);
    CHECK(g2.records.at(i).bit == rec.bit);
  }
  CHECK_THROWS_AS(parse_rtable(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_registry("1 2\n", 5), std::invalid_argument);
}

TEST_CASE("iterated budgets") {
  auto sched = BudgetSchedule::iterated();
  CHECK(sched.budget(3, 3) == 3);          // f^0
  CHECK(sched.budget(2, 3) == 9);          // f^1
  CHECK(sched.budget(1, 3) == 81);         // f^2
  CHECK(sched.budget(0, 2) == 16);         // ((2)^2)^2
  CHECK(BudgetSchedule::simple_2exp().budget(7, 10) == 1024);
  CHECK_THROWS_AS(sched.budget(4, 3), std::invalid_argument);
  // astronomical but representable
  CHECK(sched.budget(0, 8) == boost::multiprecision::pow(Nat(8), 256));
}

TEST_CASE("advice and the avoider") {
  Enumeration en = default_enumeration();
  auto built = build_R(en, BudgetSchedule::iterated(), 8);
  CHECK(advice(built.reg, 0).sigma.empty());
  CHECK(advice(built.reg, 2).sigma == std::set<std::uint64_t>{0, 1});
  CHECK(advice(built.reg, 9).sigma == std::set<std::uint64_t>{0, 1, 2, 3, 4});

  CHECK(f_avoider(built.reg, 0) == 0);  // nothing to avoid
  // second projections of the theta indices: "0"->0, "00"->0, "000"->1,
  // "0000"->0, "00000"->0 under the pairing orientation
  CHECK(f_avoider(built.reg, 2) == 1);
  CHECK(f_avoider(built.reg, 4) == 2);
  for (std::uint64_t k = 0; k <= 6; ++k) {
    std::uint64_t fk = f_avoider(built.reg, k);
    CHECK(fk <= k);
    for (std::uint64_t i = 0; i < k; ++i)
      if (auto t = theta(built.reg, i))
        CHECK(proj3(2, word_to_index(*t)) != fk);
  }
}

TEST_CASE("advice-based recomputation") {
  Enumeration en = default_enumeration();
  auto sched = BudgetSchedule::iterated();
  auto built = build_R(en, sched, 8);
  AdviceList adv = advice(built.reg, 2);
  CHECK(phase1_cutoff(en, sched, adv) == 2);

  for (std::uint64_t n = 3; n <= 8; ++n)
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); v += (n < 6 ? 1 : 7)) {
      Word x = word_of(n, v);
      FastRResult fr = fast_R_with_advice(en, sched, adv, x, built.r);
      CHECK(fr.bit == built.r.bit(x));
      CHECK(fr.measured < full_replay_steps(en, sched, x));
    }

  // below the cutoff the procedure refuses
  CHECK_THROWS_AS(fast_R_with_advice(en, sched, adv, "00", built.r),
                  std::invalid_argument);

  // boundary: k = |x| leaves only the top index to simulate
  AdviceList top = advice(built.reg, 8);
  Word x8 = word_of(8, 0);
  CHECK(fast_R_with_advice(en, sched, top, x8, built.r).bit == built.r.bit(x8));

  // an advice list that omits a low index that does get diagonalized
  AdviceList lying;
  lying.k = 2;
  lying.sigma = {0};  // claims index 1 never falls; it falls at length 1
  lying.horizon = 8;
  CHECK_THROWS_AS(fast_R_with_advice(en, sched, lying, word_of(8, 0), built.r),
                  AdviceTooOptimistic);
}

TEST_CASE("tripling functional paths") {
  Enumeration en = default_enumeration();
  auto sched = BudgetSchedule::iterated();
  auto built = build_R(en, sched, 10);

  // exhaustive sweep: every decodable x agrees with the direct table
  for (std::uint64_t xi = 0; xi <= 300; ++xi) {
    PsiDncResult pr = psi_dnc(en, Nat(xi), built.reg, sched, built.r);
    CHECK(pr.bit == built.r.bit(index_to_word(Nat(xi))));
  }

  for (std::uint64_t k = 0; k <= 4; ++k) {
    std::uint64_t fk = f_avoider(built.reg, k);
    Nat fast_x = triple_code(k, fk, k + 1);
    PsiDncResult pr = psi_dnc(en, fast_x, built.reg, sched, built.r);
    CHECK(pr.path == PsiPath::FastPath);
    CHECK(pr.bit == built.r.bit(index_to_word(fast_x)));

    PsiDncResult budget = psi_dnc(en, triple_code(k, fk, 0), built.reg, sched, built.r);
    CHECK(budget.path == PsiPath::FallbackBudget);

    PsiDncResult mism =
        psi_dnc(en, triple_code(k, fk + 1, k + 1), built.reg, sched, built.r);
    CHECK(mism.path == PsiPath::FallbackMismatch);
    CHECK(mism.bit == built.r.bit(index_to_word(triple_code(k, fk + 1, k + 1))));
  }
}

TEST_CASE("block functional") {
  Enumeration en = default_enumeration();
  auto built = build_R(en, BudgetSchedule::simple_2exp(), 6);
  std::string z = "010110";  // blocks: "0", "10", "110"
  SchnorrResult a = schnorr_psi(z, "10", built.r);
  CHECK(a.bit == 0);
  CHECK(a.fast);
  SchnorrResult b = schnorr_psi(z, "01", built.r);
  CHECK(!b.fast);
  CHECK(b.bit == built.r.bit("01"));
  SchnorrResult c = schnorr_psi(z, "110", built.r);
  CHECK(c.fast);  // the third block is exactly "110"
  CHECK_THROWS_AS(schnorr_psi("0101", "110", built.r), std::invalid_argument);
}

TEST_CASE("exact block-test measures") {
  Enumeration en = default_enumeration();
  auto built = build_R(en, BudgetSchedule::simple_2exp(), 10);
  for (std::uint64_t n = 0; n <= 10; ++n) {
    Rational m = cn_measure(n, built.r);
    // bound: m <= 2^{-n}, exactly, with equality iff a 1-string exists
    CHECK(m.num * (Nat(1) << n) <= m.den);
    bool has_one = built.r.one_value.at(n).has_value();
    if (has_one) {
      CHECK(m.num == 1);
      CHECK(m.den == Nat(1) << n);
    } else {
      CHECK(m.num == 0);
    }
  }
  CHECK(cn_measure(0, built.r).str() == "1/1");
  CHECK(cn_measure(4, built.r).str() == "1/16");
  CHECK_THROWS_AS(cn_measure(21, built.r), std::invalid_argument);
}
