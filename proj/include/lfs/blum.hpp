#pragma once

#include "lfs/machine.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace lfs {

// The one-string-per-length diagonal set R, its deactivation registry,
// advice-based fast recomputation, the avoidance function, the tripling
// functional and the exact block-test measures.

struct BudgetSchedule {
  enum class Mode { Simple2Exp, Iterated };
  Mode mode = Mode::Simple2Exp;
  // Iterated only; defaults to n^2.
  std::function<Nat(const Nat&)> f;

  static BudgetSchedule simple_2exp();
  static BudgetSchedule iterated();  // f(n) = n^2
  static BudgetSchedule iterated(std::function<Nat(const Nat&)> f);

  // Simple2Exp: 2^len. Iterated: f^(len-e)(len), requires e <= len.
  Nat budget(std::uint64_t e, std::uint64_t len) const;
};

// Actual runs saturate astronomical budgets to this many interpreter steps;
// accounting still charges the full semantic budget on non-convergence.
constexpr std::uint64_t kStepCap = std::uint64_t{1} << 22;

struct RTable {
  // Per length: binary value of the unique 1-valued string, if any.
  std::map<std::uint64_t, std::optional<std::uint64_t>> one_value;
  std::uint64_t horizon = 0;

  int bit(const Word& x) const;  // throws std::out_of_range past the horizon
};

std::string serialize_rtable(const RTable& r);
RTable parse_rtable(const std::string& text);

struct DiagRegistry {
  struct Record {
    Word x;        // the string diagonalized on
    int bit = 0;   // the machine's output there; R(x) = 1 - bit
    std::uint64_t length = 0;
  };
  std::map<std::uint64_t, Record> records;  // index -> theta(index)
  std::uint64_t horizon = 0;

  bool active(std::uint64_t e) const { return records.count(e) == 0; }
};

std::string serialize_registry(const DiagRegistry& reg);
DiagRegistry parse_registry(const std::string& text, std::uint64_t horizon);

struct BuildRResult {
  RTable r;
  DiagRegistry reg;
  Nat probe_steps;  // accounted simulation cost of the whole construction
};

// For each length n = 0..max_len, the lexicographically smallest pair (e, x)
// with e <= n active and run_plain(e, x, budget(e, n)) halting - e first,
// then x in length-lex - wins: R(x) = 1 - output, e is deactivated, theta(e)
// = x. Lengths with no winner get R identically 0.
BuildRResult build_R(const Enumeration& en, const BudgetSchedule& schedule,
                     std::uint64_t max_len);

std::optional<Word> theta(const DiagRegistry& reg, std::uint64_t i);

struct AdviceList {
  std::uint64_t k = 0;
  std::set<std::uint64_t> sigma;  // indices < k deactivated by the horizon
  std::uint64_t horizon = 0;
};

AdviceList advice(const DiagRegistry& reg, std::uint64_t k);

// Minimum natural excluded from {proj3(2, index(theta(i))) : i < k}.
std::uint64_t f_avoider(const DiagRegistry& reg, std::uint64_t k);

struct AdviceTooOptimistic : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// First length after which every member of sigma_k is inactive under a full
// construction replay.
std::uint64_t phase1_cutoff(const Enumeration& en, const BudgetSchedule& schedule,
                            const AdviceList& adv);

struct FastRResult {
  int bit = 0;
  Nat measured;  // accounted phase-2 simulation steps only
  std::uint64_t cutoff = 0;
};

// Two-phase recomputation of R(x): phase 1 replays the construction until
// all of sigma_k is inactive (throwing AdviceTooOptimistic if some i < k
// outside sigma_k wins there), phase 2 rescans lengths past the cutoff
// simulating only indices >= k. Requires |x| beyond the cutoff; the result
// is checked against the direct table.
FastRResult fast_R_with_advice(const Enumeration& en, const BudgetSchedule& schedule,
                               const AdviceList& adv, const Word& x,
                               const RTable& rdirect);

// Accounted cost of computing R(x) by replaying the full construction from
// length 0, for comparison against the advice-based procedure.
Nat full_replay_steps(const Enumeration& en, const BudgetSchedule& schedule,
                      const Word& x);

enum class PsiPath { FallbackBudget, FallbackMismatch, FastPath };

struct PsiDncResult {
  int bit = 0;
  Nat measured;
  PsiPath path = PsiPath::FallbackBudget;
};

// The tripling functional: decodes (k, l, m) from the word index x, charges
// k+1 steps against the meter m for the avoider, checks l against it, and on
// the fast path recomputes R(x) simulating only indices >= k, reading
// lower-index winners off the registry.
PsiDncResult psi_dnc(const Enumeration& en, const Nat& x, const DiagRegistry& reg,
                     const BudgetSchedule& schedule, const RTable& rdirect);

struct SchnorrResult {
  int bit = 0;
  bool fast = false;
};

// Splits zprefix into blocks of lengths 1, 2, 3, ... and answers 0 quickly
// when x equals its length block, falling back to R otherwise. Requires
// |zprefix| >= |x|(|x|+1)/2.
SchnorrResult schnorr_psi(const std::string& zprefix, const Word& x,
                          const RTable& rdirect);

struct Rational {
  Nat num;
  Nat den;  // > 0, gcd(num, den) = 1

  std::string str() const;  // "p/q"
};

// Exact uniform measure of the length-n disagreement event, by enumerating
// all 2^n possible blocks. Requires n <= 20.
Rational cn_measure(std::uint64_t n, const RTable& rdirect);

}  // namespace lfs
