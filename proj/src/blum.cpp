#include "lfs/blum.hpp"

#include <boost/integer/common_factor.hpp>

#include <sstream>
#include <stdexcept>

namespace lfs {

BudgetSchedule BudgetSchedule::simple_2exp() {
  BudgetSchedule s;
  s.mode = Mode::Simple2Exp;
  return s;
}

BudgetSchedule BudgetSchedule::iterated() {
  return iterated([](const Nat& n) { return n * n; });
}

BudgetSchedule BudgetSchedule::iterated(std::function<Nat(const Nat&)> f) {
  BudgetSchedule s;
  s.mode = Mode::Iterated;
  s.f = std::move(f);
  return s;
}

Nat BudgetSchedule::budget(std::uint64_t e, std::uint64_t len) const {
  if (mode == Mode::Simple2Exp) return Nat(1) << len;
  if (e > len) throw std::invalid_argument("budget: index exceeds length");
  Nat v = len;
  for (std::uint64_t j = e; j < len; ++j) v = f(v);
  return v;
}

int RTable::bit(const Word& x) const {
  auto it = one_value.find(x.size());
  if (it == one_value.end() || x.size() > horizon)
    throw std::out_of_range("RTable::bit: length past horizon");
  if (!it->second) return 0;
  std::uint64_t val = 0;
  for (char c : x) val = (val << 1) | (c == '1' ? 1u : 0u);
  return *it->second == val ? 1 : 0;
}

std::string serialize_rtable(const RTable& r) {
  std::ostringstream os;
  for (std::uint64_t n = 0; n <= r.horizon; ++n) {
    os << n << ' ';
    auto it = r.one_value.find(n);
    if (it != r.one_value.end() && it->second)
      os << *it->second;
    else
      os << "none";
    os << '\n';
  }
  return os.str();
}

RTable parse_rtable(const std::string& text) {
  RTable r;
  std::istringstream is(text);
  std::string line;
  bool any = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::uint64_t n;
    std::string v;
    if (!(ls >> n >> v)) throw std::invalid_argument("parse_rtable: bad line");
    r.one_value[n] = (v == "none") ? std::nullopt
                                   : std::optional<std::uint64_t>(std::stoull(v));
    r.horizon = std::max(r.horizon, n);
    any = true;
  }
  if (!any) throw std::invalid_argument("parse_rtable: empty table");
  return r;
}

std::string serialize_registry(const DiagRegistry& reg) {
  std::ostringstream os;
  for (const auto& [i, rec] : reg.records) {
    std::uint64_t val = 0;
    for (char c : rec.x) val = (val << 1) | (c == '1' ? 1u : 0u);
    os << i << ' ' << rec.x.size() << ' ' << val << ' ' << rec.bit << '\n';
  }
  return os.str();
}

DiagRegistry parse_registry(const std::string& text, std::uint64_t horizon) {
  DiagRegistry reg;
  reg.horizon = horizon;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::uint64_t i, len, val;
    int bit;
    if (!(ls >> i >> len >> val >> bit))
      throw std::invalid_argument("parse_registry: bad line");
    if (reg.records.count(i))
      throw std::invalid_argument("parse_registry: duplicate index");
    reg.records[i] = {word_of(len, val), bit, len};
  }
  return reg;
}

namespace {

struct Winner {
  std::uint64_t e = 0;
  std::uint64_t val = 0;
  int bit = 0;
};

// One probe: run under the schedule budget saturated to the step cap.
// Accounting is semantic: a halt charges its step count, a non-halt charges
// the full (possibly astronomical) budget.
RunResult probe(const Program& p, const Word& input, const Nat& budget,
                Nat* accounted) {
  std::uint64_t cap =
      budget > kStepCap ? kStepCap : static_cast<std::uint64_t>(budget);
  RunResult r = run_plain(p, input, cap);
  if (accounted) *accounted += r.halted() ? Nat(r.steps) : budget;
  return r;
}

// The per-length winner scan: smallest active e in [min_e, n] first, then
// smallest x of length n in length-lex order.
std::optional<Winner> scan_length(const Enumeration& en, const BudgetSchedule& sched,
                                  const std::function<bool(std::uint64_t)>& active,
                                  std::uint64_t min_e, std::uint64_t n,
                                  Nat* accounted) {
  std::uint64_t num_words = std::uint64_t{1} << n;
  for (std::uint64_t e = min_e; e <= n; ++e) {
    if (!active(e)) continue;
    Program p = en.program(e);
    Nat budget = sched.budget(e, n);
    for (std::uint64_t val = 0; val < num_words; ++val) {
      RunResult r = probe(p, word_of(n, val), budget, accounted);
      if (r.halted()) return Winner{e, val, r.bit};
    }
  }
  return std::nullopt;
}

}  // namespace

BuildRResult build_R(const Enumeration& en, const BudgetSchedule& schedule,
                     std::uint64_t max_len) {
  BuildRResult res;
  res.r.horizon = max_len;
  res.reg.horizon = max_len;
  auto active = [&](std::uint64_t e) { return res.reg.active(e); };
  for (std::uint64_t n = 0; n <= max_len; ++n) {
    auto w = scan_length(en, schedule, active, 0, n, &res.probe_steps);
    if (w) {
      res.r.one_value[n] =
          w->bit == 0 ? std::optional<std::uint64_t>(w->val) : std::nullopt;
      res.reg.records[w->e] = {word_of(n, w->val), w->bit, n};
    } else {
      res.r.one_value[n] = std::nullopt;
    }
  }
  return res;
}

std::optional<Word> theta(const DiagRegistry& reg, std::uint64_t i) {
  auto it = reg.records.find(i);
  if (it == reg.records.end()) return std::nullopt;
  return it->second.x;
}

AdviceList advice(const DiagRegistry& reg, std::uint64_t k) {
  AdviceList a;
  a.k = k;
  a.horizon = reg.horizon;
  for (const auto& [i, rec] : reg.records)
    if (i < k) a.sigma.insert(i);
  return a;
}

std::uint64_t f_avoider(const DiagRegistry& reg, std::uint64_t k) {
  std::set<std::uint64_t> forbidden;
  for (std::uint64_t i = 0; i < k; ++i) {
    auto t = theta(reg, i);
    if (!t) continue;
    Nat p = proj3(2, word_to_index(*t));
    if (fits_u64(p)) forbidden.insert(to_u64(p));
  }
  std::uint64_t m = 0;
  while (forbidden.count(m)) ++m;
  return m;
}

namespace {

// Phase-1 replay: runs the full construction until every member of sigma is
// inactive. Returns the activity state it ends with and the last length
// processed (0 with an empty sigma, where nothing is replayed).
struct Phase1 {
  std::set<std::uint64_t> inactive;
  std::uint64_t cutoff = 0;
  std::uint64_t next_len = 0;  // first phase-2 length
};

Phase1 replay_phase1(const Enumeration& en, const BudgetSchedule& sched,
                     const AdviceList& adv) {
  Phase1 ph;
  auto pending = adv.sigma;
  auto active = [&](std::uint64_t e) { return ph.inactive.count(e) == 0; };
  std::uint64_t n = 0;
  while (!pending.empty()) {
    if (n > adv.horizon)
      throw AdviceTooOptimistic("advice member never deactivated within horizon");
    auto w = scan_length(en, sched, active, 0, n, nullptr);
    if (w) {
      if (w->e < adv.k && adv.sigma.count(w->e) == 0)
        throw AdviceTooOptimistic("unadvised low index diagonalized in phase 1");
      ph.inactive.insert(w->e);
      pending.erase(w->e);
    }
    ph.cutoff = n;
    ++n;
  }
  ph.next_len = n;
  return ph;
}

}  // namespace

std::uint64_t phase1_cutoff(const Enumeration& en, const BudgetSchedule& schedule,
                            const AdviceList& adv) {
  return replay_phase1(en, schedule, adv).cutoff;
}

FastRResult fast_R_with_advice(const Enumeration& en, const BudgetSchedule& schedule,
                               const AdviceList& adv, const Word& x,
                               const RTable& rdirect) {
  Phase1 ph = replay_phase1(en, schedule, adv);
  if (x.size() < ph.next_len)
    throw std::invalid_argument("fast_R_with_advice: |x| not beyond the cutoff");

  std::uint64_t xval = 0;
  for (char c : x) xval = (xval << 1) | (c == '1' ? 1u : 0u);

  FastRResult res;
  res.cutoff = ph.cutoff;
  auto active = [&](std::uint64_t e) { return ph.inactive.count(e) == 0; };
  for (std::uint64_t n = ph.next_len; n <= x.size(); ++n) {
    auto w = scan_length(en, schedule, active, adv.k, n, &res.measured);
    if (!w) continue;
    ph.inactive.insert(w->e);
    if (n == x.size()) res.bit = (w->bit == 0 && w->val == xval) ? 1 : 0;
  }
  if (res.bit != rdirect.bit(x))
    throw std::logic_error("fast_R_with_advice: disagreement with direct table");
  return res;
}

Nat full_replay_steps(const Enumeration& en, const BudgetSchedule& schedule,
                      const Word& x) {
  Nat total;
  std::set<std::uint64_t> inactive;
  auto active = [&](std::uint64_t e) { return inactive.count(e) == 0; };
  for (std::uint64_t n = 0; n <= x.size(); ++n) {
    auto w = scan_length(en, schedule, active, 0, n, &total);
    if (w) inactive.insert(w->e);
  }
  return total;
}

PsiDncResult psi_dnc(const Enumeration& en, const Nat& x, const DiagRegistry& reg,
                     const BudgetSchedule& schedule, const RTable& rdirect) {
  Word xw = index_to_word(x);
  std::uint64_t k = to_u64(proj3(1, x));
  std::uint64_t l = to_u64(proj3(2, x));
  std::uint64_t m = to_u64(proj3(3, x));

  PsiDncResult res;
  if (k + 1 > m) {
    res.path = PsiPath::FallbackBudget;
    res.bit = rdirect.bit(xw);
    res.measured = m;
    return res;
  }
  if (l != f_avoider(reg, k)) {
    res.path = PsiPath::FallbackMismatch;
    res.bit = rdirect.bit(xw);
    res.measured = k + 1;
    return res;
  }

  res.path = PsiPath::FastPath;
  res.measured = k + 1;
  if (xw.size() > reg.horizon)
    throw std::out_of_range("psi_dnc: word length past registry horizon");
  std::uint64_t xval = 0;
  for (char c : xw) xval = (xval << 1) | (c == '1' ? 1u : 0u);

  // Winners below k are read off the registry for free; everything from k up
  // is re-simulated, threading its own activity.
  std::map<std::uint64_t, std::uint64_t> low_winner_at;  // length -> index
  for (const auto& [i, rec] : reg.records)
    if (i < k) low_winner_at[rec.length] = i;

  std::set<std::uint64_t> inactive;
  auto active = [&](std::uint64_t e) { return inactive.count(e) == 0; };
  for (std::uint64_t n = 0; n <= xw.size(); ++n) {
    auto low = low_winner_at.find(n);
    if (low != low_winner_at.end()) {
      if (n == xw.size()) {
        const auto& rec = reg.records.at(low->second);
        res.bit = (rec.bit == 0 && rec.x == xw) ? 1 : 0;
      }
      continue;
    }
    if (n < k) continue;  // no candidate index at all
    auto w = scan_length(en, schedule, active, k, n, &res.measured);
    if (!w) continue;
    inactive.insert(w->e);
    if (n == xw.size()) res.bit = (w->bit == 0 && w->val == xval) ? 1 : 0;
  }
  return res;
}

SchnorrResult schnorr_psi(const std::string& zprefix, const Word& x,
                          const RTable& rdirect) {
  std::uint64_t len = x.size();
  std::uint64_t need = len * (len + 1) / 2;
  if (zprefix.size() < need)
    throw std::invalid_argument("schnorr_psi: zprefix too short for block");
  std::uint64_t offset = len * (len - 1) / 2;
  std::string block = zprefix.substr(offset, len);
  if (block == x) return {0, true};
  return {rdirect.bit(x), false};
}

std::string Rational::str() const {
  std::ostringstream os;
  os << num << '/' << den;
  return os.str();
}

Rational cn_measure(std::uint64_t n, const RTable& rdirect) {
  if (n > 20) throw std::invalid_argument("cn_measure: n too large");
  // A block zeta only causes a disagreement at its own string, where Psi says
  // 0; count the blocks whose R value is 1.
  Nat count = 0;
  std::uint64_t blocks = std::uint64_t{1} << n;
  for (std::uint64_t val = 0; val < blocks; ++val)
    if (rdirect.bit(word_of(n, val)) == 1) ++count;
  Nat den = Nat(1) << n;
  Nat g = boost::integer::gcd(count == 0 ? den : count, den);
  return {count / g, den / g};
}

}  // namespace lfs
