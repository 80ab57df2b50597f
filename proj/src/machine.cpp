#include "lfs/machine.hpp"

#include <sstream>
#include <stdexcept>

namespace lfs {

namespace {

int sym_index(char c) {
  switch (c) {
    case '0': return 0;
    case '1': return 1;
    case kBlank: return 2;
  }
  throw std::invalid_argument("bad tape symbol");
}

bool valid_sym(char c) { return c == '0' || c == '1' || c == kBlank; }

}  // namespace

void validate_program(const Program& p) {
  if (p.num_states == 0) throw std::invalid_argument("program: no states");
  if (p.start >= p.num_states) throw std::invalid_argument("program: bad start state");
  if (p.accept0 >= p.num_states || p.accept1 >= p.num_states)
    throw std::invalid_argument("program: bad accept state");
  if (p.accept0 == p.accept1)
    throw std::invalid_argument("program: accept states must be distinct");
  if (p.transitions.size() != p.num_states)
    throw std::invalid_argument("program: transition table not total");
  for (const auto& row : p.transitions)
    for (const auto& t : row) {
      if (!valid_sym(t.write)) throw std::invalid_argument("program: bad write symbol");
      if (t.next >= p.num_states) throw std::invalid_argument("program: bad next state");
      if (t.qaction == QAction::Ask && t.next_yes >= p.num_states)
        throw std::invalid_argument("program: bad next_yes state");
    }
}

// --- oracle views ------------------------------------------------------------

OracleView OracleView::empty() { return OracleView{}; }

OracleView OracleView::finite_prefix(std::string bits) {
  for (char c : bits)
    if (c != '0' && c != '1') throw std::invalid_argument("finite_prefix: bad bit");
  OracleView v;
  v.kind_ = Kind::FinitePrefix;
  v.bits_ = std::move(bits);
  return v;
}

OracleView OracleView::generated(std::function<bool(const Word&)> member) {
  OracleView v;
  v.kind_ = Kind::Generated;
  v.member_ = std::move(member);
  return v;
}

Answer OracleView::ask(const Word& query) const {
  switch (kind_) {
    case Kind::Empty:
      return Answer::No;
    case Kind::Generated:
      return member_(query) ? Answer::Yes : Answer::No;
    case Kind::FinitePrefix: {
      // index(q) = 2^|q| - 1 + val(q); words of length >= 63 index past any
      // prefix we can hold, so they are always beyond |bits|.
      if (query.size() >= 63) return Answer::Unresolved;
      std::uint64_t val = 0;
      for (char c : query) val = (val << 1) | (c == '1' ? 1u : 0u);
      std::uint64_t idx = (std::uint64_t{1} << query.size()) - 1 + val;
      if (idx >= bits_.size()) return Answer::Unresolved;
      return bits_[idx] == '1' ? Answer::Yes : Answer::No;
    }
  }
  return Answer::Unresolved;
}

// --- interpreter --------------------------------------------------------------

RunResult run(const Program& p, const OracleView& oracle, const Word& input,
              std::uint64_t budget) {
  if (!is_binary_word(input)) throw std::invalid_argument("run: bad input word");
  if (budget == 0) return RunResult{RunResult::Kind::BudgetExceeded, 0, 0, {}};

  std::string right(input);  // cells 0, 1, ...
  std::string left;          // cell -1-i at left[i]
  auto read = [&](std::int64_t pos) -> char {
    if (pos >= 0)
      return pos < static_cast<std::int64_t>(right.size()) ? right[pos] : kBlank;
    std::int64_t i = -1 - pos;
    return i < static_cast<std::int64_t>(left.size()) ? left[i] : kBlank;
  };
  auto write = [&](std::int64_t pos, char c) {
    if (pos >= 0) {
      if (pos >= static_cast<std::int64_t>(right.size())) right.resize(pos + 1, kBlank);
      right[pos] = c;
    } else {
      std::int64_t i = -1 - pos;
      if (i >= static_cast<std::int64_t>(left.size())) left.resize(i + 1, kBlank);
      left[i] = c;
    }
  };

  std::uint32_t state = p.start;
  std::int64_t head = 0;
  std::string query;
  std::uint64_t steps = 0;

  for (;;) {
    if (state == p.accept0) return RunResult{RunResult::Kind::Halt, 0, steps, {}};
    if (state == p.accept1) return RunResult{RunResult::Kind::Halt, 1, steps, {}};
    if (steps == budget) return RunResult{RunResult::Kind::BudgetExceeded, 0, budget, {}};

    char sym = read(head);
    const Transition& tr = p.transitions[state][sym_index(sym)];

    // A transition that provably recurs (same cell, same state, no query
    // activity) never halts; report budget exhaustion without stepping.
    if (tr.qaction == QAction::None && tr.move == Move::Stay && tr.write == sym &&
        tr.next == state)
      return RunResult{RunResult::Kind::BudgetExceeded, 0, budget, {}};

    write(head, tr.write);
    if (tr.move == Move::Left) --head;
    else if (tr.move == Move::Right) ++head;
    ++steps;

    switch (tr.qaction) {
      case QAction::None:
        state = tr.next;
        break;
      case QAction::Append0:
        query.push_back('0');
        state = tr.next;
        break;
      case QAction::Append1:
        query.push_back('1');
        state = tr.next;
        break;
      case QAction::Ask: {
        Answer a = oracle.ask(query);
        Word q = std::move(query);
        query.clear();
        if (a == Answer::Unresolved)
          return RunResult{RunResult::Kind::OracleUnresolved, 0, steps, std::move(q)};
        state = (a == Answer::Yes) ? tr.next_yes : tr.next;
        break;
      }
    }
  }
}

RunResult run_plain(const Program& p, const Word& input, std::uint64_t budget) {
  return run(p, OracleView::empty(), input, budget);
}

// --- assembler ---------------------------------------------------------------

namespace {

const char* move_name(Move m) {
  switch (m) {
    case Move::Left: return "L";
    case Move::Right: return "R";
    case Move::Stay: return "S";
  }
  return "?";
}

const char* qact_name(QAction q) {
  switch (q) {
    case QAction::None: return "-";
    case QAction::Append0: return "q0";
    case QAction::Append1: return "q1";
    case QAction::Ask: return "ask";
  }
  return "?";
}

Move parse_move(const std::string& s) {
  if (s == "L") return Move::Left;
  if (s == "R") return Move::Right;
  if (s == "S") return Move::Stay;
  throw std::invalid_argument("assembler: bad move " + s);
}

QAction parse_qact(const std::string& s) {
  if (s == "-") return QAction::None;
  if (s == "q0") return QAction::Append0;
  if (s == "q1") return QAction::Append1;
  if (s == "ask") return QAction::Ask;
  throw std::invalid_argument("assembler: bad query action " + s);
}

char parse_sym(const std::string& s) {
  if (s.size() == 1 && valid_sym(s[0])) return s[0];
  throw std::invalid_argument("assembler: bad symbol " + s);
}

constexpr char kSyms[3] = {'0', '1', kBlank};

}  // namespace

std::string serialize_program(const Program& p) {
  validate_program(p);
  std::ostringstream out;
  out << "states " << p.num_states << "\n";
  out << "start " << p.start << "\n";
  out << "accept0 " << p.accept0 << "\n";
  out << "accept1 " << p.accept1 << "\n";
  for (std::uint32_t q = 0; q < p.num_states; ++q)
    for (int s = 0; s < 3; ++s) {
      const Transition& t = p.transitions[q][s];
      out << "trans " << q << ' ' << kSyms[s] << ' ' << t.write << ' '
          << move_name(t.move) << ' ' << qact_name(t.qaction) << ' ' << t.next;
      if (t.qaction == QAction::Ask) out << ' ' << t.next_yes;
      out << "\n";
    }
  out << "end\n";
  return out.str();
}

Program parse_program(const std::string& text) {
  std::istringstream in(text);
  Program p;
  bool have_states = false, ended = false;
  std::vector<std::array<bool, 3>> seen;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw.empty()) continue;
    if (ended) throw std::invalid_argument("assembler: content after end");
    if (kw == "states") {
      if (!(ls >> p.num_states) || p.num_states == 0)
        throw std::invalid_argument("assembler: bad states count");
      p.transitions.assign(p.num_states, {});
      seen.assign(p.num_states, {false, false, false});
      have_states = true;
    } else if (kw == "start") {
      if (!(ls >> p.start)) throw std::invalid_argument("assembler: bad start");
    } else if (kw == "accept0") {
      if (!(ls >> p.accept0)) throw std::invalid_argument("assembler: bad accept0");
    } else if (kw == "accept1") {
      if (!(ls >> p.accept1)) throw std::invalid_argument("assembler: bad accept1");
    } else if (kw == "trans") {
      if (!have_states) throw std::invalid_argument("assembler: trans before states");
      std::uint32_t q;
      std::string sym, wr, mv, qa;
      std::uint32_t next;
      if (!(ls >> q >> sym >> wr >> mv >> qa >> next))
        throw std::invalid_argument("assembler: short trans line");
      if (q >= p.num_states) throw std::invalid_argument("assembler: bad state");
      Transition t;
      t.write = parse_sym(wr);
      t.move = parse_move(mv);
      t.qaction = parse_qact(qa);
      t.next = next;
      if (t.qaction == QAction::Ask) {
        if (!(ls >> t.next_yes)) throw std::invalid_argument("assembler: ask without next_yes");
      }
      std::string extra;
      if (ls >> extra) throw std::invalid_argument("assembler: trailing tokens");
      int si = sym_index(parse_sym(sym));
      if (seen[q][si]) throw std::invalid_argument("assembler: duplicate transition");
      seen[q][si] = true;
      p.transitions[q][si] = t;
    } else if (kw == "end") {
      ended = true;
    } else {
      throw std::invalid_argument("assembler: unknown keyword " + kw);
    }
  }
  if (!have_states || !ended) throw std::invalid_argument("assembler: incomplete program");
  for (std::uint32_t q = 0; q < p.num_states; ++q)
    for (int s = 0; s < 3; ++s)
      if (!seen[q][s]) throw std::invalid_argument("assembler: transition table not total");
  validate_program(p);
  return p;
}

// --- enumeration --------------------------------------------------------------

namespace {

Nat bytes_to_nat(const std::string& bytes) {
  Nat n = 0;
  for (unsigned char c : bytes) n = n * 256 + c;
  return n;
}

std::string nat_to_bytes(Nat n) {
  std::string bytes;
  while (n > 0) {
    bytes.push_back(static_cast<char>(static_cast<unsigned char>((n % 256).convert_to<unsigned>())));
    n /= 256;
  }
  std::reverse(bytes.begin(), bytes.end());
  return bytes;
}

}  // namespace

MachineIndex assemble(const Program& p) {
  return pair_code(bytes_to_nat(serialize_program(p)), 0);
}

Program decode_program(const MachineIndex& e) {
  if (e < 0) return loop_program();
  auto [code, pad] = unpair(e);
  (void)pad;
  try {
    return parse_program(nat_to_bytes(code));
  } catch (const std::invalid_argument&) {
    return loop_program();
  }
}

// --- planted machines ----------------------------------------------------------

namespace {

std::array<Transition, 3> self_loop_row(std::uint32_t q) {
  std::array<Transition, 3> row;
  for (int s = 0; s < 3; ++s) row[s] = Transition{kSyms[s], Move::Stay, QAction::None, q, 0};
  return row;
}

std::array<Transition, 3> goto_row(std::uint32_t next) {
  std::array<Transition, 3> row;
  for (int s = 0; s < 3; ++s) row[s] = Transition{kSyms[s], Move::Stay, QAction::None, next, 0};
  return row;
}

}  // namespace

Program loop_program() {
  Program p;
  p.num_states = 3;
  p.start = 0;
  p.accept0 = 1;
  p.accept1 = 2;
  p.transitions = {self_loop_row(0), self_loop_row(1), self_loop_row(2)};
  return p;
}

Program const_program(int bit) {
  Program p;
  p.num_states = 3;
  p.start = 0;
  p.accept0 = 1;
  p.accept1 = 2;
  p.transitions = {goto_row(bit ? 2 : 1), self_loop_row(1), self_loop_row(2)};
  return p;
}

Program halt_all_program() {
  // Same one-step behaviour as const_program(1) but a distinct program
  // (extra unreachable state), useful as a structurally different W_e = N.
  Program p;
  p.num_states = 4;
  p.start = 0;
  p.accept0 = 1;
  p.accept1 = 2;
  p.transitions = {goto_row(2), self_loop_row(1), self_loop_row(2), self_loop_row(3)};
  return p;
}

Program parity_program() {
  Program p;
  p.num_states = 4;  // 0: even so far, 1: odd so far, 2: accept0, 3: accept1
  p.start = 0;
  p.accept0 = 2;
  p.accept1 = 3;
  p.transitions.assign(4, {});
  p.transitions[0][0] = {'0', Move::Right, QAction::None, 0, 0};
  p.transitions[0][1] = {'1', Move::Right, QAction::None, 1, 0};
  p.transitions[0][2] = {kBlank, Move::Stay, QAction::None, 2, 0};
  p.transitions[1][0] = {'0', Move::Right, QAction::None, 1, 0};
  p.transitions[1][1] = {'1', Move::Right, QAction::None, 0, 0};
  p.transitions[1][2] = {kBlank, Move::Stay, QAction::None, 3, 0};
  p.transitions[2] = self_loop_row(2);
  p.transitions[3] = self_loop_row(3);
  return p;
}

Program oracle_bit_program() {
  // Copies the input onto the query register (one step per bit), asks, and
  // halts with the oracle's answer. Exactly |x| + 1 steps.
  Program p;
  p.num_states = 3;  // 0: copy/ask, 1: accept0, 2: accept1
  p.start = 0;
  p.accept0 = 1;
  p.accept1 = 2;
  p.transitions.assign(3, {});
  p.transitions[0][0] = {'0', Move::Right, QAction::Append0, 0, 0};
  p.transitions[0][1] = {'1', Move::Right, QAction::Append1, 0, 0};
  p.transitions[0][2] = {kBlank, Move::Stay, QAction::Ask, 1, 2};
  p.transitions[1] = self_loop_row(1);
  p.transitions[2] = self_loop_row(2);
  return p;
}

Program Enumeration::program(std::uint64_t e) const {
  if (e < planted.size()) return planted[e];
  return decode_program(MachineIndex(e));
}

Enumeration default_enumeration() {
  Enumeration en;
  en.planted = {oracle_bit_program(), const_program(0), const_program(1),
                halt_all_program(),   parity_program(), loop_program()};
  en.names = {"ORACLE_BIT", "CONST_0", "CONST_1", "HALT_ALL", "PARITY", "LOOP"};
  return en;
}

Enumeration load_corpus(const std::string& text) {
  Enumeration en;
  std::istringstream in(text);
  std::string line;
  std::string name;
  std::string body;
  bool in_machine = false;
  auto flush = [&]() {
    if (!in_machine) return;
    en.planted.push_back(parse_program(body));
    en.names.push_back(name);
    body.clear();
    in_machine = false;
  };
  while (std::getline(in, line)) {
    if (line.rfind("machine ", 0) == 0) {
      flush();
      name = line.substr(8);
      in_machine = true;
    } else if (in_machine) {
      body += line;
      body += '\n';
      if (line == "end") flush();
    } else if (!line.empty() && line[0] != '#') {
      throw std::invalid_argument("corpus: content outside machine block");
    }
  }
  if (in_machine) throw std::invalid_argument("corpus: unterminated machine block");
  // An empty corpus is legal: every index falls back to decode_program.
  return en;
}

std::set<std::uint64_t> we_stage(const Enumeration& en, std::uint64_t e,
                                 std::uint64_t s) {
  std::set<std::uint64_t> w;
  Program p = en.program(e);
  for (std::uint64_t x = 0; x <= s; ++x) {
    Word word = index_to_word(Nat(x));
    if (run_plain(p, word, s).halted()) w.insert(x);
  }
  return w;
}

}  // namespace lfs
