#pragma once

#include "lfs/codec.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lfs {

// Oracle Turing machine model: a single work tape over {0,1,blank}, a
// write-only query register built by append actions, and an ASK action that
// submits the register contents to the oracle in one step, routes on the
// answer bit and clears the register.

enum class Move : std::uint8_t { Left, Right, Stay };
enum class QAction : std::uint8_t { None, Append0, Append1, Ask };

constexpr char kBlank = '_';

struct Transition {
  char write = kBlank;  // '0', '1' or kBlank
  Move move = Move::Stay;
  QAction qaction = QAction::None;
  std::uint32_t next = 0;      // successor state (answer No on Ask)
  std::uint32_t next_yes = 0;  // successor on answer Yes; only read on Ask

  bool operator==(const Transition&) const = default;
};

struct Program {
  std::uint32_t num_states = 0;
  std::uint32_t start = 0;
  std::uint32_t accept0 = 0;  // halting state emitting output bit 0
  std::uint32_t accept1 = 0;  // halting state emitting output bit 1
  // transitions[state][sym] with sym index 0 -> '0', 1 -> '1', 2 -> blank.
  std::vector<std::array<Transition, 3>> transitions;

  bool operator==(const Program&) const = default;
};

// Throws std::invalid_argument when the program is malformed.
void validate_program(const Program& p);

enum class Answer : std::uint8_t { No, Yes, Unresolved };

// A finite or generated answer source for oracle queries.
class OracleView {
 public:
  static OracleView empty();
  // Answers queries with word index < |bits| by the corresponding bit and
  // Unresolved beyond.
  static OracleView finite_prefix(std::string bits);
  // Total membership rule over words; never answers Unresolved.
  static OracleView generated(std::function<bool(const Word&)> member);

  Answer ask(const Word& query) const;

 private:
  enum class Kind { Empty, FinitePrefix, Generated };
  Kind kind_ = Kind::Empty;
  std::string bits_;
  std::function<bool(const Word&)> member_;
};

struct RunResult {
  enum class Kind { Halt, BudgetExceeded, OracleUnresolved };
  Kind kind = Kind::BudgetExceeded;
  int bit = 0;             // meaningful for Halt
  std::uint64_t steps = 0; // Halt: exact step count; BudgetExceeded: = budget
  Word query;              // meaningful for OracleUnresolved

  bool halted() const { return kind == Kind::Halt; }
  bool operator==(const RunResult&) const = default;
};

RunResult run(const Program& p, const OracleView& oracle, const Word& input,
              std::uint64_t budget);
RunResult run_plain(const Program& p, const Word& input, std::uint64_t budget);

// --- assembler text format -------------------------------------------------
//
//   states N
//   start S
//   accept0 H0
//   accept1 H1
//   trans <state> <sym> <write> <move> <qact> <next> [<next_yes>]
//   end
//
// sym/write in {0,1,_}, move in {L,R,S}, qact in {-,q0,q1,ask}; ask lines
// carry the extra next_yes field. serialize_program emits the canonical
// form (all state/symbol rows in order) and parse_program inverts it.

std::string serialize_program(const Program& p);
Program parse_program(const std::string& text);

// --- effective enumeration --------------------------------------------------

using MachineIndex = Nat;

// Canonical index of a program: pair(bytes(serialize_program(p)), 0).
// decode_program(pair(code, pad)) ignores pad, so every program has
// infinitely many indices; unparseable codes decode to the looping machine.
MachineIndex assemble(const Program& p);
Program decode_program(const MachineIndex& e);

// Planted machines.
Program loop_program();
Program const_program(int bit);
Program halt_all_program();   // halts in one step with output 1 on every input
Program parity_program();     // output = parity of the number of 1s in x
Program oracle_bit_program(); // writes x on the query tape, asks, returns the bit

// A machine corpus: planted programs occupy the low indices, everything
// beyond falls back to decode_program.
struct Enumeration {
  std::vector<Program> planted;
  std::vector<std::string> names;  // parallel to planted (may be empty)

  Program program(std::uint64_t e) const;
};

Enumeration default_enumeration();

// Corpus file: repeated blocks  "machine NAME" + assembler body.
Enumeration load_corpus(const std::string& text);

// Stagewise c.e. approximation W_e[s] = {x : index(x) <= s and
// run_plain(e, x, s) halts}, with R_e realized as Phi_e over the empty oracle.
std::set<std::uint64_t> we_stage(const Enumeration& en, std::uint64_t e,
                                 std::uint64_t s);

}  // namespace lfs
