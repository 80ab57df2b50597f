#pragma once

#include "lfs/machine.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lfs {

// The sparse set S = {0^{2^n}} and the class of its subsets. Under the
// length-lex identification, 0^{2^n} has index 2^{2^n} - 1, so a prefix of
// length t admits 1-bits only at those positions; there are at most t such
// prefixes of length t, which is what makes full simulation over all of
// them polynomial.

// A prefix of a characteristic sequence of a subset of S, stored as its
// length and the positions of its 1-bits (bit arrays get materialized only
// on demand).
struct SparsePrefix {
  std::uint64_t length = 0;
  std::vector<std::uint64_t> ones;  // sorted ascending, all < length

  std::string to_bits() const;
  bool extends(const SparsePrefix& base) const;
  bool operator==(const SparsePrefix&) const = default;
};

// All positions 2^{2^n} - 1 strictly below t, ascending.
std::vector<std::uint64_t> sparse_positions(std::uint64_t t);

bool is_sparse_position(std::uint64_t pos);

// True iff every 1-bit of sigma sits at a sparse position.
bool is_sparse_prefix(const std::string& sigma);

SparsePrefix sparse_prefix_from_bits(const std::string& sigma);

// All length-t sparse prefixes extending base, in length-lex order.
// Requires |base| <= t and base sparse.
std::vector<SparsePrefix> enumerate_sparse_prefixes(std::uint64_t t,
                                                    const SparsePrefix& base);

// The oracle S_G = {0^{2^n} | n in G}.
OracleView sparse_oracle_from_G(std::function<bool(std::uint64_t)> g);

// Generated oracle for a fully specified subset of S given by its 1-positions
// (answers No everywhere else); used to realize a SparsePrefix as a total
// oracle Z extending it with zeros.
OracleView oracle_from_positions(std::vector<std::uint64_t> one_positions);

}  // namespace lfs
