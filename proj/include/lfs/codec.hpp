#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>

namespace lfs {

// Unbounded natural number. Word indices and machine codes outgrow 64 bits
// quickly (the index of 0^m is 2^m - 1), so the codec layer works over
// arbitrary precision and callers narrow explicitly where values are known
// to be small.
using Nat = boost::multiprecision::cpp_int;

// A binary string over {'0','1'}. The empty word is valid.
using Word = std::string;

bool is_binary_word(const Word& w);

// Length-lexicographic identification of strings with naturals:
// the (n+1)-th string in length-lex order is identified with n,
// i.e. index(x) = 2^|x| - 1 + value(x).
Nat word_to_index(const Word& w);
Word index_to_word(const Nat& n);

// The word of given length whose binary value is `value` (MSB first).
Word word_of(std::size_t length, std::uint64_t value);

// Narrowing helpers; throw std::overflow_error when the value does not fit.
std::uint64_t to_u64(const Nat& n);
bool fits_u64(const Nat& n);

// Cantor pairing, orientation pair(a,b) = (a+b)(a+b+1)/2 + b.
Nat pair_code(const Nat& a, const Nat& b);
std::pair<Nat, Nat> unpair(const Nat& p);

// Tripling <a,b,c> = <a,<b,c>> with projections proj3(i, .) for i in 1..3.
Nat triple_code(const Nat& a, const Nat& b, const Nat& c);
Nat proj3(int i, const Nat& t);

}  // namespace lfs
