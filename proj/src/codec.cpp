#include "lfs/codec.hpp"

#include <limits>
#include <stdexcept>

namespace lfs {

bool is_binary_word(const Word& w) {
  for (char c : w)
    if (c != '0' && c != '1') return false;
  return true;
}

Nat word_to_index(const Word& w) {
  if (!is_binary_word(w)) throw std::invalid_argument("word_to_index: not a binary word");
  Nat idx = (Nat(1) << w.size()) - 1;
  Nat val = 0;
  for (char c : w) {
    val <<= 1;
    if (c == '1') val += 1;
  }
  return idx + val;
}

Word index_to_word(const Nat& n) {
  if (n < 0) throw std::invalid_argument("index_to_word: negative index");
  // length m is determined by 2^m - 1 <= n < 2^{m+1} - 1.
  Nat np1 = n + 1;
  std::size_t m = boost::multiprecision::msb(np1);  // np1 >= 1
  Nat val = n - ((Nat(1) << m) - 1);
  Word w(m, '0');
  for (std::size_t i = 0; i < m; ++i)
    if (boost::multiprecision::bit_test(val, static_cast<unsigned>(m - 1 - i))) w[i] = '1';
  return w;
}

Word word_of(std::size_t length, std::uint64_t value) {
  if (length < 64 && length > 0 && (value >> length) != 0)
    throw std::invalid_argument("word_of: value does not fit in length");
  if (length == 0 && value != 0) throw std::invalid_argument("word_of: value does not fit");
  Word w(length, '0');
  for (std::size_t i = 0; i < length && i < 64; ++i)
    if ((value >> i) & 1u) w[length - 1 - i] = '1';
  return w;
}

bool fits_u64(const Nat& n) {
  return n >= 0 && n <= Nat(std::numeric_limits<std::uint64_t>::max());
}

std::uint64_t to_u64(const Nat& n) {
  if (!fits_u64(n)) throw std::overflow_error("to_u64: value out of range");
  return n.convert_to<std::uint64_t>();
}

Nat pair_code(const Nat& a, const Nat& b) {
  Nat s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<Nat, Nat> unpair(const Nat& p) {
  if (p < 0) throw std::invalid_argument("unpair: negative code");
  // diagonal w = floor((sqrt(8p+1)-1)/2), then b = p - w(w+1)/2, a = w - b.
  Nat disc = 8 * p + 1;
  Nat w = (boost::multiprecision::sqrt(disc) - 1) / 2;
  while (w * (w + 1) / 2 > p) --w;
  while ((w + 1) * (w + 2) / 2 <= p) ++w;
  Nat b = p - w * (w + 1) / 2;
  Nat a = w - b;
  return {a, b};
}

Nat triple_code(const Nat& a, const Nat& b, const Nat& c) {
  return pair_code(a, pair_code(b, c));
}

Nat proj3(int i, const Nat& t) {
  auto [a, bc] = unpair(t);
  if (i == 1) return a;
  auto [b, c] = unpair(bc);
  if (i == 2) return b;
  if (i == 3) return c;
  throw std::out_of_range("proj3: projection index must be 1, 2 or 3");
}

}  // namespace lfs
