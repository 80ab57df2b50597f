#include "lfs/sparse.hpp"

#include <algorithm>
#include <stdexcept>

namespace lfs {

std::string SparsePrefix::to_bits() const {
  std::string s(length, '0');
  for (std::uint64_t p : ones) s[p] = '1';
  return s;
}

bool SparsePrefix::extends(const SparsePrefix& base) const {
  if (length < base.length) return false;
  std::size_t i = 0;
  for (std::uint64_t p : ones) {
    if (p >= base.length) break;
    if (i >= base.ones.size() || base.ones[i] != p) return false;
    ++i;
  }
  return i == base.ones.size();
}

std::vector<std::uint64_t> sparse_positions(std::uint64_t t) {
  std::vector<std::uint64_t> out;
  // position(n) = 2^{2^n} - 1; stop before the shift overflows.
  for (std::uint64_t n = 0, e = 1; e < 64; ++n, e *= 2) {
    std::uint64_t pos = (std::uint64_t{1} << e) - 1;
    if (pos >= t) break;
    out.push_back(pos);
  }
  return out;
}

bool is_sparse_position(std::uint64_t pos) {
  for (std::uint64_t e = 1; e < 64; e *= 2) {
    std::uint64_t p = (std::uint64_t{1} << e) - 1;
    if (p == pos) return true;
    if (p > pos) return false;
  }
  return false;
}

bool is_sparse_prefix(const std::string& sigma) {
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (sigma[i] == '1' && !is_sparse_position(i)) return false;
    if (sigma[i] != '0' && sigma[i] != '1')
      throw std::invalid_argument("is_sparse_prefix: bad bit");
  }
  return true;
}

SparsePrefix sparse_prefix_from_bits(const std::string& sigma) {
  if (!is_sparse_prefix(sigma))
    throw std::invalid_argument("sparse_prefix_from_bits: not a sparse prefix");
  SparsePrefix sp;
  sp.length = sigma.size();
  for (std::size_t i = 0; i < sigma.size(); ++i)
    if (sigma[i] == '1') sp.ones.push_back(i);
  return sp;
}

std::vector<SparsePrefix> enumerate_sparse_prefixes(std::uint64_t t,
                                                    const SparsePrefix& base) {
  if (base.length > t)
    throw std::invalid_argument("enumerate_sparse_prefixes: base longer than t");
  for (std::uint64_t p : base.ones)
    if (!is_sparse_position(p))
      throw std::invalid_argument("enumerate_sparse_prefixes: base not sparse");

  std::vector<std::uint64_t> free_pos;
  for (std::uint64_t p : sparse_positions(t))
    if (p >= base.length) free_pos.push_back(p);

  std::size_t k = free_pos.size();
  std::vector<SparsePrefix> out;
  out.reserve(std::size_t{1} << k);
  // Length-lex order on equal-length strings is plain lex order; the
  // smallest free position is the most significant digit.
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    SparsePrefix sp;
    sp.length = t;
    sp.ones = base.ones;
    for (std::size_t j = 0; j < k; ++j)
      if ((mask >> (k - 1 - j)) & 1u) sp.ones.push_back(free_pos[j]);
    out.push_back(std::move(sp));
  }
  return out;
}

OracleView sparse_oracle_from_G(std::function<bool(std::uint64_t)> g) {
  return OracleView::generated([g = std::move(g)](const Word& w) {
    // member iff w = 0^{2^n} with n in G
    if (w.empty()) return false;
    if (w.find('1') != Word::npos) return false;
    std::uint64_t len = w.size();
    if ((len & (len - 1)) != 0) return false;  // not a power of two
    std::uint64_t n = 0;
    while ((std::uint64_t{1} << n) != len) ++n;
    return g(n);
  });
}

OracleView oracle_from_positions(std::vector<std::uint64_t> one_positions) {
  std::sort(one_positions.begin(), one_positions.end());
  return OracleView::generated(
      [pos = std::move(one_positions)](const Word& w) {
        if (w.size() >= 63) return false;
        std::uint64_t val = 0;
        for (char c : w) val = (val << 1) | (c == '1' ? 1u : 0u);
        std::uint64_t idx = (std::uint64_t{1} << w.size()) - 1 + val;
        return std::binary_search(pos.begin(), pos.end(), idx);
      });
}

}  // namespace lfs
