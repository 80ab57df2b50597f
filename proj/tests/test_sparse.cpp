#include "lfs/sparse.hpp"

#include <doctest.h>

#include <algorithm>

using namespace lfs;

TEST_CASE("sparse positions below 2^16") {
  CHECK(sparse_positions(std::uint64_t{1} << 16) ==
        std::vector<std::uint64_t>{1, 3, 15, 255, 65535});
  CHECK(sparse_positions(1).empty());
  CHECK(sparse_positions(2) == std::vector<std::uint64_t>{1});
  CHECK(sparse_positions(16) == std::vector<std::uint64_t>{1, 3, 15});
  for (std::uint64_t p : {1ull, 3ull, 15ull, 255ull, 65535ull})
    CHECK(is_sparse_position(p));
  for (std::uint64_t p : {0ull, 2ull, 4ull, 14ull, 16ull, 254ull})
    CHECK(!is_sparse_position(p));
}

TEST_CASE("sparse prefix recognition and round trip") {
  CHECK(is_sparse_prefix(""));
  CHECK(is_sparse_prefix("0101"));
  CHECK(!is_sparse_prefix("1"));
  CHECK(!is_sparse_prefix("0011"));
  SparsePrefix sp = sparse_prefix_from_bits("0101");
  CHECK(sp.length == 4);
  CHECK(sp.ones == std::vector<std::uint64_t>{1, 3});
  CHECK(sp.to_bits() == "0101");
  CHECK_THROWS_AS(sparse_prefix_from_bits("10"), std::invalid_argument);
}

TEST_CASE("enumeration matches brute force up to length 16") {
  for (std::uint64_t t = 0; t <= 16; ++t) {
    std::vector<std::string> brute;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << t); ++v) {
      std::string s(t, '0');
      for (std::uint64_t i = 0; i < t; ++i)
        if ((v >> i) & 1u) s[t - 1 - i] = '1';
      if (is_sparse_prefix(s)) brute.push_back(s);
    }
    std::sort(brute.begin(), brute.end());
    std::vector<std::string> enumd;
    for (const auto& sp : enumerate_sparse_prefixes(t, SparsePrefix{}))
      enumd.push_back(sp.to_bits());
    // the enumeration is already in length-lex (= lex at fixed length) order
    CHECK(std::is_sorted(enumd.begin(), enumd.end()));
    CHECK(enumd == brute);
  }
}

TEST_CASE("cardinality bound") {
  for (std::uint64_t t : {0ull, 1ull, 2ull, 5ull, 16ull, 100ull, 255ull, 256ull, 1000ull}) {
    auto all = enumerate_sparse_prefixes(t, SparsePrefix{});
    CHECK(all.size() == (std::size_t{1} << sparse_positions(t).size()));
    CHECK(all.size() <= std::max<std::uint64_t>(1, t));
  }
}

TEST_CASE("enumeration respects the base prefix") {
  SparsePrefix base = sparse_prefix_from_bits("01");
  for (const auto& sp : enumerate_sparse_prefixes(8, base)) {
    CHECK(sp.extends(base));
    CHECK(sp.length == 8);
    CHECK(sp.to_bits()[1] == '1');
  }
  SparsePrefix base0 = sparse_prefix_from_bits("00");
  for (const auto& sp : enumerate_sparse_prefixes(8, base0))
    CHECK(sp.to_bits()[1] == '0');
  CHECK(enumerate_sparse_prefixes(8, base).size() +
            enumerate_sparse_prefixes(8, base0).size() ==
        enumerate_sparse_prefixes(8, SparsePrefix{}).size());
  CHECK_THROWS_AS(enumerate_sparse_prefixes(1, base), std::invalid_argument);
}

TEST_CASE("generated family oracle") {
  auto ov = sparse_oracle_from_G([](std::uint64_t n) { return n == 0 || n == 2; });
  CHECK(ov.ask("0") == Answer::Yes);     // 0^{2^0}
  CHECK(ov.ask("00") == Answer::No);     // 1 not in G
  CHECK(ov.ask("0000") == Answer::Yes);  // 0^{2^2}
  CHECK(ov.ask("000") == Answer::No);    // length not a power of two
  CHECK(ov.ask("") == Answer::No);
  CHECK(ov.ask("01") == Answer::No);
}

TEST_CASE("position-set oracle agrees with an equivalent finite prefix") {
  std::vector<std::uint64_t> ones = {1, 3, 15};
  auto gen = oracle_from_positions(ones);
  std::string bits(16, '0');
  for (auto p : ones) bits[p] = '1';
  auto fin = OracleView::finite_prefix(bits);
  for (std::uint64_t idx = 0; idx < 16; ++idx) {
    Word w = index_to_word(Nat(idx));
    CHECK(gen.ask(w) == fin.ask(w));
  }
}
