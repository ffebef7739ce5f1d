#include <doctest.h>

#include "dpcc/bitstring.hpp"
#include "dpcc/combinatorics.hpp"
#include "oracles.hpp"

using namespace dpcc;

TEST_CASE("binomial: small values and k outside [0, n]") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(1, 3) == 0);
  CHECK(binomial(5, -1) == 0);
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(23, 11) == oracle::pascal_binomial(23, 11));
  CHECK(binomial(23, 11) == 1352078);
}

TEST_CASE("binomial: exact beyond 64 bits") {
  // C(100, 50) = 100891344545564193334812497256
  CHECK(binomial(100, 50) == BigInt("100891344545564193334812497256"));
  CHECK(binomial(100, 50) == oracle::pascal_binomial(100, 50));
}

TEST_CASE("binomial: Pascal's rule for n <= 30") {
  for (int n = 1; n <= 30; ++n) {
    for (int k = -1; k <= n + 1; ++k) {
      CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
  }
}

TEST_CASE("binomial_small agrees with the exact binomial") {
  for (int n = 0; n <= 64; ++n) {
    for (int k = 0; k <= n; ++k) REQUIRE(BigInt(binomial_small(n, k)) == binomial(n, k));
  }
  CHECK_THROWS_AS(binomial_small(65, 1), std::out_of_range);
}

TEST_CASE("subset_rank: colex positions in a universe of 4") {
  CHECK(subset_rank(SubsetIndex({0, 1}, 4)) == 0);
  CHECK(subset_rank(SubsetIndex({0, 2}, 4)) == 1);
  CHECK(subset_rank(SubsetIndex({2, 3}, 4)) == 5);
  const auto order = oracle::colex_by_mask(4, 2);
  for (std::size_t i = 0; i < order.size(); ++i) CHECK(subset_rank(SubsetIndex(order[i], 4)) == i);
}

TEST_CASE("subset_unrank") {
  CHECK(subset_unrank(0, 2, 4) == SubsetIndex({0, 1}, 4));
  CHECK(subset_unrank(5, 2, 4) == SubsetIndex({2, 3}, 4));
  CHECK(subset_unrank(0, 0, 4).size() == 0);
  CHECK_THROWS_AS(subset_unrank(6, 2, 4), std::out_of_range);
}

TEST_CASE("enumerate_r_subsets") {
  const auto all = enumerate_r_subsets(4, 2);
  REQUIRE(all.size() == 6);
  const std::vector<std::vector<int>> want{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}};
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(all[i].members() == want[i]);
  CHECK(enumerate_r_subsets(4, 4).size() == 1);
  CHECK(enumerate_r_subsets(4, 4)[0].members() == std::vector<int>{0, 1, 2, 3});
  REQUIRE(enumerate_r_subsets(3, 0).size() == 1);
  CHECK(enumerate_r_subsets(3, 0)[0].size() == 0);
}

TEST_CASE("property: rank/unrank round trip and enumeration order for n <= 12") {
  for (int n = 1; n <= 12; ++n) {
    for (int r = 0; r <= n; ++r) {
      const auto all = enumerate_r_subsets(n, r);
      REQUIRE(BigInt(all.size()) == binomial(n, r));
      const auto brute = oracle::colex_by_mask(n, r);
      REQUIRE(all.size() == brute.size());
      for (std::uint64_t rank = 0; rank < all.size(); ++rank) {
        const SubsetIndex s = subset_unrank(rank, r, n);
        REQUIRE(subset_rank(s) == rank);
        REQUIRE(all[rank] == s);
        REQUIRE(s.members() == brute[rank]);
      }
    }
  }
}

TEST_CASE("SubsetIndex validation and editing") {
  CHECK_THROWS_AS(SubsetIndex({1, 1}, 4), std::invalid_argument);
  CHECK_THROWS_AS(SubsetIndex({2, 1}, 4), std::invalid_argument);
  CHECK_THROWS_AS(SubsetIndex({4}, 4), std::invalid_argument);
  const SubsetIndex s({1, 3}, 5);
  CHECK(s.with(2) == SubsetIndex({1, 2, 3}, 5));
  CHECK(s.with(0) == SubsetIndex({0, 1, 3}, 5));
  CHECK(s.with(4) == SubsetIndex({1, 3, 4}, 5));
  CHECK(s.without(3) == SubsetIndex({1}, 5));
  CHECK_THROWS(s.with(1));
  CHECK_THROWS(s.without(2));
  CHECK(s.to_string() == "{1,3}");
}

TEST_CASE("BitString basics") {
  BitString a(70);
  a.set(0, true);
  a.set(69, true);
  CHECK(a.popcount() == 2);
  BitString b(70);
  b.set(69, true);
  a ^= b;
  CHECK(a.popcount() == 1);
  CHECK(a.get(0));
  CHECK_THROWS_AS(a ^= BitString(69), std::invalid_argument);

  auto rng = oracle::test_rng();
  const BitString r = BitString::random(131, rng);
  CHECK(BitString::from_bytes(r.to_bytes(), r.size()) == r);
  BitString joined = r.slice(0, 13);
  joined.append(r.slice(13, 118));
  CHECK(joined == r);
  CHECK(BitString(9).is_zero());
  CHECK(BitString(0).to_bytes().empty());
}
