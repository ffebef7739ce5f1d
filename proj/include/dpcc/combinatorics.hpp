#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace dpcc {

using BigInt = boost::multiprecision::cpp_int;

/// C(n, k), exact. Zero when k < 0 or k > n.
BigInt binomial(std::int64_t n, std::int64_t k);

/// C(n, k) for 0 <= n <= 64 from a Pascal table; used on hot paths.
std::uint64_t binomial_small(int n, int k);

/// Universe size limit for SubsetIndex ranks (ranks are 64-bit).
inline constexpr int kMaxUniverse = 64;

/// A fixed-size subset of [0, universe_size), stored as its strictly
/// increasing members.
class SubsetIndex {
 public:
  SubsetIndex() = default;
  SubsetIndex(std::vector<int> members, int universe_size);
  SubsetIndex(std::initializer_list<int> members, int universe_size)
      : SubsetIndex(std::vector<int>(members), universe_size) {}

  const std::vector<int>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  int universe_size() const { return universe_; }

  bool contains(int x) const;
  /// Copy with x inserted; x must not already be a member.
  SubsetIndex with(int x) const;
  /// Copy with x removed; x must be a member.
  SubsetIndex without(int x) const;

  std::uint64_t mask() const;
  std::string to_string() const;

  friend bool operator==(const SubsetIndex&, const SubsetIndex&) = default;

 private:
  std::vector<int> members_;
  int universe_ = 0;
};

/// Colexicographic rank: sum over i of C(members[i], i + 1).
std::uint64_t subset_rank(const SubsetIndex& s);

/// Inverse of subset_rank. Throws std::out_of_range when rank >= C(universe, size).
SubsetIndex subset_unrank(std::uint64_t rank, int size, int universe_size);

/// All C(universe_size, r) subsets in colex order.
std::vector<SubsetIndex> enumerate_r_subsets(int universe_size, int r);

}  // namespace dpcc
