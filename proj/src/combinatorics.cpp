#include "dpcc/combinatorics.hpp"

#include <array>
#include <stdexcept>

namespace dpcc {

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (n < 0) throw std::invalid_argument("binomial: n must be nonnegative");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  // Each partial product is C(n-k+i, i), so the division is exact.
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

namespace {

using PascalTable = std::array<std::array<std::uint64_t, kMaxUniverse + 1>, kMaxUniverse + 1>;

const PascalTable& pascal() {
  static const PascalTable table = [] {
    PascalTable t{};
    for (int n = 0; n <= kMaxUniverse; ++n) {
      t[n][0] = 1;
      for (int k = 1; k <= n; ++k) t[n][k] = t[n - 1][k - 1] + (k < n ? t[n - 1][k] : 0);
    }
    return t;
  }();
  return table;
}

}  // namespace

std::uint64_t binomial_small(int n, int k) {
  if (n < 0 || n > kMaxUniverse) throw std::out_of_range("binomial_small: n outside [0, 64]");
  if (k < 0 || k > n) return 0;
  return pascal()[n][k];
}

SubsetIndex::SubsetIndex(std::vector<int> members, int universe_size)
    : members_(std::move(members)), universe_(universe_size) {
  if (universe_ < 0 || universe_ > kMaxUniverse) {
    throw std::invalid_argument("SubsetIndex: universe size must lie in [0, 64]");
  }
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] < 0 || members_[i] >= universe_) {
      throw std::invalid_argument("SubsetIndex: member " + std::to_string(members_[i]) +
                                  " outside universe of size " + std::to_string(universe_));
    }
    if (i > 0 && members_[i] <= members_[i - 1]) {
      throw std::invalid_argument("SubsetIndex: members must be strictly increasing");
    }
  }
}

bool SubsetIndex::contains(int x) const {
  for (int m : members_) {
    if (m == x) return true;
    if (m > x) return false;
  }
  return false;
}

SubsetIndex SubsetIndex::with(int x) const {
  if (contains(x)) throw std::invalid_argument("SubsetIndex::with: already a member");
  std::vector<int> out;
  out.reserve(members_.size() + 1);
  bool placed = false;
  for (int m : members_) {
    if (!placed && x < m) {
      out.push_back(x);
      placed = true;
    }
    out.push_back(m);
  }
  if (!placed) out.push_back(x);
  return SubsetIndex(std::move(out), universe_);
}

SubsetIndex SubsetIndex::without(int x) const {
  if (!contains(x)) throw std::invalid_argument("SubsetIndex::without: not a member");
  std::vector<int> out;
  out.reserve(members_.size());
  for (int m : members_) {
    if (m != x) out.push_back(m);
  }
  return SubsetIndex(std::move(out), universe_);
}

std::uint64_t SubsetIndex::mask() const {
  std::uint64_t m = 0;
  for (int x : members_) m |= std::uint64_t{1} << x;
  return m;
}

std::string SubsetIndex::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(members_[i]);
  }
  return s + "}";
}

std::uint64_t subset_rank(const SubsetIndex& s) {
  std::uint64_t rank = 0;
  const auto& m = s.members();
  for (std::size_t i = 0; i < m.size(); ++i) rank += binomial_small(m[i], static_cast<int>(i) + 1);
  return rank;
}

SubsetIndex subset_unrank(std::uint64_t rank, int size, int universe_size) {
  if (size < 0 || size > universe_size) throw std::out_of_range("subset_unrank: size outside [0, universe]");
  if (rank >= binomial_small(universe_size, size)) {
    throw std::out_of_range("subset_unrank: rank " + std::to_string(rank) + " out of range");
  }
  std::vector<int> members(static_cast<std::size_t>(size));
  int bound = universe_size;
  for (int i = size; i >= 1; --i) {
    // Largest m < bound with C(m, i) <= rank.
    int m = bound - 1;
    while (binomial_small(m, i) > rank) --m;
    members[static_cast<std::size_t>(i - 1)] = m;
    rank -= binomial_small(m, i);
    bound = m;
  }
  return SubsetIndex(std::move(members), universe_size);
}

std::vector<SubsetIndex> enumerate_r_subsets(int universe_size, int r) {
  if (r < 0 || r > universe_size) throw std::invalid_argument("enumerate_r_subsets: r outside [0, universe]");
  const std::uint64_t count = binomial_small(universe_size, r);
  std::vector<SubsetIndex> out;
  out.reserve(count);
  // Colex successor: bump the lowest member that can move up, reset the ones below it.
  std::vector<int> cur(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) cur[static_cast<std::size_t>(i)] = i;
  for (std::uint64_t n = 0; n < count; ++n) {
    out.emplace_back(cur, universe_size);
    int i = 0;
    while (i < r && cur[static_cast<std::size_t>(i)] + 1 ==
                        (i + 1 < r ? cur[static_cast<std::size_t>(i + 1)] : universe_size)) {
      ++i;
    }
    if (i == r) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = 0; j < i; ++j) cur[static_cast<std::size_t>(j)] = j;
  }
  return out;
}

}  // namespace dpcc
