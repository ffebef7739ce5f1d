#include "dpcc/yma.hpp"

#include <stdexcept>
#include <string>

namespace dpcc {

namespace {
std::uint64_t leader_mask(int N) { return N >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << N) - 1; }
}  // namespace

int UVector::leader_of(int i) const {
  const int demand = (*this)[i];
  for (int j = 0; j < N && j < size(); ++j) {
    if (entries[static_cast<std::size_t>(j)] == demand) return j;
  }
  throw std::logic_error("UVector: demand " + std::to_string(demand) + " has no leader position");
}

UVector build_u_vector(int N, int K, int k, int s) {
  if (N < 2) throw std::invalid_argument("build_u_vector: N must be at least 2");
  if (K < 1) throw std::invalid_argument("build_u_vector: K must be at least 1");
  if (k < 0 || k >= K) throw std::invalid_argument("build_u_vector: user index out of range");
  if (s < 0 || s >= N) throw std::invalid_argument("build_u_vector: key digit out of range");

  const int last = N * K - K;
  const int split = (K - k) * (N - 1);
  UVector u;
  u.N = N;
  u.entries.resize(static_cast<std::size_t>(last + 1));
  for (int i = 0; i <= last; ++i) {
    int offset;
    if (i < N) {
      offset = i;
    } else if (i <= split) {
      offset = (i - 1) % (N - 1);
    } else {
      offset = (i - 1) % (N - 1) + 1;
    }
    u.entries[static_cast<std::size_t>(i)] = add_mod(s, offset, N);
  }
  return u;
}

BitString compute_y(const FileLibrary& files, const UVector& u, const SubsetIndex& r_plus) {
  const auto& p = files.params();
  if (r_plus.size() != p.r + 1) {
    throw std::invalid_argument("compute_y: index " + r_plus.to_string() + " must have size r+1 = " +
                                std::to_string(p.r + 1));
  }
  if (u.size() != p.universe()) throw std::invalid_argument("compute_y: u has wrong length");
  BitString y(p.subfile_bits());
  for (int i : r_plus.members()) y ^= files.subfile(u[i], r_plus.without(i));
  return y;
}

std::uint64_t yma_signal_count(int N, int universe, int r) {
  return binomial_small(universe, r + 1) - binomial_small(universe - N, r + 1);
}

SignalMap yma_delivery(const FileLibrary& files, const UVector& u) {
  const auto& p = files.params();
  SignalMap out;
  if (p.r + 1 > p.universe()) return out;
  const std::uint64_t leaders = leader_mask(p.N);
  for (const auto& r_plus : enumerate_r_subsets(p.universe(), p.r + 1)) {
    if ((r_plus.mask() & leaders) == 0) continue;
    out.emplace(subset_rank(r_plus), compute_y(files, u, r_plus));
  }
  return out;
}

BitString reconstruct_y(const SignalMap& delivered, const UVector& u, const SubsetIndex& r_plus) {
  const std::uint64_t leaders = leader_mask(u.N);
  auto lookup = [&](const SubsetIndex& idx) -> const BitString& {
    auto it = delivered.find(subset_rank(idx));
    if (it == delivered.end()) {
      throw std::invalid_argument("reconstruct_y: signal " + idx.to_string() + " not delivered");
    }
    return it->second;
  };
  if ((r_plus.mask() & leaders) != 0) return lookup(r_plus);
  if (delivered.empty()) throw std::invalid_argument("reconstruct_y: no delivered signals");

  const auto& B = r_plus.members();
  const int b = r_plus.size();
  BitString acc(delivered.begin()->second.size());
  for (std::uint32_t sel = 1; sel < (std::uint32_t{1} << b); ++sel) {
    std::uint64_t used_demands = 0;
    std::uint64_t mask = r_plus.mask();
    bool distinct = true;
    for (int j = 0; j < b && distinct; ++j) {
      if (!(sel & (std::uint32_t{1} << j))) continue;
      const int pos = B[static_cast<std::size_t>(j)];
      const std::uint64_t bit = std::uint64_t{1} << u[pos];
      if (used_demands & bit) {
        distinct = false;
        break;
      }
      used_demands |= bit;
      mask &= ~(std::uint64_t{1} << pos);
      mask |= std::uint64_t{1} << u.leader_of(pos);
    }
    if (!distinct) continue;
    std::vector<int> members;
    for (int x = 0; x < r_plus.universe_size(); ++x) {
      if (mask & (std::uint64_t{1} << x)) members.push_back(x);
    }
    acc ^= lookup(SubsetIndex(std::move(members), r_plus.universe_size()));
  }
  return acc;
}

}  // namespace dpcc
