#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dpcc/bitstring.hpp"
#include "dpcc/combinatorics.hpp"
#include "dpcc/library.hpp"

namespace dpcc {

/// Virtual-user demand vector u^(k,s) of length NK - K + 1. The first N
/// entries (the leader positions) are s, s+1, ..., s+N-1 mod N.
struct UVector {
  int N = 2;
  std::vector<int> entries;

  int size() const { return static_cast<int>(entries.size()); }
  int operator[](int i) const { return entries.at(static_cast<std::size_t>(i)); }
  /// Leader position carrying the same demand as position i.
  int leader_of(int i) const;

  friend bool operator==(const UVector&, const UVector&) = default;
};

UVector build_u_vector(int N, int K, int k, int s);

/// Y-signals keyed by the colex rank of their (r+1)-subset index.
using SignalMap = std::map<std::uint64_t, BitString>;

struct YSignal {
  SubsetIndex index;
  BitString payload;
};

/// Y_{r_plus} = XOR over i in r_plus of W_{u_i, r_plus \ {i}}.
BitString compute_y(const FileLibrary& files, const UVector& u, const SubsetIndex& r_plus);

/// The leader-filtered delivery: every Y_{r_plus} with r_plus meeting [0, N).
SignalMap yma_delivery(const FileLibrary& files, const UVector& u);

/// Number of signals yma_delivery produces: C(K', r+1) - C(K'-N, r+1).
std::uint64_t yma_signal_count(int N, int universe, int r);

/// Y_{r_plus} from leader-intersecting signals only. Sets meeting the leader
/// positions are returned as stored; for the rest the exchange identity
///   Y_B = XOR_{F subset B, F nonempty, u pairwise distinct on F} Y_{(B \ F) + leaders(F)}
/// is applied.
BitString reconstruct_y(const SignalMap& delivered, const UVector& u, const SubsetIndex& r_plus);

}  // namespace dpcc
