#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "dpcc/bitstring.hpp"
#include "dpcc/combinatorics.hpp"
#include "dpcc/library.hpp"
#include "dpcc/rational.hpp"
#include "dpcc/yma.hpp"

namespace dpcc {

// ---------------------------------------------------------------------------
// Randomness
// ---------------------------------------------------------------------------

enum class Stream : std::uint32_t { kLibrary = 0, kKeys = 1, kTSelect = 2, kDemands = 3 };

/// Independent generator for one purpose, derived from a session seed.
std::mt19937_64 make_stream(std::uint64_t seed, Stream stream);

/// Uniform integer in [0, bound) by rejection; identical across platforms.
int uniform_below(std::mt19937_64& rng, int bound);

struct VVector;

/// Server-side randomness: the per-user key digits S and the t_d choices.
class SessionRandomness {
 public:
  /// Keys drawn from the kKeys stream; t choices from the kTSelect stream.
  SessionRandomness(int N, int K, std::uint64_t seed);
  /// Pinned keys (tests, exhaustive enumeration); t choices still seeded.
  SessionRandomness(int N, Digits keys, std::uint64_t seed);

  int N() const { return N_; }
  std::uint64_t seed() const { return seed_; }
  const Digits& keys() const { return keys_; }
  int key(int k) const { return keys_.at(static_cast<std::size_t>(k)); }

  /// Uniform draw from the V-set, once per delivery event; recorded per d.
  int choose_t(const Digits& d, const VVector& v);
  const std::map<Digits, int>& t_choices() const { return t_choices_; }

 private:
  int N_;
  std::uint64_t seed_;
  Digits keys_;
  std::mt19937_64 t_stream_;
  std::map<Digits, int> t_choices_;
};

// ---------------------------------------------------------------------------
// Auxiliary demands and their V-sets
// ---------------------------------------------------------------------------

enum class DemandClass { D0, D1, D2 };

const char* to_string(DemandClass c);

struct AuxDemand {
  Digits digits;
  DemandClass cls = DemandClass::D2;
};

/// D0 takes precedence over D1 where the two overlap (e.g. (0,...,0,1)).
DemandClass classify(const Digits& d, int N);

/// d_k = D_k - S_k mod N, classified.
AuxDemand aux_demand(const Digits& D, const Digits& S, int N);

/// Label of a D0 demand in [0, NK-K]. Throws if d is not in D0.
int f_map(const Digits& d, int N);
/// Inverse of f_map.
Digits g_map(int label, int N, int K);

/// Binary selector over the position universe; set() lists the 1 positions.
struct VVector {
  std::vector<std::uint8_t> bits;

  std::vector<int> set() const;
  bool contains(int j) const { return bits.at(static_cast<std::size_t>(j)) != 0; }
  std::uint64_t mask() const;

  friend bool operator==(const VVector&, const VVector&) = default;
};

VVector build_v(const Digits& d, int N);

// ---------------------------------------------------------------------------
// Placement
// ---------------------------------------------------------------------------

/// Z_k: the key digit plus the leader-intersecting Y-signals under u^(k, key).
struct CacheContent {
  int user = 0;
  int key = 0;
  SignalMap signals;

  std::uint64_t payload_bits() const;
};

CacheContent place_user(const FileLibrary& files, int k, int key);
std::vector<CacheContent> place(const FileLibrary& files, const Digits& keys);
std::vector<CacheContent> place(const FileLibrary& files, const SessionRandomness& rand);

// ---------------------------------------------------------------------------
// Delivery
// ---------------------------------------------------------------------------

/// Segment X^n_{d,S} for every n and every (r-1)-subset S avoiding t_d,
/// keyed by (n, colex rank of S). Map order is the canonical wire order.
struct DeliverySignal {
  Digits aux;
  int t_d = 0;
  std::map<std::pair<int, std::uint64_t>, BitString> segments;

  std::uint64_t payload_bits() const;
  const BitString& segment(int n, const SubsetIndex& s) const;
  bool has_segment(int n, const SubsetIndex& s) const;
};

/// XOR over v in V \ S of W_{n, S + v}; zero string when V is inside S.
BitString x_segment(const FileLibrary& files, const VVector& v, const SubsetIndex& s, int n);
BitString x_segment(const FileLibrary& files, const Digits& d, const SubsetIndex& s, int n);

/// Throws std::invalid_argument when t_d is not in V_d.
DeliverySignal assemble_delivery(const FileLibrary& files, const Digits& d, int t_d);
DeliverySignal assemble_delivery(const FileLibrary& files, const Digits& d, SessionRandomness& rand);

/// Segment for an S containing t_d, rebuilt from delivered segments; S not
/// containing t_d is returned as delivered.
BitString recover_segment(const SchemeParams& params, const DeliverySignal& x, const VVector& v,
                          const SubsetIndex& s, int n);

// ---------------------------------------------------------------------------
// Decoding
// ---------------------------------------------------------------------------

/// Reassembles W_{D_k} from Z_k and X_D. Throws std::invalid_argument when
/// D_k != d_k + S_k mod N.
BitString decode(const SchemeParams& params, const CacheContent& cache, const DeliverySignal& x, int demand);

/// Subfile W_{D_k, R} for a single r-subset R.
BitString decode_subfile(const SchemeParams& params, const CacheContent& cache, const DeliverySignal& x,
                         const VVector& v, const SubsetIndex& R);

// ---------------------------------------------------------------------------
// Accounting and wire format
// ---------------------------------------------------------------------------

/// ((C(K',r+1) - C(K'-N,r+1)) / C(K',r), N r / K').
RatePoint memory_rate_of(int N, int K, int r);
RatePoint memory_rate_of(const SchemeParams& params);

/// Concatenated segment payloads in wire order.
BitString delivery_payload(const DeliverySignal& x);
/// Concatenated Y-signal payloads in colex order.
BitString cache_payload(const CacheContent& z);

// Wire layout, all integers little endian:
//   delivery: u32 payload_bits | K bytes d | u16 t_d | payload, MSB first, byte padded
//   cache:    u32 payload_bits | u8 key    | payload, MSB first, byte padded
std::vector<std::uint8_t> serialize_delivery(const DeliverySignal& x);
DeliverySignal parse_delivery(const SchemeParams& params, std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> serialize_cache(const CacheContent& z);
CacheContent parse_cache(const SchemeParams& params, int user, std::span<const std::uint8_t> bytes);

}  // namespace dpcc
