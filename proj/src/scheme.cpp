#include "dpcc/scheme.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace dpcc {

namespace {

void check_digits(const Digits& v, int N, const char* what) {
  for (int x : v) {
    if (x < 0 || x >= N) {
      throw std::invalid_argument(std::string(what) + ": digit " + std::to_string(x) + " outside [0, " +
                                  std::to_string(N - 1) + "]");
    }
  }
}

std::string digits_string(const Digits& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s + ")";
}

// Position of the single nonzero digit, or -1.
int single_nonzero(const Digits& d) {
  int pos = -1;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] == 0) continue;
    if (pos >= 0) return -1;
    pos = static_cast<int>(i);
  }
  return pos;
}

// Label of d in D0, or -1 when d is not in D0.
int d0_label(const Digits& d, int N) {
  const int K = static_cast<int>(d.size());
  const int a = d.front();
  int k = 0;  // number of trailing digits equal to a + 1
  while (k < K && d[static_cast<std::size_t>(K - 1 - k)] != a) ++k;
  for (int i = 0; i < K - k; ++i) {
    if (d[static_cast<std::size_t>(i)] != a) return -1;
  }
  if (k == 0) return a;
  if (a > N - 2) return -1;
  for (int i = K - k; i < K; ++i) {
    if (d[static_cast<std::size_t>(i)] != a + 1) return -1;
  }
  return (N - 1) * k + a + 1;
}

void toggle(VVector& v, int j) { v.bits.at(static_cast<std::size_t>(j)) ^= 1U; }

VVector unit(int size, int j) {
  VVector v;
  v.bits.assign(static_cast<std::size_t>(size), 0);
  toggle(v, j);
  return v;
}

// V for d = a e_k with a >= 1 (K >= 2).
VVector v_single(int N, int K, int k, int a) {
  VVector v = unit(N * K - K + 1, 0);
  for (int b = 1; b <= a; ++b) {
    if (k == 0) {
      toggle(v, b);
      toggle(v, (N - 1) * (K - 1) + b);
    } else if (k == K - 1) {
      toggle(v, (N - 1) + b);
      toggle(v, b - 1);
    } else {
      toggle(v, (N - 1) * (K - k) + b);
      toggle(v, (N - 1) * (K - k - 1) + b);
    }
  }
  return v;
}

BitString decode_with_u(const SchemeParams& params, const CacheContent& cache, const UVector& u,
                        const DeliverySignal& x, const VVector& v, const SubsetIndex& R) {
  BitString acc(params.subfile_bits());
  for (int t = 0; t < params.universe(); ++t) {
    if (!v.contains(t) || R.contains(t)) continue;
    acc ^= reconstruct_y(cache.signals, u, R.with(t));
  }
  for (int t : R.members()) {
    const int c_t = add_mod(g_map(t, params.N, params.K).at(static_cast<std::size_t>(cache.user)), cache.key,
                            params.N);
    acc ^= recover_segment(params, x, v, R.without(t), c_t);
  }
  return acc;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint64_t value) {
  if (value > std::numeric_limits<std::uint32_t>::max()) {
    throw std::length_error("payload exceeds the 32-bit length field");
  }
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
}

std::uint64_t get_le(std::span<const std::uint8_t> bytes, std::size_t offset, int width) {
  if (offset + static_cast<std::size_t>(width) > bytes.size()) throw std::invalid_argument("truncated message");
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i) v |= std::uint64_t{bytes[offset + static_cast<std::size_t>(i)]} << (8 * i);
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------

std::mt19937_64 make_stream(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), 0x64706363U};
  return std::mt19937_64(seq);
}

int uniform_below(std::mt19937_64& rng, int bound) {
  if (bound <= 0) throw std::invalid_argument("uniform_below: bound must be positive");
  const auto b = static_cast<std::uint64_t>(bound);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % b);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<int>(x % b);
}

SessionRandomness::SessionRandomness(int N, int K, std::uint64_t seed)
    : N_(N), seed_(seed), t_stream_(make_stream(seed, Stream::kTSelect)) {
  if (N < 2 || K < 1) throw std::invalid_argument("SessionRandomness: need N >= 2 and K >= 1");
  auto key_stream = make_stream(seed, Stream::kKeys);
  keys_.reserve(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) keys_.push_back(uniform_below(key_stream, N));
}

SessionRandomness::SessionRandomness(int N, Digits keys, std::uint64_t seed)
    : N_(N), seed_(seed), keys_(std::move(keys)), t_stream_(make_stream(seed, Stream::kTSelect)) {
  check_digits(keys_, N, "SessionRandomness");
}

int SessionRandomness::choose_t(const Digits& d, const VVector& v) {
  const auto members = v.set();
  const int t = members.at(static_cast<std::size_t>(uniform_below(t_stream_, static_cast<int>(members.size()))));
  t_choices_[d] = t;
  return t;
}

// ---------------------------------------------------------------------------

const char* to_string(DemandClass c) {
  switch (c) {
    case DemandClass::D0:
      return "D0";
    case DemandClass::D1:
      return "D1";
    case DemandClass::D2:
      return "D2";
  }
  return "?";
}

DemandClass classify(const Digits& d, int N) {
  if (d.empty()) throw std::invalid_argument("classify: empty demand vector");
  check_digits(d, N, "classify");
  if (d0_label(d, N) >= 0) return DemandClass::D0;
  if (single_nonzero(d) >= 0) return DemandClass::D1;
  return DemandClass::D2;
}

AuxDemand aux_demand(const Digits& D, const Digits& S, int N) {
  if (D.size() != S.size()) throw std::invalid_argument("aux_demand: demand and key lengths differ");
  check_digits(D, N, "aux_demand (demand)");
  check_digits(S, N, "aux_demand (key)");
  AuxDemand out;
  out.digits.reserve(D.size());
  for (std::size_t k = 0; k < D.size(); ++k) out.digits.push_back(sub_mod(D[k], S[k], N));
  out.cls = classify(out.digits, N);
  return out;
}

int f_map(const Digits& d, int N) {
  if (d.empty()) throw std::invalid_argument("f_map: empty demand vector");
  check_digits(d, N, "f_map");
  const int label = d0_label(d, N);
  if (label < 0) throw std::invalid_argument("f_map: " + digits_string(d) + " is not in D0");
  return label;
}

Digits g_map(int label, int N, int K) {
  if (label < 0 || label > N * K - K) {
    throw std::invalid_argument("g_map: label " + std::to_string(label) + " outside [0, " +
                                std::to_string(N * K - K) + "]");
  }
  if (label < N) return Digits(static_cast<std::size_t>(K), label);
  const int k = (label - 1) / (N - 1);
  const int a = (label - 1) % (N - 1);
  Digits d(static_cast<std::size_t>(K), a);
  std::fill(d.end() - k, d.end(), a + 1);
  return d;
}

std::vector<int> VVector::set() const {
  std::vector<int> out;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j]) out.push_back(static_cast<int>(j));
  }
  return out;
}

std::uint64_t VVector::mask() const {
  std::uint64_t m = 0;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j]) m |= std::uint64_t{1} << j;
  }
  return m;
}

VVector build_v(const Digits& d, int N) {
  if (d.empty()) throw std::invalid_argument("build_v: empty demand vector");
  check_digits(d, N, "build_v");
  const int K = static_cast<int>(d.size());
  const int size = N * K - K + 1;
  // One user: every demand is a D0 label.
  if (K == 1) return unit(size, f_map(d, N));

  const int k = single_nonzero(d);
  if (k < 0 && std::all_of(d.begin(), d.end(), [](int x) { return x == 0; })) return unit(size, 0);
  if (k >= 0) return v_single(N, K, k, d[static_cast<std::size_t>(k)]);

  VVector v = unit(size, 0);
  for (int i = 0; i < K; ++i) {
    const int a = d[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    VVector term = v_single(N, K, i, a);
    toggle(term, 0);
    for (std::size_t j = 0; j < v.bits.size(); ++j) v.bits[j] ^= term.bits[j];
  }
  return v;
}

// ---------------------------------------------------------------------------

std::uint64_t CacheContent::payload_bits() const {
  std::uint64_t n = 0;
  for (const auto& [rank, y] : signals) n += y.size();
  return n;
}

CacheContent place_user(const FileLibrary& files, int k, int key) {
  const auto& p = files.params();
  CacheContent z;
  z.user = k;
  z.key = key;
  z.signals = yma_delivery(files, build_u_vector(p.N, p.K, k, key));
  return z;
}

std::vector<CacheContent> place(const FileLibrary& files, const Digits& keys) {
  const auto& p = files.params();
  if (static_cast<int>(keys.size()) != p.K) throw std::invalid_argument("place: need one key per user");
  check_digits(keys, p.N, "place");
  std::vector<CacheContent> out;
  out.reserve(keys.size());
  for (int k = 0; k < p.K; ++k) out.push_back(place_user(files, k, keys[static_cast<std::size_t>(k)]));
  return out;
}

std::vector<CacheContent> place(const FileLibrary& files, const SessionRandomness& rand) {
  return place(files, rand.keys());
}

// ---------------------------------------------------------------------------

std::uint64_t DeliverySignal::payload_bits() const {
  std::uint64_t n = 0;
  for (const auto& [key, seg] : segments) n += seg.size();
  return n;
}

bool DeliverySignal::has_segment(int n, const SubsetIndex& s) const {
  return segments.count({n, subset_rank(s)}) != 0;
}

const BitString& DeliverySignal::segment(int n, const SubsetIndex& s) const {
  auto it = segments.find({n, subset_rank(s)});
  if (it == segments.end()) {
    throw std::invalid_argument("delivery has no segment X^" + std::to_string(n) + "_" + s.to_string());
  }
  return it->second;
}

BitString x_segment(const FileLibrary& files, const VVector& v, const SubsetIndex& s, int n) {
  const auto& p = files.params();
  if (s.size() != p.r - 1) throw std::invalid_argument("x_segment: index must have size r-1");
  BitString acc(p.subfile_bits());
  for (int j = 0; j < p.universe(); ++j) {
    if (v.contains(j) && !s.contains(j)) acc ^= files.subfile(n, s.with(j));
  }
  return acc;
}

BitString x_segment(const FileLibrary& files, const Digits& d, const SubsetIndex& s, int n) {
  return x_segment(files, build_v(d, files.params().N), s, n);
}

DeliverySignal assemble_delivery(const FileLibrary& files, const Digits& d, int t_d) {
  const auto& p = files.params();
  if (static_cast<int>(d.size()) != p.K) throw std::invalid_argument("assemble_delivery: wrong demand length");
  const VVector v = build_v(d, p.N);
  if (t_d < 0 || t_d >= p.universe() || !v.contains(t_d)) {
    throw std::invalid_argument("assemble_delivery: t_d = " + std::to_string(t_d) + " is not in V_d");
  }
  DeliverySignal x;
  x.aux = d;
  x.t_d = t_d;
  if (p.r == 0) return x;
  const auto subsets = enumerate_r_subsets(p.universe(), p.r - 1);
  for (int n = 0; n < p.N; ++n) {
    for (const auto& s : subsets) {
      if (s.contains(t_d)) continue;
      x.segments.emplace(std::make_pair(n, subset_rank(s)), x_segment(files, v, s, n));
    }
  }
  return x;
}

DeliverySignal assemble_delivery(const FileLibrary& files, const Digits& d, SessionRandomness& rand) {
  const VVector v = build_v(d, files.params().N);
  return assemble_delivery(files, d, rand.choose_t(d, v));
}

BitString recover_segment(const SchemeParams& params, const DeliverySignal& x, const VVector& v,
                          const SubsetIndex& s, int n) {
  if (s.size() != params.r - 1) throw std::invalid_argument("recover_segment: index must have size r-1");
  if (!s.contains(x.t_d)) return x.segment(n, s);
  const SubsetIndex rest = s.without(x.t_d);
  BitString acc(params.subfile_bits());
  for (int t = 0; t < params.universe(); ++t) {
    if (v.contains(t) && !s.contains(t)) acc ^= x.segment(n, rest.with(t));
  }
  return acc;
}

// ---------------------------------------------------------------------------

BitString decode_subfile(const SchemeParams& params, const CacheContent& cache, const DeliverySignal& x,
                         const VVector& v, const SubsetIndex& R) {
  const UVector u = build_u_vector(params.N, params.K, cache.user, cache.key);
  return decode_with_u(params, cache, u, x, v, R);
}

BitString decode(const SchemeParams& params, const CacheContent& cache, const DeliverySignal& x, int demand) {
  if (static_cast<int>(x.aux.size()) != params.K) throw std::invalid_argument("decode: wrong auxiliary length");
  if (cache.user < 0 || cache.user >= params.K) throw std::invalid_argument("decode: user out of range");
  const int d_k = x.aux[static_cast<std::size_t>(cache.user)];
  if (add_mod(d_k, cache.key, params.N) != demand) {
    throw std::invalid_argument("decode: demand " + std::to_string(demand) + " inconsistent with key " +
                                std::to_string(cache.key) + " and auxiliary digit " + std::to_string(d_k));
  }
  const UVector u = build_u_vector(params.N, params.K, cache.user, cache.key);
  const VVector v = build_v(x.aux, params.N);
  BitString out;
  for (const auto& R : enumerate_r_subsets(params.universe(), params.r)) {
    out.append(decode_with_u(params, cache, u, x, v, R));
  }
  return out;
}

// ---------------------------------------------------------------------------

RatePoint memory_rate_of(int N, int K, int r) {
  const int universe = N * K - K + 1;
  if (N < 2 || K < 1 || r < 0 || r > universe) throw std::invalid_argument("memory_rate_of: parameter out of range");
  const BigInt stored = binomial(universe, r + 1) - binomial(universe - N, r + 1);
  return RatePoint{Rational(stored, binomial(universe, r)), Rational(BigInt(N) * r, BigInt(universe))};
}

RatePoint memory_rate_of(const SchemeParams& params) { return memory_rate_of(params.N, params.K, params.r); }

BitString delivery_payload(const DeliverySignal& x) {
  BitString out;
  for (const auto& [key, seg] : x.segments) out.append(seg);
  return out;
}

BitString cache_payload(const CacheContent& z) {
  BitString out;
  for (const auto& [rank, y] : z.signals) out.append(y);
  return out;
}

std::vector<std::uint8_t> serialize_delivery(const DeliverySignal& x) {
  const BitString payload = delivery_payload(x);
  std::vector<std::uint8_t> out;
  put_u32(out, payload.size());
  for (int digit : x.aux) {
    if (digit < 0 || digit > 255) throw std::invalid_argument("serialize_delivery: digit does not fit a byte");
    out.push_back(static_cast<std::uint8_t>(digit));
  }
  if (x.t_d < 0 || x.t_d > 0xFFFF) throw std::invalid_argument("serialize_delivery: t_d does not fit 16 bits");
  out.push_back(static_cast<std::uint8_t>(x.t_d & 0xFF));
  out.push_back(static_cast<std::uint8_t>(x.t_d >> 8));
  const auto body = payload.to_bytes();
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

DeliverySignal parse_delivery(const SchemeParams& params, std::span<const std::uint8_t> bytes) {
  const std::uint64_t nbits = get_le(bytes, 0, 4);
  std::size_t off = 4;
  DeliverySignal x;
  for (int k = 0; k < params.K; ++k) x.aux.push_back(static_cast<int>(get_le(bytes, off++, 1)));
  check_digits(x.aux, params.N, "parse_delivery");
  x.t_d = static_cast<int>(get_le(bytes, off, 2));
  off += 2;
  const VVector v = build_v(x.aux, params.N);
  if (x.t_d >= params.universe() || !v.contains(x.t_d)) throw std::invalid_argument("parse_delivery: t_d not in V_d");

  const std::uint64_t len = params.subfile_bits();
  std::vector<std::pair<int, std::uint64_t>> keys;
  if (params.r > 0) {
    for (int n = 0; n < params.N; ++n) {
      for (const auto& s : enumerate_r_subsets(params.universe(), params.r - 1)) {
        if (!s.contains(x.t_d)) keys.emplace_back(n, subset_rank(s));
      }
    }
  }
  if (nbits != keys.size() * len) {
    throw std::invalid_argument("parse_delivery: payload has " + std::to_string(nbits) + " bits, expected " +
                                std::to_string(keys.size() * len));
  }
  if (bytes.size() != off + (nbits + 7) / 8) throw std::invalid_argument("parse_delivery: wrong message length");
  const BitString payload = BitString::from_bytes(bytes.subspan(off), nbits);
  for (std::size_t i = 0; i < keys.size(); ++i) x.segments.emplace(keys[i], payload.slice(i * len, len));
  return x;
}

std::vector<std::uint8_t> serialize_cache(const CacheContent& z) {
  const BitString payload = cache_payload(z);
  std::vector<std::uint8_t> out;
  put_u32(out, payload.size());
  if (z.key < 0 || z.key > 255) throw std::invalid_argument("serialize_cache: key does not fit a byte");
  out.push_back(static_cast<std::uint8_t>(z.key));
  const auto body = payload.to_bytes();
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

CacheContent parse_cache(const SchemeParams& params, int user, std::span<const std::uint8_t> bytes) {
  const std::uint64_t nbits = get_le(bytes, 0, 4);
  CacheContent z;
  z.user = user;
  z.key = static_cast<int>(get_le(bytes, 4, 1));
  if (z.key >= params.N) throw std::invalid_argument("parse_cache: key out of range");
  const std::uint64_t len = params.subfile_bits();
  std::vector<std::uint64_t> ranks;
  if (params.r + 1 <= params.universe()) {
    for (const auto& r_plus : enumerate_r_subsets(params.universe(), params.r + 1)) {
      bool leader = false;
      for (int i : r_plus.members()) leader = leader || i < params.N;
      if (leader) ranks.push_back(subset_rank(r_plus));
    }
  }
  if (nbits != ranks.size() * len) {
    throw std::invalid_argument("parse_cache: payload has " + std::to_string(nbits) + " bits, expected " +
                                std::to_string(ranks.size() * len));
  }
  if (bytes.size() != 5 + (nbits + 7) / 8) throw std::invalid_argument("parse_cache: wrong message length");
  const BitString payload = BitString::from_bytes(bytes.subspan(5), nbits);
  for (std::size_t i = 0; i < ranks.size(); ++i) z.signals.emplace(ranks[i], payload.slice(i * len, len));
  return z;
}

}  // namespace dpcc
