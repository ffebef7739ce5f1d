#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dpcc {

/// Dense GF(2) vector of fixed bit length. Bits beyond size() in the last
/// word are always zero, so word-wise comparison is exact.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t nbits);

  std::size_t size() const { return nbits_; }
  bool empty() const { return nbits_ == 0; }

  bool get(std::size_t i) const;
  void set(std::size_t i, bool value);
  void flip(std::size_t i);

  /// Both operands must have the same length.
  BitString& operator^=(const BitString& other);
  friend BitString operator^(BitString a, const BitString& b) { return a ^= b; }

  bool is_zero() const;
  std::size_t popcount() const;

  BitString slice(std::size_t offset, std::size_t length) const;
  void append(const BitString& tail);

  /// MSB-first packing, zero padded to a whole byte.
  std::vector<std::uint8_t> to_bytes() const;
  static BitString from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits);

  /// "0101..." rendering, mostly for diagnostics.
  std::string to_string() const;

  template <class Rng>
  static BitString random(std::size_t nbits, Rng& rng) {
    BitString out(nbits);
    for (auto& w : out.words_) w = static_cast<std::uint64_t>(rng());
    out.trim();
    return out;
  }

  friend bool operator==(const BitString& a, const BitString& b) = default;

 private:
  void trim();

  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace dpcc
