#include "dpcc/bitstring.hpp"

#include <bit>
#include <stdexcept>

namespace dpcc {

namespace {
constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t nbits) { return (nbits + kWordBits - 1) / kWordBits; }
}  // namespace

BitString::BitString(std::size_t nbits) : nbits_(nbits), words_(words_for(nbits), 0) {}

bool BitString::get(std::size_t i) const {
  if (i >= nbits_) throw std::out_of_range("BitString::get: index out of range");
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
}

void BitString::set(std::size_t i, bool value) {
  if (i >= nbits_) throw std::out_of_range("BitString::set: index out of range");
  const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
  if (value) {
    words_[i / kWordBits] |= mask;
  } else {
    words_[i / kWordBits] &= ~mask;
  }
}

void BitString::flip(std::size_t i) { set(i, !get(i)); }

BitString& BitString::operator^=(const BitString& other) {
  if (other.nbits_ != nbits_) {
    throw std::invalid_argument("BitString xor: length mismatch (" + std::to_string(nbits_) +
                                " vs " + std::to_string(other.nbits_) + ")");
  }
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

bool BitString::is_zero() const {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::size_t BitString::popcount() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

BitString BitString::slice(std::size_t offset, std::size_t length) const {
  if (offset + length > nbits_) throw std::out_of_range("BitString::slice out of range");
  BitString out(length);
  if (offset % kWordBits == 0) {
    for (std::size_t w = 0; w < out.words_.size(); ++w) out.words_[w] = words_[offset / kWordBits + w];
    out.trim();
    return out;
  }
  for (std::size_t i = 0; i < length; ++i) {
    if (get(offset + i)) out.words_[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits);
  }
  return out;
}

void BitString::append(const BitString& tail) {
  const std::size_t base = nbits_;
  nbits_ += tail.nbits_;
  words_.resize(words_for(nbits_), 0);
  if (base % kWordBits == 0) {
    for (std::size_t w = 0; w < tail.words_.size(); ++w) words_[base / kWordBits + w] = tail.words_[w];
    return;
  }
  for (std::size_t i = 0; i < tail.nbits_; ++i) {
    if (tail.get(i)) set(base + i, true);
  }
}

std::vector<std::uint8_t> BitString::to_bytes() const {
  std::vector<std::uint8_t> out((nbits_ + 7) / 8, 0);
  for (std::size_t i = 0; i < nbits_; ++i) {
    if (get(i)) out[i / 8] |= static_cast<std::uint8_t>(0x80U >> (i % 8));
  }
  return out;
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits) {
  if (bytes.size() * 8 < nbits) throw std::invalid_argument("BitString::from_bytes: not enough bytes");
  BitString out(nbits);
  for (std::size_t i = 0; i < nbits; ++i) {
    if (bytes[i / 8] & (0x80U >> (i % 8))) out.set(i, true);
  }
  return out;
}

std::string BitString::to_string() const {
  std::string s;
  s.reserve(nbits_);
  for (std::size_t i = 0; i < nbits_; ++i) s.push_back(get(i) ? '1' : '0');
  return s;
}

void BitString::trim() {
  const std::size_t tail = nbits_ % kWordBits;
  if (tail != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << tail) - 1;
}

}  // namespace dpcc
