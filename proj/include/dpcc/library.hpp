#pragma once

#include <cstdint>
#include <vector>

#include "dpcc/bitstring.hpp"
#include "dpcc/combinatorics.hpp"

namespace dpcc {

/// Length-K vector of base-N digits (demands, keys, auxiliary demands).
using Digits = std::vector<int>;

/// (N, K, r, F). Positions live in [0, universe()) with universe() = NK - K + 1,
/// and each file splits into C(universe(), r) subfiles.
struct SchemeParams {
  int N = 2;
  int K = 1;
  int r = 0;
  std::uint64_t F = 1;

  /// Validates ranges and F divisibility; throws std::invalid_argument.
  static SchemeParams make(int N, int K, int r, std::uint64_t F);
  /// Smallest valid F (one bit per subfile).
  static SchemeParams minimal(int N, int K, int r);

  int universe() const { return N * K - K + 1; }
  std::uint64_t subfile_count() const { return binomial_small(universe(), r); }
  std::uint64_t subfile_bits() const { return F / subfile_count(); }

  friend bool operator==(const SchemeParams&, const SchemeParams&) = default;
};

/// N equal-length files, pre-split into subfiles addressed by the colex rank
/// of their r-subset index.
class FileLibrary {
 public:
  FileLibrary(const SchemeParams& params, std::vector<BitString> files);

  template <class Rng>
  static FileLibrary random(const SchemeParams& params, Rng& rng) {
    std::vector<BitString> files;
    files.reserve(static_cast<std::size_t>(params.N));
    for (int n = 0; n < params.N; ++n) files.push_back(BitString::random(params.F, rng));
    return FileLibrary(params, std::move(files));
  }

  /// Library whose flattened bits (file-major) are the low N*F bits of `code`.
  /// Lets tests enumerate every library when N*F <= 64.
  static FileLibrary from_code(const SchemeParams& params, std::uint64_t code);

  const SchemeParams& params() const { return params_; }
  int file_count() const { return params_.N; }
  const BitString& file(int n) const { return files_.at(static_cast<std::size_t>(n)); }
  const BitString& subfile(int n, std::uint64_t rank) const;
  const BitString& subfile(int n, const SubsetIndex& index) const;

 private:
  SchemeParams params_;
  std::vector<BitString> files_;
  std::vector<std::vector<BitString>> subfiles_;
};

/// Integer addition and subtraction modulo N.
inline int add_mod(int a, int b, int N) { return ((a + b) % N + N) % N; }
inline int sub_mod(int a, int b, int N) { return ((a - b) % N + N) % N; }

}  // namespace dpcc
