#include "dpcc/library.hpp"

#include <stdexcept>
#include <string>

namespace dpcc {

SchemeParams SchemeParams::make(int N, int K, int r, std::uint64_t F) {
  if (N < 2) throw std::invalid_argument("N must be at least 2");
  if (K < 1) throw std::invalid_argument("K must be at least 1");
  SchemeParams p;
  p.N = N;
  p.K = K;
  p.r = r;
  p.F = F;
  if (p.universe() > kMaxUniverse) {
    throw std::invalid_argument("NK - K + 1 exceeds " + std::to_string(kMaxUniverse));
  }
  if (r < 0 || r > p.universe()) {
    throw std::invalid_argument("r must lie in [0, " + std::to_string(p.universe()) + "]");
  }
  if (F == 0 || F % p.subfile_count() != 0) {
    throw std::invalid_argument("F = " + std::to_string(F) + " is not a positive multiple of C(" +
                                std::to_string(p.universe()) + "," + std::to_string(r) +
                                ") = " + std::to_string(p.subfile_count()));
  }
  return p;
}

SchemeParams SchemeParams::minimal(int N, int K, int r) {
  if (N < 2 || K < 1 || N * K - K + 1 > kMaxUniverse || r < 0 || r > N * K - K + 1) {
    return make(N, K, r, 1);  // reports the range error
  }
  return make(N, K, r, binomial_small(N * K - K + 1, r));
}

FileLibrary::FileLibrary(const SchemeParams& params, std::vector<BitString> files)
    : params_(params), files_(std::move(files)) {
  if (static_cast<int>(files_.size()) != params_.N) {
    throw std::invalid_argument("FileLibrary: expected " + std::to_string(params_.N) + " files, got " +
                                std::to_string(files_.size()));
  }
  const std::uint64_t count = params_.subfile_count();
  const std::uint64_t len = params_.subfile_bits();
  subfiles_.resize(files_.size());
  for (std::size_t n = 0; n < files_.size(); ++n) {
    if (files_[n].size() != params_.F) {
      throw std::invalid_argument("FileLibrary: file " + std::to_string(n) + " has " +
                                  std::to_string(files_[n].size()) + " bits, expected " +
                                  std::to_string(params_.F));
    }
    subfiles_[n].reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) subfiles_[n].push_back(files_[n].slice(i * len, len));
  }
}

FileLibrary FileLibrary::from_code(const SchemeParams& params, std::uint64_t code) {
  const std::uint64_t total = static_cast<std::uint64_t>(params.N) * params.F;
  if (total > 64) throw std::invalid_argument("FileLibrary::from_code: library exceeds 64 bits");
  std::vector<BitString> files;
  for (int n = 0; n < params.N; ++n) {
    BitString f(params.F);
    for (std::uint64_t b = 0; b < params.F; ++b) {
      f.set(b, (code >> (static_cast<std::uint64_t>(n) * params.F + b)) & 1U);
    }
    files.push_back(std::move(f));
  }
  return FileLibrary(params, std::move(files));
}

const BitString& FileLibrary::subfile(int n, std::uint64_t rank) const {
  return subfiles_.at(static_cast<std::size_t>(n)).at(rank);
}

const BitString& FileLibrary::subfile(int n, const SubsetIndex& index) const {
  if (index.size() != params_.r || index.universe_size() != params_.universe()) {
    throw std::invalid_argument("FileLibrary::subfile: index " + index.to_string() +
                                " is not an r-subset of the position universe");
  }
  return subfile(n, subset_rank(index));
}

}  // namespace dpcc
