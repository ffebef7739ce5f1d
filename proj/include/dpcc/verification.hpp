#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dpcc/library.hpp"
#include "dpcc/rational.hpp"
#include "dpcc/scheme.hpp"

namespace dpcc {

struct Failure {
  std::string configuration;
  std::string expected;
  std::string actual;
};

struct VerificationReport {
  std::string scope;
  std::uint64_t cases_run = 0;
  std::vector<Failure> failures;
  std::chrono::duration<double> elapsed{0};

  bool passed() const { return failures.empty(); }
  std::string to_text() const;
  nlohmann::json to_json() const;
};

/// Distribution over serialized observables. Weights are integers over a
/// shared denominator, so every probability is an exact rational.
class OutcomeHistogram {
 public:
  explicit OutcomeHistogram(BigInt denominator = 1) : denominator_(std::move(denominator)) {}

  void add(const std::string& observable, std::uint64_t weight);
  /// Adds another histogram's weights; denominators must match.
  void merge(const OutcomeHistogram& other);

  const BigInt& denominator() const { return denominator_; }
  std::size_t support_size() const { return weights_.size(); }
  Rational probability(const std::string& observable) const;
  Rational total() const;
  std::map<std::string, Rational> probabilities() const;

  /// Exact equality of the two distributions.
  friend bool operator==(const OutcomeHistogram& a, const OutcomeHistogram& b);

 private:
  BigInt denominator_;
  std::map<std::string, std::uint64_t> weights_;
};

/// Ablation switch for negative controls. kNone broadcasts d := D, which
/// breaks privacy by construction.
enum class DemandMasking { kKeyed, kNone };

enum class PrivacyMode { kConditionalOnFiles, kFullMarginal };

/// Hook applied to every delivery before decoding (fault injection).
using DeliveryTamper = std::function<void(DeliverySignal&)>;

/// Upper bound on enumerated cases before a scale guard trips.
inline constexpr std::uint64_t kMaxEnumeratedCases = 50'000'000;

/// Every D, every S, every t in V_d and every user: decode == W_{D_k}.
VerificationReport verify_correctness_exhaustive(const SchemeParams& params, const FileLibrary& files,
                                                 const DeliveryTamper& tamper = {});

/// For each user k and demand D_k, the law of serialized (X_D, Z_k) must not
/// depend on the other users' demands. `files` is required in conditional mode
/// and ignored in full-marginal mode, which enumerates every library with
/// one-bit subfiles.
VerificationReport verify_privacy(const SchemeParams& params, PrivacyMode mode, const FileLibrary* files,
                                  DemandMasking masking = DemandMasking::kKeyed);

/// Same comparison on the joint law of (X_D, Z_k, W_{D_k}).
VerificationReport verify_distribution_lemma(const SchemeParams& params, const FileLibrary& files,
                                             DemandMasking masking = DemandMasking::kKeyed);

/// XOR over t in V_d of W_{g(t)_k, R} equals W_{d_k, R}, and the key-shifted
/// form equals W_{D_k, R}; all d, all R, all k, all key digits.
VerificationReport oracle_demand_identity(const SchemeParams& params, const FileLibrary& files);

/// recover_segment agrees with x_segment for every d outside D0, every
/// admissible t_d, every S containing t_d and every n.
VerificationReport oracle_segment_recovery(const SchemeParams& params, const FileLibrary& files);

/// reconstruct_y agrees with compute_y on every non-leader (r+1)-subset, for
/// every user and key digit.
VerificationReport oracle_y_reconstruction(const SchemeParams& params, const FileLibrary& files);

}  // namespace dpcc
