#include "dpcc/verification.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dpcc {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > kMaxEnumeratedCases * 1000) throw std::invalid_argument("enumeration scale guard exceeded");
    out *= base;
  }
  return out;
}

// Digits of `index` in base N, position 0 least significant.
Digits digits_of(std::uint64_t index, int N, int K) {
  Digits d(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    d[static_cast<std::size_t>(k)] = static_cast<int>(index % static_cast<std::uint64_t>(N));
    index /= static_cast<std::uint64_t>(N);
  }
  return d;
}

std::string show(const Digits& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(d[i]);
  }
  return s + ")";
}

std::string show_bits(const BitString& b) {
  std::string s = b.to_string();
  if (s.size() > 64) s = s.substr(0, 64) + "...";
  return s;
}

void guard(std::uint64_t cases, const char* what) {
  if (cases > kMaxEnumeratedCases) {
    throw std::invalid_argument(std::string(what) + ": " + std::to_string(cases) +
                                " cases exceed the enumeration scale guard");
  }
}

unsigned worker_count(std::uint64_t jobs) {
  const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::uint64_t>(hw, std::max<std::uint64_t>(jobs, 1)));
}

// Runs body(begin, end, worker) over [0, jobs) split into contiguous chunks.
template <class Body>
void run_chunks(std::uint64_t jobs, unsigned workers, Body&& body) {
  if (workers <= 1) {
    body(std::uint64_t{0}, jobs, 0U);
    return;
  }
  std::vector<std::thread> threads;
  const std::uint64_t step = (jobs + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = std::min(jobs, w * step);
    const std::uint64_t end = std::min(jobs, begin + step);
    threads.emplace_back([&body, begin, end, w] { body(begin, end, w); });
  }
  for (auto& t : threads) t.join();
}

std::string as_key(const std::vector<std::uint8_t>& bytes) { return std::string(bytes.begin(), bytes.end()); }

std::uint64_t lcm_of_v_sizes(int N, int K) {
  std::uint64_t l = 1;
  const std::uint64_t count = ipow(static_cast<std::uint64_t>(N), K);
  for (std::uint64_t i = 0; i < count; ++i) {
    l = std::lcm(l, static_cast<std::uint64_t>(build_v(digits_of(i, N, K), N).set().size()));
  }
  return l;
}

// Observable law of one user's view, for every (k, D_k, completion of D_{-k}).
VerificationReport histogram_check(const std::string& scope, const SchemeParams& params,
                                   const std::vector<FileLibrary>* fixed, std::uint64_t library_count,
                                   DemandMasking masking, bool include_demanded_file) {
  const auto start = Clock::now();
  VerificationReport report;
  report.scope = scope;

  const int N = params.N;
  const int K = params.K;
  const std::uint64_t demand_count = ipow(static_cast<std::uint64_t>(N), K);
  const std::uint64_t completions = ipow(static_cast<std::uint64_t>(N), K - 1);
  const std::uint64_t v_lcm = lcm_of_v_sizes(N, K);
  const BigInt denominator = BigInt(library_count) * demand_count * v_lcm;

  // Per-d V-sets, shared by all libraries.
  std::vector<VVector> v_sets;
  for (std::uint64_t i = 0; i < demand_count; ++i) v_sets.push_back(build_v(digits_of(i, N, K), N));
  auto index_of = [&](const Digits& d) {
    std::uint64_t idx = 0;
    for (int k = K - 1; k >= 0; --k) idx = idx * static_cast<std::uint64_t>(N) + static_cast<std::uint64_t>(d[static_cast<std::size_t>(k)]);
    return idx;
  };

  auto library = [&](std::uint64_t i) {
    return fixed ? (*fixed)[static_cast<std::size_t>(i)] : FileLibrary::from_code(params, i);
  };

  for (int k = 0; k < K; ++k) {
    for (int demand_k = 0; demand_k < N; ++demand_k) {
      // Full demand vectors for each completion of D_{-k}.
      std::vector<Digits> demands;
      for (std::uint64_t c = 0; c < completions; ++c) {
        Digits rest = digits_of(c, N, K - 1);
        Digits D;
        for (int j = 0, r = 0; j < K; ++j) D.push_back(j == k ? demand_k : rest[static_cast<std::size_t>(r++)]);
        demands.push_back(std::move(D));
      }

      const unsigned workers = worker_count(library_count);
      std::vector<std::vector<OutcomeHistogram>> partial(
          workers, std::vector<OutcomeHistogram>(completions, OutcomeHistogram(denominator)));
      std::vector<std::uint64_t> partial_cases(workers, 0);

      run_chunks(library_count, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
        for (std::uint64_t li = begin; li < end; ++li) {
          const FileLibrary files = library(li);
          std::vector<std::string> cache_keys;
          for (int s = 0; s < N; ++s) cache_keys.push_back(as_key(serialize_cache(place_user(files, k, s))));
          const std::string file_key = include_demanded_file ? as_key(files.file(demand_k).to_bytes()) : "";
          // Serialized deliveries per (d, t), built lazily.
          std::map<std::pair<std::uint64_t, int>, std::string> deliveries;
          auto delivery = [&](std::uint64_t d_index, int t) -> const std::string& {
            auto it = deliveries.find({d_index, t});
            if (it != deliveries.end()) return it->second;
            const auto x = assemble_delivery(files, digits_of(d_index, N, K), t);
            return deliveries.emplace(std::make_pair(d_index, t), as_key(serialize_delivery(x))).first->second;
          };

          for (std::uint64_t c = 0; c < completions; ++c) {
            const Digits& D = demands[static_cast<std::size_t>(c)];
            for (std::uint64_t si = 0; si < demand_count; ++si) {
              const Digits S = digits_of(si, N, K);
              const Digits d = masking == DemandMasking::kKeyed ? aux_demand(D, S, N).digits : D;
              const std::uint64_t d_index = index_of(d);
              const auto members = v_sets[static_cast<std::size_t>(d_index)].set();
              const std::uint64_t weight = v_lcm / members.size();
              for (int t : members) {
                std::string obs = delivery(d_index, t);
                obs += cache_keys[static_cast<std::size_t>(S[static_cast<std::size_t>(k)])];
                obs += file_key;
                partial[w][static_cast<std::size_t>(c)].add(obs, weight);
                ++partial_cases[w];
              }
            }
          }
        }
      });

      std::vector<OutcomeHistogram> hists(completions, OutcomeHistogram(denominator));
      for (unsigned w = 0; w < workers; ++w) {
        report.cases_run += partial_cases[w];
        for (std::uint64_t c = 0; c < completions; ++c) {
          hists[static_cast<std::size_t>(c)].merge(partial[w][static_cast<std::size_t>(c)]);
        }
      }
      for (std::uint64_t c = 0; c < completions; ++c) {
        if (hists[static_cast<std::size_t>(c)].total() != 1) {
          report.failures.push_back({"k=" + std::to_string(k) + " D=" + show(demands[static_cast<std::size_t>(c)]),
                                     "total probability 1", to_string(hists[static_cast<std::size_t>(c)].total())});
        }
        if (c == 0) continue;
        if (!(hists[static_cast<std::size_t>(c)] == hists[0])) {
          report.failures.push_back(
              {"k=" + std::to_string(k) + " D_k=" + std::to_string(demand_k) + " D=" +
                   show(demands[static_cast<std::size_t>(c)]),
               "law of D=" + show(demands[0]) + " (support " + std::to_string(hists[0].support_size()) + ")",
               "different law (support " + std::to_string(hists[static_cast<std::size_t>(c)].support_size()) + ")"});
        }
      }
    }
  }
  report.elapsed = Clock::now() - start;
  return report;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string VerificationReport::to_text() const {
  std::ostringstream os;
  os << scope << ": " << (passed() ? "PASS" : "FAIL") << " (" << cases_run << " cases, " << elapsed.count()
     << " s)";
  const std::size_t shown = std::min<std::size_t>(failures.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) {
    os << "\n  failure: " << failures[i].configuration << "\n    expected: " << failures[i].expected
       << "\n    actual:   " << failures[i].actual;
  }
  if (failures.size() > shown) os << "\n  ... " << failures.size() - shown << " more failures";
  return os.str();
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["scope"] = scope;
  j["verdict"] = passed() ? "pass" : "fail";
  j["cases_run"] = cases_run;
  j["elapsed_seconds"] = elapsed.count();
  j["failures"] = nlohmann::json::array();
  for (const auto& f : failures) {
    j["failures"].push_back({{"configuration", f.configuration}, {"expected", f.expected}, {"actual", f.actual}});
  }
  return j;
}

// ---------------------------------------------------------------------------

void OutcomeHistogram::add(const std::string& observable, std::uint64_t weight) {
  weights_[observable] += weight;
}

void OutcomeHistogram::merge(const OutcomeHistogram& other) {
  if (other.denominator_ != denominator_) throw std::invalid_argument("OutcomeHistogram::merge: denominators differ");
  for (const auto& [obs, w] : other.weights_) weights_[obs] += w;
}

Rational OutcomeHistogram::probability(const std::string& observable) const {
  auto it = weights_.find(observable);
  if (it == weights_.end()) return Rational(0);
  return Rational(BigInt(it->second), denominator_);
}

Rational OutcomeHistogram::total() const {
  BigInt sum = 0;
  for (const auto& [obs, w] : weights_) sum += w;
  return Rational(sum, denominator_);
}

std::map<std::string, Rational> OutcomeHistogram::probabilities() const {
  std::map<std::string, Rational> out;
  for (const auto& [obs, w] : weights_) out.emplace(obs, Rational(BigInt(w), denominator_));
  return out;
}

bool operator==(const OutcomeHistogram& a, const OutcomeHistogram& b) {
  if (a.weights_.size() != b.weights_.size()) return false;
  auto ia = a.weights_.begin();
  auto ib = b.weights_.begin();
  for (; ia != a.weights_.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (BigInt(ia->second) * b.denominator_ != BigInt(ib->second) * a.denominator_) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

VerificationReport verify_correctness_exhaustive(const SchemeParams& params, const FileLibrary& files,
                                                 const DeliveryTamper& tamper) {
  const auto start = Clock::now();
  const int N = params.N;
  const int K = params.K;
  const std::uint64_t demand_count = ipow(static_cast<std::uint64_t>(N), K);
  guard(demand_count * demand_count * static_cast<std::uint64_t>(params.universe()) * static_cast<std::uint64_t>(K),
        "verify_correctness_exhaustive");
  if (!(files.params() == params)) throw std::invalid_argument("verify_correctness_exhaustive: library/params mismatch");

  VerificationReport report;
  report.scope = "correctness (N=" + std::to_string(N) + ", K=" + std::to_string(K) + ", r=" +
                 std::to_string(params.r) + ")";

  std::vector<std::vector<CacheContent>> caches(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    for (int s = 0; s < N; ++s) caches[static_cast<std::size_t>(k)].push_back(place_user(files, k, s));
  }

  const unsigned workers = worker_count(demand_count);
  std::vector<VerificationReport> partial(workers);
  run_chunks(demand_count, workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
    auto& out = partial[w];
    for (std::uint64_t di = begin; di < end; ++di) {
      const Digits D = digits_of(di, N, K);
      for (std::uint64_t si = 0; si < demand_count; ++si) {
        const Digits S = digits_of(si, N, K);
        const AuxDemand aux = aux_demand(D, S, N);
        for (int t : build_v(aux.digits, N).set()) {
          DeliverySignal x = assemble_delivery(files, aux.digits, t);
          if (tamper) tamper(x);
          for (int k = 0; k < K; ++k) {
            ++out.cases_run;
            const int want = D[static_cast<std::size_t>(k)];
            const auto& z = caches[static_cast<std::size_t>(k)][static_cast<std::size_t>(S[static_cast<std::size_t>(k)])];
            const std::string config =
                "D=" + show(D) + " S=" + show(S) + " t=" + std::to_string(t) + " k=" + std::to_string(k);
            try {
              const BitString got = decode(params, z, x, want);
              if (!(got == files.file(want))) {
                out.failures.push_back({config, show_bits(files.file(want)), show_bits(got)});
              }
            } catch (const std::exception& e) {
              out.failures.push_back({config, show_bits(files.file(want)), std::string("exception: ") + e.what()});
            }
          }
        }
      }
    }
  });
  for (auto& p : partial) {
    report.cases_run += p.cases_run;
    report.failures.insert(report.failures.end(), p.failures.begin(), p.failures.end());
  }
  report.elapsed = Clock::now() - start;
  return report;
}

VerificationReport verify_privacy(const SchemeParams& params, PrivacyMode mode, const FileLibrary* files,
                                  DemandMasking masking) {
  const std::string suffix = masking == DemandMasking::kNone ? ", unmasked control" : "";
  const std::string tag = " (N=" + std::to_string(params.N) + ", K=" + std::to_string(params.K) +
                          ", r=" + std::to_string(params.r) + suffix + ")";
  const std::uint64_t demand_count = ipow(static_cast<std::uint64_t>(params.N), params.K);
  if (mode == PrivacyMode::kConditionalOnFiles) {
    if (!files) throw std::invalid_argument("verify_privacy: conditional mode needs a library");
    guard(demand_count * demand_count * static_cast<std::uint64_t>(params.universe()) * params.K, "verify_privacy");
    const std::vector<FileLibrary> libs{*files};
    return histogram_check("privacy, conditional on files" + tag, params, &libs, 1, masking, false);
  }
  if (params.subfile_bits() != 1) throw std::invalid_argument("verify_privacy: full-marginal mode needs 1-bit subfiles");
  const std::uint64_t library_bits = static_cast<std::uint64_t>(params.N) * params.F;
  if (library_bits > 16) {
    throw std::invalid_argument("verify_privacy: full-marginal mode supports at most 16 library bits, got " +
                                std::to_string(library_bits));
  }
  const std::uint64_t library_count = std::uint64_t{1} << library_bits;
  guard(library_count * demand_count * demand_count * static_cast<std::uint64_t>(params.universe()),
        "verify_privacy");
  return histogram_check("privacy, full marginal" + tag, params, nullptr, library_count, masking, false);
}

VerificationReport verify_distribution_lemma(const SchemeParams& params, const FileLibrary& files,
                                             DemandMasking masking) {
  const std::uint64_t demand_count = ipow(static_cast<std::uint64_t>(params.N), params.K);
  guard(demand_count * demand_count * static_cast<std::uint64_t>(params.universe()) * params.K,
        "verify_distribution_lemma");
  const std::vector<FileLibrary> libs{files};
  const std::string suffix = masking == DemandMasking::kNone ? ", unmasked control" : "";
  return histogram_check("distribution equality (N=" + std::to_string(params.N) + ", K=" + std::to_string(params.K) +
                             ", r=" + std::to_string(params.r) + suffix + ")",
                         params, &libs, 1, masking, true);
}

VerificationReport oracle_demand_identity(const SchemeParams& params, const FileLibrary& files) {
  const auto start = Clock::now();
  const int N = params.N;
  const int K = params.K;
  VerificationReport report;
  report.scope = "demand identities (N=" + std::to_string(N) + ", K=" + std::to_string(K) + ", r=" +
                 std::to_string(params.r) + ")";
  const std::uint64_t demand_count = ipow(static_cast<std::uint64_t>(N), K);
  guard(demand_count * params.subfile_count() * static_cast<std::uint64_t>(K * N), "oracle_demand_identity");

  std::vector<Digits> labels;
  for (int t = 0; t < params.universe(); ++t) labels.push_back(g_map(t, N, K));
  const auto subsets = enumerate_r_subsets(params.universe(), params.r);

  for (std::uint64_t di = 0; di < demand_count; ++di) {
    const Digits d = digits_of(di, N, K);
    const auto members = build_v(d, N).set();
    for (const auto& R : subsets) {
      for (int k = 0; k < K; ++k) {
        for (int s = 0; s < N; ++s) {
          ++report.cases_run;
          BitString acc(params.subfile_bits());
          for (int t : members) {
            acc ^= files.subfile(add_mod(labels[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)], s, N), R);
          }
          const int want = add_mod(d[static_cast<std::size_t>(k)], s, N);
          if (!(acc == files.subfile(want, R))) {
            report.failures.push_back({"d=" + show(d) + " R=" + R.to_string() + " k=" + std::to_string(k) +
                                           " S_k=" + std::to_string(s),
                                       "W_" + std::to_string(want) + "," + R.to_string(), show_bits(acc)});
          }
        }
      }
    }
  }
  report.elapsed = Clock::now() - start;
  return report;
}

VerificationReport oracle_segment_recovery(const SchemeParams& params, const FileLibrary& files) {
  const auto start = Clock::now();
  const int N = params.N;
  const int K = params.K;
  VerificationReport report;
  report.scope = "segment recovery (N=" + std::to_string(N) + ", K=" + std::to_string(K) + ", r=" +
                 std::to_string(params.r) + ")";
  if (params.r == 0) {
    report.elapsed = Clock::now() - start;
    return report;  // no segments exist
  }
  const std::uint64_t demand_count = ipow(static_cast<std::uint64_t>(N), K);
  guard(demand_count * static_cast<std::uint64_t>(params.universe()) * binomial_small(params.universe(), params.r - 1) *
            static_cast<std::uint64_t>(N),
        "oracle_segment_recovery");
  const auto subsets = enumerate_r_subsets(params.universe(), params.r - 1);
  for (std::uint64_t di = 0; di < demand_count; ++di) {
    const Digits d = digits_of(di, N, K);
    const VVector v = build_v(d, N);
    for (int t : v.set()) {
      const DeliverySignal x = assemble_delivery(files, d, t);
      for (const auto& s : subsets) {
        if (!s.contains(t)) continue;
        for (int n = 0; n < N; ++n) {
          ++report.cases_run;
          const BitString want = x_segment(files, v, s, n);
          const BitString got = recover_segment(params, x, v, s, n);
          if (!(got == want)) {
            report.failures.push_back({"d=" + show(d) + " t=" + std::to_string(t) + " S=" + s.to_string() +
                                           " n=" + std::to_string(n),
                                       show_bits(want), show_bits(got)});
          }
        }
      }
    }
  }
  report.elapsed = Clock::now() - start;
  return report;
}

VerificationReport oracle_y_reconstruction(const SchemeParams& params, const FileLibrary& files) {
  const auto start = Clock::now();
  VerificationReport report;
  report.scope = "Y reconstruction (N=" + std::to_string(params.N) + ", K=" + std::to_string(params.K) +
                 ", r=" + std::to_string(params.r) + ")";
  if (params.r + 1 > params.universe() - params.N) {
    report.elapsed = Clock::now() - start;
    return report;  // every (r+1)-subset meets the leaders
  }
  for (int k = 0; k < params.K; ++k) {
    for (int s = 0; s < params.N; ++s) {
      const UVector u = build_u_vector(params.N, params.K, k, s);
      const SignalMap stored = yma_delivery(files, u);
      for (const auto& B : enumerate_r_subsets(params.universe(), params.r + 1)) {
        if (B.members().front() < params.N) continue;
        ++report.cases_run;
        const BitString want = compute_y(files, u, B);
        const BitString got = reconstruct_y(stored, u, B);
        if (!(got == want)) {
          report.failures.push_back({"k=" + std::to_string(k) + " s=" + std::to_string(s) + " B=" + B.to_string(),
                                     show_bits(want), show_bits(got)});
        }
      }
    }
  }
  report.elapsed = Clock::now() - start;
  return report;
}

}  // namespace dpcc
