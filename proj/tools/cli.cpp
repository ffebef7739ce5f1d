#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "dpcc/scheme.hpp"
#include "dpcc/tradeoff.hpp"
#include "dpcc/verification.hpp"

namespace dpcc::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  int N = 2;
  int K = 1;
  int r = 0;
  std::uint64_t F = 0;  // 0: command default
  std::uint64_t seed = 0;
  std::string demands;
  std::string library;
  std::string mode = "conditional";
  std::string suite = "all";
  std::string grid = "1/100";
  std::string format;
  std::string out;
};

std::string digits_text(const Digits& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

std::string set_text(const std::vector<int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

// FNV-1a, 64 bit.
std::string fingerprint(const std::vector<std::uint8_t>& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string float_text(const Rational& q) {
  std::ostringstream os;
  os << std::setprecision(17) << to_double(q);
  return os.str();
}

SchemeParams make_params(const RunConfig& c, std::uint64_t default_bits_per_subfile) {
  const int universe = c.N * c.K - c.K + 1;
  if (c.N < 2 || c.K < 1 || universe > kMaxUniverse) {
    throw UsageError("need N >= 2, K >= 1 and NK - K + 1 <= " + std::to_string(kMaxUniverse));
  }
  if (c.r < 0 || c.r > universe) throw UsageError("r must lie in [0, " + std::to_string(universe) + "]");
  const std::uint64_t F = c.F ? c.F : binomial_small(universe, c.r) * default_bits_per_subfile;
  try {
    return SchemeParams::make(c.N, c.K, c.r, F);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Digits parse_demands(const std::string& text, int N, int K) {
  Digits d;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw UsageError("--demands: '" + item + "' is not an integer");
    }
    if (used != item.size() || v < 0 || v >= N) {
      throw UsageError("--demands: entries must be integers in [0, " + std::to_string(N - 1) + "]");
    }
    d.push_back(v);
  }
  if (static_cast<int>(d.size()) != K) {
    throw UsageError("--demands: expected " + std::to_string(K) + " entries, got " + std::to_string(d.size()));
  }
  return d;
}

// Raw library: N*F bits, file-major, MSB first; sidecar <path>.json holds {N, F}.
FileLibrary load_library(RunConfig& c) {
  std::ifstream meta_in(c.library + ".json");
  if (!meta_in) throw UsageError("--library: cannot open sidecar " + c.library + ".json");
  json meta;
  try {
    meta = json::parse(meta_in);
  } catch (const json::exception& e) {
    throw UsageError(std::string("--library: bad sidecar: ") + e.what());
  }
  if (!meta.contains("N") || !meta.contains("F") || !meta["N"].is_number_unsigned() ||
      !meta["F"].is_number_unsigned()) {
    throw UsageError("--library: sidecar must hold unsigned integers N and F");
  }
  const int N = meta["N"].get<int>();
  const auto F = meta["F"].get<std::uint64_t>();
  if (N != c.N) throw UsageError("--library: sidecar has N=" + std::to_string(N) + " but --n is " + std::to_string(c.N));
  if (c.F && c.F != F) throw UsageError("--library: sidecar F disagrees with --f");
  c.F = F;
  const SchemeParams params = make_params(c, 1);

  std::ifstream in(c.library, std::ios::binary);
  if (!in) throw UsageError("--library: cannot open " + c.library);
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::uint64_t nbits = static_cast<std::uint64_t>(N) * F;
  if (bytes.size() != (nbits + 7) / 8) {
    throw UsageError("--library: expected " + std::to_string((nbits + 7) / 8) + " bytes, found " +
                     std::to_string(bytes.size()));
  }
  const BitString all = BitString::from_bytes(bytes, nbits);
  std::vector<BitString> files;
  for (int n = 0; n < N; ++n) files.push_back(all.slice(static_cast<std::uint64_t>(n) * F, F));
  return FileLibrary(params, std::move(files));
}

std::string cmd_params(const RunConfig& c) {
  const SchemeParams p = make_params(c, 1);
  const int universe = p.universe();
  const RatePoint mr = memory_rate_of(p);
  const std::uint64_t signals = yma_signal_count(p.N, universe, p.r);
  const BigInt segments = p.N * binomial(universe - 1, p.r - 1);
  if (c.format == "json") {
    json j;
    j["N"] = p.N;
    j["K"] = p.K;
    j["r"] = p.r;
    j["universe"] = universe;
    j["subfiles_per_file"] = p.subfile_count();
    j["M"] = to_string(mr.M);
    j["M_float"] = to_double(mr.M);
    j["R"] = to_string(mr.R);
    j["R_float"] = to_double(mr.R);
    j["cache_signals"] = signals;
    j["delivery_segments"] = segments.str();
    if (c.F) {
      j["F"] = p.F;
      j["subfile_bits"] = p.subfile_bits();
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "N=" << p.N << " K=" << p.K << " r=" << p.r << "\n"
     << "universe K'=" << universe << "\n"
     << "subfiles per file: " << p.subfile_count() << "\n"
     << "M=" << to_string(mr.M) << " (" << float_text(mr.M) << ")\n"
     << "R=" << to_string(mr.R) << " (" << float_text(mr.R) << ")\n"
     << "cache signals per user: " << signals << "\n"
     << "delivery segments: " << segments << "\n";
  if (c.F) os << "F=" << p.F << " bits, " << p.subfile_bits() << " per subfile\n";
  return os.str();
}

struct SimulateResult {
  std::string text;
  bool ok = true;
};

SimulateResult cmd_simulate(RunConfig& c) {
  const FileLibrary files = [&] {
    if (!c.library.empty()) return load_library(c);
    const SchemeParams p = make_params(c, 8);
    auto rng = make_stream(c.seed, Stream::kLibrary);
    return FileLibrary::random(p, rng);
  }();
  const SchemeParams& p = files.params();
  const RatePoint mr = memory_rate_of(p);

  Digits D;
  if (!c.demands.empty()) {
    D = parse_demands(c.demands, p.N, p.K);
  } else {
    auto rng = make_stream(c.seed, Stream::kDemands);
    for (int k = 0; k < p.K; ++k) D.push_back(uniform_below(rng, p.N));
  }

  SessionRandomness rand(p.N, p.K, c.seed);
  const auto caches = place(files, rand);
  const AuxDemand aux = aux_demand(D, rand.keys(), p.N);
  const VVector v = build_v(aux.digits, p.N);
  const DeliverySignal x = assemble_delivery(files, aux.digits, rand);
  const auto wire = serialize_delivery(x);
  const DeliverySignal received = parse_delivery(p, wire);

  SimulateResult res;
  json users = json::array();
  std::ostringstream user_lines;
  int decoded = 0;
  for (int k = 0; k < p.K; ++k) {
    const auto zbytes = serialize_cache(caches[static_cast<std::size_t>(k)]);
    const CacheContent z = parse_cache(p, k, zbytes);
    const int want = D[static_cast<std::size_t>(k)];
    const bool ok = decode(p, z, received, want) == files.file(want);
    decoded += ok;
    res.ok = res.ok && ok;
    users.push_back({{"user", k},
                     {"demand", want},
                     {"cache_bits", z.payload_bits()},
                     {"cache_bytes", zbytes.size()},
                     {"decoded", ok}});
    user_lines << "user " << k << ": wants file " << want << ", cache " << z.payload_bits() << " bits ("
               << zbytes.size() << " bytes serialized), " << (ok ? "decoded OK" : "DECODE MISMATCH") << "\n";
  }

  if (c.format == "json") {
    json j;
    j["N"] = p.N;
    j["K"] = p.K;
    j["r"] = p.r;
    j["F"] = p.F;
    j["seed"] = c.seed;
    j["M"] = to_string(mr.M);
    j["R"] = to_string(mr.R);
    j["keys"] = rand.keys();
    j["demands"] = D;
    j["aux"] = aux.digits;
    j["aux_class"] = to_string(aux.cls);
    j["V"] = v.set();
    j["t"] = x.t_d;
    j["delivery_bits"] = x.payload_bits();
    j["delivery_bytes"] = wire.size();
    j["delivery_segments"] = x.segments.size();
    j["delivery_fingerprint"] = fingerprint(wire);
    j["users"] = users;
    j["decoded"] = decoded;
    res.text = j.dump(2) + "\n";
    return res;
  }
  std::ostringstream os;
  os << "simulate N=" << p.N << " K=" << p.K << " r=" << p.r << " F=" << p.F << " seed=" << c.seed << "\n"
     << "M=" << to_string(mr.M) << " R=" << to_string(mr.R) << "\n"
     << "keys S=" << digits_text(rand.keys()) << "\n"
     << "demands D=" << digits_text(D) << "\n"
     << "aux d=" << digits_text(aux.digits) << " class=" << to_string(aux.cls) << " V=" << set_text(v.set())
     << " t=" << x.t_d << "\n"
     << "delivery: " << x.payload_bits() << " bits (R*F=" << to_string(mr.R * p.F) << "), " << x.segments.size()
     << " segments, " << wire.size() << " bytes serialized, fingerprint " << fingerprint(wire) << "\n"
     << user_lines.str() << "decoded " << decoded << "/" << p.K << " users\n";
  res.text = os.str();
  return res;
}

struct VerifyResult {
  std::string text;
  bool ok = true;
};

VerifyResult cmd_verify(const RunConfig& c) {
  static const std::vector<std::string> kSuites{"correctness", "privacy",        "lemma1", "identities",
                                                "recovery",    "reconstruction", "all"};
  if (std::find(kSuites.begin(), kSuites.end(), c.suite) == kSuites.end()) {
    throw UsageError("unknown suite '" + c.suite + "'");
  }
  const SchemeParams p = make_params(c, 1);
  auto rng = make_stream(c.seed, Stream::kLibrary);
  const FileLibrary files = FileLibrary::random(p, rng);
  const PrivacyMode mode = c.mode == "full-marginal" ? PrivacyMode::kFullMarginal : PrivacyMode::kConditionalOnFiles;
  const bool all = c.suite == "all";

  std::vector<VerificationReport> reports;
  try {
    if (all || c.suite == "correctness") reports.push_back(verify_correctness_exhaustive(p, files));
    if (all || c.suite == "privacy") reports.push_back(verify_privacy(p, mode, &files));
    if (all || c.suite == "lemma1") reports.push_back(verify_distribution_lemma(p, files));
    if (all || c.suite == "identities") reports.push_back(oracle_demand_identity(p, files));
    if (all || c.suite == "recovery") reports.push_back(oracle_segment_recovery(p, files));
    if (all || c.suite == "reconstruction") reports.push_back(oracle_y_reconstruction(p, files));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  VerifyResult res;
  for (const auto& r : reports) res.ok = res.ok && r.passed();
  if (c.format == "json") {
    json j;
    j["verdict"] = res.ok ? "pass" : "fail";
    j["reports"] = json::array();
    for (const auto& r : reports) j["reports"].push_back(r.to_json());
    res.text = j.dump(2) + "\n";
    return res;
  }
  std::ostringstream os;
  for (const auto& r : reports) os << r.to_text() << "\n";
  os << "verdict: " << (res.ok ? "PASS" : "FAIL") << "\n";
  res.text = os.str();
  return res;
}

std::string cmd_tradeoff(const RunConfig& c) {
  if (c.N != 2) throw UsageError("tradeoff: converse bounds are only available for N = 2");
  if (c.K < 2) throw UsageError("tradeoff: need K >= 2");
  Rational step;
  try {
    step = parse_rational(c.grid);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--grid: ") + e.what());
  }
  if (step <= 0) throw UsageError("--grid must be positive");
  const auto rows = tightness_report(c.K, step);

  std::ostringstream os;
  if (c.format == "json") {
    json j = json::array();
    for (const auto& row : rows) {
      j.push_back({{"M", to_string(row.M)},
                   {"M_float", to_double(row.M)},
                   {"R_ach", to_string(row.achievable)},
                   {"R_ach_float", to_double(row.achievable)},
                   {"R_conv", to_string(row.converse)},
                   {"R_conv_float", to_double(row.converse)},
                   {"tight", row.tight}});
    }
    os << j.dump(2) << "\n";
  } else if (c.format == "text") {
    const auto env = achievable_envelope(2, c.K);
    os << env.label << ", K=" << c.K << "\ncorners:";
    for (const auto& pt : env.curve.corners()) os << " (" << to_string(pt.M) << "," << to_string(pt.R) << ")";
    os << "\n" << std::left << std::setw(10) << "M" << std::setw(12) << "R_ach" << std::setw(12) << "R_conv"
       << "tight\n";
    for (const auto& row : rows) {
      os << std::setw(10) << to_string(row.M) << std::setw(12) << to_string(row.achievable) << std::setw(12)
         << to_string(row.converse) << (row.tight ? "yes" : "no") << "\n";
    }
  } else {
    os << "M,R_ach,R_conv,tight\n";
    for (const auto& row : rows) {
      os << to_string(row.M) << "," << to_string(row.achievable) << "," << to_string(row.converse) << ","
         << (row.tight ? "true" : "false") << "\n";
    }
  }
  return os.str();
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw UsageError("--out: cannot write " + c.out);
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Demand-private coded caching: simulation, exhaustive verification and tradeoff tables", "dpcc"};
  app.require_subcommand(1);

  const std::vector<std::string> text_json{"text", "json"};
  auto scheme_flags = [&](CLI::App* sub, bool needs_r) {
    sub->add_option("--n", c.N, "number of files")->capture_default_str();
    sub->add_option("--k", c.K, "number of users")->capture_default_str();
    auto* r = sub->add_option("--r", c.r, "scheme parameter r in [0, NK-K+1]");
    if (needs_r) r->required();
    sub->add_option("--f", c.F, "file length in bits (multiple of C(NK-K+1, r))");
  };

  auto* params = app.add_subcommand("params", "print memory, rate and sizes for (N, K, r)");
  scheme_flags(params, true);
  params->add_option("--format", c.format)->check(CLI::IsMember(text_json));
  params->add_option("--out", c.out, "write to a file instead of stdout");

  auto* simulate = app.add_subcommand("simulate", "run placement, delivery and decoding once");
  scheme_flags(simulate, true);
  simulate->add_option("--seed", c.seed, "session seed")->capture_default_str();
  simulate->add_option("--demands", c.demands, "comma-separated demand vector, e.g. 0,1,1");
  simulate->add_option("--library", c.library, "raw library file with a <path>.json sidecar {N, F}");
  simulate->add_option("--format", c.format)->check(CLI::IsMember(text_json));
  simulate->add_option("--out", c.out, "write to a file instead of stdout");

  auto* verify = app.add_subcommand("verify", "run exhaustive verification suites");
  scheme_flags(verify, true);
  verify->add_option("suite,--suite", c.suite, "correctness|privacy|lemma1|identities|recovery|reconstruction|all")
      ->capture_default_str();
  verify->add_option("--mode", c.mode, "privacy mode")
      ->check(CLI::IsMember({"conditional", "full-marginal"}))
      ->capture_default_str();
  verify->add_option("--seed", c.seed, "library seed")->capture_default_str();
  verify->add_option("--format", c.format)->check(CLI::IsMember(text_json));
  verify->add_option("--out", c.out, "write to a file instead of stdout");

  auto* tradeoff = app.add_subcommand("tradeoff", "tabulate achievable and converse rates for N = 2");
  tradeoff->add_option("--k", c.K, "number of users")->required();
  tradeoff->add_option("--n", c.N, "number of files (must be 2)")->capture_default_str();
  tradeoff->add_option("--grid", c.grid, "grid step as p/q")->capture_default_str();
  tradeoff->add_option("--format", c.format)->check(CLI::IsMember({"csv", "json", "text"}));
  tradeoff->add_option("--out", c.out, "write to a file instead of stdout");

  std::vector<std::string> argv_store{"dpcc"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*params) {
      emit(c, cmd_params(c), out);
      return kOk;
    }
    if (*simulate) {
      const auto res = cmd_simulate(c);
      emit(c, res.text, out);
      if (!res.ok) err << "error: at least one user failed to decode\n";
      return res.ok ? kOk : kFailure;
    }
    if (*verify) {
      const auto res = cmd_verify(c);
      emit(c, res.text, out);
      return res.ok ? kOk : kFailure;
    }
    if (c.format.empty()) c.format = "csv";
    emit(c, cmd_tradeoff(c), out);
    return kOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace dpcc::cli
