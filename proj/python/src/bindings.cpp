#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>

#include "dpcc/scheme.hpp"
#include "dpcc/tradeoff.hpp"
#include "dpcc/verification.hpp"

namespace py = pybind11;
using namespace dpcc;

namespace {

py::object fraction(const Rational& q) { return py::module_::import("fractions").attr("Fraction")(to_string(q)); }

py::object big_int(const BigInt& v) { return py::module_::import("builtins").attr("int")(v.str()); }

py::bytes to_py_bytes(const std::vector<std::uint8_t>& v) {
  return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

std::vector<std::uint8_t> from_py_bytes(const py::bytes& b) {
  const std::string s = b;
  return {s.begin(), s.end()};
}

py::object report_dict(const VerificationReport& r) {
  return py::module_::import("json").attr("loads")(r.to_json().dump());
}

}  // namespace

PYBIND11_MODULE(_dpcc, m) {
  m.doc() = "Demand-private coded caching: scheme, exhaustive verification and tradeoff tables";

  m.def("binomial", [](std::int64_t n, std::int64_t k) { return big_int(binomial(n, k)); }, py::arg("n"), py::arg("k"));
  m.def("subset_rank", [](std::vector<int> members, int universe) { return subset_rank(SubsetIndex(members, universe)); },
        py::arg("members"), py::arg("universe"));
  m.def("subset_unrank",
        [](std::uint64_t rank, int size, int universe) { return subset_unrank(rank, size, universe).members(); },
        py::arg("rank"), py::arg("size"), py::arg("universe"));

  py::class_<SchemeParams>(m, "SchemeParams")
      .def(py::init(&SchemeParams::make), py::arg("N"), py::arg("K"), py::arg("r"), py::arg("F"))
      .def_static("minimal", &SchemeParams::minimal, py::arg("N"), py::arg("K"), py::arg("r"))
      .def_readonly("N", &SchemeParams::N)
      .def_readonly("K", &SchemeParams::K)
      .def_readonly("r", &SchemeParams::r)
      .def_readonly("F", &SchemeParams::F)
      .def_property_readonly("universe", &SchemeParams::universe)
      .def_property_readonly("subfile_count", &SchemeParams::subfile_count)
      .def_property_readonly("subfile_bits", &SchemeParams::subfile_bits)
      .def("__repr__", [](const SchemeParams& p) {
        return "SchemeParams(N=" + std::to_string(p.N) + ", K=" + std::to_string(p.K) + ", r=" + std::to_string(p.r) +
               ", F=" + std::to_string(p.F) + ")";
      });

  py::class_<FileLibrary>(m, "FileLibrary")
      .def(py::init([](const SchemeParams& p, const std::vector<py::bytes>& files) {
             std::vector<BitString> bits;
             for (const auto& f : files) bits.push_back(BitString::from_bytes(from_py_bytes(f), p.F));
             return FileLibrary(p, std::move(bits));
           }),
           py::arg("params"), py::arg("files"), "Files as MSB-first bytes, F bits each.")
      .def_static(
          "random",
          [](const SchemeParams& p, std::uint64_t seed) {
            auto rng = make_stream(seed, Stream::kLibrary);
            return FileLibrary::random(p, rng);
          },
          py::arg("params"), py::arg("seed"))
      .def_property_readonly("params", &FileLibrary::params)
      .def("file", [](const FileLibrary& f, int n) { return to_py_bytes(f.file(n).to_bytes()); }, py::arg("n"));

  py::class_<CacheContent>(m, "CacheContent")
      .def_readonly("user", &CacheContent::user)
      .def_readonly("key", &CacheContent::key)
      .def_property_readonly("signal_count", [](const CacheContent& z) { return z.signals.size(); })
      .def_property_readonly("payload_bits", &CacheContent::payload_bits)
      .def("serialize", [](const CacheContent& z) { return to_py_bytes(serialize_cache(z)); });

  py::class_<DeliverySignal>(m, "DeliverySignal")
      .def_readonly("aux", &DeliverySignal::aux)
      .def_readonly("t", &DeliverySignal::t_d)
      .def_property_readonly("segment_count", [](const DeliverySignal& x) { return x.segments.size(); })
      .def_property_readonly("payload_bits", &DeliverySignal::payload_bits)
      .def("serialize", [](const DeliverySignal& x) { return to_py_bytes(serialize_delivery(x)); });

  m.def("build_u_vector", [](int N, int K, int k, int s) { return build_u_vector(N, K, k, s).entries; }, py::arg("N"),
        py::arg("K"), py::arg("k"), py::arg("s"));
  m.def(
      "aux_demand",
      [](const Digits& D, const Digits& S, int N) {
        const auto a = aux_demand(D, S, N);
        return py::make_tuple(a.digits, to_string(a.cls));
      },
      py::arg("demands"), py::arg("keys"), py::arg("N"));
  m.def("f_map", &f_map, py::arg("d"), py::arg("N"));
  m.def("g_map", &g_map, py::arg("label"), py::arg("N"), py::arg("K"));
  m.def("build_v", [](const Digits& d, int N) { return build_v(d, N).set(); }, py::arg("d"), py::arg("N"));

  m.def("place", py::overload_cast<const FileLibrary&, const Digits&>(&place), py::arg("files"), py::arg("keys"));
  m.def("place_user", &place_user, py::arg("files"), py::arg("k"), py::arg("key"));
  m.def("assemble_delivery", py::overload_cast<const FileLibrary&, const Digits&, int>(&assemble_delivery),
        py::arg("files"), py::arg("d"), py::arg("t"));
  m.def(
      "decode",
      [](const SchemeParams& p, const CacheContent& z, const DeliverySignal& x, int demand) {
        return to_py_bytes(decode(p, z, x, demand).to_bytes());
      },
      py::arg("params"), py::arg("cache"), py::arg("delivery"), py::arg("demand"));
  m.def("parse_delivery", [](const SchemeParams& p, const py::bytes& b) { return parse_delivery(p, from_py_bytes(b)); },
        py::arg("params"), py::arg("data"));
  m.def(
      "parse_cache",
      [](const SchemeParams& p, int user, const py::bytes& b) { return parse_cache(p, user, from_py_bytes(b)); },
      py::arg("params"), py::arg("user"), py::arg("data"));

  m.def(
      "memory_rate",
      [](int N, int K, int r) {
        const auto mr = memory_rate_of(N, K, r);
        return py::make_tuple(fraction(mr.M), fraction(mr.R));
      },
      py::arg("N"), py::arg("K"), py::arg("r"));

  m.def(
      "verify",
      [](const std::string& suite, const SchemeParams& p, std::uint64_t seed, const std::string& mode) {
        auto rng = make_stream(seed, Stream::kLibrary);
        const FileLibrary files = FileLibrary::random(p, rng);
        VerificationReport r;
        {
          py::gil_scoped_release release;
          if (suite == "correctness") {
            r = verify_correctness_exhaustive(p, files);
          } else if (suite == "privacy") {
            r = verify_privacy(p, mode == "full-marginal" ? PrivacyMode::kFullMarginal : PrivacyMode::kConditionalOnFiles,
                               &files);
          } else if (suite == "lemma1") {
            r = verify_distribution_lemma(p, files);
          } else if (suite == "identities") {
            r = oracle_demand_identity(p, files);
          } else if (suite == "recovery") {
            r = oracle_segment_recovery(p, files);
          } else if (suite == "reconstruction") {
            r = oracle_y_reconstruction(p, files);
          } else {
            throw std::invalid_argument("unknown suite '" + suite + "'");
          }
        }
        return report_dict(r);
      },
      py::arg("suite"), py::arg("params"), py::arg("seed") = 0, py::arg("mode") = "conditional");

  m.def(
      "envelope_corners",
      [](int N, int K) {
        const auto env = achievable_envelope(N, K);
        py::list out;
        for (const auto& pt : env.curve.corners()) out.append(py::make_tuple(fraction(pt.M), fraction(pt.R)));
        return out;
      },
      py::arg("N"), py::arg("K"));
  m.def("converse_rate", [](int K, const std::string& M) { return fraction(converse_eval(K, parse_rational(M))); },
        py::arg("K"), py::arg("M"), "M given as a 'p/q' string.");
  m.def(
      "tightness_report",
      [](int K, const std::string& step) {
        py::list out;
        for (const auto& row : tightness_report(K, parse_rational(step))) {
          py::dict d;
          d["M"] = fraction(row.M);
          d["R_ach"] = fraction(row.achievable);
          d["R_conv"] = fraction(row.converse);
          d["tight"] = row.tight;
          out.append(d);
        }
        return out;
      },
      py::arg("K"), py::arg("step") = "1/100");
}
