#include <doctest.h>

#include <algorithm>

#include "dpcc/tradeoff.hpp"
#include "oracles.hpp"

using namespace dpcc;

namespace {

Rational q(long long p, long long d = 1) { return Rational(p, d); }

// Two-file closed form: max of the five lines for three users.
Rational closed_form_k3(const Rational& M) {
  return std::max<Rational>({Rational(2 - 2 * M), Rational((9 - 6 * M) / 5), Rational((5 - 3 * M) / 3),
                            Rational((9 - 5 * M) / 6), Rational((2 - M) / 2)});
}

}  // namespace

TEST_CASE("rational helpers") {
  CHECK(to_string(q(2, 3)) == "2/3");
  CHECK(to_string(q(4, 2)) == "2");
  CHECK(to_string(q(-1, 4)) == "-1/4");
  CHECK(parse_rational("1/100") == q(1, 100));
  CHECK(parse_rational("6/4") == q(3, 2));
  CHECK(parse_rational("7") == q(7));
  CHECK(parse_rational("-2/6") == q(-1, 3));
  CHECK_THROWS_AS(parse_rational("1/"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK(to_double(q(1, 4)) == 0.25);
}

TEST_CASE("to_double is within one ulp of the exact value") {
  for (int d = 1; d <= 60; ++d) {
    for (int p = 0; p <= 2 * d; ++p) {
      const Rational x(p, d);
      const double f = to_double(x);
      const Rational lo(std::nextafter(f, -1.0));
      const Rational hi(std::nextafter(f, 3.0));
      REQUIRE(lo <= x);
      REQUIRE(x <= hi);
    }
  }
}

TEST_CASE("thm1_points") {
  const auto pts = thm1_points(2, 3);
  REQUIRE(pts.size() == 5);
  CHECK(pts[4] == RatePoint{q(0), q(2)});
  CHECK(pts[3] == RatePoint{q(1, 4), q(3, 2)});
  CHECK(pts[2] == RatePoint{q(2, 3), q(1)});
  CHECK(pts[0] == RatePoint{q(2), q(0)});
  CHECK(thm1_points(3, 2)[0] == RatePoint{q(3), q(0)});
  for (int K = 2; K <= 8; ++K) {
    CHECK(thm1_points(2, K)[static_cast<std::size_t>(K - 1)] == RatePoint{q(2, K), q(2 * (K - 1), K + 1)});
  }
}

TEST_CASE("companion_points") {
  const auto c = companion_points(3);
  CHECK(std::find(c.begin(), c.end(), RatePoint{q(2), q(0)}) != c.end());
  CHECK(std::find(c.begin(), c.end(), RatePoint{q(3, 2), q(1, 4)}) != c.end());
  CHECK(std::find(c.begin(), c.end(), RatePoint{q(1), q(2, 3)}) != c.end());
  for (int K = 2; K <= 8; ++K) {
    const auto ck = companion_points(K);
    CHECK(std::find(ck.begin(), ck.end(), RatePoint{q(2 * K, K + 1), q(1, K + 1)}) != ck.end());
    std::vector<RatePoint> twice;
    for (const auto& p : ck) twice.push_back({p.R, p.M});
    CHECK(twice == thm1_points(2, K));
  }
}

TEST_CASE("lower_convex_envelope") {
  auto pts = thm1_points(2, 3);
  const auto c = companion_points(3);
  pts.insert(pts.end(), c.begin(), c.end());
  const auto curve = lower_convex_envelope(pts);
  const std::vector<RatePoint> want{{q(0), q(2)},    {q(1, 4), q(3, 2)}, {q(2, 3), q(1)},
                                    {q(1), q(2, 3)}, {q(3, 2), q(1, 4)}, {q(2), q(0)}};
  CHECK(curve.corners() == want);

  const auto single = lower_convex_envelope({{q(1), q(1)}});
  CHECK(single.corners().size() == 1);
  CHECK(single.eval(q(5)) == q(1));
  CHECK_THROWS_AS(single.eval(q(0)), std::out_of_range);

  const auto dominated = lower_convex_envelope({{q(0), q(2)}, {q(1), q(3, 2)}, {q(2), q(0)}});
  CHECK(dominated.corners() == std::vector<RatePoint>{{q(0), q(2)}, {q(2), q(0)}});
  CHECK(dominated.eval(q(1)) == q(1));

  const auto collinear = lower_convex_envelope({{q(0), q(2)}, {q(1), q(1)}, {q(2), q(0)}, {q(3), q(0)}});
  CHECK(collinear.corners() == std::vector<RatePoint>{{q(0), q(2)}, {q(2), q(0)}});

  CHECK_THROWS_AS(lower_convex_envelope({}), std::invalid_argument);
  CHECK_THROWS_AS(TradeoffCurve({{q(1), q(1)}, {q(0), q(2)}}), std::invalid_argument);
}

TEST_CASE("achievable_envelope labels") {
  CHECK(achievable_envelope(2, 3).label.find("swapped") != std::string::npos);
  CHECK(achievable_envelope(3, 2).label.find("only") != std::string::npos);
  CHECK(achievable_envelope(3, 2).curve.corners().front() == RatePoint{q(0), q(3)});
}

TEST_CASE("converse_bounds") {
  const auto b = converse_bounds(3);
  CHECK(b.size() == 2 * 2 + 2);
  auto has = [&](Rational a, Rational be, Rational g) {
    return std::any_of(b.begin(), b.end(), [&](const LinearBound& l) {
      return l.alpha * g == a * l.gamma && l.beta * g == be * l.gamma;
    });
  };
  CHECK(has(3, 3, 5));
  CHECK(has(20, 24, 36));
  CHECK(has(24, 20, 36));
  CHECK(has(2, 1, 2));
  CHECK(has(1, 2, 2));
  for (const auto& l : b) {
    CHECK(!l.provenance.empty());
    CHECK(l.beta >= 0);
    CHECK(has(l.beta, l.alpha, l.gamma));
  }
  CHECK_THROWS_AS(converse_bounds(1), std::invalid_argument);
}

TEST_CASE("converse_eval") {
  CHECK(converse_eval(3, q(2, 3)) == q(1));
  CHECK(converse_eval(3, q(0)) == q(2));
  CHECK(converse_eval(3, q(2)) == q(0));
}

TEST_CASE("three users: envelope equals the closed form everywhere") {
  const auto curve = achievable_envelope(2, 3).curve;
  for (int i = 0; i <= 200; ++i) {
    const Rational M(i, 100);
    REQUIRE(curve.eval(M) == closed_form_k3(M));
    REQUIRE(converse_eval(3, M) == closed_form_k3(M));
  }
  for (const auto& row : tightness_report(3, q(1, 100))) REQUIRE(row.tight);
  CHECK(tightness_report(3, q(1, 100)).size() == 201);
}

TEST_CASE("tight ranges for K = 2..6 and dominance everywhere") {
  for (int K = 2; K <= 6; ++K) {
    CAPTURE(K);
    const Rational lo(2, K);
    const Rational hi(2 * (K - 1), K + 1);
    const auto curve = achievable_envelope(2, K).curve;
    std::vector<Rational> grid;
    for (int i = 0; i <= 420; ++i) grid.emplace_back(i, 210);
    for (const auto& c : curve.corners()) grid.push_back(c.M);
    for (const auto& M : grid) {
      const Rational a = curve.eval(M);
      const Rational c = converse_eval(K, M);
      REQUIRE(a >= c);
      if (M <= lo || M >= hi) REQUIRE(a == c);
    }
  }
}

TEST_CASE("four users: tight exactly outside (1/2, 6/5)") {
  for (const auto& row : tightness_report(4, q(1, 100))) {
    CAPTURE(to_string(row.M));
    const bool inside = row.M > q(1, 2) && row.M < q(6, 5);
    CHECK(row.tight == !inside);
  }
  const auto rows = tightness_report(4, q(1, 10));
  CHECK(rows.size() == 21);
  CHECK(rows.back().M == 2);
}

TEST_CASE("tightness_report: argument checks and step not dividing 2") {
  CHECK_THROWS_AS(tightness_report(1, q(1, 10)), std::invalid_argument);
  CHECK_THROWS_AS(tightness_report(3, q(0)), std::invalid_argument);
  const auto rows = tightness_report(3, q(3, 4));
  CHECK(rows.size() == 3);
  CHECK(rows.back().M == q(3, 2));
}
