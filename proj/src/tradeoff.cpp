#include "dpcc/tradeoff.hpp"

#include <algorithm>
#include <stdexcept>

#include "dpcc/scheme.hpp"

namespace dpcc {

namespace {

// Sign of the turn p -> q -> s; <= 0 means q is not strictly below the chord.
Rational cross(const RatePoint& p, const RatePoint& q, const RatePoint& s) {
  return (q.M - p.M) * (s.R - p.R) - (q.R - p.R) * (s.M - p.M);
}

}  // namespace

TradeoffCurve::TradeoffCurve(std::vector<RatePoint> corners) : corners_(std::move(corners)) {
  if (corners_.empty()) throw std::invalid_argument("TradeoffCurve: no corners");
  for (std::size_t i = 1; i < corners_.size(); ++i) {
    if (corners_[i].M <= corners_[i - 1].M) throw std::invalid_argument("TradeoffCurve: M must increase");
    if (corners_[i].R > corners_[i - 1].R) throw std::invalid_argument("TradeoffCurve: R must not increase");
  }
}

Rational TradeoffCurve::eval(const Rational& M) const {
  if (M < corners_.front().M) throw std::out_of_range("TradeoffCurve::eval: M left of the first corner");
  if (M >= corners_.back().M) return corners_.back().R;
  auto hi = std::upper_bound(corners_.begin(), corners_.end(), M,
                             [](const Rational& m, const RatePoint& p) { return m < p.M; });
  const RatePoint& b = *hi;
  const RatePoint& a = *(hi - 1);
  return a.R + (b.R - a.R) * (M - a.M) / (b.M - a.M);
}

std::vector<RatePoint> thm1_points(int N, int K) {
  if (N < 2 || K < 1) throw std::invalid_argument("thm1_points: need N >= 2 and K >= 1");
  std::vector<RatePoint> out;
  for (int r = 0; r <= N * K - K + 1; ++r) out.push_back(memory_rate_of(N, K, r));
  return out;
}

std::vector<RatePoint> companion_points(int K) {
  std::vector<RatePoint> out;
  for (const auto& p : thm1_points(2, K)) out.push_back({p.R, p.M});
  return out;
}

TradeoffCurve lower_convex_envelope(std::vector<RatePoint> points) {
  if (points.empty()) throw std::invalid_argument("lower_convex_envelope: no points");
  std::sort(points.begin(), points.end(), [](const RatePoint& a, const RatePoint& b) {
    return a.M < b.M || (a.M == b.M && a.R < b.R);
  });
  std::vector<RatePoint> hull;
  for (const auto& p : points) {
    if (!hull.empty() && hull.back().M == p.M) continue;  // same M, larger R
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
    hull.push_back(p);
  }
  // Nothing past the lowest rate.
  auto lowest = std::min_element(hull.begin(), hull.end(),
                                 [](const RatePoint& a, const RatePoint& b) { return a.R < b.R; });
  hull.erase(lowest + 1, hull.end());
  return TradeoffCurve(std::move(hull));
}

LabeledCurve achievable_envelope(int N, int K) {
  if (N == 2) {
    auto pts = thm1_points(2, K);
    const auto swapped = companion_points(K);
    pts.insert(pts.end(), swapped.begin(), swapped.end());
    return {lower_convex_envelope(std::move(pts)), "achievable (private scheme + swapped family)"};
  }
  return {lower_convex_envelope(thm1_points(N, K)), "achievable (private scheme only)"};
}

std::vector<LinearBound> converse_bounds(int K) {
  if (K < 2) throw std::invalid_argument("converse_bounds: need K >= 2");
  std::vector<LinearBound> out;
  for (int k = 2; k <= K; ++k) {
    const Rational a = (k + 1) * (k + 2);
    const Rational b = 2 * k * (k + 1);
    const Rational g = 2 * k * (k + 3);
    out.push_back({a, b, g, "private converse, k=" + std::to_string(k)});
    out.push_back({b, a, g, "private converse (mirrored), k=" + std::to_string(k)});
  }
  out.push_back({2, 1, 2, "cut-set, s=1"});
  out.push_back({1, 2, 2, "cut-set, s=2"});
  return out;
}

Rational converse_eval(int K, const Rational& M) {
  const auto bounds = converse_bounds(K);
  Rational best = bounds.front().rate_at(M);
  for (const auto& b : bounds) best = std::max(best, b.rate_at(M));
  return best;
}

std::vector<TightnessRow> tightness_report(int K, const Rational& grid_step) {
  if (K < 2) throw std::invalid_argument("tightness_report: need K >= 2");
  if (grid_step <= 0) throw std::invalid_argument("tightness_report: grid step must be positive");
  const TradeoffCurve curve = achievable_envelope(2, K).curve;
  std::vector<TightnessRow> rows;
  for (Rational M = 0; M <= 2; M += grid_step) {
    TightnessRow row;
    row.M = M;
    row.achievable = curve.eval(M);
    row.converse = converse_eval(K, M);
    row.tight = row.achievable == row.converse;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace dpcc
