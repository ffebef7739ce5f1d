#pragma once

#include <string>
#include <vector>

#include "dpcc/rational.hpp"

namespace dpcc {

/// alpha M + beta R >= gamma.
struct LinearBound {
  Rational alpha;
  Rational beta;
  Rational gamma;
  std::string provenance;

  /// Smallest R the bound allows at memory M.
  Rational rate_at(const Rational& M) const { return (gamma - alpha * M) / beta; }
};

/// Convex, non-increasing piecewise-linear curve through its corner points.
class TradeoffCurve {
 public:
  TradeoffCurve() = default;
  explicit TradeoffCurve(std::vector<RatePoint> corners);

  const std::vector<RatePoint>& corners() const { return corners_; }
  /// Linear interpolation between corners; constant beyond the last corner.
  /// Throws std::out_of_range for M left of the first corner.
  Rational eval(const Rational& M) const;

 private:
  std::vector<RatePoint> corners_;
};

/// One point per r in [0, NK-K+1].
std::vector<RatePoint> thm1_points(int N, int K);

/// Two-file companion family: the (R, M)-swapped images of thm1_points(2, K).
std::vector<RatePoint> companion_points(int K);

/// Lower convex envelope, collinear and dominated points dropped.
TradeoffCurve lower_convex_envelope(std::vector<RatePoint> points);

struct LabeledCurve {
  TradeoffCurve curve;
  std::string label;
};

/// Achievable envelope: both families for N = 2, the private-scheme points alone otherwise.
LabeledCurve achievable_envelope(int N, int K);

/// Two-file converse: two lines per k in [2, K] plus the two cut-set lines.
std::vector<LinearBound> converse_bounds(int K);

/// max over converse_bounds(K) of the rate each bound forces at M.
Rational converse_eval(int K, const Rational& M);

struct TightnessRow {
  Rational M;
  Rational achievable;
  Rational converse;
  bool tight = false;
};

/// Grid M = 0, step, 2*step, ... up to 2 (inclusive when reachable).
std::vector<TightnessRow> tightness_report(int K, const Rational& grid_step);

}  // namespace dpcc
