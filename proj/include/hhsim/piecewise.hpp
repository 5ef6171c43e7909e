// Piecewise time paths on the month axis.
//
// Consumption paths are piecewise constant; savings paths are piecewise
// linear with possible jumps (stimulus deposits). Both are represented as
// explicit segment lists with exact breakpoints, no time grid.

#ifndef HHSIM_PIECEWISE_HPP
#define HHSIM_PIECEWISE_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hhsim {

// One segment [t0, t1) carrying a linear value v(t) = v0 + (v1-v0)*(t-t0)/(t1-t0).
// Constant segments have v0 == v1.
struct PathSegment {
  double t0 = 0.0;
  double t1 = 0.0;
  double v0 = 0.0;
  double v1 = 0.0;

  double width() const { return t1 - t0; }
  bool constant() const { return v0 == v1; }
  double at(double t) const {
    if (t1 <= t0) return v0;
    return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
  }
};

// Segments are contiguous in time (seg[i].t1 == seg[i+1].t0); values may
// jump across boundaries.
class PiecewisePath {
 public:
  PiecewisePath() = default;
  explicit PiecewisePath(std::vector<PathSegment> segs) : segs_(std::move(segs)) {}

  void append(double t0, double t1, double v0, double v1) {
    if (t1 < t0) throw std::invalid_argument("path segment with t1 < t0");
    if (!segs_.empty() && std::abs(segs_.back().t1 - t0) > 1e-12)
      throw std::invalid_argument("path segments must be contiguous");
    if (t1 > t0) segs_.push_back({t0, t1, v0, v1});
  }

  void append_constant(double t0, double t1, double v) { append(t0, t1, v, v); }

  const std::vector<PathSegment>& segments() const { return segs_; }
  bool empty() const { return segs_.empty(); }
  double start() const { return segs_.empty() ? 0.0 : segs_.front().t0; }
  double end() const { return segs_.empty() ? 0.0 : segs_.back().t1; }

  // Value at t; right-continuous at interior breakpoints, closed at the end.
  double value(double t) const {
    if (segs_.empty()) throw std::logic_error("value() on empty path");
    if (t <= segs_.front().t0) return segs_.front().v0;
    if (t >= segs_.back().t1) return segs_.back().v1;
    auto it = std::upper_bound(segs_.begin(), segs_.end(), t,
                               [](double x, const PathSegment& s) { return x < s.t1; });
    return it->at(t);
  }

  // Value just before t (left limit); used for end-of-crisis readings.
  double value_before(double t) const {
    if (segs_.empty()) throw std::logic_error("value_before() on empty path");
    for (auto it = segs_.rbegin(); it != segs_.rend(); ++it)
      if (it->t0 < t) return it->at(std::min(t, it->t1));
    return segs_.front().v0;
  }

  double min_value() const {
    double m = segs_.empty() ? 0.0 : segs_.front().v0;
    for (const auto& s : segs_) m = std::min(m, std::min(s.v0, s.v1));
    return m;
  }

  // Pointwise max against a constant; keeps breakpoints (no new crossings
  // are inserted for partially clipped linear segments: the consumption
  // paths this is used for are piecewise constant).
  PiecewisePath floored_at(double floor) const {
    PiecewisePath out;
    out.segs_.reserve(segs_.size());
    for (const auto& s : segs_)
      out.segs_.push_back({s.t0, s.t1, std::max(s.v0, floor), std::max(s.v1, floor)});
    return out;
  }

 private:
  std::vector<PathSegment> segs_;
};

// Sorted, de-duplicated breakpoints clipped to [lo, hi], with both ends included.
inline std::vector<double> merge_breakpoints(std::vector<double> pts, double lo, double hi) {
  pts.push_back(lo);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  for (double p : pts) {
    if (p < lo || p > hi) continue;
    if (out.empty() || p - out.back() > 1e-12) out.push_back(p);
  }
  if (out.size() < 2) out = {lo, hi};
  return out;
}

}  // namespace hhsim

#endif
