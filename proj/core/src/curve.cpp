// Copyright 2026 The Shuttle Nav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "shuttle/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace shuttle::geometry {

Curve Curve::from_sampler(const std::function<Vec2(double)>& sampler,
                          std::size_t count, double ds) {
  if (count < 2 || !(ds > 0.0)) {
    throw std::invalid_argument("curve needs at least two samples and ds > 0");
  }
  // Two guard samples on each side feed the central differences.
  const std::size_t total = count + 4;
  std::vector<Vec2> pos(total);
  for (std::size_t k = 0; k < total; ++k) {
    pos[k] = sampler((static_cast<double>(k) - 2.0) * ds);
  }
  std::vector<double> heading(total, 0.0);
  for (std::size_t k = 1; k + 1 < total; ++k) {
    const Vec2 delta = pos[k + 1] - pos[k - 1];
    const double raw = std::atan2(delta.y, delta.x);
    heading[k] = k == 1 ? raw : heading[k - 1] + normalize_angle(raw - heading[k - 1]);
  }

  Curve curve;
  curve.ds_ = ds;
  curve.samples_.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t k = i + 2;
    auto& smp = curve.samples_[i];
    smp.s = static_cast<double>(i) * ds;
    smp.position = pos[k];
    smp.heading = heading[k];
    smp.kappa = (heading[k + 1] - heading[k - 1]) / (2.0 * ds);
  }
  return curve;
}

Curve Curve::from_polyline(std::span<const Vec2> pts, double ds) {
  if (pts.size() < 2) throw std::invalid_argument("polyline needs two points");
  std::vector<double> cum(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    cum[i] = cum[i - 1] + distance(pts[i - 1], pts[i]);
  }
  const double total = cum.back();
  std::vector<Vec2> p(pts.begin(), pts.end());
  auto sampler = [p, cum](double s) {
    std::size_t seg = 0;
    if (s >= cum.back()) {
      seg = cum.size() - 2;
    } else if (s > 0.0) {
      seg = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), s) -
                                     cum.begin()) - 1;
    }
    const double len = cum[seg + 1] - cum[seg];
    const double t = len > 0.0 ? (s - cum[seg]) / len : 0.0;
    return p[seg] + (p[seg + 1] - p[seg]) * t;
  };
  const auto count = static_cast<std::size_t>(std::floor(total / ds + 1e-9)) + 1;
  return from_sampler(sampler, std::max<std::size_t>(count, 2), ds);
}

Curve::Eval Curve::evaluate(double s) const {
  const auto& first = samples_.front();
  const auto& last = samples_.back();
  if (s <= 0.0) {
    const Vec2 t = unit_from_heading(first.heading);
    return {first.position + t * s, t};
  }
  if (s >= last.s) {
    const Vec2 t = unit_from_heading(last.heading);
    return {last.position + t * (s - last.s), t};
  }
  const std::size_t i =
      std::min(static_cast<std::size_t>(s / ds_), samples_.size() - 2);
  const auto& a = samples_[i];
  const auto& b = samples_[i + 1];
  const double tau = (s - a.s) / ds_;
  const double t2 = tau * tau;
  const double t3 = t2 * tau;
  const Vec2 ma = unit_from_heading(a.heading) * ds_;
  const Vec2 mb = unit_from_heading(b.heading) * ds_;
  const Vec2 position = a.position * (2 * t3 - 3 * t2 + 1) + ma * (t3 - 2 * t2 + tau) +
                        b.position * (-2 * t3 + 3 * t2) + mb * (t3 - t2);
  const Vec2 deriv = (a.position * (6 * t2 - 6 * tau) + ma * (3 * t2 - 4 * tau + 1) +
                      b.position * (-6 * t2 + 6 * tau) + mb * (3 * t2 - 2 * tau)) *
                     (1.0 / ds_);
  return {position, deriv};
}

Vec2 Curve::point_at(double s, double d) const {
  const Eval e = evaluate(s);
  if (d == 0.0) return e.position;
  const double n = e.derivative.norm();
  return e.position + e.derivative.perp() * (d / n);
}

Vec2 Curve::tangent_at(double s) const {
  const Vec2 deriv = evaluate(s).derivative;
  return deriv * (1.0 / deriv.norm());
}

double Curve::heading_at(double s) const {
  const Vec2 deriv = evaluate(s).derivative;
  return std::atan2(deriv.y, deriv.x);
}

double Curve::kappa_at(double s) const {
  if (s <= 0.0) return samples_.front().kappa;
  if (s >= length()) return samples_.back().kappa;
  const std::size_t i =
      std::min(static_cast<std::size_t>(s / ds_), samples_.size() - 2);
  const double tau = (s - samples_[i].s) / ds_;
  return samples_[i].kappa + (samples_[i + 1].kappa - samples_[i].kappa) * tau;
}

double Curve::refine_on_segment(const Vec2& p, std::size_t seg) const {
  // Golden-section search on squared distance over one spline segment.
  constexpr double kInvPhi = 0.6180339887498949;
  double lo = samples_[seg].s;
  double hi = samples_[seg + 1].s;
  auto cost = [&](double s) {
    const Vec2 diff = evaluate(s).position - p;
    return diff.dot(diff);
  };
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = cost(x1);
  double f2 = cost(x2);
  for (int it = 0; it < 48; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = cost(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = cost(x2);
    }
  }
  const double mid = 0.5 * (lo + hi);
  // Segment endpoints can beat the interior minimum.
  double best = mid;
  double best_cost = cost(mid);
  for (double cand : {samples_[seg].s, samples_[seg + 1].s}) {
    const double c = cost(cand);
    if (c < best_cost) {
      best = cand;
      best_cost = c;
    }
  }
  return best;
}

CurvePoint Curve::project(const Vec2& p) const {
  std::size_t nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const Vec2 diff = samples_[i].position - p;
    const double d2 = diff.dot(diff);
    if (d2 < best) {
      best = d2;
      nearest = i;
    }
  }

  double s = 0.0;
  const auto& first = samples_.front();
  const auto& last = samples_.back();
  const double before = (p - first.position).dot(unit_from_heading(first.heading));
  const double after = (p - last.position).dot(unit_from_heading(last.heading));
  if (nearest == 0 && before < 0.0) {
    s = before;
  } else if (nearest + 1 == samples_.size() && after > 0.0) {
    s = last.s + after;
  } else {
    double best_s = samples_[nearest].s;
    double best_d2 = best;
    for (std::size_t seg : {nearest == 0 ? nearest : nearest - 1, nearest}) {
      if (seg + 1 >= samples_.size()) continue;
      const double cand = refine_on_segment(p, seg);
      const Vec2 diff = evaluate(cand).position - p;
      const double d2 = diff.dot(diff);
      if (d2 < best_d2) {
        best_d2 = d2;
        best_s = cand;
      }
    }
    s = best_s;
  }
  const Eval e = evaluate(s);
  const Vec2 normal = e.derivative.perp() * (1.0 / e.derivative.norm());
  return {s, (p - e.position).dot(normal)};
}

Polygon Curve::band_quad(std::size_t k, double d, double half_width) const {
  const auto& a = samples_[k];
  const auto& b = samples_[k + 1];
  const Vec2 na = unit_from_heading(a.heading).perp();
  const Vec2 nb = unit_from_heading(b.heading).perp();
  return {a.position + na * (d - half_width), b.position + nb * (d - half_width),
          b.position + nb * (d + half_width), a.position + na * (d + half_width)};
}

}  // namespace shuttle::geometry
