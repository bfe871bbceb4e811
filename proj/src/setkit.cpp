#include "fls/setkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fls/error.hpp"

namespace fls {

namespace {

constexpr std::size_t kMaxRenderIntervals = std::size_t{1} << 23;

bool in_unit_window(double x) { return x >= 1.0 && x <= 2.0; }

void validate(const CantorLike& c) {
  if (!(in_unit_window(c.base.lo) && in_unit_window(c.base.hi) && c.base.lo < c.base.hi))
    fail(ErrorCode::invalid_set, "cantor base interval must satisfy 1 <= a < b <= 2");
  if (c.branches < 2) fail(ErrorCode::invalid_set, "cantor branches must be >= 2");
  if (!(c.contraction > 0.0) || c.branches * c.contraction > 1.0 + 1e-12)
    fail(ErrorCode::invalid_set, "cantor contraction must satisfy 0 < c and m*c <= 1");
}

void validate(const PolySequence& p) {
  if (!(p.exponent > 0.0) || !std::isfinite(p.exponent))
    fail(ErrorCode::invalid_set, "polyseq exponent must be a positive real");
}

void validate(const FullInterval& f) {
  if (!(in_unit_window(f.range.lo) && in_unit_window(f.range.hi) && f.range.lo <= f.range.hi))
    fail(ErrorCode::invalid_set, "interval must satisfy 1 <= a <= b <= 2");
}

void validate(FinitePoints& f) {
  if (f.points.empty()) fail(ErrorCode::invalid_set, "points list is empty");
  for (double x : f.points)
    if (!in_unit_window(x)) fail(ErrorCode::invalid_set, "points must lie in [1,2]");
  std::sort(f.points.begin(), f.points.end());
  f.points.erase(std::unique(f.points.begin(), f.points.end()), f.points.end());
}

void validate(const SetUnion& u) {
  if (u.members.empty()) fail(ErrorCode::invalid_set, "union must have at least one member");
}

// Cantor successor query on the basic interval [lo, lo+len].
std::optional<double> cantor_next(const CantorLike& c, double lo, double len, double y) {
  if (y <= lo) return lo;
  if (y > lo + len) return std::nullopt;
  if (len <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(lo)))
    return y;
  const int m = c.branches;
  const double child = len * c.contraction;
  const double stride = (len - child) / (m - 1);
  int i = static_cast<int>(std::floor((y - lo - child) / stride));
  i = std::clamp(i, 0, m - 1);
  while (i > 0 && lo + (i - 1) * stride + child >= y) --i;
  while (i < m && lo + i * stride + child < y) ++i;
  if (i == m) return std::nullopt;
  const double cl = lo + i * stride;
  if (y <= cl) return cl;
  if (auto r = cantor_next(c, cl, child, y)) return r;
  if (i + 1 < m) return lo + (i + 1) * stride;
  return std::nullopt;
}

std::optional<double> poly_next(const PolySequence& p, double y) {
  if (y <= 1.0) return 1.0;
  if (y > 2.0) return std::nullopt;
  const double x = y - 1.0;
  const double a = p.exponent;
  const double nreal = std::pow(x, -1.0 / a);
  if (!(nreal < 1e15)) return y;  // gaps below double resolution
  auto n = static_cast<std::uint64_t>(std::floor(nreal));
  if (n < 1) n = 1;
  while (std::pow(static_cast<double>(n + 1), -a) >= x) ++n;
  while (n > 1 && std::pow(static_cast<double>(n), -a) < x) --n;
  return 1.0 + std::pow(static_cast<double>(n), -a);
}

void tile(Interval piece, double delta, std::vector<Interval>& out) {
  const double len = piece.length();
  if (len <= delta) {
    out.push_back(piece);
    return;
  }
  const auto k = static_cast<std::size_t>(std::ceil(len / delta - 1e-12));
  if (out.size() + k > kMaxRenderIntervals)
    fail(ErrorCode::out_of_range, "rendering exceeds interval budget");
  const double step = len / static_cast<double>(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double l = piece.lo + step * static_cast<double>(i);
    const double r = (i + 1 == k) ? piece.hi : piece.lo + step * static_cast<double>(i + 1);
    out.push_back({l, r});
  }
}

void render_into(const SetDescriptor& set, double delta, std::vector<Interval>& out);

void render_cantor(const CantorLike& c, double delta, std::vector<Interval>& out) {
  std::vector<Interval> level{c.base};
  const double limit = delta * (1.0 + 1e-12);
  while (level.front().length() > limit) {
    if (level.size() * static_cast<std::size_t>(c.branches) > kMaxRenderIntervals)
      fail(ErrorCode::out_of_range, "cantor rendering exceeds interval budget");
    std::vector<Interval> next;
    next.reserve(level.size() * c.branches);
    for (const auto& b : level) {
      const double child = b.length() * c.contraction;
      const double stride = (b.length() - child) / (c.branches - 1);
      for (int i = 0; i < c.branches; ++i) {
        const double l = b.lo + i * stride;
        next.push_back({l, (i + 1 == c.branches) ? b.hi : l + child});
      }
    }
    level = std::move(next);
  }
  out.insert(out.end(), level.begin(), level.end());
}

void render_poly(const PolySequence& p, double delta, std::vector<Interval>& out) {
  const std::uint64_t nstar = poly_merge_index(p.exponent, delta);
  const double tail_top = 1.0 + std::pow(static_cast<double>(nstar), -p.exponent);
  tile({1.0, tail_top}, delta, out);
  for (std::uint64_t n = nstar - 1; n >= 1; --n) {
    const double x = 1.0 + std::pow(static_cast<double>(n), -p.exponent);
    out.push_back({x, x});
  }
}

void render_into(const SetDescriptor& set, double delta, std::vector<Interval>& out) {
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CantorLike>) {
          render_cantor(s, delta, out);
        } else if constexpr (std::is_same_v<T, PolySequence>) {
          render_poly(s, delta, out);
        } else if constexpr (std::is_same_v<T, FullInterval>) {
          tile(s.range, delta, out);
        } else if constexpr (std::is_same_v<T, FinitePoints>) {
          for (double x : s.points) out.push_back({x, x});
        } else {
          std::vector<Interval> all;
          for (const auto& m : s.members) render_into(m, delta, all);
          std::sort(all.begin(), all.end(),
                    [](const Interval& a, const Interval& b) {
                      return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
                    });
          std::vector<Interval> merged;
          for (const auto& iv : all) {
            if (!merged.empty() && iv.lo < merged.back().hi) {
              merged.back().hi = std::max(merged.back().hi, iv.hi);
            } else if (!merged.empty() && iv.lo == merged.back().hi && iv.hi == iv.lo) {
              continue;  // point sitting on an existing endpoint
            } else {
              merged.push_back(iv);
            }
          }
          for (const auto& iv : merged) tile(iv, delta, out);
        }
      },
      set.variant());
}

}  // namespace

SetDescriptor::SetDescriptor(Variant v) : v_(std::move(v)) {
  std::visit([](auto& s) { validate(s); }, v_);
}

SetDescriptor SetDescriptor::cantor(Interval base, int branches, double contraction) {
  return SetDescriptor(CantorLike{base, branches, contraction});
}

SetDescriptor SetDescriptor::poly_sequence(double exponent) {
  return SetDescriptor(PolySequence{exponent});
}

SetDescriptor SetDescriptor::interval(double lo, double hi) {
  return SetDescriptor(FullInterval{{lo, hi}});
}

SetDescriptor SetDescriptor::points(std::vector<double> pts) {
  return SetDescriptor(FinitePoints{std::move(pts)});
}

SetDescriptor SetDescriptor::union_of(std::vector<SetDescriptor> members) {
  return SetDescriptor(SetUnion{std::move(members)});
}

std::string SetDescriptor::kind() const {
  static constexpr const char* names[] = {"cantor", "polyseq", "interval", "points", "union"};
  return names[v_.index()];
}

std::optional<double> SetDescriptor::next_point(double y) const {
  return std::visit(
      [y](const auto& s) -> std::optional<double> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CantorLike>) {
          return cantor_next(s, s.base.lo, s.base.length(), y);
        } else if constexpr (std::is_same_v<T, PolySequence>) {
          return poly_next(s, y);
        } else if constexpr (std::is_same_v<T, FullInterval>) {
          if (y > s.range.hi) return std::nullopt;
          return std::max(y, s.range.lo);
        } else if constexpr (std::is_same_v<T, FinitePoints>) {
          auto it = std::lower_bound(s.points.begin(), s.points.end(), y);
          if (it == s.points.end()) return std::nullopt;
          return *it;
        } else {
          std::optional<double> best;
          for (const auto& m : s.members) {
            auto r = m.next_point(y);
            if (r && (!best || *r < *best)) best = r;
          }
          return best;
        }
      },
      v_);
}

Interval SetDescriptor::span() const {
  return std::visit(
      [](const auto& s) -> Interval {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CantorLike>) {
          return s.base;
        } else if constexpr (std::is_same_v<T, PolySequence>) {
          return {1.0, 2.0};
        } else if constexpr (std::is_same_v<T, FullInterval>) {
          return s.range;
        } else if constexpr (std::is_same_v<T, FinitePoints>) {
          return {s.points.front(), s.points.back()};
        } else {
          Interval out = s.members.front().span();
          for (const auto& m : s.members) {
            const Interval iv = m.span();
            out.lo = std::min(out.lo, iv.lo);
            out.hi = std::max(out.hi, iv.hi);
          }
          return out;
        }
      },
      v_);
}

bool IntervalList::satisfies_invariants() const {
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto& iv = intervals[i];
    if (iv.hi < iv.lo) return false;
    if (iv.length() > resolution * (1.0 + 1e-9)) return false;
    if (i > 0 && iv.lo < intervals[i - 1].hi) return false;
    if (i > 0 && iv.lo == intervals[i - 1].hi && iv.hi == iv.lo) return false;
  }
  return true;
}

std::uint64_t poly_merge_index(double exponent, double delta) {
  if (!(delta > 0.0)) fail(ErrorCode::invalid_resolution, "delta must be positive");
  auto gap = [exponent](std::uint64_t n) {
    const double x = static_cast<double>(n);
    return std::pow(x, -exponent) - std::pow(x + 1.0, -exponent);
  };
  // Gaps are strictly decreasing in n: bracket then bisect.
  std::uint64_t hi = 1;
  while (!(gap(hi) < delta)) {
    hi *= 2;
    if (hi > (std::uint64_t{1} << 52)) fail(ErrorCode::out_of_range, "merge index too large");
  }
  std::uint64_t lo = hi / 2;  // gap(lo) >= delta unless lo == 0
  if (lo == 0) return 1;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (gap(mid) < delta) hi = mid; else lo = mid;
  }
  return hi;
}

IntervalList render(const SetDescriptor& set, double delta) {
  if (!(delta > 0.0) || delta > 1.0)
    fail(ErrorCode::invalid_resolution, "render requires 0 < delta <= 1");
  IntervalList out;
  out.resolution = delta;
  render_into(set, delta, out.intervals);
  std::sort(out.intervals.begin(), out.intervals.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  return out;
}

Discretization discretize(const SetDescriptor& set, int j) {
  if (j < 0) fail(ErrorCode::invalid_argument, "discretize requires j >= 0");
  Discretization out;
  out.scale = j;
  const double reach = std::ldexp(1.0, -j) * (1.0 + kCoverSlack);
  auto p = set.next_point(-std::numeric_limits<double>::infinity());
  while (p) {
    out.points.push_back(*p);
    p = set.next_point(*p + reach);
  }
  return out;
}

std::uint64_t covering_count(const SetDescriptor& set, Interval window, double delta) {
  if (!(delta > 0.0)) fail(ErrorCode::invalid_resolution, "delta must be positive");
  if (window.hi < window.lo) return 0;
  const double reach = delta * (1.0 + kCoverSlack);
  std::uint64_t n = 0;
  auto p = set.next_point(window.lo);
  while (p && *p <= window.hi) {
    ++n;
    p = set.next_point(*p + reach);
  }
  return n;
}

std::uint64_t covering_number(const SetDescriptor& set, Interval window, double delta) {
  if (!(delta > 0.0)) fail(ErrorCode::invalid_resolution, "delta must be positive");
  if (window.lo < 0.0 || window.hi > 3.0 || window.hi < window.lo) {
    std::ostringstream os;
    os << "window [" << window.lo << ", " << window.hi << "] must lie in [0,3]";
    fail(ErrorCode::out_of_range, os.str());
  }
  return covering_count(set, window, delta);
}

}  // namespace fls
