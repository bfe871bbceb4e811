#pragma once
// Test-side reference computations, written independently of the library
// (explicit point/interval lists, brute-force sweeps, fine-grid maxima).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

using Seg = std::pair<long double, long double>;  // closed [a, b]

// Level-L pieces of the Cantor construction, as closed intervals.
inline std::vector<Seg> cantor_pieces(long double a, long double b, int m, long double c, int L) {
  std::vector<Seg> cur{{a, b}};
  for (int l = 0; l < L; ++l) {
    std::vector<Seg> next;
    next.reserve(cur.size() * m);
    for (auto [lo, hi] : cur) {
      const long double len = hi - lo, child = c * len;
      const long double gap = m > 1 ? (len - m * child) / (m - 1) : 0.0L;
      for (int k = 0; k < m; ++k) {
        const long double s = lo + k * (child + gap);
        next.push_back({s, s + child});
      }
    }
    cur.swap(next);
  }
  return cur;
}

// {1} ∪ {1 + n^-a : 1 <= n <= n_max}, plus the solid tail [1, 1 + n_max^-a]
// when tail is requested; points are returned as degenerate segments.
inline std::vector<Seg> polyseq_points(double a, std::uint64_t n_max) {
  std::vector<Seg> out;
  out.push_back({1.0L, 1.0L});
  for (std::uint64_t n = n_max; n >= 1; --n) {
    const long double x = 1.0L + std::pow(static_cast<long double>(n), -static_cast<long double>(a));
    out.push_back({x, x});
  }
  return out;
}

// Clip sorted segments to [lo, hi].
inline std::vector<Seg> clip(const std::vector<Seg>& s, long double lo, long double hi) {
  std::vector<Seg> out;
  for (auto [a, b] : s) {
    if (b < lo || a > hi) continue;
    out.push_back({std::max(a, lo), std::min(b, hi)});
  }
  return out;
}

// Minimal number of closed length-delta intervals covering a sorted union
// of closed segments: greedy from the leftmost uncovered point.
inline std::uint64_t greedy_cover(const std::vector<Seg>& segs, long double delta) {
  std::uint64_t n = 0;
  long double reach = -1e300L;
  bool started = false;
  for (auto [a, b] : segs) {
    if (started && b <= reach) continue;
    long double start = (started && a <= reach) ? reach : a;
    // open continuation: a fresh interval begins right after reach
    while (true) {
      ++n;
      reach = start + delta;
      started = true;
      if (reach >= b) break;
      start = reach;
    }
  }
  return n;
}

// Greedy cover that treats a segment continuing past reach as needing
// another interval only for points strictly beyond reach.
inline std::uint64_t cover_points(std::vector<long double> pts, long double delta) {
  std::sort(pts.begin(), pts.end());
  std::uint64_t n = 0;
  long double reach = 0;
  bool any = false;
  for (long double x : pts) {
    if (any && x <= reach) continue;
    ++n;
    reach = x + delta;
    any = true;
  }
  return n;
}

// max over alpha-node theta of theta*alpha - f(theta), f given on nodes.
inline double conjugate(const std::vector<double>& theta, const std::vector<double>& f, double alpha) {
  double best = -1e300;
  for (std::size_t i = 0; i < theta.size(); ++i) best = std::max(best, theta[i] * alpha - f[i]);
  return best;
}

// Lower convex envelope of points (x_i, y_i), x ascending, evaluated on the
// same nodes (Andrew's monotone chain, lower half).
inline std::vector<double> lower_envelope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<std::size_t> h;
  for (std::size_t i = 0; i < x.size(); ++i) {
    while (h.size() >= 2) {
      const std::size_t a = h[h.size() - 2], b = h.back();
      const double cross = (x[b] - x[a]) * (y[i] - y[a]) - (y[b] - y[a]) * (x[i] - x[a]);
      if (cross <= 0) h.pop_back();
      else break;
    }
    h.push_back(i);
  }
  std::vector<double> out(x.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    while (k + 1 < h.size() && x[h[k + 1]] < x[i]) ++k;
    if (k + 1 >= h.size()) {
      out[i] = y[h.back()];
      continue;
    }
    const std::size_t a = h[k], b = h[k + 1];
    out[i] = y[a] + (y[b] - y[a]) * (x[i] - x[a]) / (x[b] - x[a]);
  }
  return out;
}

// Unweighted least-squares slope.
inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
  return sxy / sxx;
}

}  // namespace oracle
