#pragma once

// Symbolic compact subsets of [1,2], their finite renderings, 2^-j
// discretizations and exact one-dimensional covering numbers.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fls {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

/// Self-similar Cantor construction: every basic interval is replaced by
/// `branches` evenly spread children of relative length `contraction`.
struct CantorLike {
  Interval base{1.0, 2.0};
  int branches = 2;
  double contraction = 1.0 / 3.0;
};

/// {1} together with {1 + n^-exponent : n >= 1}.
struct PolySequence {
  double exponent = 1.0;
};

struct FullInterval {
  Interval range{1.0, 2.0};
};

struct FinitePoints {
  std::vector<double> points;
};

class SetDescriptor;

struct SetUnion {
  std::vector<SetDescriptor> members;
};

class SetDescriptor {
 public:
  using Variant =
      std::variant<CantorLike, PolySequence, FullInterval, FinitePoints, SetUnion>;

  // Throws Error(invalid_set) when an invariant is violated.
  explicit SetDescriptor(Variant v);

  static SetDescriptor cantor(Interval base, int branches, double contraction);
  static SetDescriptor poly_sequence(double exponent);
  static SetDescriptor interval(double lo, double hi);
  static SetDescriptor points(std::vector<double> pts);
  static SetDescriptor union_of(std::vector<SetDescriptor> members);

  const Variant& variant() const noexcept { return v_; }

  /// "cantor" | "polyseq" | "interval" | "points" | "union"
  std::string kind() const;

  /// inf { s in E : s >= y }, or nullopt when E has no point at or after y.
  /// Evaluated on the exact set, not on a rendering.
  std::optional<double> next_point(double y) const;

  /// Smallest closed interval containing the set.
  Interval span() const;

 private:
  Variant v_;
};

/// Sorted closed intervals, each of length <= resolution, with disjoint
/// interiors (neighbouring tiles of a solid piece share an endpoint).
struct IntervalList {
  std::vector<Interval> intervals;
  double resolution = 0.0;

  bool satisfies_invariants() const;
};

/// A maximal 2^-scale separated subset of the set.
struct Discretization {
  std::vector<double> points;
  int scale = 0;
};

/// Relative slack applied to covering reach and separation tests so that
/// exact dyadic/triadic configurations are not split by one ulp.
inline constexpr double kCoverSlack = 1e-9;

IntervalList render(const SetDescriptor& set, double delta);

Discretization discretize(const SetDescriptor& set, int j);

/// Minimal number of closed length-delta intervals covering E ∩ window.
/// Requires window ⊆ [0,3] and delta > 0.
std::uint64_t covering_number(const SetDescriptor& set, Interval window, double delta);

/// Same greedy sweep without the window precondition (used by window
/// families whose members may extend past [0,3]).
std::uint64_t covering_count(const SetDescriptor& set, Interval window, double delta);

/// First n >= 1 with n^-a - (n+1)^-a < delta.
std::uint64_t poly_merge_index(double exponent, double delta);

}  // namespace fls
