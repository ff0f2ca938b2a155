#pragma once

// The cubic surface x3*x0^2 + x0*x2^2 + x2*x1^2 = 0 in P^3, its three lines,
// and the brute-force counting oracle for points of bounded height on the
// complement U of the lines.

#include "d5/integer.hpp"
#include "d5/parallel.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace d5 {

class NotOnSurface : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The quadruple lies on one of the deleted lines (so not in U).
class OnLine : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Primitive representative with x0 > 0 of a rational point of U.
struct SurfacePoint {
  i64 x0 = 0, x1 = 0, x2 = 0, x3 = 0;

  auto operator<=>(const SurfacePoint&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const SurfacePoint& p) {
  return os << '(' << p.x0 << ',' << p.x1 << ',' << p.x2 << ',' << p.x3 << ')';
}

enum class LineId { E6, E7, E8 };

constexpr std::string_view line_name(LineId l) {
  switch (l) {
    case LineId::E6: return "E6";
    case LineId::E7: return "E7";
    case LineId::E8: return "E8";
  }
  return "?";
}

/// Value of the defining cubic form, exact.
inline i128 surface_form(i128 x0, i128 x1, i128 x2, i128 x3) {
  return x3 * x0 * x0 + x0 * x2 * x2 + x2 * x1 * x1;
}

inline bool on_surface(i128 x0, i128 x1, i128 x2, i128 x3) { return surface_form(x0, x1, x2, x3) == 0; }

/// The line containing a point of S, checked in the order E6, E7, E8.
inline std::optional<LineId> on_line(i64 x0, i64 x1, i64 x2, i64 x3) {
  if (x0 == 0 && x1 == 0) return LineId::E6;
  if (x0 == 0 && x2 == 0) return LineId::E7;
  if (x2 == 0 && x3 == 0) return LineId::E8;
  return std::nullopt;
}

inline std::optional<LineId> on_line(const SurfacePoint& p) { return on_line(p.x0, p.x1, p.x2, p.x3); }

/// Canonical representative: divide by the content, make x0 positive.
inline SurfacePoint normalize(i64 x0, i64 x1, i64 x2, i64 x3) {
  if (x0 == 0 && x1 == 0 && x2 == 0 && x3 == 0) throw std::invalid_argument("normalize: zero vector");
  if (!on_surface(x0, x1, x2, x3)) throw NotOnSurface("normalize: point is not on the surface");
  if (x0 == 0 || x2 == 0) throw OnLine("normalize: point lies on a line of the surface");
  i64 g = gcd64s(gcd64s(x0, x1), gcd64s(x2, x3));
  if (x0 < 0) g = -g;
  return SurfacePoint{x0 / g, x1 / g, x2 / g, x3 / g};
}

inline i64 height(const SurfacePoint& p) {
  auto a = [](i64 v) { return v < 0 ? -v : v; };
  return std::max({a(p.x0), a(p.x1), a(p.x2), a(p.x3)});
}

inline constexpr i64 kDefaultBruteCeiling = 2000;

namespace detail {

// Points with a fixed x0, in lexicographic order of (x1, x2).
inline std::vector<SurfacePoint> brute_force_slice(i64 x0, i64 bound) {
  std::vector<SurfacePoint> out;
  const i128 x0sq = static_cast<i128>(x0) * x0;
  const i128 limit = static_cast<i128>(bound) * x0sq;  // |x3| x0^2 <= B x0^2
  const i128 b2 = static_cast<i128>(bound) * bound;
  for (i64 x2 = -bound; x2 <= bound; ++x2) {
    if (x2 == 0) continue;
    // x2 > 0: t >= x0 x2^2, so x2^2 <= B x0 is necessary.
    if (x2 > 0 && static_cast<i128>(x2) * x2 > static_cast<i128>(bound) * x0) break;
    const i128 base = x0 * static_cast<i128>(x2) * x2;
    // Need -limit <= base + x2 x1^2 <= limit.
    i128 lo, hi;  // range for x1^2
    if (x2 > 0) {
      lo = ceil_div(-limit - base, x2);
      hi = floor_div(limit - base, x2);
    } else {
      const i128 m = -static_cast<i128>(x2);
      lo = ceil_div(base - limit, m);
      hi = floor_div(base + limit, m);
    }
    lo = std::max<i128>(lo, 0);
    hi = std::min(hi, b2);
    if (lo > hi) continue;
    i128 s_lo = isqrt(static_cast<u128>(lo));
    if (s_lo * s_lo < lo) ++s_lo;
    const i128 s_hi = isqrt(static_cast<u128>(hi));
    for (i128 a = s_lo; a <= s_hi; ++a) {
      for (int sign : {1, -1}) {
        if (a == 0 && sign < 0) continue;
        const i64 x1 = static_cast<i64>(sign * a);
        const i128 t = base + static_cast<i128>(x2) * x1 * x1;
        if (t % x0sq != 0) continue;
        const i128 x3 = -t / x0sq;
        if (abs128(x3) > bound) continue;
        if (gcd64s(gcd64s(x0, x1), gcd64s(x2, static_cast<i64>(x3))) != 1) continue;
        out.push_back(SurfacePoint{x0, x1, x2, static_cast<i64>(x3)});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// All points of U(Q) of height <= bound, sorted lexicographically.
inline std::vector<SurfacePoint> brute_force_enumerate(i64 bound, unsigned workers = 1,
                                                       i64 ceiling = kDefaultBruteCeiling) {
  if (bound <= 0) return {};
  if (bound > ceiling) throw BudgetExceeded("brute_force_enumerate: height bound above the brute-force ceiling");
  auto slices = parallel_map(static_cast<std::size_t>(bound), workers,
                             [bound](std::size_t i) { return detail::brute_force_slice(static_cast<i64>(i) + 1, bound); });
  std::vector<SurfacePoint> out;
  for (auto& s : slices) out.insert(out.end(), s.begin(), s.end());
  return out;  // slices are ordered by x0 and sorted internally
}

inline std::size_t count_brute(i64 bound, unsigned workers = 1, i64 ceiling = kDefaultBruteCeiling) {
  return brute_force_enumerate(bound, workers, ceiling).size();
}

/// CSV with header x0,x1,x2,x3,height; rows in the given order.
inline void write_points_csv(std::ostream& os, const std::vector<SurfacePoint>& points) {
  os << "x0,x1,x2,x3,height\n";
  for (const auto& p : points) os << p.x0 << ',' << p.x1 << ',' << p.x2 << ',' << p.x3 << ',' << height(p) << '\n';
}

}  // namespace d5
