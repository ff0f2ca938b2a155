#pragma once

// Universal torsor parametrization of U(Q): the hypersurface
//   eta2*eta6^2*alpha2 + eta4*eta5^2*eta7^3*eta8 + eta3*alpha1^2 = 0
// with coprimality conditions read off the extended Dynkin diagram, the
// height-bounded set T(B), its enumeration, the forward map to the surface and
// the inverse (lift).

#include "d5/integer.hpp"
#include "d5/parallel.hpp"
#include "d5/surface.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <ostream>
#include <string_view>
#include <vector>

namespace d5 {

/// eta[0..7] hold eta1..eta8; eta1..eta7 > 0, eta8 != 0.
struct TorsorPoint {
  std::array<i64, 8> eta{1, 1, 1, 1, 1, 1, 1, 1};
  i64 alpha1 = 0;
  i64 alpha2 = 0;

  i64 e(int i) const { return eta[static_cast<std::size_t>(i - 1)]; }
  auto operator<=>(const TorsorPoint&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, const TorsorPoint& t) {
  os << "(eta=";
  for (std::size_t i = 0; i < 8; ++i) os << (i ? "," : "") << t.eta[i];
  return os << "; alpha=" << t.alpha1 << ',' << t.alpha2 << ')';
}

/// Dual graph of the curves E1..E8, A1, A2 on the minimal desingularisation.
/// Two torsor coordinates may share a prime only if their curves are adjacent.
class CoprimalityGraph {
 public:
  enum Vertex : int { E1, E2, E3, E4, E5, E6, E7, E8, A1, A2, kCount };

  static constexpr std::array<std::array<int, 2>, 12> kEdges{{
      {A2, E6}, {A2, E8}, {A2, A1}, {E6, E2}, {E2, E1}, {E8, E7},
      {E7, E5}, {E5, E4}, {E4, E1}, {A1, E3}, {A1, E8}, {E3, E1},
  }};

  static constexpr bool adjacent(int a, int b) {
    for (const auto& e : kEdges)
      if ((e[0] == a && e[1] == b) || (e[0] == b && e[1] == a)) return true;
    return false;
  }

  static constexpr std::string_view name(int v) {
    constexpr std::array<std::string_view, kCount> names{"E1", "E2", "E3", "E4", "E5", "E6", "E7", "E8", "A1", "A2"};
    return names[static_cast<std::size_t>(v)];
  }

  /// Coordinate of a torsor point attached to vertex v.
  static i64 coordinate(const TorsorPoint& t, int v) {
    if (v < A1) return t.eta[static_cast<std::size_t>(v)];
    return v == A1 ? t.alpha1 : t.alpha2;
  }
};

// Exponents of eta1..eta6 in the monomials x0, x1, x2 (the remaining factors
// are eta7, alpha1, eta7^2*eta8).
inline constexpr std::array<int, 6> kX0Exp{4, 3, 2, 3, 2, 2};
inline constexpr std::array<int, 6> kX1Exp{3, 2, 2, 2, 1, 1};
inline constexpr std::array<int, 6> kX2Exp{2, 1, 1, 2, 2, 0};

namespace detail {

inline i128 eta_monomial(const TorsorPoint& t, const std::array<int, 6>& exps) {
  i128 r = 1;
  for (std::size_t i = 0; i < 6; ++i) r = mul_checked(r, pow_checked(t.eta[i], static_cast<unsigned>(exps[i])));
  return r;
}

struct Monomials {
  i128 x0, x1, x2, x3;
};

inline Monomials monomials(const TorsorPoint& t) {
  const i128 e7 = t.eta[6], e8 = t.eta[7];
  return Monomials{
      mul_checked(eta_monomial(t, kX0Exp), e7),
      mul_checked(eta_monomial(t, kX1Exp), t.alpha1),
      mul_checked(mul_checked(eta_monomial(t, kX2Exp), mul_checked(e7, e7)), e8),
      mul_checked(e8, t.alpha2),
  };
}

inline i64 narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("monomial does not fit in 64 bits");
  return static_cast<i64>(v);
}

}  // namespace detail

inline i128 torsor_form(const TorsorPoint& t) {
  const i128 e2 = t.e(2), e3 = t.e(3), e4 = t.e(4), e5 = t.e(5), e6 = t.e(6), e7 = t.e(7), e8 = t.e(8);
  const i128 term1 = mul_checked(mul_checked(e2, mul_checked(e6, e6)), t.alpha2);
  const i128 term2 = mul_checked(mul_checked(mul_checked(e4, mul_checked(e5, e5)), pow_checked(e7, 3)), e8);
  const i128 term3 = mul_checked(e3, mul_checked(t.alpha1, t.alpha1));
  return add_checked(add_checked(term1, term2), term3);
}

inline bool satisfies_torsor_eq(const TorsorPoint& t) { return torsor_form(t) == 0; }

/// Conditions (alpha2, eta1 eta2 eta7) = 1, (alpha1, eta1 eta4 eta5) = 1,
/// (eta8, eta1..eta6) = 1, (eta7, eta1 eta2 eta3 eta4 eta6) = 1 and pairwise
/// coprimality of eta1..eta6 except along {1,2},{1,3},{1,4},{2,6},{4,5}.
inline bool coprimality_ok(const TorsorPoint& t) {
  auto cp = [](i128 a, i128 b) { return gcd128(a, b) == 1; };
  const i128 e1 = t.e(1), e2 = t.e(2), e3 = t.e(3), e4 = t.e(4), e5 = t.e(5), e6 = t.e(6), e7 = t.e(7), e8 = t.e(8);
  if (!cp(t.alpha2, e1 * e2 * e7)) return false;
  if (!cp(t.alpha1, e1 * e4 * e5)) return false;
  if (!cp(e8, e1 * e2 * e3 * e4 * e5 * e6)) return false;
  if (!cp(e7, e1 * e2 * e3 * e4 * e6)) return false;
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j)
      if (!CoprimalityGraph::adjacent(i - 1, j - 1) && !cp(t.e(i), t.e(j))) return false;
  return true;
}

inline bool height_ok(const TorsorPoint& t, i64 bound) {
  const auto m = detail::monomials(t);
  return abs128(m.x0) <= bound && abs128(m.x1) <= bound && abs128(m.x2) <= bound && abs128(m.x3) <= bound;
}

/// Image on the surface. The monomial quadruple is already primitive with
/// x0 > 0 for points satisfying the torsor equation and coprimality.
inline SurfacePoint to_surface(const TorsorPoint& t) {
  const auto m = detail::monomials(t);
  SurfacePoint p{detail::narrow(m.x0), detail::narrow(m.x1), detail::narrow(m.x2), detail::narrow(m.x3)};
  if (p.x0 <= 0 || gcd64s(gcd64s(p.x0, p.x1), gcd64s(p.x2, p.x3)) != 1)
    throw std::logic_error("to_surface: image is not a normalized point");
  return p;
}

// ---------------------------------------------------------------------------
// Enumeration of T(B)
// ---------------------------------------------------------------------------

/// Tuples (eta1..eta6) with eta1^4 eta2^3 eta3^2 eta4^3 eta5^2 eta6^2 <= B and
/// the required pairwise coprimality among them.
inline std::vector<std::array<i64, 6>> eta_base_tuples(i64 bound) {
  std::vector<std::array<i64, 6>> out;
  if (bound < 1) return out;
  const i128 B = bound;
  auto cp = [](i64 a, i64 b) { return gcd64s(a, b) == 1; };
  for (i64 e1 = 1; pow_checked(e1, 4) <= B; ++e1) {
    const i128 m1 = pow_checked(e1, 4);
    for (i64 e2 = 1; m1 * pow_checked(e2, 3) <= B; ++e2) {
      const i128 m2 = m1 * pow_checked(e2, 3);
      for (i64 e3 = 1; m2 * e3 * e3 <= B; ++e3) {
        if (!cp(e2, e3)) continue;
        const i128 m3 = m2 * e3 * e3;
        for (i64 e4 = 1; m3 * pow_checked(e4, 3) <= B; ++e4) {
          if (!cp(e2, e4) || !cp(e3, e4)) continue;
          const i128 m4 = m3 * pow_checked(e4, 3);
          for (i64 e5 = 1; m4 * e5 * e5 <= B; ++e5) {
            if (!cp(e1, e5) || !cp(e2, e5) || !cp(e3, e5)) continue;
            const i128 m5 = m4 * e5 * e5;
            for (i64 e6 = 1; m5 * e6 * e6 <= B; ++e6) {
              if (!cp(e1, e6) || !cp(e3, e6) || !cp(e4, e6) || !cp(e5, e6)) continue;
              out.push_back({e1, e2, e3, e4, e5, e6});
            }
          }
        }
      }
    }
  }
  return out;
}

namespace detail {

// Square roots modulo m, bucketed by residue: roots of r are
// vals[offsets[r] .. offsets[r+1]).
struct SqrtTable {
  i64 modulus = 0;
  std::vector<u64> offsets;
  std::vector<u64> vals;

  void build(i64 m) {
    const u64 mu = static_cast<u64>(m);
    modulus = m;
    offsets.assign(mu + 1, 0);
    vals.resize(mu);
    for (u64 v = 0; v < mu; ++v) ++offsets[(v * v) % mu + 1];
    for (u64 r = 0; r < mu; ++r) offsets[r + 1] += offsets[r];
    std::vector<u64> fill(offsets.begin(), offsets.end() - 1);
    for (u64 v = 0; v < mu; ++v) vals[fill[(v * v) % mu]++] = v;
  }
};

// Walks all points of T(B) over a fixed (eta1..eta6). For each eta7 the
// remaining pair (eta8, alpha1) is found either eta8-first (alpha1 from an
// exact square-root window) or alpha1-first (eta8 in one residue class modulo
// m = eta2*eta6^2, since eta4*eta5^2*eta7^3 is a unit there), whichever scans
// fewer candidates. Requires B <= kTorsorWidthCeiling so that every quantity
// below B^3 fits in 64 bits.
template <class Visit>
void torsor_points_over(const std::array<i64, 6>& base, i64 B, Visit&& visit) {
  const i64 e1 = base[0], e2 = base[1], e3 = base[2], e4 = base[3], e5 = base[4], e6 = base[5];
  const i64 mono0 = e1 * e1 * e1 * e1 * e2 * e2 * e2 * e3 * e3 * e4 * e4 * e4 * e5 * e5 * e6 * e6;
  const i64 m = e2 * e6 * e6;
  const u64 mu = static_cast<u64>(m);
  const i64 M1 = e1 * e1 * e1 * e2 * e2 * e3 * e3 * e4 * e4 * e5 * e6;
  const i64 M2base = e1 * e1 * e2 * e3 * e4 * e4 * e5 * e5;
  const i64 cp7 = e1 * e2 * e3 * e4 * e6;
  const i64 cp8 = e1 * e2 * e3 * e4 * e5 * e6;
  const i64 cpa1 = e1 * e4 * e5;
  const i64 Bm = B * m;
  const i64 A = B / M1;
  const i64 inv_e3 = mod_inverse(e3, m);

  TorsorPoint t;
  t.eta = {e1, e2, e3, e4, e5, e6, 1, 1};

  // n = K e8 + e3 a1^2 is divisible by m and |n e8| <= B m.
  auto emit = [&](i64 e7, i64 e8, i64 a1, i64 n) {
    const i64 a2 = -n / m;
    if (gcd64s(a2, e1 * e2 * e7) != 1) return;
    t.eta[6] = e7;
    t.eta[7] = e8;
    t.alpha1 = a1;
    t.alpha2 = a2;
    visit(t);
  };

  SqrtTable table;
  u64 direct_work = 0;

  for (i64 e7 = 1; mono0 * e7 <= B; ++e7) {
    const i64 M2 = M2base * e7 * e7;
    const i64 E = B / M2;
    if (E == 0) break;
    if (gcd64s(e7, cp7) != 1) continue;
    const i64 K = e4 * e5 * e5 * e7 * e7 * e7;

    // |eta3 alpha1^2| <= K|eta8| + Bm/|eta8| <= K E + Bm.
    const i64 acap = (K * E + Bm) / e3;
    const i64 A_eff = std::min<i64>(A, static_cast<i64>(isqrt(static_cast<u128>(acap))));

    if (3 * A_eff < 2 * E) {
      // alpha1 first.
      const i64 invK = mod_inverse(static_cast<i64>(K % m), m);
      const bool scan_class = E / m <= 16;
      for (i64 a1 = -A_eff; a1 <= A_eff; ++a1) {
        if (gcd64s(a1, cpa1) != 1) continue;
        const i64 c = e3 * a1 * a1;
        const i64 r = static_cast<i64>(static_cast<u64>((mod_pos(-c, m) * static_cast<i128>(invK)) % m));
        auto scan = [&](i64 lo, i64 hi) {
          lo = std::max<i64>(lo, -E);
          hi = std::min<i64>(hi, E);
          if (lo > hi) return;
          for (i64 e8 = lo + static_cast<i64>(mod_pos(r - lo, m)); e8 <= hi; e8 += m) {
            if (e8 == 0 || gcd64s(e8, cp8) != 1) continue;
            const i64 n = K * e8 + c;
            if ((n < 0 ? -n : n) > Bm / (e8 < 0 ? -e8 : e8)) continue;
            emit(e7, e8, a1, n);
          }
        };
        if (scan_class) {
          scan(-E, E);
          continue;
        }
        // |K x^2 + c x| <= Bm: x in [r1, r2] minus the open gap (s1, s2) where
        // K x^2 + c x < -Bm.
        auto f = [&](i64 x) { return static_cast<i128>(K) * x * x + static_cast<i128>(c) * x; };
        const long double Kd = static_cast<long double>(K), cd = static_cast<long double>(c),
                          Bmd = static_cast<long double>(Bm);
        const long double disc_hi = std::sqrt(cd * cd + 4 * Kd * Bmd);
        const long double r1 = (-cd - disc_hi) / (2 * Kd);
        const long double r2 = 2 * Bmd / (cd + disc_hi);
        auto clampd = [&](long double x) {
          return static_cast<i64>(std::max<long double>(-E - 2, std::min<long double>(E + 2, std::floor(x))));
        };
        // f(0) = 0, so [lo, hi] is nonempty.
        i64 lo = clampd(r1);
        while (lo > -E - 1 && f(lo - 1) <= Bm) --lo;
        while (f(lo) > Bm) ++lo;
        i64 hi = clampd(r2) + 1;
        while (hi < E + 1 && f(hi + 1) <= Bm) ++hi;
        while (f(hi) > Bm) --hi;
        if (static_cast<i128>(c) * c <= static_cast<i128>(4) * K * Bm) {
          scan(lo, hi);
          continue;
        }
        const long double sq = std::sqrt(std::max<long double>(cd * cd - 4 * Kd * Bmd, 0));
        const long double s1 = (-cd - sq) / (2 * Kd);
        const long double s2 = -2 * Bmd / (cd + sq);
        // Largest integer with f >= -Bm left of the vertex, smallest right of it.
        const i64 vtx = static_cast<i64>(std::floor(-cd / (2 * Kd)));
        i64 g1 = std::min(clampd(s1), vtx);
        while (g1 + 1 <= vtx && f(g1 + 1) >= -Bm) ++g1;
        while (g1 >= lo && f(g1) < -Bm) --g1;
        i64 g2 = std::max(clampd(s2) + 1, vtx + 1);
        while (g2 - 1 > vtx && f(g2 - 1) >= -Bm) --g2;
        while (g2 <= hi && f(g2) < -Bm) ++g2;
        scan(lo, std::min(g1, hi));
        scan(std::max(g2, lo), hi);
      }
    } else {
      // eta8 first.
      const i64 A2 = A * A;
      for (i64 e8 = -E; e8 <= E; ++e8) {
        if (e8 == 0 || gcd64s(e8, cp8) != 1) continue;
        const i64 R = Bm / (e8 < 0 ? -e8 : e8);
        const i64 Ke8 = K * e8;
        // e3 a1^2 in [-K e8 - R, -K e8 + R].
        const i64 lo = std::max<i64>(static_cast<i64>(ceil_div(-Ke8 - R, e3)), 0);
        const i64 hi = std::min<i64>(static_cast<i64>(floor_div(-Ke8 + R, e3)), A2);
        if (lo > hi) continue;
        i64 s_lo = static_cast<i64>(isqrt(static_cast<u128>(lo)));
        if (s_lo * s_lo < lo) ++s_lo;
        const i64 s_hi = static_cast<i64>(isqrt(static_cast<u128>(hi)));
        if (s_lo > s_hi) continue;

        auto hit = [&](i64 a1) {
          if (gcd64s(a1, cpa1) != 1) return;
          emit(e7, e8, a1, Ke8 + e3 * a1 * a1);
        };
        // Divisibility by m depends on a1^2 only, so each |a1| is tested once.
        auto both = [&](i64 a) {
          hit(a);
          if (a != 0) hit(-a);
        };
        const i64 len = s_hi - s_lo + 1;
        if (m == 1) {
          for (i64 a = s_lo; a <= s_hi; ++a) both(a);
          continue;
        }
        // e3 is a unit mod m: need a1^2 = target (mod m).
        const u64 target = static_cast<u64>(static_cast<i64>(mod_pos(static_cast<i128>(mod_pos(-Ke8, m)) * inv_e3, m)));
        if (table.modulus != m && (len <= 8 || direct_work + static_cast<u64>(len) <= 2 * mu)) {
          direct_work += static_cast<u64>(len);
          u64 sq = (static_cast<u64>(s_lo % m) * static_cast<u64>(s_lo % m)) % mu;
          u64 step = static_cast<u64>((2 * (s_lo % m) + 1) % m);  // (a+1)^2 - a^2 mod m
          for (i64 a = s_lo; a <= s_hi; ++a) {
            if (sq == target) both(a);
            sq += step;
            if (sq >= mu) sq -= mu;
            step += 2;
            if (step >= mu) step -= mu;
          }
          continue;
        }
        if (table.modulus != m) table.build(m);
        for (u64 k = table.offsets[target]; k < table.offsets[target + 1]; ++k) {
          const i64 v = static_cast<i64>(table.vals[k]);
          for (i64 a = s_lo + static_cast<i64>(mod_pos(v - s_lo, m)); a <= s_hi; a += m) both(a);
        }
      }
    }
  }
}

}  // namespace detail

/// Calls visit(const TorsorPoint&) once per point of T(bound), in unspecified
/// order.
template <class Visit>
void for_each_torsor_point(i64 bound, Visit&& visit) {
  if (bound < 1) return;
  for (const auto& base : eta_base_tuples(bound)) detail::torsor_points_over(base, bound, visit);
}

inline constexpr i64 kTorsorWidthCeiling = 1'000'000;

inline void check_torsor_bound(i64 bound) {
  if (bound > kTorsorWidthCeiling) throw OverflowError("torsor enumeration: height bound above 10^6 (64-bit safety margin)");
}

/// T(bound), sorted.
inline std::vector<TorsorPoint> enumerate_torsor(i64 bound, unsigned workers = 1) {
  check_torsor_bound(bound);
  if (bound < 1) return {};
  const auto bases = eta_base_tuples(bound);
  auto parts = parallel_map(bases.size(), workers, [&](std::size_t i) {
    std::vector<TorsorPoint> v;
    detail::torsor_points_over(bases[i], bound, [&v](const TorsorPoint& t) { v.push_back(t); });
    return v;
  });
  std::vector<TorsorPoint> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t count_torsor(i64 bound, unsigned workers = 1) {
  check_torsor_bound(bound);
  if (bound < 1) return 0;
  const auto bases = eta_base_tuples(bound);
  auto parts = parallel_map(bases.size(), workers, [&](std::size_t i) {
    std::size_t n = 0;
    detail::torsor_points_over(bases[i], bound, [&n](const TorsorPoint&) { ++n; });
    return n;
  });
  std::size_t total = 0;
  for (auto n : parts) total += n;
  return total;
}

/// Histogram: entry h is the number of points of T(bound) whose image has
/// height exactly h, so prefix sums give count_torsor for every smaller bound.
inline std::vector<std::size_t> torsor_height_histogram(i64 bound, unsigned workers = 1) {
  check_torsor_bound(bound);
  std::vector<std::size_t> hist(static_cast<std::size_t>(std::max<i64>(bound, 0)) + 1, 0);
  if (bound < 1) return hist;
  const auto bases = eta_base_tuples(bound);
  // One task per base tuple would allocate a histogram each; chunk instead.
  const std::size_t chunks = std::min<std::size_t>(bases.size(), 4 * std::max(1u, workers));
  auto parts = parallel_map(chunks, workers, [&](std::size_t c) {
    std::vector<std::size_t> h(hist.size(), 0);
    for (std::size_t i = c; i < bases.size(); i += chunks) {
      const auto& b = bases[i];
      // Every monomial is bounded by `bound` here, so 64 bits suffice.
      const i64 m0 = b[0] * b[0] * b[0] * b[0] * b[1] * b[1] * b[1] * b[2] * b[2] * b[3] * b[3] * b[3] * b[4] * b[4] * b[5] * b[5];
      const i64 m1 = b[0] * b[0] * b[0] * b[1] * b[1] * b[2] * b[2] * b[3] * b[3] * b[4] * b[5];
      const i64 m2 = b[0] * b[0] * b[1] * b[2] * b[3] * b[3] * b[4] * b[4];
      detail::torsor_points_over(b, bound, [&](const TorsorPoint& t) {
        const i64 e7 = t.eta[6], e8 = t.eta[7];
        auto a = [](i64 v) { return v < 0 ? -v : v; };
        const i64 ht = std::max({m0 * e7, a(m1 * t.alpha1), a(m2 * e7 * e7 * e8), a(e8 * t.alpha2)});
        ++h[static_cast<std::size_t>(ht)];
      });
    }
    return h;
  });
  for (const auto& h : parts)
    for (std::size_t i = 0; i < h.size(); ++i) hist[i] += h[i];
  return hist;
}

// ---------------------------------------------------------------------------
// Inverse map
// ---------------------------------------------------------------------------

class NotInU : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

// Constructive inverse. With (u, a, w) the primitive vector proportional to
// (x0, x1, x2) and z = -u w - a^2, the torsor coordinates satisfy
//   u = e1^2 e2^2 e3 e4 e5 e6^2 e7,  a = e1 e2 e3 e6 alpha1,  w = e5 e7^2 e8,
//   z = e1^2 e2^3 e3 e6^4 alpha2,
// and the successive gcds below peel off e5 e7, e7, e1 e2 e3 e6, e1 e2 e6,
// e2 e6 and e6.
inline TorsorPoint lift_constructive(const SurfacePoint& p) {
  const i128 g = gcd128(gcd128(p.x0, p.x1), p.x2);
  const i128 u = p.x0 / g, a = p.x1 / g, w = p.x2 / g;
  const i128 z = -u * w - a * a;

  const i128 g1 = gcd128(u, w);  // e5 e7
  const i128 e7 = gcd128(g1, w / g1);
  const i128 e5 = g1 / e7;
  const i128 e8 = w / (e5 * e7 * e7);
  const i128 u1 = u / g1;  // e1^2 e2^2 e3 e4 e6^2

  const i128 g2 = gcd128(gcd128(u1, a), z);  // e1 e2 e3 e6
  const i128 alpha1 = a / g2;
  const i128 u2 = u1 / g2;  // e1 e2 e4 e6
  const i128 z2 = z / g2;   // e1 e2^2 e6^3 alpha2

  const i128 g3 = gcd128(gcd128(g2, u2), z2);  // e1 e2 e6
  const i128 e3 = g2 / g3;
  const i128 e4 = u2 / g3;
  const i128 z3 = z2 / g3;  // e2 e6^2 alpha2

  const i128 g4 = gcd128(g3, z3);  // e2 e6
  const i128 e1 = g3 / g4;
  const i128 z4 = z3 / g4;  // e6 alpha2

  const i128 e6 = gcd128(g4, z4);
  const i128 e2 = g4 / e6;
  const i128 alpha2 = z4 / e6;

  TorsorPoint t;
  t.eta = {narrow(e1), narrow(e2), narrow(e3), narrow(e4), narrow(e5), narrow(e6), narrow(e7), narrow(e8)};
  t.alpha1 = narrow(alpha1);
  t.alpha2 = narrow(alpha2);
  return t;
}

inline bool is_preimage(const TorsorPoint& t, const SurfacePoint& p) {
  try {
    return satisfies_torsor_eq(t) && coprimality_ok(t) && t.eta[7] != 0 &&
           std::all_of(t.eta.begin(), t.eta.begin() + 7, [](i64 v) { return v > 0; }) &&
           detail::monomials(t).x0 == p.x0 && to_surface(t) == p;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace detail

/// The unique point of T(H(p)) mapping to p. Falls back to searching T(H(p))
/// if the gcd construction does not reproduce p.
inline TorsorPoint lift(const SurfacePoint& p) {
  if (on_line(p)) throw NotInU("lift: point lies on a line");
  if (p.x0 <= 0 || !on_surface(p.x0, p.x1, p.x2, p.x3)) throw std::invalid_argument("lift: point is not normalized on S");
  const TorsorPoint t = detail::lift_constructive(p);
  if (detail::is_preimage(t, p)) return t;
  for (const auto& cand : enumerate_torsor(height(p)))
    if (to_surface(cand) == p) return cand;
  throw std::logic_error("lift: no torsor preimage found");
}

/// CSV with header eta1,...,eta8,alpha1,alpha2; rows in the given order.
inline void write_torsor_csv(std::ostream& os, const std::vector<TorsorPoint>& points) {
  os << "eta1,eta2,eta3,eta4,eta5,eta6,eta7,eta8,alpha1,alpha2\n";
  for (const auto& t : points) {
    for (std::size_t i = 0; i < 8; ++i) os << t.eta[i] << ',';
    os << t.alpha1 << ',' << t.alpha2 << '\n';
  }
}

}  // namespace d5
