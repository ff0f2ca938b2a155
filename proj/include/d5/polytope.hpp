#pragma once

// Exact volumes of small rational polytopes: vertex enumeration over
// d-subsets of constraints, then a pulling triangulation from the least vertex.

#include "d5/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

namespace d5 {

class DegeneratePolytope : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using RVec = std::vector<Rational>;

struct Halfspace {
  enum Sense { LE, GE };
  RVec coeffs;
  Rational offset;
  Sense sense = LE;

  /// coeffs . x compared against offset.
  bool contains(const RVec& x) const {
    Rational s = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) s += coeffs[i] * x[i];
    return sense == LE ? s <= offset : s >= offset;
  }
  bool tight(const RVec& x) const {
    Rational s = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) s += coeffs[i] * x[i];
    return s == offset;
  }
};

struct Polytope {
  std::size_t dim = 0;
  std::vector<Halfspace> halfspaces;

  void add(RVec c, Rational off, Halfspace::Sense s) {
    if (c.size() != dim) throw std::invalid_argument("Polytope::add: wrong coefficient length");
    halfspaces.push_back({std::move(c), std::move(off), s});
  }
  bool contains(const RVec& x) const {
    return std::all_of(halfspaces.begin(), halfspaces.end(), [&](const Halfspace& h) { return h.contains(x); });
  }
};

namespace detail {

// Solves A x = b; nullopt unless the solution is unique.
inline std::optional<RVec> solve_unique(std::vector<RVec> A, RVec b) {
  const std::size_t n = A.size(), d = A.empty() ? 0 : A[0].size();
  std::size_t row = 0;
  std::vector<std::size_t> pivcol;
  for (std::size_t c = 0; c < d && row < n; ++c) {
    std::size_t p = row;
    while (p < n && A[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(A[p], A[row]);
    std::swap(b[p], b[row]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || A[r][c] == 0) continue;
      const Rational f = A[r][c] / A[row][c];
      for (std::size_t k = c; k < d; ++k) A[r][k] -= f * A[row][k];
      b[r] -= f * b[row];
    }
    pivcol.push_back(c);
    ++row;
  }
  if (row != d) return std::nullopt;
  RVec x(d);
  for (std::size_t r = 0; r < d; ++r) x[pivcol[r]] = b[r] / A[r][pivcol[r]];
  return x;
}

inline std::size_t rank_of(std::vector<RVec> A) {
  if (A.empty()) return 0;
  const std::size_t n = A.size(), d = A[0].size();
  std::size_t row = 0;
  for (std::size_t c = 0; c < d && row < n; ++c) {
    std::size_t p = row;
    while (p < n && A[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(A[p], A[row]);
    for (std::size_t r = row + 1; r < n; ++r) {
      if (A[r][c] == 0) continue;
      const Rational f = A[r][c] / A[row][c];
      for (std::size_t k = c; k < d; ++k) A[r][k] -= f * A[row][k];
    }
    ++row;
  }
  return row;
}

inline Rational determinant(std::vector<RVec> A) {
  const std::size_t n = A.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && A[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(A[p], A[c]);
      det = -det;
    }
    det *= A[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (A[r][c] == 0) continue;
      const Rational f = A[r][c] / A[c][c];
      for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
    }
  }
  return det;
}

// Calls fn on every k-subset of {0..n-1}.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> idx(k);
  auto rec = [&](auto&& self, std::size_t start, std::size_t depth) -> void {
    if (depth == k) {
      fn(idx);
      return;
    }
    for (std::size_t i = start; i + (k - depth) <= n; ++i) {
      idx[depth] = i;
      self(self, i + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
}

inline std::size_t affine_dim(const std::vector<RVec>& pts, const std::vector<std::size_t>& ids) {
  if (ids.size() <= 1) return 0;
  std::vector<RVec> diffs;
  for (std::size_t i = 1; i < ids.size(); ++i) {
    RVec v = pts[ids[i]];
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= pts[ids[0]][k];
    diffs.push_back(std::move(v));
  }
  return rank_of(std::move(diffs));
}

}  // namespace detail

/// Vertices (sorted, exact). Throws DegeneratePolytope if the set is empty,
/// not pointed, or unbounded.
inline std::vector<RVec> vertices(const Polytope& P) {
  const std::size_t d = P.dim, m = P.halfspaces.size();
  std::set<RVec> found;
  detail::for_each_subset(m, d, [&](const std::vector<std::size_t>& S) {
    std::vector<RVec> A;
    RVec b;
    for (auto i : S) {
      A.push_back(P.halfspaces[i].coeffs);
      b.push_back(P.halfspaces[i].offset);
    }
    auto x = detail::solve_unique(std::move(A), std::move(b));
    if (x && P.contains(*x)) found.insert(*x);
  });
  if (found.empty()) throw DegeneratePolytope("vertices: no vertices (empty or not pointed)");
  // A nonzero recession direction would have an extreme ray cut out by d-1
  // independent tight homogeneous constraints.
  if (d >= 1) {
    bool unbounded = false;
    detail::for_each_subset(m, d - 1, [&](const std::vector<std::size_t>& S) {
      if (unbounded) return;
      std::vector<RVec> A;
      for (auto i : S) A.push_back(P.halfspaces[i].coeffs);
      if (detail::rank_of(A) != d - 1) return;
      // Null vector: fix one free coordinate by adding a unit row.
      for (std::size_t j = 0; j < d; ++j) {
        auto B = A;
        RVec e(d, 0);
        e[j] = 1;
        B.push_back(e);
        RVec rhs(d, 0);
        rhs[d - 1] = 1;
        auto y = detail::solve_unique(B, rhs);
        if (!y) continue;
        for (int sgn : {1, -1}) {
          bool ok = true;
          for (const auto& h : P.halfspaces) {
            Rational s = 0;
            for (std::size_t k = 0; k < d; ++k) s += h.coeffs[k] * (*y)[k];
            s *= sgn;
            if ((h.sense == Halfspace::LE && s > 0) || (h.sense == Halfspace::GE && s < 0)) ok = false;
          }
          if (ok) unbounded = true;
        }
        break;
      }
    });
    if (unbounded) throw DegeneratePolytope("vertices: polytope is unbounded");
  }
  return {found.begin(), found.end()};
}

namespace detail {

// Pulling triangulation of the face with vertex ids `face` (affine dimension k):
// cone from its least vertex over the facets that avoid it.
inline void triangulate_face(const Polytope& P, const std::vector<RVec>& pts, const std::vector<std::size_t>& face,
                             std::size_t k, std::vector<std::size_t>& prefix,
                             std::vector<std::vector<std::size_t>>& out) {
  if (k == 0) {
    prefix.push_back(face[0]);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  const std::size_t apex = face[0];  // ids are sorted, so this is the least vertex
  std::set<std::vector<std::size_t>> facets;
  for (const auto& h : P.halfspaces) {
    std::vector<std::size_t> w;
    for (auto v : face)
      if (h.tight(pts[v])) w.push_back(v);
    if (w.size() == face.size() || w.size() < k) continue;
    if (std::find(w.begin(), w.end(), apex) != w.end()) continue;
    if (affine_dim(pts, w) != k - 1) continue;
    facets.insert(std::move(w));
  }
  prefix.push_back(apex);
  for (const auto& f : facets) triangulate_face(P, pts, f, k - 1, prefix, out);
  prefix.pop_back();
}

}  // namespace detail

/// Full-dimensional simplices (as vertex lists) triangulating P.
inline std::vector<std::vector<RVec>> triangulate(const Polytope& P) {
  const auto pts = vertices(P);
  std::vector<std::size_t> all(pts.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (detail::affine_dim(pts, all) != P.dim) throw DegeneratePolytope("triangulate: polytope is not full-dimensional");
  std::vector<std::vector<std::size_t>> simplices;
  std::vector<std::size_t> prefix;
  detail::triangulate_face(P, pts, all, P.dim, prefix, simplices);
  std::vector<std::vector<RVec>> out;
  for (const auto& s : simplices) {
    std::vector<RVec> v;
    for (auto i : s) v.push_back(pts[i]);
    out.push_back(std::move(v));
  }
  return out;
}

inline Rational simplex_volume(const std::vector<RVec>& s) {
  const std::size_t d = s.size() - 1;
  std::vector<RVec> M;
  for (std::size_t i = 1; i <= d; ++i) {
    RVec r = s[i];
    for (std::size_t k = 0; k < d; ++k) r[k] -= s[0][k];
    M.push_back(std::move(r));
  }
  Rational det = detail::determinant(std::move(M));
  if (det < 0) det = -det;
  BigInt fact = 1;
  for (std::size_t i = 2; i <= d; ++i) fact *= i;
  return det / Rational(fact);
}

/// Exact Lebesgue volume.
inline Rational volume(const Polytope& P) {
  Rational v = 0;
  for (const auto& s : triangulate(P)) v += simplex_volume(s);
  return v;
}

/// Restriction of P to the hyperplane eq . x = rhs, with coordinate `pivot`
/// eliminated. Volumes of the result are in the measure dx / |eq[pivot]|
/// on the remaining coordinates.
inline Polytope eliminate(const Polytope& P, const RVec& eq, const Rational& rhs, std::size_t pivot) {
  if (eq[pivot] == 0) throw std::invalid_argument("eliminate: zero pivot");
  Polytope Q;
  Q.dim = P.dim - 1;
  for (const auto& h : P.halfspaces) {
    // x_pivot = (rhs - sum_{j != pivot} eq_j x_j) / eq_pivot
    const Rational f = h.coeffs[pivot] / eq[pivot];
    RVec c;
    for (std::size_t j = 0; j < P.dim; ++j)
      if (j != pivot) c.push_back(h.coeffs[j] - f * eq[j]);
    Q.add(std::move(c), h.offset - f * rhs, h.sense);
  }
  return Q;
}

inline Rational volume_on_hyperplane(const Polytope& P, const RVec& eq, const Rational& rhs, std::size_t pivot) {
  Rational c = eq[pivot];
  if (c < 0) c = -c;
  return volume(eliminate(P, eq, rhs, pivot)) / c;
}

/// The six-dimensional polytope x >= 0, 6x1+5x2+3x3+4x4+2x5+4x6 >= 1,
/// 4x1+3x2+2x3+3x4+2x5+2x6 <= 1.
inline Polytope alpha_polytope() {
  Polytope P;
  P.dim = 6;
  for (std::size_t i = 0; i < 6; ++i) {
    RVec e(6, 0);
    e[i] = 1;
    P.add(e, 0, Halfspace::GE);
  }
  P.add({6, 5, 3, 4, 2, 4}, 1, Halfspace::GE);
  P.add({4, 3, 2, 3, 2, 2}, 1, Halfspace::LE);
  return P;
}

/// The same polytope before eliminating x7: x in R^7_{>=0} with
/// 2x1+2x2+x3+x4+2x6-x7 >= 0 on the hyperplane 4x1+3x2+2x3+3x4+2x5+2x6+x7 = 1.
inline Polytope alpha_polytope_7d() {
  Polytope P;
  P.dim = 7;
  for (std::size_t i = 0; i < 7; ++i) {
    RVec e(7, 0);
    e[i] = 1;
    P.add(e, 0, Halfspace::GE);
  }
  P.add({2, 2, 1, 1, 0, 2, -1}, 0, Halfspace::GE);
  return P;
}

inline const RVec& alpha_hyperplane() {
  static const RVec h{4, 3, 2, 3, 2, 2, 1};
  return h;
}

inline Rational alpha_exact() { return volume(alpha_polytope()); }

inline Rational alpha_exact_7d() { return volume_on_hyperplane(alpha_polytope_7d(), alpha_hyperplane(), 1, 6); }

inline Polytope unit_simplex(std::size_t d) {
  Polytope P;
  P.dim = d;
  for (std::size_t i = 0; i < d; ++i) {
    RVec e(d, 0);
    e[i] = 1;
    P.add(e, 0, Halfspace::GE);
  }
  P.add(RVec(d, 1), 1, Halfspace::LE);
  return P;
}

struct McVolume {
  double estimate = 0;
  double stderr_ = 0;
  std::size_t hits = 0, samples = 0;
};

/// Rejection sampling of the alpha polytope inside its bounding box
/// prod [0, 1/c_i] (c from the upper constraint), of volume 1/288.
inline McVolume alpha_monte_carlo(std::size_t samples, std::uint64_t seed) {
  static constexpr double up[6] = {4, 3, 2, 3, 2, 2}, lo[6] = {6, 5, 3, 4, 2, 4};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    double a = 0, b = 0;
    for (int i = 0; i < 6; ++i) {
      const double x = u(rng) / up[i];
      a += up[i] * x;
      b += lo[i] * x;
    }
    if (a <= 1 && b >= 1) ++hits;
  }
  const double box = 1.0 / 288, p = static_cast<double>(hits) / static_cast<double>(samples);
  return {box * p, box * std::sqrt(p * (1 - p) / static_cast<double>(samples)), hits, samples};
}

}  // namespace d5
