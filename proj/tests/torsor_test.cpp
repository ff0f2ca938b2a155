#include "d5/surface.hpp"
#include "d5/torsor.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace d5;

namespace {

TorsorPoint ones(i64 e8, i64 a1, i64 a2) {
  TorsorPoint t;
  t.eta[7] = e8;
  t.alpha1 = a1;
  t.alpha2 = a2;
  return t;
}

}  // namespace

TEST(ToSurface, Examples) {
  EXPECT_EQ(to_surface(ones(1, 0, -1)), (SurfacePoint{1, 0, 1, -1}));
  EXPECT_EQ(to_surface(ones(-1, 1, 0)), (SurfacePoint{1, 1, -1, 0}));
  EXPECT_EQ(to_surface(ones(-1, 0, 1)), (SurfacePoint{1, 0, -1, -1}));
}

TEST(ToSurface, Overflow) {
  TorsorPoint t = ones(1, 0, -1);
  t.eta[0] = i64{1} << 40;
  EXPECT_THROW(to_surface(t), OverflowError);
}

TEST(TorsorEq, Examples) {
  EXPECT_TRUE(satisfies_torsor_eq(ones(1, 0, -1)));
  EXPECT_FALSE(satisfies_torsor_eq(ones(1, 1, 0)));
  EXPECT_TRUE(satisfies_torsor_eq(ones(-1, 1, 0)));
}

TEST(Coprimality, Examples) {
  EXPECT_TRUE(coprimality_ok(ones(1, 17, -30)));
  TorsorPoint t = ones(1, 0, -1);
  t.eta[1] = 2;
  t.eta[2] = 2;
  EXPECT_FALSE(coprimality_ok(t));
  EXPECT_TRUE(coprimality_ok(ones(1, 1, 0)));
  t = ones(1, 1, 0);
  t.eta[1] = 2;
  EXPECT_FALSE(coprimality_ok(t));
  // Adjacent pairs may share a prime.
  t = ones(1, 1, 1);
  t.eta[0] = 2;
  t.eta[1] = 2;
  t.alpha2 = 1;
  t.alpha1 = 1;
  EXPECT_TRUE(coprimality_ok(t));
}

TEST(HeightOk, Examples) {
  EXPECT_TRUE(height_ok(ones(1, 0, -1), 1));
  EXPECT_FALSE(height_ok(ones(1, 0, -1), 0));
  EXPECT_FALSE(height_ok(ones(1, 3, 0), 2));
}

TEST(Graph, EtaPairs) {
  std::set<std::pair<int, int>> adj;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (CoprimalityGraph::adjacent(i, j)) adj.insert({i + 1, j + 1});
  const std::set<std::pair<int, int>> expected{{1, 2}, {1, 3}, {1, 4}, {2, 6}, {4, 5}};
  EXPECT_EQ(adj, expected);
  EXPECT_EQ(CoprimalityGraph::kEdges.size(), 12u);
  EXPECT_TRUE(CoprimalityGraph::adjacent(CoprimalityGraph::A1, CoprimalityGraph::A2));
  EXPECT_FALSE(CoprimalityGraph::adjacent(CoprimalityGraph::A1, CoprimalityGraph::E1));
}

// x_i(eta, alpha) satisfy the cubic whenever the torsor equation holds; no
// coprimality needed. alpha2 is solved from random eta8, alpha1 after scaling.
TEST(Identity, RandomTuples) {
  std::mt19937_64 rng(20240607);
  std::uniform_int_distribution<i64> small(1, 6), mid(-40, 40);
  int tested = 0;
  while (tested < 10000) {
    TorsorPoint t;
    for (int i = 0; i < 7; ++i) t.eta[static_cast<std::size_t>(i)] = small(rng);
    const i64 m = t.e(2) * t.e(6) * t.e(6);
    t.eta[7] = mid(rng) * m;
    t.alpha1 = mid(rng) * m;
    if (t.eta[7] == 0) continue;
    const i128 n = i128(t.e(4)) * t.e(5) * t.e(5) * t.e(7) * t.e(7) * t.e(7) * t.e(8) + i128(t.e(3)) * t.alpha1 * t.alpha1;
    ASSERT_EQ(n % m, 0);
    t.alpha2 = static_cast<i64>(-n / m);
    ASSERT_TRUE(satisfies_torsor_eq(t));
    const auto x = detail::monomials(t);
    ASSERT_EQ(surface_form(x.x0, x.x1, x.x2, x.x3), 0) << t;
    ++tested;
  }
}

TEST(Enumerate, HeightOne) {
  const auto ts = enumerate_torsor(1);
  ASSERT_EQ(ts.size(), 4u);
  std::vector<SurfacePoint> img;
  for (const auto& t : ts) img.push_back(to_surface(t));
  std::sort(img.begin(), img.end());
  EXPECT_EQ(img, brute_force_enumerate(1));
  EXPECT_TRUE(std::find(ts.begin(), ts.end(), ones(1, 0, -1)) != ts.end());
  EXPECT_EQ(count_torsor(0), 0u);
}

TEST(Enumerate, PointsAreValid) {
  const auto ts = enumerate_torsor(300);
  EXPECT_EQ(std::adjacent_find(ts.begin(), ts.end()), ts.end());
  for (const auto& t : ts) {
    ASSERT_TRUE(satisfies_torsor_eq(t)) << t;
    ASSERT_TRUE(coprimality_ok(t)) << t;
    ASSERT_TRUE(height_ok(t, 300)) << t;
    for (int i = 1; i <= 7; ++i) ASSERT_GT(t.e(i), 0);
    ASSERT_NE(t.e(8), 0);
  }
}

// Literal nested loops with no pruning beyond the height monomials.
TEST(Enumerate, MatchesLiteralLoops) {
  for (i64 B : {1, 5, 12, 30, 64}) {
    std::vector<TorsorPoint> ref;
    for (const auto& base : eta_base_tuples(B)) {
      TorsorPoint t;
      std::copy(base.begin(), base.end(), t.eta.begin());
      for (i64 e7 = 1; e7 <= B; ++e7) {
        t.eta[6] = e7;
        for (i64 e8 = -B; e8 <= B; ++e8) {
          if (e8 == 0) continue;
          t.eta[7] = e8;
          for (i64 a1 = -B; a1 <= B; ++a1) {
            t.alpha1 = a1;
            t.alpha2 = 0;
            const i128 n = -(torsor_form(t));
            const i64 m = t.e(2) * t.e(6) * t.e(6);
            if (n % m != 0) continue;
            t.alpha2 = static_cast<i64>(n / m);
            if (height_ok(t, B) && coprimality_ok(t)) ref.push_back(t);
          }
        }
      }
    }
    std::sort(ref.begin(), ref.end());
    EXPECT_EQ(enumerate_torsor(B), ref) << "B=" << B;
  }
}

TEST(Enumerate, WorkerCountDoesNotChangeOutput) {
  EXPECT_EQ(enumerate_torsor(500, 1), enumerate_torsor(500, 4));
  EXPECT_EQ(count_torsor(2000, 1), count_torsor(2000, 3));
}

TEST(Enumerate, Ceiling) { EXPECT_THROW(count_torsor(kTorsorWidthCeiling + 1), OverflowError); }

TEST(Bijection, CountsForEveryBoundUpTo200) {
  const auto hist = torsor_height_histogram(200);
  std::vector<std::size_t> brute_hist(201, 0);
  for (const auto& p : brute_force_enumerate(200)) ++brute_hist[static_cast<std::size_t>(height(p))];
  EXPECT_EQ(hist, brute_hist);
  for (i64 B : {1, 10, 20, 50, 100, 200}) EXPECT_EQ(count_torsor(B), count_brute(B)) << "B=" << B;
}

TEST(Enumerate, HistogramMatchesMaterializedHeights) {
  const i64 B = 3000;
  std::vector<std::size_t> direct(B + 1, 0);
  for (const auto& t : enumerate_torsor(B)) ++direct[static_cast<std::size_t>(height(to_surface(t)))];
  EXPECT_EQ(torsor_height_histogram(B, 1), direct);
  EXPECT_EQ(torsor_height_histogram(B, 3), direct);
  std::size_t prefix = 0;
  const auto h = torsor_height_histogram(20000);
  for (i64 b = 0; b <= 20000; ++b) {
    prefix += h[static_cast<std::size_t>(b)];
    if (b == 777 || b == 20000) EXPECT_EQ(prefix, count_torsor(b)) << b;
  }
}

TEST(Bijection, ImageIsBruteForceSetAndInjective) {
  std::vector<SurfacePoint> img;
  for (const auto& t : enumerate_torsor(200)) img.push_back(to_surface(t));
  std::sort(img.begin(), img.end());
  EXPECT_EQ(std::adjacent_find(img.begin(), img.end()), img.end());
  EXPECT_EQ(img, brute_force_enumerate(200));
}

TEST(Bijection, HeightCondition) {
  for (const auto& t : enumerate_torsor(150)) {
    const i64 H = height(to_surface(t));
    ASSERT_TRUE(height_ok(t, H));
    ASSERT_FALSE(height_ok(t, H - 1));
  }
}

TEST(Lift, Examples) {
  EXPECT_EQ(lift({1, 0, 1, -1}), ones(1, 0, -1));
  EXPECT_EQ(lift({1, 1, -1, 0}), ones(-1, 1, 0));
  EXPECT_EQ(to_surface(lift({1, 1, 1, -2})), (SurfacePoint{1, 1, 1, -2}));
  EXPECT_THROW(lift({0, 1, 0, 0}), NotInU);
}

TEST(Lift, RoundTripUpTo200) {
  const auto ts = enumerate_torsor(200);
  std::map<SurfacePoint, TorsorPoint> pre;
  for (const auto& t : ts) pre[to_surface(t)] = t;
  for (const auto& p : brute_force_enumerate(200)) {
    // The gcd chain alone must already invert the map.
    const TorsorPoint c = detail::lift_constructive(p);
    ASSERT_TRUE(detail::is_preimage(c, p)) << p;
    ASSERT_EQ(c, pre.at(p)) << p;
    const TorsorPoint t = lift(p);
    ASSERT_EQ(to_surface(t), p);
    ASSERT_TRUE(height_ok(t, height(p)));
  }
}

TEST(Csv, Format) {
  std::ostringstream os;
  write_torsor_csv(os, {ones(1, 0, -1)});
  EXPECT_EQ(os.str(), "eta1,eta2,eta3,eta4,eta5,eta6,eta7,eta8,alpha1,alpha2\n1,1,1,1,1,1,1,1,0,-1\n");
}
