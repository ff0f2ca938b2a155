#include "d5/surface.hpp"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

using namespace d5;

TEST(Normalize, DividesByContent) {
  EXPECT_EQ(normalize(2, 0, 2, -2), (SurfacePoint{1, 0, 1, -1}));
  EXPECT_EQ(normalize(-1, 0, -1, 1), (SurfacePoint{1, 0, 1, -1}));
  EXPECT_EQ(normalize(1, 1, 1, -2), (SurfacePoint{1, 1, 1, -2}));
  EXPECT_EQ(normalize(-3, -3, 3, 0), (SurfacePoint{1, 1, -1, 0}));
}

TEST(Normalize, Errors) {
  EXPECT_THROW(normalize(0, 0, 0, 0), std::invalid_argument);
  EXPECT_THROW(normalize(1, 1, 1, 1), NotOnSurface);
  EXPECT_THROW(normalize(0, 1, 0, 0), OnLine);
  EXPECT_THROW(normalize(1, 0, 0, 0), OnLine);
  EXPECT_THROW(normalize(0, 0, 1, 5), OnLine);
}

TEST(OnLine, Examples) {
  EXPECT_EQ(on_line(1, 0, 0, 0), LineId::E8);
  EXPECT_EQ(on_line(0, 1, 0, 0), LineId::E7);
  EXPECT_EQ(on_line(0, 0, 1, 3), LineId::E6);
  EXPECT_FALSE(on_line(1, 0, 1, -1).has_value());
  EXPECT_EQ(line_name(LineId::E7), "E7");
}

TEST(Height, Examples) {
  EXPECT_EQ(height(SurfacePoint{1, 0, 1, -1}), 1);
  EXPECT_EQ(height(SurfacePoint{1, 1, 1, -2}), 2);
  EXPECT_EQ(height(SurfacePoint{1, 1, -1, 0}), 1);
}

TEST(Brute, HeightOne) {
  const std::vector<SurfacePoint> expected{{1, -1, -1, 0}, {1, 0, -1, -1}, {1, 0, 1, -1}, {1, 1, -1, 0}};
  EXPECT_EQ(brute_force_enumerate(1), expected);
  EXPECT_EQ(count_brute(1), 4u);
  EXPECT_EQ(count_brute(0), 0u);
}

TEST(Brute, HeightTwoContainsHeightOne) {
  const auto pts = brute_force_enumerate(2);
  std::set<SurfacePoint> s(pts.begin(), pts.end());
  EXPECT_TRUE(s.count({1, 1, 1, -2}));
  for (const auto& p : brute_force_enumerate(1)) EXPECT_TRUE(s.count(p));
}

// Literal triple loop from the definition, for cross-checking the pruned one.
static std::vector<SurfacePoint> naive(i64 B) {
  std::vector<SurfacePoint> out;
  for (i64 x0 = 1; x0 <= B; ++x0)
    for (i64 x1 = -B; x1 <= B; ++x1)
      for (i64 x2 = -B; x2 <= B; ++x2) {
        if (x2 == 0) continue;
        const i64 t = x0 * x2 * x2 + x2 * x1 * x1;
        if (t % (x0 * x0) != 0) continue;
        const i64 x3 = -t / (x0 * x0);
        if (x3 < -B || x3 > B) continue;
        if (gcd64s(gcd64s(x0, x1), gcd64s(x2, x3)) != 1) continue;
        out.push_back({x0, x1, x2, x3});
      }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Brute, MatchesLiteralLoop) {
  for (i64 B : {1, 2, 3, 7, 15, 40}) EXPECT_EQ(brute_force_enumerate(B), naive(B)) << "B=" << B;
}

TEST(Brute, Invariants) {
  const auto pts = brute_force_enumerate(100);
  EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
  EXPECT_EQ(std::adjacent_find(pts.begin(), pts.end()), pts.end());
  for (const auto& p : pts) {
    ASSERT_TRUE(on_surface(p.x0, p.x1, p.x2, p.x3));
    ASSERT_GT(p.x0, 0);
    ASSERT_NE(p.x2, 0);
    ASSERT_EQ(gcd64s(gcd64s(p.x0, p.x1), gcd64s(p.x2, p.x3)), 1);
    ASSERT_LE(height(p), 100);
    ASSERT_FALSE(on_line(p).has_value());
  }
}

TEST(Brute, Monotone) {
  std::size_t prev = 0;
  for (i64 B = 0; B <= 60; ++B) {
    const auto n = count_brute(B);
    EXPECT_GE(n, prev);
    prev = n;
  }
}

TEST(Brute, WorkerCountDoesNotChangeOutput) {
  EXPECT_EQ(brute_force_enumerate(80, 1), brute_force_enumerate(80, 3));
}

TEST(Brute, Ceiling) {
  EXPECT_THROW(brute_force_enumerate(kDefaultBruteCeiling + 1), BudgetExceeded);
  EXPECT_THROW(brute_force_enumerate(50, 1, 10), BudgetExceeded);
}

TEST(Csv, Format) {
  std::ostringstream os;
  write_points_csv(os, brute_force_enumerate(1));
  EXPECT_EQ(os.str(), "x0,x1,x2,x3,height\n1,-1,-1,0,1\n1,0,-1,-1,1\n1,0,1,-1,1\n1,1,-1,0,1\n");
}
