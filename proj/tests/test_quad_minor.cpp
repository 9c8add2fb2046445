#include <gtest/gtest.h>

#include "lamina/quad_minor.hpp"

using namespace lamina;

namespace {

int mobius(int n) {
  int m = 1;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      m = -m;
    }
  return n > 1 ? -m : m;
}

// hyperbolic components of exact period n: (1/2) sum over divisors k of n of mu(n/k) 2^k
long components_of_period(int n) {
  long s = 0;
  for (int k = 1; k <= n; ++k)
    if (n % k == 0) s += mobius(n / k) * (1L << k);
  return s / 2;
}

// strip interior test via the polygon of the strip: a chord meets the open strip iff it is not
// contained in one closed complementary piece
bool meets_strip_oracle(const CriticalStrip& s, const Chord& c) {
  // complementary pieces of the strip are the two regions cut off by the boundary chords
  for (const auto& b : s.boundary_chords) {
    Arc outside = in_arc(s.arcs[0].from(), Arc(b.a(), b.b()), true) ? Arc(b.b(), b.a()) : Arc(b.a(), b.b());
    if (in_arc(c.a(), outside, true) && in_arc(c.b(), outside, true)) return false;
  }
  return true;
}

}  // namespace

TEST(Strip, Construction) {
  auto s = critical_strip(make_chord(1, 7, 2, 7));
  EXPECT_EQ(s.boundary_chords, (std::vector<Chord>{make_chord(1, 14, 9, 14), make_chord(1, 7, 4, 7)}));
  EXPECT_EQ(s.boundary_chords[0].length(), s.boundary_chords[1].length());
  EXPECT_THROW(critical_strip(make_chord(1, 3, 2, 3)), Error);
  EXPECT_TRUE(critical_strip(Chord(Angle(0, 1), Angle(0, 1))).degenerate());
}

TEST(Strip, InteriorMatchesComplementOracle) {
  auto s = critical_strip(make_chord(1, 7, 2, 7));
  for (long p = 0; p < 56; ++p)
    for (long q = p + 1; q < 56; ++q) {
      Chord c(Angle(p, 56), Angle(q, 56));
      EXPECT_EQ(s.meets_interior(c), meets_strip_oracle(s, c)) << c;
    }
}

TEST(Strip, Tests) {
  auto r = strip_test(make_chord(1, 7, 2, 7), 16);
  EXPECT_TRUE(r.passes);
  EXPECT_TRUE(r.exact);
  auto f = strip_test(make_chord(2, 7, 4, 7), 16);
  EXPECT_FALSE(f.passes);
  ASSERT_TRUE(f.failing_n.has_value());
  EXPECT_EQ(*f.failing_n, 1);
  EXPECT_TRUE(strip_test(Chord(Angle(1, 3), Angle(1, 3)), 4).passes);
}

TEST(Minor, OfRabbitAndBasilica) {
  auto rabbit = pullback_build(portrait_from_sets(2, {minor_quad(make_chord(1, 7, 2, 7))}), 6);
  auto mi = minor_of(rabbit);
  EXPECT_EQ(mi.minor, make_chord(1, 7, 2, 7));
  EXPECT_EQ(mi.majors, (std::vector<Chord>{make_chord(1, 14, 9, 14), make_chord(1, 7, 4, 7)}));

  ConvexSet quad{Angle(1, 6), Angle(1, 3), Angle(2, 3), Angle(5, 6)};
  auto basilica = pullback_build(portrait_from_sets(2, {quad}), 5);
  EXPECT_EQ(minor_of(basilica).minor, make_chord(1, 3, 2, 3));

  FiniteLamination diam(2, {make_chord(0, 1, 1, 2)});
  EXPECT_TRUE(minor_of(diam).minor.degenerate());
  EXPECT_THROW(minor_of(FiniteLamination(2)), Error);
  FiniteLamination bad(2, {make_chord(0, 1, 1, 4), make_chord(1, 8, 3, 8)});
  EXPECT_THROW(minor_of(bad), Error);
}

TEST(Qml, CountsMatchComponentFormula) {
  long expected = 0;
  for (int n = 1; n <= 6; ++n) expected += components_of_period(n);
  // the main cardioid has a degenerate minor and the period two minor has length exactly 1/3
  auto q = qml_enumerate(6);
  EXPECT_EQ(static_cast<long>(q.size()), expected - 2);
  EXPECT_TRUE(std::count(q.begin(), q.end(), make_chord(1, 7, 2, 7)));
  for (int n = 1; n <= 6; ++n) {
    auto qn = qml_enumerate(n);
    EXPECT_FALSE(std::count(qn.begin(), qn.end(), make_chord(2, 7, 4, 7)));
  }
  EXPECT_FALSE(find_linked_pair(q).has_value());
}

TEST(Qml, LiteralReadingDiffers) {
  QmlOptions opt;
  opt.literal_image = true;
  auto lit = qml_enumerate(3, opt);
  EXPECT_TRUE(std::count(lit.begin(), lit.end(), make_chord(2, 7, 4, 7)));
}

TEST(Qml, MajorsAreLongestAndAvoidTheirStrip) {
  for (const auto& m : qml_enumerate(6)) {
    auto lam = pullback_build(portrait_from_sets(2, {minor_quad(m)}), 4);
    auto mi = minor_of(lam);
    ASSERT_EQ(mi.minor, m);
    ASSERT_EQ(mi.majors.size(), 2u);
    auto sib = sibling_collections(2, mi.majors[0]);
    EXPECT_TRUE(std::any_of(sib.begin(), sib.end(), [&](const ChordCollection& s) { return s[1] == mi.majors[1]; }));
    // forward images of a major stay out of the open region between it and its sibling
    auto s = critical_strip(m);
    for (const auto& M : mi.majors) {
      Chord cur = M;
      for (int n = 1; n <= 12; ++n) {
        cur = chord_image(2, cur);
        EXPECT_FALSE(s.meets_interior(cur)) << M << " n=" << n;
      }
    }
  }
}

TEST(Qml, CubicNegativeControl) {
  Chord N(Angle(114, 2184), Angle(921, 2184));
  Chord Np(Angle(193, 2184), Angle(842, 2184));
  Chord sM(Angle(894, 2184), Angle(843, 2184));
  bool sibling = false;
  for (auto& coll : sibling_collections(3, N))
    if (std::count(coll.begin(), coll.end(), Np)) sibling = true;
  EXPECT_TRUE(sibling);
  EXPECT_EQ(chord_image_n(3, sM, 3), N);
  Arc strip_side(Angle(842, 2184), Angle(921, 2184));
  EXPECT_TRUE(in_arc(sM.a(), strip_side));
  EXPECT_TRUE(in_arc(sM.b(), strip_side));
}
