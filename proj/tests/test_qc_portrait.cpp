#include <gtest/gtest.h>

#include "lamina/qc_portrait.hpp"

using namespace lamina;

namespace {

Quad4 q4(std::initializer_list<std::pair<long, long>> v) {
  Quad4 out;
  std::size_t i = 0;
  for (auto [p, q] : v) out[i++] = Angle(p, q);
  return out;
}

// strong linkage by the hole criterion: no hole of either hull holds two vertices of the other,
// after matching the multiplicities through an explicit numbering search over all 8-sequences
bool strongly_linked_oracle(const CriticalQuadrilateral& A, const CriticalQuadrilateral& B) {
  std::vector<CriticalQuadrilateral> pa = presentations(A), pb = presentations(B);
  for (auto& x : pa)
    for (auto& y : pb) {
      auto va = x.vertices(), vb = y.vertices();
      std::sort(va.begin(), va.end());
      std::sort(vb.begin(), vb.end());
      // merge both multisets in circular order and look for a perfect alternation
      std::vector<std::pair<Angle, int>> all;
      for (auto& a : va) all.push_back({a, 0});
      for (auto& b : vb) all.push_back({b, 1});
      std::sort(all.begin(), all.end());
      std::vector<int> idx(8);
      std::iota(idx.begin(), idx.end(), 0);
      // ties may be ordered either way: try every permutation that keeps angles sorted
      do {
        bool sorted = true;
        for (int i = 0; i + 1 < 8 && sorted; ++i)
          if (all[idx[i + 1]].first < all[idx[i]].first) sorted = false;
        if (!sorted) continue;
        for (int start = 0; start < 2; ++start) {
          bool alt = true;
          for (int i = 0; i < 8 && alt; ++i)
            if (all[idx[i]].second != (i + start) % 2) alt = false;
          if (alt) return true;
        }
      } while (std::next_permutation(idx.begin(), idx.end()));
    }
  return false;
}

}  // namespace

TEST(Quad, MakeAndClassify) {
  auto c = make_quadrilateral(q4({{1, 3}, {5, 12}, {2, 3}, {3, 4}}), 3);
  EXPECT_EQ(c.classify(), QuadKind::collapsing);
  EXPECT_EQ(Chord(sigma(3, c.vertices()[0]), sigma(3, c.vertices()[1])), make_chord(0, 1, 1, 4));
  EXPECT_EQ(make_quadrilateral(q4({{0, 1}, {0, 1}, {1, 3}, {1, 3}}), 3).classify(), QuadKind::critical_leaf);
  EXPECT_EQ(make_quadrilateral(q4({{0, 1}, {1, 3}, {1, 3}, {2, 3}}), 3).classify(), QuadKind::all_critical_triangle);
  EXPECT_EQ(make_quadrilateral(q4({{0, 1}, {1, 4}, {1, 2}, {3, 4}}), 4).classify(), QuadKind::all_critical_quadrilateral);
  EXPECT_THROW(make_quadrilateral(q4({{0, 1}, {1, 4}, {1, 2}, {3, 4}}), 3), Error);
  EXPECT_THROW(make_quadrilateral(q4({{0, 1}, {2, 3}, {1, 3}, {1, 2}}), 3), Error);
}

TEST(Quad, RotationsAreEqual) {
  auto a = make_quadrilateral(q4({{1, 3}, {5, 12}, {2, 3}, {3, 4}}), 3);
  auto b = make_quadrilateral(q4({{2, 3}, {3, 4}, {1, 3}, {5, 12}}), 3);
  auto c = make_quadrilateral(q4({{5, 12}, {2, 3}, {3, 4}, {1, 3}}), 3);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}

TEST(StrongLink, KnownCases) {
  auto leaf = make_quadrilateral(q4({{0, 1}, {0, 1}, {1, 3}, {1, 3}}), 3);
  EXPECT_TRUE(strongly_linked(leaf, leaf).has_value());
  auto tri = make_quadrilateral(q4({{0, 1}, {1, 3}, {1, 3}, {2, 3}}), 3);
  auto edge = make_quadrilateral(q4({{1, 3}, {1, 3}, {2, 3}, {2, 3}}), 3);
  EXPECT_TRUE(strongly_linked(tri, edge).has_value());
  auto a = make_quadrilateral(q4({{8, 24}, {10, 24}, {16, 24}, {18, 24}}), 3);
  auto b = make_quadrilateral(q4({{9, 24}, {11, 24}, {17, 24}, {19, 24}}), 3);
  auto w = strongly_linked(a, b);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->a, q4({{8, 24}, {10, 24}, {16, 24}, {18, 24}}));
  EXPECT_EQ(w->b, q4({{9, 24}, {11, 24}, {17, 24}, {19, 24}}));
  auto far = make_quadrilateral(q4({{1, 24}, {2, 24}, {9, 24}, {10, 24}}), 3);
  EXPECT_FALSE(strongly_linked(a, far).has_value());
}

TEST(StrongLink, MatchesAlternationOracleAndIsSymmetric) {
  std::vector<CriticalQuadrilateral> qs;
  for (long i = 0; i < 6; ++i)
    for (long j = i; j < 9 && j < i + 4; ++j) {
      Angle x(i, 36), y(j, 36);
      qs.push_back(make_quadrilateral({x, y, x + Q(1, 3), y + Q(1, 3)}, 3));
      qs.push_back(make_quadrilateral({x, y, x + Q(1, 3), y + Q(2, 3)}, 3));
    }
  for (auto& a : qs)
    for (auto& b : qs) {
      bool s = strongly_linked(a, b).has_value();
      EXPECT_EQ(s, strongly_linked(b, a).has_value());
      EXPECT_EQ(s, strongly_linked_oracle(a, b)) << a.str() << " " << b.str();
    }
}

TEST(StrongLink, ClosedUnderLimits) {
  // a_n = [x_n, x_n + 1/36, x_n+1/3, ...] converging to a degenerate limit stays linked with the fixed quad
  auto fixed = make_quadrilateral(q4({{1, 72}, {3, 72}, {25, 72}, {27, 72}}), 3);
  for (long n = 2; n <= 40; ++n) {
    Angle x(Q(1, 72) - Q(1, 72 * n)), y(Q(2, 72) + Q(1, 72 * n));
    auto qn = make_quadrilateral({x, y, x + Q(1, 3), y + Q(1, 3)}, 3);
    EXPECT_TRUE(strongly_linked(qn, fixed).has_value());
  }
  auto limit = make_quadrilateral({Angle(1, 72), Angle(2, 72), Angle(25, 72), Angle(26, 72)}, 3);
  EXPECT_TRUE(strongly_linked(limit, fixed).has_value());
}

TEST(Portrait, Validation) {
  Angle a(0, 1), b(1, 4), c(1, 2), dd(3, 4);
  QcPortrait p4{4, {make_quadrilateral({a, b, b, c}, 4), make_quadrilateral({a, a, c, c}, 4), make_quadrilateral({a, c, dd, dd}, 4)}};
  EXPECT_TRUE(validate_qc_portrait(p4).valid);
  QcPortrait ok{3, {leaf_quad(make_chord(0, 1, 1, 3), 3), leaf_quad(make_chord(0, 1, 2, 3), 3)}};
  EXPECT_TRUE(validate_qc_portrait(ok).valid);
  QcPortrait dup{3, {leaf_quad(make_chord(0, 1, 1, 3), 3), leaf_quad(make_chord(0, 1, 1, 3), 3)}};
  EXPECT_FALSE(validate_qc_portrait(dup).valid);
}

TEST(Portrait, ExistsOnBuiltLaminations) {
  auto lam = pullback_build(3, {make_chord(0, 1, 1, 3), make_chord(0, 1, 2, 3)}, 3);
  auto p = qc_portrait_from(lam);
  ASSERT_TRUE(p.has_value());
  EXPECT_TRUE(validate_qc_portrait(*p).valid);
  QcPortrait rq{2, {make_quadrilateral(q4({{1, 14}, {1, 7}, {4, 7}, {9, 14}}), 2)}};
  auto rabbit = pullback_build(pullback_portrait(rq), 4);
  auto pr = qc_portrait_from(rabbit);
  ASSERT_TRUE(pr.has_value());
  EXPECT_EQ(pr->quads, rq.quads);
  EXPECT_TRUE(validate_qc_portrait(*pr).valid);
}

TEST(Pattern, MultiplicityAndOrder) {
  ConvexSet T{Angle(0, 1), Angle(1, 3), Angle(2, 3)};
  ConvexSet e{Angle(0, 1), Angle(1, 3)};
  CriticalPattern tt{3, {T, T}};
  EXPECT_TRUE(tt.valid());
  CriticalPattern te{3, {T, e}};
  EXPECT_FALSE(te.valid());
  CriticalPattern ee{3, {e, ConvexSet{Angle(1, 6), Angle(1, 2)}}};
  EXPECT_TRUE(ee.valid());
  CriticalPattern small{3, {e, e}};
  EXPECT_TRUE(precedes(small, tt));
  EXPECT_FALSE(precedes(tt, small));
}

TEST(Tuning, QuadUnchangedTriangleRejected) {
  ConvexSet quad{Angle(1, 14), Angle(1, 7), Angle(4, 7), Angle(9, 14)};
  auto lam = pullback_build(portrait_from_sets(2, {quad}), 3);
  for (auto& g : gaps(lam))
    if (g.finite() && g.vertices.size() == 4 && gap_degree(2, g) == 2) {
      auto [lam2, q] = tune_insert(lam, g);
      EXPECT_EQ(lam2, lam);
      EXPECT_EQ(q.classify(), QuadKind::collapsing);
    }
  Gap tri{{Angle(0, 1), Angle(1, 3), Angle(2, 3)}, {false, false, false}};
  EXPECT_THROW(tune_insert(FiniteLamination(3), tri), Error);
}

TEST(Tuning, HexagonGetsQuadrilateral) {
  // the hexagon maps two to one onto the triangle {1/6, 2/9, 5/18}
  ConvexSet hex{Angle(1, 18), Angle(2, 27), Angle(5, 54), Angle(7, 18), Angle(11, 27), Angle(23, 54)};
  Chord leaf(Angle(1, 2), Angle(5, 6));
  auto lam = pullback_build(portrait_from_sets(3, {hex, ConvexSet(leaf)}), 3);
  EXPECT_FALSE(check_unlinked(lam).has_value());
  bool seen = false;
  for (auto& g : gaps(lam)) {
    if (!g.finite() || g.hull() != hex) continue;
    seen = true;
    EXPECT_EQ(gap_degree(3, g), 2);
    for (std::size_t ch = 0; ch < 6; ++ch) {
      auto [lam2, q] = tune_insert(lam, g, ch);
      EXPECT_EQ(q.classify(), QuadKind::collapsing);
      EXPECT_FALSE(check_unlinked(lam2).has_value());
      int shared = 0;
      for (auto& e : q.hull().edges())
        if (hex.is_edge(e)) ++shared;
      EXPECT_EQ(shared, 2);
      for (auto& e : q.hull().edges()) EXPECT_TRUE(lam2.contains(chord_image(3, e)));
    }
  }
  EXPECT_TRUE(seen);
}

TEST(ClassifyPair, ReferenceExamples) {
  auto lam = pullback_build(3, {make_chord(0, 1, 1, 3), make_chord(1, 3, 2, 3)}, 2);
  QcPortrait p{3, {leaf_quad(make_chord(0, 1, 1, 3), 3), leaf_quad(make_chord(1, 3, 2, 3), 3)}};
  EXPECT_EQ(classify_pair(lam, p, lam, p).relation, PairRelation::essentially_equal);

  FiniteLamination lam2(3, {make_chord(0, 1, 1, 2), make_chord(0, 1, 1, 3), make_chord(0, 1, 2, 3)});
  QcPortrait p2{3, {leaf_quad(make_chord(0, 1, 1, 3), 3), leaf_quad(make_chord(0, 1, 2, 3), 3)}};
  auto r = classify_pair(lam, p, lam2, p2);
  EXPECT_EQ(r.relation, PairRelation::neither);
  EXPECT_EQ(classify_pair(lam2, p2, lam, p).relation, PairRelation::neither);
}
