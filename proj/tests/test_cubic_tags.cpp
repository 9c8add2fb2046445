#include <gtest/gtest.h>

#include "lamina/accordion.hpp"
#include "lamina/sampling.hpp"

using namespace lamina;

namespace {

Angle A(long p, long q) { return Angle(p, q); }

// co-critical set by scanning every point whose denominator could carry a preimage of a vertex image
ConvexSet coc_oracle(const ConvexSet& c) {
  Z den = 1;
  for (const auto& v : c.vertices()) den = lcm(den, v.den());
  den *= 3;
  long n = den.get_si();
  std::vector<Q> len;
  const auto& v = c.vertices();
  // long hole: the gap between consecutive vertices, measured directly
  std::size_t best = 0;
  Q best_len = -1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Q l = v[(i + 1) % v.size()].value() - v[i].value();
    if (l <= 0) l += 1;
    if (l > best_len) {
      best_len = l;
      best = i;
    }
  }
  Q from = v[best].value(), to = from + best_len;
  std::set<Angle> img;
  for (const auto& x : v) img.insert(Angle(3 * x.value()));
  std::vector<Angle> out;
  for (long k = 0; k < n; ++k) {
    Q x(k, n);
    x.canonicalize();
    Q lifted = x < from ? x + 1 : x;
    if (!(lifted > from && lifted < to)) continue;
    Angle a(x);
    if (img.count(Angle(3 * x))) out.push_back(a);
  }
  return ConvexSet(out);
}

// vertices of the co-critical quadrilaterals alternate as a+1/3 < x+1/3 < b+1/3 < y+1/3 <= a+2/3 < ...
bool interleave_oracle(const Chord& l1, const Chord& l2) {
  Angle a = l1.a(), b = l1.b(), x = l2.a(), y = l2.b();
  // put a first in the short window holding all four endpoints
  std::vector<Angle> all{a, b, x, y};
  Angle start = all[0];
  for (const auto& s : all) {
    bool ok = true;
    for (const auto& t : all) ok = ok && fwd(s, t) <= Q(1, 3);
    if (ok) start = s;
  }
  std::sort(all.begin(), all.end(), [&](const Angle& p, const Angle& q) { return fwd(start, p) < fwd(start, q); });
  std::vector<Angle> seq;
  for (const Q& shift : {Q(1, 3), Q(2, 3)})
    for (const auto& p : all) seq.push_back(p + shift);
  Q total = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    Q step = fwd(seq[i], seq[(i + 1) % seq.size()]);
    if (step == 0 && i % 4 != 3) return false;
    total += step;
  }
  return total == 1;
}

}  // namespace

TEST(Coc, ReferenceValues) {
  ConvexSet t{A(0, 1), A(1, 3), A(2, 3)};
  EXPECT_EQ(cocritical_set(t), t);
  EXPECT_EQ(cocritical_set(ConvexSet{A(0, 1), A(1, 3)}), (ConvexSet{A(2, 3)}));
  EXPECT_EQ(cocritical_set(ConvexSet{A(0, 1), A(1, 12)}), (ConvexSet{A(1, 3), A(5, 12), A(2, 3), A(3, 4)}));
  EXPECT_EQ(cocritical_set(ConvexSet{A(1, 3), A(5, 12), A(2, 3), A(3, 4)}), (ConvexSet{A(0, 1), A(1, 12)}));
  EXPECT_EQ(cocritical_set(ConvexSet{A(0, 1), A(1, 3)}, {true}), t);
  EXPECT_THROW(cocritical_set(ConvexSet{A(0, 1), A(1, 2)}), Error);
}

TEST(Coc, MatchesScanOracle) {
  Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    ConvexSet c = i % 2 ? ConvexSet(random_short_chord(rng, 60)) : random_collapsing_set(rng, 60);
    EXPECT_EQ(cocritical_set(c), coc_oracle(c)) << c.str();
  }
}

TEST(Coc, InvolutionOnShortChords) {
  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    Chord c = random_short_chord(rng, 720);
    ConvexSet s(c);
    EXPECT_EQ(cocritical_set(cocritical_set(s)), s) << c.str();
  }
}

TEST(Coc, ReconstructsCriticalSets) {
  Rng rng(19);
  for (int i = 0; i < 1000; ++i) {
    ConvexSet c = random_collapsing_set(rng, 720);
    EXPECT_EQ(reconstruct_from_coc(cocritical_set(c)), c) << c.str();
  }
  ConvexSet q{A(1, 3), A(5, 12), A(2, 3), A(3, 4)};
  EXPECT_EQ(reconstruct_from_coc(ConvexSet{A(0, 1), A(1, 12)}), q);
}

TEST(Tags, ReferenceValues) {
  ConvexSet t{A(0, 1), A(1, 3), A(2, 3)};
  EXPECT_EQ(mixed_tag({t, t}), (MixedTag{t, ConvexSet{A(0, 1)}}));
  ConvexSet c1{A(0, 1), A(1, 3)}, c2{A(1, 2), A(5, 6)};
  EXPECT_EQ(mixed_tag({c1, c2}), (MixedTag{ConvexSet{A(2, 3)}, ConvexSet{A(1, 2)}}));
  EXPECT_NE(mixed_tag({c2, c1}), mixed_tag({c1, c2}));
}

TEST(Tags, Relations) {
  MixedTag a{ConvexSet{A(2, 3)}, ConvexSet{A(1, 2)}};
  EXPECT_EQ(tags_relation(a, a), TagRelation::equal);
  MixedTag b{ConvexSet{A(1, 6)}, ConvexSet{A(1, 2)}};
  EXPECT_EQ(tags_relation(a, b), TagRelation::disjoint);
  MixedTag c{ConvexSet{A(1, 2), A(5, 6)}, ConvexSet{A(0, 1), A(1, 2)}};
  MixedTag d{ConvexSet{A(2, 3), A(0, 1)}, ConvexSet{A(1, 2)}};
  EXPECT_EQ(tags_relation(c, d), TagRelation::properly_overlapping);
  EXPECT_TRUE(tag_contained(MixedTag{ConvexSet{A(1, 2)}, ConvexSet{A(1, 2)}}, c));
}

TEST(Geometry, ReferenceValues) {
  EXPECT_EQ(separation(ConvexSet{A(0, 1), A(1, 3)}, ConvexSet{A(1, 2), A(5, 6)}), Q(1, 6));
  auto r = linked_coc(make_chord(0, 1, 1, 12), make_chord(1, 24, 1, 8));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.q1.hull(), (ConvexSet{A(8, 24), A(10, 24), A(16, 24), A(18, 24)}));
  EXPECT_EQ(r.q2.hull(), (ConvexSet{A(9, 24), A(11, 24), A(17, 24), A(19, 24)}));
  EXPECT_TRUE(colocation_holds({ConvexSet{A(0, 1), A(1, 3)}, ConvexSet{A(1, 2), A(5, 6)}}));
}

TEST(Geometry, LinkedWindowPairsGiveStronglyLinkedQuads) {
  Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    auto [l1, l2] = random_linked_window_pair(rng, 720);
    ASSERT_TRUE(linked(l1, l2));
    auto r = linked_coc(l1, l2);
    EXPECT_TRUE(r.ok()) << l1.str() << " | " << l2.str();
    EXPECT_TRUE(interleave_oracle(l1, l2)) << l1.str() << " | " << l2.str();
  }
}

TEST(Portraits, FullPortraitsOfKnownShapes) {
  auto tri = pullback_build(portrait_from_sets(3, {ConvexSet{A(0, 1), A(1, 3), A(2, 3)}}), 2);
  auto fps = full_portraits(tri);
  EXPECT_EQ(fps.size(), 1u + 3u * 2u + 6u);
  auto bi = pullback_build(portrait_from_sets(3, {ConvexSet{A(0, 1), A(1, 3)}, ConvexSet{A(1, 2), A(5, 6)}}), 3);
  EXPECT_EQ(full_portraits(bi).size(), 2u);
}

TEST(Classifier, TriangleEdgesAndEquality) {
  ConvexSet t{A(0, 1), A(1, 3), A(2, 3)};
  auto lam = pullback_build(portrait_from_sets(3, {t}), 2);
  FullPortrait fa{ConvexSet{A(0, 1), A(1, 3)}, t}, fx{ConvexSet{A(1, 3), A(2, 3)}, t};
  auto r = classify_tag_relation(lam, fa, lam, fx);
  EXPECT_EQ(r.relation, TagRelation::disjoint);
  EXPECT_TRUE(r.consistent);
  auto same = classify_tag_relation(lam, fa, lam, fa);
  EXPECT_TRUE(same.first_case);
  EXPECT_TRUE(same.consistent);

  auto bi = pullback_build(portrait_from_sets(3, {ConvexSet{A(0, 1), A(1, 3)}, ConvexSet{A(1, 2), A(5, 6)}}), 3);
  FullPortrait fb{ConvexSet{A(0, 1), A(1, 3)}, ConvexSet{A(1, 2), A(5, 6)}};
  auto e = classify_tag_relation(bi, fb, bi, fb);
  EXPECT_EQ(e.relation, TagRelation::equal);
  EXPECT_TRUE(e.second_case);
  EXPECT_TRUE(e.consistent);
}

TEST(Suites, SampledLaminationsSeparateCriticalSets) {
  Rng rng(5);
  SamplerOptions opt;
  opt.count = 40;
  auto sample = sample_cubic_laminations(rng, opt);
  ASSERT_EQ(sample.size(), 40u);
  int pairs = 0;
  for (const auto& s : sample) {
    auto g = geometry_checks(s.lam);
    EXPECT_TRUE(g.ok()) << s.kind;
    pairs += g.separation_checked;
  }
  EXPECT_GT(pairs, 0);
}

TEST(Suites, TagsOfDistinctLaminationsDisjointOrEqual) {
  Rng rng(9);
  SamplerOptions opt;
  opt.count = 30;
  opt.dendritic_only = true;
  auto sample = sample_cubic_laminations(rng, opt);
  auto hex = hexagon_laminations(3, 4);
  sample.insert(sample.end(), hex.begin(), hex.end());
  std::vector<TagSubject> subjects;
  for (const auto& s : sample) subjects.emplace_back(s.lam);
  std::vector<std::pair<std::size_t, FullPortrait>> fps;
  for (std::size_t i = 0; i < sample.size(); ++i)
    for (const auto& fp : full_portraits(sample[i].lam)) fps.emplace_back(i, fp);
  for (std::size_t a = 0; a < fps.size(); ++a) {
    for (std::size_t b = 0; b < fps.size(); ++b) {
      if (a == b) continue;
      auto r = classify_tag_relation(subjects[fps[a].first], fps[a].second, subjects[fps[b].first], fps[b].second);
      EXPECT_TRUE(r.consistent) << fps[a].second.str() << " / " << fps[b].second.str();
      if (fps[a].first != fps[b].first) {
        EXPECT_NE(r.relation, TagRelation::properly_overlapping);
      }
    }
  }
}

TEST(Suites, TuningShrinksTags) {
  auto hex = hexagon_laminations(3, 6);
  ASSERT_FALSE(hex.empty());
  int checked = 0;
  for (const auto& s : hex)
    for (const auto& g : gaps(s.lam)) {
      if (!g.finite() || g.vertices.size() < 6 || gap_degree(3, g) != 2) continue;
      for (std::size_t choice = 0; choice < 3; ++choice) {
        auto [tuned, q] = tune_insert(s.lam, g, choice);
        for (const auto& fp : full_portraits(s.lam)) {
          if (fp.first != g.hull() && fp.second != g.hull()) continue;
          FullPortrait refined = fp;
          if (refined.first == g.hull()) refined.first = q.hull();
          if (refined.second == g.hull()) refined.second = q.hull();
          EXPECT_TRUE(tag_contained(mixed_tag(refined), mixed_tag(fp))) << fp.str();
          auto r = classify_tag_relation(s.lam, fp, tuned, refined);
          EXPECT_TRUE(r.non_disjoint);
          EXPECT_TRUE(r.consistent);
          ++checked;
        }
      }
    }
  EXPECT_GT(checked, 0);
}

TEST(SmartCriticality, LinkedPortraitLeavesKeepMeeting) {
  int d = 3, found = 0, leaf_pairs = 0;
  auto search = search_linked_pairs(d, {26, 8}, 16);
  for (const auto& [m1, m2] : search.pairs) {
    if (found >= 2) break;
    if (!(m1 < m2)) continue;
    for (const auto& s0 : preimages(d, m1.a())) {
      ConvexSet w1 = window_preimage(ConvexSet(m1), s0), w2 = window_preimage(ConvexSet(m2), s0);
      if (w1.size() != 2 || w2.size() != 2) continue;
      Chord l1(w1.vertices()[0], w1.vertices()[1]), l2(w2.vertices()[0], w2.vertices()[1]);
      if (!linked(l1, l2)) continue;
      ConvexSet q1 = cocritical_set(ConvexSet(l1)), q2 = cocritical_set(ConvexSet(l2));
      for (long n = 0; n < 72; ++n) {
        Chord crit(A(n, 72), A(n, 72) + Q(1, 3));
        ConvexSet c(crit);
        if (q1.intersects(c) || q2.intersects(c)) continue;
        FiniteLamination lam1(d, {}), lam2(d, {});
        try {
          lam1 = pullback_build(portrait_from_sets(d, {q1, c}), 3);
          lam2 = pullback_build(portrait_from_sets(d, {q2, c}), 3);
        } catch (const Error&) {
          continue;
        }
        ++found;
        QcPortrait p1{d, {quad_from_set(q1), leaf_quad(crit, d)}}, p2{d, {quad_from_set(q2), leaf_quad(crit, d)}};
        EXPECT_EQ(classify_pair(lam1, p1, lam2, p2).relation, PairRelation::linked);
        for (const auto& a : lam1.leaves())
          for (const auto& b : lam2.leaves()) {
            if (!linked(a, b)) continue;
            ++leaf_pairs;
            Chord x = a, y = b;
            for (int k = 0; k < 12; ++k) {
              if (detect_collapse(d, x, y, p1, p2).collapse) break;
              x = chord_image(d, x);
              y = chord_image(d, y);
              ASSERT_TRUE(chords_meet(x, y)) << a.str() << " | " << b.str() << " step " << k;
            }
          }
      }
    }
  }
  EXPECT_EQ(found, 2);
  EXPECT_GT(leaf_pairs, 100);
}
