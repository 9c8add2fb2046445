#ifndef LAMINA_SAMPLING_HPP
#define LAMINA_SAMPLING_HPP

#include <cstdint>
#include <cstdlib>
#include <random>

#include "lamina/cubic_tags.hpp"

namespace lamina {

// minstd_rand with plain rejection: draw raw outputs, reject the tail above the last full multiple of n
class Rng {
 public:
  explicit Rng(std::uint32_t seed) : gen_(seed == 0 ? 1 : seed) {}
  std::uint32_t below(std::uint32_t n) {
    if (n == 0) throw Error("empty sampling range");
    const std::uint64_t range = std::uint64_t(std::minstd_rand::max()) - std::minstd_rand::min() + 1;
    const std::uint64_t limit = range - range % n;
    while (true) {
      std::uint64_t r = gen_() - std::minstd_rand::min();
      if (r < limit) return static_cast<std::uint32_t>(r % n);
    }
  }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(static_cast<std::uint32_t>(v.size()))];
  }

 private:
  std::minstd_rand gen_;
};

// LAMINA_SEED overrides the seed given on the command line or in code
inline std::uint32_t effective_seed(std::uint32_t seed) {
  if (const char* s = std::getenv("LAMINA_SEED")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(s, &end, 10);
    if (end != s && *end == '\0') return static_cast<std::uint32_t>(v);
  }
  return seed;
}

inline Angle random_angle(Rng& rng, long den) { return Angle(long(rng.below(std::uint32_t(den))), den); }

// random chord with both endpoints in a window of length at most 1/3, endpoints distinct
inline Chord random_short_chord(Rng& rng, long den) {
  long span = den / 3;
  while (true) {
    long a = rng.below(std::uint32_t(den));
    long off = 1 + rng.below(std::uint32_t(span));
    Chord c(Angle(a, den), Angle(a + off, den));
    if (!c.degenerate() && c.length() < Q(1, 3)) return c;
  }
}

// two linked chords with all endpoints in a window of length at most 1/3
inline std::pair<Chord, Chord> random_linked_window_pair(Rng& rng, long den) {
  long span = den / 3;
  while (true) {
    long a = rng.below(std::uint32_t(den));
    std::vector<long> off;
    for (int i = 0; i < 4; ++i) off.push_back(rng.below(std::uint32_t(span + 1)));
    std::sort(off.begin(), off.end());
    if (std::adjacent_find(off.begin(), off.end()) != off.end()) continue;
    Chord l1(Angle(a + off[0], den), Angle(a + off[2], den));
    Chord l2(Angle(a + off[1], den), Angle(a + off[3], den));
    return {l1, l2};
  }
}

// random critical leaf or collapsing quadrilateral
inline ConvexSet random_collapsing_set(Rng& rng, long den) {
  if (rng.below(2) == 0) {
    Angle u = random_angle(rng, den);
    return ConvexSet(Chord(u, u + Q(1 + long(rng.below(2)), 3)));
  }
  return cocritical_set(ConvexSet(random_short_chord(rng, den)));
}

struct SampledLamination {
  std::string kind;
  PullbackPortrait portrait;
  FiniteLamination lam{3, {}};
  bool dendritic = false;
};

// no critical orbit returns to a critical set, so the portrait forces no periodic Fatou gap
inline bool dendritic_heuristic(const PullbackPortrait& p) {
  std::set<Angle> crit;
  for (const auto& s : p.sets) crit.insert(s.vertices().begin(), s.vertices().end());
  for (const auto& v : crit) {
    auto o = orbit_classify(3, sigma(3, v));
    for (const auto& x : o.orbit)
      if (crit.count(x)) return false;
  }
  return true;
}

// triangles of equal-period points whose forward images have pairwise disjoint interiors and unlinked edges
struct TriangleOrbit {
  ConvexSet triangle;
  std::vector<Chord> edges;  // edges of all forward images
};

inline std::vector<TriangleOrbit> periodic_triangles(const std::vector<long>& dens) {
  std::set<Angle> pts;
  for (long q : dens)
    for (long n = 0; n < q; ++n) pts.insert(Angle(n, q));
  std::vector<Angle> v(pts.begin(), pts.end());
  std::vector<TriangleOrbit> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      for (std::size_t k = j + 1; k < v.size(); ++k) {
        ConvexSet t({v[i], v[j], v[k]});
        std::vector<Chord> edges;
        std::set<ConvexSet> orbit;
        ConvexSet cur = t;
        bool ok = true;
        while (ok && orbit.insert(cur).second) {
          if (cur.size() != 3) ok = false;
          for (const auto& e : cur.edges()) edges.push_back(e);
          cur = cur.image(3);
        }
        if (!ok || cur != t) continue;
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        if (find_linked_pair(edges)) continue;
        out.push_back({t, edges});
      }
  return out;
}

// preimage of t inside the half open window [s, s + 1/3)
inline ConvexSet window_preimage(const ConvexSet& t, const Angle& s) {
  std::vector<Angle> pts;
  for (const auto& v : t.vertices())
    for (const auto& p : preimages(3, v))
      if (fwd(s, p) < Q(1, 3)) pts.push_back(p);
  return ConvexSet(pts);
}

struct SamplerOptions {
  int count = 100;
  int depth = 3;
  long den = 72;            // base denominator; 9 | den keeps critical values strictly preperiodic
  int max_attempts = 20000;
  bool dendritic_only = false;
};

// cubic laminations from distinct random portraits: bicritical leaves and quadrilaterals, all-critical triangles
inline std::vector<SampledLamination> sample_cubic_laminations(Rng& rng, const SamplerOptions& opt) {
  std::vector<SampledLamination> out;
  std::set<std::vector<ConvexSet>> seen;
  for (int attempt = 0; attempt < opt.max_attempts && static_cast<int>(out.size()) < opt.count; ++attempt) {
    std::vector<ConvexSet> sets;
    std::string kind;
    switch (rng.below(4)) {
      case 0: {
        Angle u = random_angle(rng, opt.den);
        sets = {ConvexSet({u, u + Q(1, 3), u + Q(2, 3)})};
        kind = "triangle";
        break;
      }
      default:
        sets = {random_collapsing_set(rng, opt.den), random_collapsing_set(rng, opt.den)};
        kind = "bicritical";
    }
    std::sort(sets.begin(), sets.end());
    if (sets.size() == 2 && (sets[0] == sets[1] || sets[0].intersects(sets[1]))) continue;
    if (!seen.insert(sets).second) continue;
    try {
      auto p = portrait_from_sets(3, sets);
      bool dendritic = dendritic_heuristic(p);
      if (opt.dendritic_only && !dendritic) continue;
      auto lam = pullback_build(p, opt.depth);
      out.push_back({kind, p, std::move(lam), dendritic});
    } catch (const Error&) {
    }
  }
  return out;
}

// degree two hexagons over periodic triangles, each with a critical leaf in its long hole; deterministic
inline std::vector<SampledLamination> hexagon_laminations(int depth, std::size_t limit) {
  std::vector<SampledLamination> out;
  std::set<std::vector<ConvexSet>> seen;
  for (const auto& t : periodic_triangles({26, 8}))
    for (const auto& v : t.triangle.vertices())
      for (const auto& s : preimages(3, v)) {
        ConvexSet tri = window_preimage(t.triangle, s);
        if (tri.size() != 3) continue;
        ConvexSet hex = cocritical_set(tri);
        for (long den : {54L, 72L})
          for (long n = 0; n < den; ++n) {
            if (out.size() >= limit) return out;
            Chord c(Angle(n, den), Angle(n, den) + Q(1, 3));
            ConvexSet leaf(c);
            if (hex.intersects(leaf)) continue;
            if (std::any_of(t.edges.begin(), t.edges.end(), [&](const Chord& e) { return linked(e, c); })) continue;
            std::vector<ConvexSet> sets{hex, leaf};
            std::sort(sets.begin(), sets.end());
            if (!seen.insert(sets).second) continue;
            try {
              auto p = portrait_from_sets(3, sets);
              auto lam = pullback_build(p, depth);
              out.push_back({"hexagon", p, std::move(lam), dendritic_heuristic(p)});
            } catch (const Error&) {
            }
          }
      }
  return out;
}

}  // namespace lamina

#endif  // LAMINA_SAMPLING_HPP
