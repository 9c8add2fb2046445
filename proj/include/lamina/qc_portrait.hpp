#ifndef LAMINA_QC_PORTRAIT_HPP
#define LAMINA_QC_PORTRAIT_HPP

#include "lamina/lamination.hpp"

#include <array>

namespace lamina {

enum class QuadKind { collapsing, critical_leaf, all_critical_triangle, all_critical_quadrilateral };

inline const char* to_string(QuadKind k) {
  switch (k) {
    case QuadKind::collapsing: return "collapsing";
    case QuadKind::critical_leaf: return "critical_leaf";
    case QuadKind::all_critical_triangle: return "all_critical_triangle";
    case QuadKind::all_critical_quadrilateral: return "all_critical_quadrilateral";
  }
  return "?";
}

using Quad4 = std::array<Angle, 4>;

// circularly non-decreasing: the four forward steps add up to one full turn
inline bool circularly_monotone(const std::vector<Angle>& s) {
  Q total = 0;
  for (std::size_t i = 0; i < s.size(); ++i) total += fwd(s[i], s[(i + 1) % s.size()]);
  return total == 1;
}

class CriticalQuadrilateral {
 public:
  CriticalQuadrilateral(const Quad4& v, int d) : d_(d) {
    if (!circularly_monotone({v.begin(), v.end()})) throw Error("quadrilateral vertices are not circularly ordered");
    if (!is_critical(d, Chord(v[0], v[2])) || !is_critical(d, Chord(v[1], v[3])))
      throw Error("quadrilateral diagonals are not both critical");
    v_ = v;
    for (int r = 1; r < 4; ++r) {
      Quad4 w{v[r], v[(r + 1) % 4], v[(r + 2) % 4], v[(r + 3) % 4]};
      if (w < v_) v_ = w;
    }
  }

  int degree() const { return d_; }
  const Quad4& vertices() const { return v_; }
  std::array<Chord, 2> spikes() const { return {Chord(v_[0], v_[2]), Chord(v_[1], v_[3])}; }
  ConvexSet hull() const { return ConvexSet(std::vector<Angle>(v_.begin(), v_.end())); }

  QuadKind classify() const {
    auto n = hull().size();
    if (n == 2) return QuadKind::critical_leaf;
    if (n == 3) return QuadKind::all_critical_triangle;
    return sigma(d_, v_[0]) == sigma(d_, v_[1]) ? QuadKind::all_critical_quadrilateral : QuadKind::collapsing;
  }

  bool shares_spike(const CriticalQuadrilateral& o) const {
    for (const auto& s : spikes())
      for (const auto& t : o.spikes())
        if (s == t) return true;
    return false;
  }

  std::string str() const {
    return "[" + v_[0].str() + "," + v_[1].str() + "," + v_[2].str() + "," + v_[3].str() + "]";
  }

  friend bool operator==(const CriticalQuadrilateral& a, const CriticalQuadrilateral& b) { return a.v_ == b.v_; }
  friend bool operator<(const CriticalQuadrilateral& a, const CriticalQuadrilateral& b) { return a.v_ < b.v_; }

 private:
  Quad4 v_;
  int d_;
};

inline CriticalQuadrilateral make_quadrilateral(const Quad4& v, int d) { return CriticalQuadrilateral(v, d); }

inline CriticalQuadrilateral leaf_quad(const Chord& c, int d) { return CriticalQuadrilateral({c.a(), c.a(), c.b(), c.b()}, d); }

// every critical quadrilateral with the given convex hull
inline std::vector<CriticalQuadrilateral> presentations(const CriticalQuadrilateral& q) {
  const ConvexSet hull = q.hull();
  const auto& vs = hull.vertices();
  std::set<CriticalQuadrilateral> out{q};
  const std::size_t n = vs.size();
  for (std::size_t i = 0; i < n * n * n * n; ++i) {
    Quad4 t{vs[i % n], vs[i / n % n], vs[i / (n * n) % n], vs[i / (n * n * n)]};
    std::set<Angle> used(t.begin(), t.end());
    if (used.size() != n) continue;
    if (!circularly_monotone({t.begin(), t.end()})) continue;
    if (!is_critical(q.degree(), Chord(t[0], t[2])) || !is_critical(q.degree(), Chord(t[1], t[3]))) continue;
    out.insert(CriticalQuadrilateral(t, q.degree()));
  }
  return {out.begin(), out.end()};
}

struct StrongLink {
  Quad4 a, b;  // numbering with a0 <= b0 <= a1 <= ... <= b3 <= a0
};

inline std::optional<StrongLink> strongly_linked(const CriticalQuadrilateral& A, const CriticalQuadrilateral& B) {
  for (const auto& pa : presentations(A))
    for (const auto& pb : presentations(B))
      for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) {
          const auto &va = pa.vertices(), &vb = pb.vertices();
          Quad4 a{va[r], va[(r + 1) % 4], va[(r + 2) % 4], va[(r + 3) % 4]};
          Quad4 b{vb[s], vb[(s + 1) % 4], vb[(s + 2) % 4], vb[(s + 3) % 4]};
          std::vector<Angle> seq{a[0], b[0], a[1], b[1], a[2], b[2], a[3], b[3]};
          if (circularly_monotone(seq)) return StrongLink{a, b};
        }
  return std::nullopt;
}

// ---------------------------------------------------------------- portraits

struct QcPortrait {
  int degree = 2;
  std::vector<CriticalQuadrilateral> quads;
};

struct QcReport {
  bool valid = false;
  std::string reason;
};

inline QcReport validate_qc_portrait(const QcPortrait& p) {
  const int d = p.degree;
  if (p.quads.size() != static_cast<std::size_t>(d - 1)) return {false, "portrait needs d-1 quadrilaterals"};
  for (const auto& q : p.quads)
    if (q.degree() != d) return {false, "quadrilateral degree mismatch"};
  const std::size_t n = p.quads.size();
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    ChordCollection sample;
    for (std::size_t i = 0; i < n; ++i) sample.push_back(p.quads[i].spikes()[mask >> i & 1]);
    auto r = validate_collection(d, sample);
    if (!r.is_full_collection) return {false, "a complete sample of spikes has a loop"};
  }
  return {true, ""};
}

// hulls sharing vertices merge, so leaves of one all-critical triangle give the triangle
inline PullbackPortrait pullback_portrait(const QcPortrait& p) {
  std::vector<std::vector<Angle>> groups;
  for (const auto& q : p.quads) {
    auto h = q.hull().vertices();
    std::vector<Angle> merged(h.begin(), h.end());
    std::vector<std::vector<Angle>> rest;
    for (auto& g : groups) {
      bool shares = std::any_of(g.begin(), g.end(), [&](const Angle& v) { return std::count(h.begin(), h.end(), v) > 0; });
      if (shares) merged.insert(merged.end(), g.begin(), g.end());
      else rest.push_back(std::move(g));
    }
    rest.push_back(std::move(merged));
    groups = std::move(rest);
  }
  std::vector<ConvexSet> sets;
  for (const auto& g : groups) sets.emplace_back(g);
  return portrait_from_sets(p.degree, std::move(sets));
}

// portrait assembled from the critical sets of a lamination when they are all collapsing or all-critical
inline std::optional<QcPortrait> qc_portrait_from(const FiniteLamination& lam) {
  const int d = lam.degree();
  auto ca = critical_analysis(lam);
  QcPortrait p{d, {}};
  ChordCollection spikes;
  auto try_add = [&](const CriticalQuadrilateral& q) {
    ChordCollection trial = spikes;
    for (const auto& s : q.spikes())
      if (std::find(trial.begin(), trial.end(), s) == trial.end()) trial.push_back(s);
    auto r = validate_collection(d, trial);
    if (r.has_loop) return;
    spikes = trial;
    p.quads.push_back(q);
  };
  for (const auto& g : ca.critical_gaps) {
    auto h = g.hull();
    bool all_critical = h.image(d).size() == 1;
    bool collapsing = h.size() == 4 && h.image(d).size() == 2 && gap_degree(d, g) == 2;
    if (!all_critical && !collapsing) return std::nullopt;
    if (collapsing) try_add(CriticalQuadrilateral({h.vertices()[0], h.vertices()[1], h.vertices()[2], h.vertices()[3]}, d));
  }
  for (const auto& c : ca.critical_leaves) try_add(leaf_quad(c, d));
  if (p.quads.size() != static_cast<std::size_t>(d - 1)) return std::nullopt;
  return p;
}

inline bool qc_portrait_exists(const FiniteLamination& lam) { return qc_portrait_from(lam).has_value(); }

// ---------------------------------------------------------------- critical patterns

inline int set_degree(int d, const ConvexSet& s) {
  if (s.size() == 2) return 2;
  return polygon_degree(d, s.vertices());
}

struct CriticalPattern {
  int degree = 2;
  std::vector<ConvexSet> sets;

  bool valid() const {
    if (sets.size() != static_cast<std::size_t>(degree - 1)) return false;
    std::map<ConvexSet, int> count;
    for (const auto& s : sets) {
      if (!set_is_critical(degree, s)) return false;
      ++count[s];
    }
    for (const auto& [s, c] : count)
      if (set_degree(degree, s) - 1 != c) return false;
    return true;
  }
};

// componentwise inclusion
inline bool precedes(const CriticalPattern& a, const CriticalPattern& b) {
  if (a.degree != b.degree || a.sets.size() != b.sets.size()) return false;
  for (std::size_t i = 0; i < a.sets.size(); ++i)
    if (!a.sets[i].subset_of(b.sets[i])) return false;
  return true;
}

// ---------------------------------------------------------------- tuning

inline std::pair<FiniteLamination, CriticalQuadrilateral> tune_insert(const FiniteLamination& lam, const Gap& g,
                                                                      std::size_t choice = 0) {
  const int d = lam.degree();
  if (!g.finite()) throw Error("tune_insert needs a finite gap");
  if (g.vertices.size() < 4) throw Error("tune_insert needs a gap with at least four vertices");
  if (gap_degree(d, g) != 2) throw Error("tune_insert needs a gap of degree two");
  const auto& v = g.vertices;
  const std::size_t n = v.size();
  if (n == 4 && sigma(d, v[0]) == sigma(d, v[2]) && sigma(d, v[1]) == sigma(d, v[3]))
    return {lam, CriticalQuadrilateral({v[0], v[1], v[2], v[3]}, d)};

  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < n; ++i)
    if (sigma(d, v[i]) != sigma(d, v[(i + 1) % n])) usable.push_back(i);
  if (usable.empty()) throw Error("gap has no edge with a nondegenerate image");
  std::size_t i = usable[choice % usable.size()];
  Angle u = v[i], w = v[(i + 1) % n];
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    Angle u2 = v[j], w2 = v[(j + 1) % n];
    if (sigma(d, u2) == sigma(d, u) && sigma(d, w2) == sigma(d, w)) {
      CriticalQuadrilateral q({u, w, u2, w2}, d);
      FiniteLamination out = lam;
      for (const auto& e : q.hull().edges()) out.add(e);
      return {out, q};
    }
  }
  throw Error("no edge of the gap shares the image of the chosen edge");
}

// ---------------------------------------------------------------- linked laminations

enum class PairRelation { linked, essentially_equal, neither };

inline const char* to_string(PairRelation r) {
  switch (r) {
    case PairRelation::linked: return "linked";
    case PairRelation::essentially_equal: return "essentially_equal";
    case PairRelation::neither: return "neither";
  }
  return "?";
}

struct PairDetail {
  bool share_spike = false;
  bool strongly_linked = false;
  bool common_cluster = false;
};

struct PairClassification {
  PairRelation relation = PairRelation::neither;
  int k = -1;
  std::vector<PairDetail> detail;
  PairRelation with_permutations = PairRelation::neither;
};

namespace detail {

inline PairRelation classify_aligned(const std::vector<ConvexSet>& common, const QcPortrait& p1, const QcPortrait& p2,
                                     std::vector<PairDetail>& det, int& best_k) {
  const std::size_t n = p1.quads.size();
  det.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    const auto &a = p1.quads[i], &b = p2.quads[i];
    det[i].share_spike = a.shares_spike(b);
    det[i].strongly_linked = strongly_linked(a, b).has_value();
    for (const auto& c : common)
      if (a.hull().subset_of(c) && b.hull().subset_of(c)) det[i].common_cluster = true;
  }
  bool linked_found = false;
  for (std::size_t k = 0; k <= n; ++k) {
    bool ok = true;
    for (std::size_t j = k; j < n; ++j) ok = ok && det[j].common_cluster;
    for (std::size_t i = 0; i < k; ++i) ok = ok && (det[i].share_spike || det[i].strongly_linked);
    if (!ok) continue;
    bool all_share = true;
    for (std::size_t i = 0; i < k; ++i) all_share = all_share && det[i].share_spike;
    if (all_share) {
      best_k = static_cast<int>(k);
      return PairRelation::essentially_equal;
    }
    if (!linked_found) best_k = static_cast<int>(k);
    linked_found = true;
  }
  return linked_found ? PairRelation::linked : PairRelation::neither;
}

}  // namespace detail

inline PairClassification classify_pair(const FiniteLamination& lam1, const QcPortrait& p1, const FiniteLamination& lam2,
                                        const QcPortrait& p2) {
  if (p1.degree != p2.degree || p1.quads.size() != p2.quads.size()) throw Error("portraits of different degree");
  auto c1 = critical_analysis(lam1).clusters, c2 = critical_analysis(lam2).clusters;
  std::vector<ConvexSet> common;
  std::set_intersection(c1.begin(), c1.end(), c2.begin(), c2.end(), std::back_inserter(common));

  PairClassification r;
  r.relation = detail::classify_aligned(common, p1, p2, r.detail, r.k);
  r.with_permutations = r.relation;
  QcPortrait q = p2;
  std::vector<std::size_t> perm(q.quads.size());
  std::iota(perm.begin(), perm.end(), 0);
  while (std::next_permutation(perm.begin(), perm.end())) {
    for (std::size_t i = 0; i < perm.size(); ++i) q.quads[i] = p2.quads[perm[i]];
    std::vector<PairDetail> det;
    int k = -1;
    auto rel = detail::classify_aligned(common, p1, q, det, k);
    if (rel == PairRelation::essentially_equal) {
      r.with_permutations = rel;
      break;
    }
    if (rel == PairRelation::linked && r.with_permutations == PairRelation::neither) r.with_permutations = rel;
  }
  return r;
}

}  // namespace lamina

#endif  // LAMINA_QC_PORTRAIT_HPP
