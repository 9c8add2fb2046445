#ifndef LAMINA_CUBIC_TAGS_HPP
#define LAMINA_CUBIC_TAGS_HPP

#include "lamina/qc_portrait.hpp"

namespace lamina {

struct CocOptions {
  bool closed_hole = false;  // keep the vertices of C lying on the closure of the hole
};

namespace detail {

inline std::optional<Arc> long_hole(const ConvexSet& c) {
  const Q third(1, 3);
  std::vector<Arc> longer, equal;
  for (const auto& h : c.holes()) {
    if (h.length() > third) longer.push_back(h);
    else if (h.length() == third) equal.push_back(h);
  }
  if (longer.size() > 1) throw Error("set " + c.str() + " has two holes longer than 1/3");
  if (longer.size() == 1) return longer[0];
  if (equal.size() == 1) return equal[0];
  if (equal.empty()) return std::nullopt;
  throw Error("set " + c.str() + " has several holes of length 1/3");
}

}  // namespace detail

inline bool is_degree_three(const ConvexSet& c) { return c.size() >= 3 && polygon_degree(3, c.vertices()) == 3; }

inline ConvexSet cocritical_set(const ConvexSet& c, CocOptions opt = {}) {
  if (c.empty()) throw Error("co-critical set of an empty set");
  if (is_degree_three(c)) return c;
  ConvexSet img = c.image(3);
  std::vector<Angle> pts;
  if (c.size() == 1) {
    for (const auto& p : preimages(3, img.vertices()[0]))
      if (p != c.vertices()[0]) pts.push_back(p);
    return ConvexSet(pts);
  }
  auto h = detail::long_hole(c);
  if (!h) throw Error("set " + c.str() + " has no hole of length at least 1/3");
  for (const auto& y : img.vertices())
    for (const auto& p : preimages(3, y)) {
      bool on_hole = in_arc(p, *h, opt.closed_hole);
      if (on_hole && (opt.closed_hole || !c.contains(p))) pts.push_back(p);
    }
  if (pts.empty()) throw Error("co-critical set of " + c.str() + " is empty");
  return ConvexSet(pts);
}

// C recovered from its co-critical set by rotating through 1/3 and 2/3
inline ConvexSet reconstruct_from_coc(const ConvexSet& coc) {
  std::vector<Angle> pts;
  for (const auto& v : coc.vertices()) {
    pts.push_back(v + Q(1, 3));
    pts.push_back(v + Q(2, 3));
  }
  return ConvexSet(pts);
}

struct FullPortrait {
  ConvexSet first, second;
  friend bool operator==(const FullPortrait& a, const FullPortrait& b) { return a.first == b.first && a.second == b.second; }
  std::string str() const { return "(" + first.str() + ", " + second.str() + ")"; }
};

struct MixedTag {
  ConvexSet cocritical_factor;
  ConvexSet minor_factor;
  friend bool operator==(const MixedTag& a, const MixedTag& b) {
    return a.cocritical_factor == b.cocritical_factor && a.minor_factor == b.minor_factor;
  }
  std::string str() const { return cocritical_factor.str() + " x " + minor_factor.str(); }
};

inline MixedTag mixed_tag(const FullPortrait& fp, CocOptions opt = {}) {
  return {cocritical_set(fp.first, opt), fp.second.image(3)};
}

enum class TagRelation { disjoint, equal, properly_overlapping };

inline const char* to_string(TagRelation r) {
  switch (r) {
    case TagRelation::disjoint: return "disjoint";
    case TagRelation::equal: return "equal";
    case TagRelation::properly_overlapping: return "properly_overlapping";
  }
  return "?";
}

inline TagRelation tags_relation(const MixedTag& t1, const MixedTag& t2) {
  if (t1 == t2) return TagRelation::equal;
  if (!t1.cocritical_factor.intersects(t2.cocritical_factor) || !t1.minor_factor.intersects(t2.minor_factor))
    return TagRelation::disjoint;
  return TagRelation::properly_overlapping;
}

// a closed inscribed convex set lies inside another one
inline bool convex_subset(const ConvexSet& a, const ConvexSet& b) { return a.subset_of(b); }

inline bool tag_contained(const MixedTag& inner, const MixedTag& outer) {
  return convex_subset(inner.cocritical_factor, outer.cocritical_factor) && convex_subset(inner.minor_factor, outer.minor_factor);
}

// ---------------------------------------------------------------- full portraits

inline std::optional<ConvexSet> all_critical_triangle(const CriticalAnalysis& ca) {
  for (const auto& s : ca.all_critical_gaps)
    if (s.size() == 3) return s;
  return std::nullopt;
}

inline std::vector<FullPortrait> full_portraits(const FiniteLamination& lam) {
  if (lam.degree() != 3) throw Error("full portraits need a cubic lamination");
  auto ca = critical_analysis(lam);
  std::vector<FullPortrait> out;
  if (auto t = all_critical_triangle(ca)) {
    out.push_back({*t, *t});
    auto e = t->edges();
    for (const auto& a : e) {
      out.push_back({*t, ConvexSet(a)});
      out.push_back({ConvexSet(a), *t});
      for (const auto& b : e)
        if (a != b) out.push_back({ConvexSet(a), ConvexSet(b)});
    }
    return out;
  }
  const auto& cs = ca.critical_sets;
  if (cs.size() == 1) {
    out.push_back({cs[0], cs[0]});
    return out;
  }
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j)
      if (i != j) out.push_back({cs[i], cs[j]});
  return out;
}

// componentwise inclusion b within a
inline bool portrait_refines(const FullPortrait& a, const FullPortrait& b) {
  return b.first.subset_of(a.first) && b.second.subset_of(a.second);
}

// ---------------------------------------------------------------- relation classifier

struct TagCaseReport {
  TagRelation relation = TagRelation::disjoint;
  bool non_disjoint = false;
  bool has_triangle = false;
  bool first_case = false;   // shared all-critical triangle, first sets not distinct edges
  bool second_case = false;  // no triangle, contained leaves and refined portrait
  bool consistent = false;
  bool heuristic = true;     // dendriticity and containment rest on finite data
};

// a lamination with its all-critical triangle looked up once
struct TagSubject {
  const FiniteLamination* lam;
  std::optional<ConvexSet> triangle;
  explicit TagSubject(const FiniteLamination& l) : lam(&l), triangle(all_critical_triangle(critical_analysis(l))) {}
};

inline TagCaseReport classify_tag_relation(const TagSubject& a, const FullPortrait& fa, const TagSubject& x, const FullPortrait& fx) {
  TagCaseReport r;
  r.relation = tags_relation(mixed_tag(fa), mixed_tag(fx));
  r.non_disjoint = r.relation != TagRelation::disjoint;
  r.has_triangle = a.triangle.has_value();
  auto is_edge_of = [](const ConvexSet& t, const ConvexSet& s) {
    return s.size() == 2 && t.is_edge(Chord(s.vertices()[0], s.vertices()[1]));
  };
  if (a.triangle) {
    bool distinct_edges = fa.first != fx.first && is_edge_of(*a.triangle, fa.first) && is_edge_of(*a.triangle, fx.first);
    r.first_case = *a.lam == *x.lam && !distinct_edges;
  } else {
    r.second_case = a.lam->subset_of(*x.lam) && portrait_refines(fa, fx);
  }
  r.consistent = r.non_disjoint == (r.first_case || r.second_case);
  return r;
}

inline TagCaseReport classify_tag_relation(const FiniteLamination& lam_a, const FullPortrait& fa, const FiniteLamination& lam_x,
                                           const FullPortrait& fx) {
  return classify_tag_relation(TagSubject(lam_a), fa, TagSubject(lam_x), fx);
}

// ---------------------------------------------------------------- geometry checks

struct GeometryReport {
  std::vector<std::string> colocation_failures;
  std::vector<std::string> reconstruction_failures;
  std::vector<std::string> separation_failures;
  int colocation_checked = 0, reconstruction_checked = 0, separation_checked = 0;
  bool ok() const { return colocation_failures.empty() && reconstruction_failures.empty() && separation_failures.empty(); }
};

// circle distance from a point to the vertices of a set
inline Q distance_to(const Angle& p, const ConvexSet& s) {
  Q best = 1;
  for (const auto& v : s.vertices()) best = std::min(best, Q(shortest_dist(p, v)));
  return best;
}

// some point of one set lies at distance at least 1/12 from the other
inline Q separation(const ConvexSet& a, const ConvexSet& b) {
  Q best = 0;
  for (const auto& p : a.vertices()) best = std::max(best, distance_to(p, b));
  for (const auto& p : b.vertices()) best = std::max(best, distance_to(p, a));
  return best;
}

inline bool is_collapsing_quad(const ConvexSet& c) {
  if (c.size() != 4) return false;
  const auto& v = c.vertices();
  return sigma(3, v[0]) == sigma(3, v[2]) && sigma(3, v[1]) == sigma(3, v[3]) && sigma(3, v[0]) != sigma(3, v[1]);
}

inline bool colocation_holds(const FullPortrait& fp, std::string* why = nullptr) {
  ConvexSet coc = cocritical_set(fp.first);
  if (coc.size() < 2) return true;
  for (const auto& h : coc.holes()) {
    bool meets = std::any_of(fp.first.vertices().begin(), fp.first.vertices().end(), [&](const Angle& v) { return in_arc(v, h); });
    if (meets) continue;
    if (h.length() > Q(1, 3)) {
      if (why) *why = "hole " + h.from().str() + " " + h.to().str() + " of " + coc.str() + " is longer than 1/3";
      return false;
    }
    Angle sa = sigma(3, h.from()), sb = sigma(3, h.to());
    if (sa == sb) continue;
    Arc target(sb, sa);
    ConvexSet img = fp.second.image(3);
    for (const auto& v : img.vertices())
      if (!in_arc(v, target, true)) {
        if (why) *why = "image of " + fp.second.str() + " leaves arc " + sb.str() + " " + sa.str();
        return false;
      }
  }
  return true;
}

inline GeometryReport geometry_checks(const FiniteLamination& lam) {
  GeometryReport r;
  auto ca = critical_analysis(lam);
  for (const auto& fp : full_portraits(lam)) {
    ++r.colocation_checked;
    std::string why;
    if (!colocation_holds(fp, &why)) r.colocation_failures.push_back(fp.str() + ": " + why);
  }
  for (const auto& s : ca.critical_sets) {
    if (!(s.size() == 2 || is_collapsing_quad(s))) continue;
    ++r.reconstruction_checked;
    if (reconstruct_from_coc(cocritical_set(s)) != s) r.reconstruction_failures.push_back(s.str());
  }
  const auto& cs = ca.critical_sets;
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      ++r.separation_checked;
      if (separation(cs[i], cs[j]) < Q(1, 12)) r.separation_failures.push_back(cs[i].str() + " / " + cs[j].str());
    }
  return r;
}

// co-critical quadrilaterals of two linked chords in a short window
struct LinkedCocResult {
  CriticalQuadrilateral q1, q2;
  bool collapsing = false;
  std::optional<StrongLink> link;
  bool ok() const { return collapsing && link.has_value(); }
};

inline CriticalQuadrilateral quad_from_set(const ConvexSet& s) {
  if (s.size() != 4) throw Error("set " + s.str() + " is not a quadrilateral");
  const auto& v = s.vertices();
  return CriticalQuadrilateral({v[0], v[1], v[2], v[3]}, 3);
}

inline LinkedCocResult linked_coc(const Chord& l1, const Chord& l2) {
  ConvexSet c1 = cocritical_set(ConvexSet(l1)), c2 = cocritical_set(ConvexSet(l2));
  LinkedCocResult r{quad_from_set(c1), quad_from_set(c2), false, std::nullopt};
  r.collapsing = is_collapsing_quad(c1) && is_collapsing_quad(c2);
  r.link = strongly_linked(r.q1, r.q2);
  return r;
}

}  // namespace lamina

#endif  // LAMINA_CUBIC_TAGS_HPP
