#ifndef LAMINA_ACCORDION_HPP
#define LAMINA_ACCORDION_HPP

#include "lamina/qc_portrait.hpp"

namespace lamina {

enum class AccordionClass {
  single,
  two_leaf_periodic_flip,
  two_leaf_periodic_disjoint_orbits,
  three_leaf,
  wandering_up_to_horizon,
  periodic_gap
};

inline const char* to_string(AccordionClass c) {
  switch (c) {
    case AccordionClass::single: return "single";
    case AccordionClass::two_leaf_periodic_flip: return "two_leaf_periodic_flip";
    case AccordionClass::two_leaf_periodic_disjoint_orbits: return "two_leaf_periodic_disjoint_orbits";
    case AccordionClass::three_leaf: return "three_leaf";
    case AccordionClass::wandering_up_to_horizon: return "wandering_up_to_horizon";
    case AccordionClass::periodic_gap: return "periodic_gap";
  }
  return "?";
}

// forward images x, f(x), ... until the orbit closes or `limit` images are taken
inline std::vector<Chord> forward_orbit(int d, const Chord& c, std::size_t limit, bool* closed = nullptr) {
  std::vector<Chord> out;
  std::set<Chord> seen;
  Chord cur = c;
  while (out.size() < limit && seen.insert(cur).second) {
    out.push_back(cur);
    cur = chord_image(d, cur);
  }
  if (closed) *closed = seen.count(cur) > 0;
  return out;
}

// sigma_d restricted to the points is injective and keeps their circular order
inline bool order_preserving_on(int d, const std::vector<Angle>& pts) {
  std::vector<Angle> x(pts);
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  std::vector<Angle> y;
  for (const auto& p : x) y.push_back(sigma(d, p));
  std::set<Angle> distinct(y.begin(), y.end());
  if (distinct.size() != y.size()) return false;
  if (y.size() < 3) return true;
  return circular_order(y) == Orientation::positively_ordered;
}

struct Accordion {
  Chord axis;
  std::vector<Chord> members;   // axis first, then linked leaves in canonical order
  std::vector<Chord> touching;  // leaves sharing an endpoint with the axis
  std::vector<Angle> points() const {
    std::vector<Angle> p;
    for (const auto& m : members) {
      p.push_back(m.a());
      p.push_back(m.b());
    }
    return p;
  }
};

inline Accordion accordion_of(const Chord& axis, const std::vector<Chord>& leaves) {
  Accordion a{axis, {axis}, {}};
  std::set<Chord> linked_set, touch;
  for (const auto& l : leaves) {
    if (linked(l, axis)) linked_set.insert(l);
    else if (l != axis && !l.degenerate() && (l.has_endpoint(axis.a()) || l.has_endpoint(axis.b()))) touch.insert(l);
  }
  a.members.insert(a.members.end(), linked_set.begin(), linked_set.end());
  a.touching.assign(touch.begin(), touch.end());
  return a;
}

// the accordion of each image of l1 against the leaves is order preserving
inline bool order_preserving_against(int d, const Chord& l1, const std::vector<Chord>& leaves, int horizon) {
  Chord cur = l1;
  std::set<Chord> seen;
  for (int k = 0; k <= horizon && seen.insert(cur).second; ++k) {
    if (cur.degenerate() || is_critical(d, cur)) return false;
    auto acc = accordion_of(cur, leaves);
    if (!order_preserving_on(d, acc.points())) return false;
    cur = chord_image(d, cur);
  }
  return true;
}

inline std::size_t orbit_limit(int horizon) { return static_cast<std::size_t>(std::max(horizon, 1)) * 8 + 64; }

inline bool order_preserving_accordions(int d, const Chord& l1, const Chord& l2, int horizon) {
  if (!linked(l1, l2)) return false;
  auto o1 = forward_orbit(d, l1, orbit_limit(horizon));
  auto o2 = forward_orbit(d, l2, orbit_limit(horizon));
  for (const auto& o : {o1, o2})
    for (const auto& c : o)
      if (c.degenerate() || is_critical(d, c)) return false;
  return order_preserving_against(d, l1, o2, horizon) && order_preserving_against(d, l2, o1, horizon);
}

// ---------------------------------------------------------------- case analysis

struct CaseAnalysis {
  std::array<bool, 4> cases{};  // cases (1) to (4)
  int count() const { return int(cases[0]) + int(cases[1]) + int(cases[2]) + int(cases[3]); }
  int which() const {
    for (int i = 0; i < 4; ++i)
      if (cases[i]) return i + 1;
    return 0;
  }
};

namespace detail {

// circular chain p0 R p1 R ... R p0 where strict[i] marks p_i < p_{i+1}
inline bool chain_holds(const std::vector<Angle>& p, const std::vector<bool>& strict) {
  Q total = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Q step = fwd(p[i], p[(i + 1) % p.size()]);
    if (strict[i] && step == 0) return false;
    total += step;
  }
  return total == 1;
}

inline bool same_orbit(int d, const Angle& u, const Angle& v) {
  auto o = orbit_classify(d, u);
  return std::find(o.orbit.begin() + o.preperiod, o.orbit.end(), v) != o.orbit.end();
}

// open side of chord {x,y} containing p; 0 or 1, -1 on the chord
inline int side(const Chord& c, const Angle& p) {
  if (c.has_endpoint(p)) return -1;
  return in_arc(p, Arc(c.a(), c.b())) ? 0 : 1;
}

inline CaseAnalysis cases_labelled(int d, const Angle& x, const Angle& a, const Angle& y, const Angle& b, int horizon) {
  CaseAnalysis r;
  Chord la(a, b), lx(x, y);
  bool closed = false;
  auto orb = forward_orbit(d, lx, orbit_limit(horizon), &closed);
  std::set<Chord> acc;
  bool forward_cross = false;
  for (std::size_t i = 0; i < orb.size(); ++i)
    if (linked(orb[i], la)) {
      acc.insert(orb[i]);
      if (i > 0) forward_cross = true;
    }
  // the orbit list stops before repeating, so a return to lx shows up as closure
  if (closed && orbit_classify(d, lx).preperiod == 0 && orb.size() > 0) forward_cross = true;

  auto pa = orbit_classify(d, a), pb = orbit_classify(d, b), px = orbit_classify(d, x), py = orbit_classify(d, y);
  bool all_periodic = pa.periodic() && pb.periodic() && px.periodic() && py.periodic();
  bool same_period = all_periodic && pa.period == pb.period && pa.period == px.period && pa.period == py.period;

  if (acc.size() == 1) {
    r.cases[0] = !forward_cross;
    if (same_period && pa.period % 2 == 0) {
      int j = pa.period / 2;
      Angle xj = sigma_n(d, x, j), yj = sigma_n(d, y, j), aj = sigma_n(d, a, j), bj = sigma_n(d, b, j);
      bool flip_x = xj == y && yj == x;
      bool flip_a = aj == b && bj == a;
      bool sep = false;
      if (Chord(aj, bj) != la) {
        int s1 = side(lx, a), s2 = side(lx, bj), s3 = side(lx, b), s4 = side(lx, aj);
        sep = s1 >= 0 && s1 == s2 && s3 >= 0 && s3 == s4 && s1 != s3;
      }
      r.cases[1] = flip_x && (flip_a || sep);
    }
    if (same_period) r.cases[2] = !same_orbit(d, x, y) && !same_orbit(d, a, b);
  }
  if (acc.size() == 2) {
    for (std::size_t i = 1; i < orb.size(); ++i) {
      if (!linked(orb[i], la)) continue;
      // the image keeps the orientation of lx
      Angle xi = sigma_n(d, x, int(i)), yi = sigma_n(d, y, int(i));
      bool p1 = chain_holds({x, a, y, xi, b, yi}, {true, true, false, true, true, false});
      bool p2 = chain_holds({x, yi, a, xi, y, b}, {false, true, true, false, true, true});
      if (p1 || p2) r.cases[3] = true;
    }
  }
  return r;
}

}  // namespace detail

// case list for the accordion of la against the orbit of lx, trying both labellings x < a < y < b
inline CaseAnalysis accordion_cases(int d, const Chord& la, const Chord& lx, int horizon) {
  CaseAnalysis best;
  const Angle &p = la.a(), &q = la.b();
  const Angle &u = lx.a(), &v = lx.b();
  // exactly one endpoint of lx lies in (p, q)
  const Angle& inside = in_arc(u, Arc(p, q)) ? u : v;
  const Angle& outside = inside == u ? v : u;
  // x < a < y < b with {a,b} = {p,q}: x = outside, a = p, y = inside, b = q
  auto r1 = detail::cases_labelled(d, outside, p, inside, q, horizon);
  auto r2 = detail::cases_labelled(d, inside, q, outside, p, horizon);
  for (int i = 0; i < 4; ++i) best.cases[i] = r1.cases[i] || r2.cases[i];
  return best;
}

struct AccordionReport {
  Chord axis;
  std::vector<Chord> members;
  std::vector<Chord> touching;
  int horizon = 0;
  bool order_preserving = false;
  AccordionClass classification = AccordionClass::single;
  CaseAnalysis cases;
};

inline AccordionClass class_from_case(int c) {
  switch (c) {
    case 1: return AccordionClass::wandering_up_to_horizon;
    case 2: return AccordionClass::two_leaf_periodic_flip;
    case 3: return AccordionClass::two_leaf_periodic_disjoint_orbits;
    case 4: return AccordionClass::three_leaf;
  }
  return AccordionClass::periodic_gap;
}

// accordion of the axis against the forward orbit of a second chord
inline AccordionReport accordion(int d, const Chord& axis, const Chord& other, int horizon) {
  AccordionReport r;
  r.axis = axis;
  r.horizon = horizon;
  auto orb = forward_orbit(d, other, orbit_limit(horizon));
  auto acc = accordion_of(axis, orb);
  r.members = acc.members;
  r.touching = acc.touching;
  if (r.members.size() == 1) return r;
  r.order_preserving = linked(axis, other) && order_preserving_accordions(d, axis, other, horizon);
  if (r.order_preserving) {
    r.cases = accordion_cases(d, axis, other, horizon);
    r.classification = class_from_case(r.cases.count() == 1 ? r.cases.which() : 0);
  } else {
    bool periodic = !axis.degenerate() && orbit_classify(d, axis).periodic();
    r.classification = periodic ? AccordionClass::periodic_gap : AccordionClass::wandering_up_to_horizon;
  }
  return r;
}

// accordion of the axis against the leaves of a lamination
inline AccordionReport accordion(const Chord& axis, const FiniteLamination& lam, int horizon) {
  const int d = lam.degree();
  AccordionReport r;
  r.axis = axis;
  r.horizon = horizon;
  std::vector<Chord> leaves(lam.leaves().begin(), lam.leaves().end());
  auto acc = accordion_of(axis, leaves);
  r.members = acc.members;
  r.touching = acc.touching;
  if (r.members.size() == 1) return r;
  r.order_preserving = order_preserving_against(d, axis, leaves, horizon);
  bool periodic = orbit_classify(d, axis).periodic();
  if (r.order_preserving && r.members.size() == 2) {
    r.cases = accordion_cases(d, axis, r.members[1], horizon);
    r.classification = class_from_case(r.cases.count() == 1 ? r.cases.which() : 0);
  } else if (r.order_preserving && r.members.size() == 3) {
    r.classification = AccordionClass::three_leaf;
  } else {
    r.classification = periodic ? AccordionClass::periodic_gap : AccordionClass::wandering_up_to_horizon;
  }
  return r;
}

// ---------------------------------------------------------------- stand alone gaps

struct CompGapResult {
  bool precondition = false;   // linked with mutually order preserving accordions
  bool wandering = true;       // images of B have pairwise disjoint interiors up to the horizon
  bool exact = false;          // the orbit of B closed within the horizon
  int r = -1, k = -1;
  ConvexSet gap;
  int vertex_orbits = 0;
  int vertex_period = 0;
  bool equal_periods = false;
  bool remap_identity = false;
  bool gap_is_image_of_b = false;
  bool structure_holds() const {
    if (!precondition || wandering) return true;
    bool orbits_ok = vertex_orbits >= 2 && vertex_orbits <= 4 && equal_periods;
    bool remap_ok = !remap_identity || (gap_is_image_of_b && gap.size() == 4);
    return orbits_ok && remap_ok;
  }
};

// the interiors of two inscribed polygons meet
inline bool interiors_meet(const ConvexSet& p, const ConvexSet& q) {
  if (p.size() < 3 || q.size() < 3) return false;
  auto inside_closed_hole = [](const ConvexSet& s, const ConvexSet& t) {
    for (const auto& h : s.holes()) {
      bool all = std::all_of(t.vertices().begin(), t.vertices().end(), [&](const Angle& v) { return in_arc(v, h, true); });
      if (all) return true;
    }
    return false;
  };
  return !inside_closed_hole(p, q) && !inside_closed_hole(q, p);
}

inline CompGapResult compgap_analyze(int d, const Chord& l1, const Chord& l2, int horizon) {
  CompGapResult res;
  res.precondition = order_preserving_accordions(d, l1, l2, horizon);
  if (!res.precondition) return res;
  std::vector<ConvexSet> imgs{ConvexSet({l1.a(), l1.b(), l2.a(), l2.b()})};
  std::set<ConvexSet> seen{imgs[0]};
  while (static_cast<int>(imgs.size()) <= horizon) {
    ConvexSet nxt = imgs.back().image(d);
    if (!seen.insert(nxt).second) {
      res.exact = true;
      break;
    }
    imgs.push_back(nxt);
  }
  if (res.exact) {
    // extend with the repeating part so every pair along the cycle is compared
    ConvexSet nxt = imgs.back().image(d);
    std::size_t start = std::find(imgs.begin(), imgs.end(), nxt) - imgs.begin();
    std::size_t len = imgs.size() - start;
    for (std::size_t i = 0; i < len; ++i) imgs.push_back(imgs[start + i]);
  }
  const int n = static_cast<int>(imgs.size());
  for (int r = 0; r < n && res.r < 0; ++r)
    for (int k = 1; r + k < n; ++k)
      if (interiors_meet(imgs[r], imgs[r + k])) {
        res.r = r;
        res.k = k;
        break;
      }
  if (res.r < 0) return res;
  res.wandering = false;

  std::set<ConvexSet> pieces;
  std::vector<Angle> verts;
  ConvexSet cur = imgs[res.r];
  while (pieces.insert(cur).second) {
    verts.insert(verts.end(), cur.vertices().begin(), cur.vertices().end());
    for (int i = 0; i < res.k; ++i) cur = cur.image(d);
  }
  res.gap = ConvexSet(verts);
  res.gap_is_image_of_b = res.gap == imgs[res.r];

  std::set<Angle> covered;
  std::set<int> periods;
  for (const auto& v : res.gap.vertices()) {
    auto o = orbit_classify(d, v);
    periods.insert(o.periodic() ? o.period : 0);
    if (covered.count(v)) continue;
    ++res.vertex_orbits;
    for (std::size_t i = o.preperiod; i < o.orbit.size(); ++i) covered.insert(o.orbit[i]);
  }
  res.equal_periods = periods.size() == 1 && *periods.begin() > 0;
  res.vertex_period = *periods.begin();
  if (auto gp = set_period(d, res.gap)) {
    res.remap_identity = true;
    for (const auto& v : res.gap.vertices())
      if (sigma_n(d, v, *gp) != v) res.remap_identity = false;
  }
  return res;
}

// ---------------------------------------------------------------- search

struct LinkedPairSearch {
  std::vector<Chord> candidates;
  std::vector<std::pair<Chord, Chord>> pairs;  // linked, mutually order preserving
};

// chords between points of equal period whose forward orbit is pairwise unlinked
inline std::vector<Chord> orbit_unlinked_chords(int d, const std::vector<Angle>& pts) {
  std::vector<Chord> out;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      auto oi = orbit_classify(d, pts[i]), oj = orbit_classify(d, pts[j]);
      if (!oi.periodic() || !oj.periodic() || oi.period != oj.period) continue;
      Chord c(pts[i], pts[j]);
      auto orb = forward_orbit(d, c, 1024);
      if (std::any_of(orb.begin(), orb.end(), [&](const Chord& e) { return e.degenerate() || is_critical(d, e); })) continue;
      if (!find_linked_pair(orb)) out.push_back(c);
    }
  return out;
}

inline LinkedPairSearch search_linked_pairs(int d, const std::vector<long>& denominators, int horizon) {
  std::set<Angle> pts;
  for (long q : denominators)
    for (long p = 0; p < q; ++p) pts.insert(Angle(p, q));
  LinkedPairSearch s;
  s.candidates = orbit_unlinked_chords(d, {pts.begin(), pts.end()});
  for (std::size_t i = 0; i < s.candidates.size(); ++i)
    for (std::size_t j = 0; j < s.candidates.size(); ++j) {
      if (i == j || !linked(s.candidates[i], s.candidates[j])) continue;
      if (order_preserving_accordions(d, s.candidates[i], s.candidates[j], horizon))
        s.pairs.emplace_back(s.candidates[i], s.candidates[j]);
    }
  return s;
}

// ---------------------------------------------------------------- smart criticality

struct SpikeChoice {
  ChordCollection spikes;
  bool avoided = true;  // no spike has the named endpoint
};

inline SpikeChoice choose_unlinked_spikes(const QcPortrait& p, const Chord& l1, std::optional<Angle> avoid = std::nullopt) {
  SpikeChoice out;
  for (const auto& q : p.quads) {
    auto sp = q.spikes();
    std::vector<Chord> ok;
    for (const auto& s : sp)
      if (!linked(s, l1)) ok.push_back(s);
    if (ok.empty()) throw Error("leaf " + l1.str() + " crosses both spikes of " + q.str());
    const Chord* pick = &ok[0];
    if (avoid)
      for (const auto& s : ok)
        if (!s.has_endpoint(*avoid)) {
          pick = &s;
          break;
        }
    if (avoid && pick->has_endpoint(*avoid)) out.avoided = false;
    out.spikes.push_back(*pick);
  }
  if (!validate_collection(p.degree, out.spikes).is_full_collection) throw Error("chosen spikes are not a full collection");
  return out;
}

struct CollapseResult {
  bool collapse = false;
  bool special_cluster = false;
  std::vector<Angle> chain1, chain2;
};

namespace detail {

// monotone path of spikes from u to v, walking in the positive or negative direction
inline std::optional<std::vector<Angle>> spike_chain(const QcPortrait& p, const Angle& u, const Angle& v) {
  std::vector<Chord> sp;
  for (const auto& q : p.quads)
    for (const auto& s : q.spikes())
      if (!s.degenerate()) sp.push_back(s);
  for (int dir = 0; dir < 2; ++dir) {
    auto ahead = [&](const Angle& from, const Angle& to) { return dir == 0 ? fwd(from, to) : fwd(to, from); };
    std::vector<Angle> path{u};
    Angle cur = u;
    Q travelled = 0, total = ahead(u, v);
    bool progress = true;
    while (cur != v && progress) {
      progress = false;
      // next spike endpoint that stays between cur and v, farthest first
      std::optional<Angle> best;
      for (const auto& s : sp) {
        if (!s.has_endpoint(cur)) continue;
        Angle w = s.other(cur);
        Q step = ahead(cur, w);
        if (step == 0 || travelled + step > total) continue;
        if (!best || step > ahead(cur, *best)) best = w;
      }
      if (best) {
        travelled += ahead(cur, *best);
        cur = *best;
        path.push_back(cur);
        progress = true;
      }
    }
    if (cur == v) return path;
  }
  return std::nullopt;
}

}  // namespace detail

inline CollapseResult detect_collapse(int d, const Chord& l1, const Chord& l2, const QcPortrait& p1, const QcPortrait& p2,
                                      const std::vector<ConvexSet>& special_clusters = {}) {
  CollapseResult r;
  for (const auto& c : special_clusters)
    if (c.contains(l1.a()) && c.contains(l1.b()) && c.contains(l2.a()) && c.contains(l2.b())) {
      r.special_cluster = true;
      return r;
    }
  for (const auto& e1 : {l1.a(), l1.b()})
    for (const auto& e2 : {l2.a(), l2.b()}) {
      if (e1 == e2 || sigma(d, e1) != sigma(d, e2)) continue;
      auto c1 = detail::spike_chain(p1, e1, e2);
      auto c2 = detail::spike_chain(p2, e1, e2);
      if (c1 && c2) {
        r.collapse = true;
        r.chain1 = *c1;
        r.chain2 = *c2;
        return r;
      }
    }
  return r;
}

// images of two leaves meet: equal, share an endpoint or cross
inline bool chords_meet(const Chord& a, const Chord& b) {
  return a == b || a.has_endpoint(b.a()) || a.has_endpoint(b.b()) || linked(a, b);
}

}  // namespace lamina

#endif  // LAMINA_ACCORDION_HPP
