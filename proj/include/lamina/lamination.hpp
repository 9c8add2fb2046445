#ifndef LAMINA_LAMINATION_HPP
#define LAMINA_LAMINATION_HPP

#include "lamina/chords.hpp"

#include <tuple>
#include <unordered_map>
#include <variant>

namespace lamina {

struct PortraitError : Error {
  using Error::Error;
};

class FiniteLamination {
 public:
  explicit FiniteLamination(int d = 2) : d_(d) {
    if (d < 2) throw Error("degree must be at least 2");
  }
  FiniteLamination(int d, const std::vector<Chord>& leaves) : FiniteLamination(d) {
    for (const auto& c : leaves) add(c);
  }

  int degree() const { return d_; }
  const std::set<Chord>& leaves() const { return leaves_; }
  std::size_t size() const { return leaves_.size(); }
  bool contains(const Chord& c) const { return leaves_.count(c) > 0; }

  bool add(const Chord& c) {
    if (c.degenerate()) throw Error("degenerate chord " + c.str() + " cannot be a leaf");
    return leaves_.insert(c).second;
  }

  bool subset_of(const FiniteLamination& o) const {
    return d_ == o.d_ && std::includes(o.leaves_.begin(), o.leaves_.end(), leaves_.begin(), leaves_.end());
  }

  friend bool operator==(const FiniteLamination& x, const FiniteLamination& y) {
    return x.d_ == y.d_ && x.leaves_ == y.leaves_;
  }

 private:
  int d_;
  std::set<Chord> leaves_;
};

// first linked pair found, in O(n log n)
inline std::optional<std::pair<Chord, Chord>> find_linked_pair(std::vector<Chord> cs) {
  std::sort(cs.begin(), cs.end(), [](const Chord& p, const Chord& q) {
    if (p.a() != q.a()) return p.a() < q.a();
    return q.b() < p.b();
  });
  std::vector<const Chord*> stack;
  for (const auto& c : cs) {
    if (c.degenerate()) continue;
    while (!stack.empty() && stack.back()->b() <= c.a()) stack.pop_back();
    if (!stack.empty()) {
      const Chord& t = *stack.back();
      if (t.a() < c.a() && c.a() < t.b() && t.b() < c.b()) return std::make_pair(t, c);
    }
    stack.push_back(&c);
  }
  return std::nullopt;
}

inline std::optional<std::pair<Chord, Chord>> check_unlinked(const FiniteLamination& lam) {
  return find_linked_pair(std::vector<Chord>(lam.leaves().begin(), lam.leaves().end()));
}

// ---------------------------------------------------------------- orbits

template <class T>
struct OrbitInfo {
  int preperiod = 0;
  int period = 0;
  std::vector<T> orbit;  // x, f(x), ..., up to the first repeat
  bool periodic() const { return preperiod == 0; }
};

template <class T, class F>
OrbitInfo<T> orbit_of(const T& x, F f, std::size_t cap) {
  std::map<T, int> seen;
  OrbitInfo<T> r;
  T cur = x;
  while (true) {
    auto it = seen.find(cur);
    if (it != seen.end()) {
      r.preperiod = it->second;
      r.period = static_cast<int>(r.orbit.size()) - it->second;
      return r;
    }
    if (r.orbit.size() >= cap) throw Error("orbit longer than " + std::to_string(cap));
    seen.emplace(cur, static_cast<int>(r.orbit.size()));
    r.orbit.push_back(cur);
    cur = f(cur);
  }
}

inline OrbitInfo<Angle> orbit_classify(int d, const Angle& a, std::size_t cap = 1u << 22) {
  return orbit_of(a, [d](const Angle& x) { return sigma(d, x); }, cap);
}

inline OrbitInfo<Chord> orbit_classify(int d, const Chord& c, std::size_t cap = 1u << 22) {
  return orbit_of(c, [d](const Chord& x) { return chord_image(d, x); }, cap);
}

inline int period_of(int d, const Angle& a) {
  auto o = orbit_classify(d, a);
  return o.preperiod == 0 ? o.period : 0;
}

// ---------------------------------------------------------------- gaps

struct Gap {
  std::vector<Angle> vertices;  // positive order, starting at the smallest
  std::vector<bool> arc_after;  // side vertices[i] -> vertices[i+1] is a circle arc
  bool whole_disk = false;

  bool finite() const {
    return !whole_disk && std::none_of(arc_after.begin(), arc_after.end(), [](bool b) { return b; });
  }
  std::vector<Chord> edges() const {
    std::vector<Chord> e;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (!arc_after[i]) e.emplace_back(vertices[i], vertices[(i + 1) % vertices.size()]);
    return e;
  }
  std::vector<Arc> arcs() const {
    std::vector<Arc> r;
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (arc_after[i]) r.emplace_back(vertices[i], vertices[(i + 1) % vertices.size()]);
    return r;
  }
  using Item = std::variant<Angle, Chord, Arc>;
  std::vector<Item> boundary() const {
    std::vector<Item> b;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      const Angle& v = vertices[i];
      const Angle& w = vertices[(i + 1) % vertices.size()];
      b.emplace_back(v);
      if (arc_after[i])
        b.emplace_back(Arc(v, w));
      else
        b.emplace_back(Chord(v, w));
    }
    return b;
  }
  ConvexSet hull() const { return ConvexSet(vertices); }
  bool has_vertex(const Angle& x) const { return std::binary_search(vertices.begin(), vertices.end(), x); }
  // x lies on the closed boundary of the gap within the circle
  bool touches(const Angle& x) const {
    if (whole_disk) return true;
    if (has_vertex(x)) return true;
    for (const auto& a : arcs())
      if (in_arc(x, a)) return true;
    return false;
  }
  // the arc (x, x+eps) lies on the boundary of the gap
  bool owns(const Angle& x) const {
    if (whole_disk) return true;
    for (const auto& a : arcs())
      if (x == a.from() || in_arc(x, a)) return true;
    return false;
  }

  friend bool operator==(const Gap& g, const Gap& h) {
    return g.whole_disk == h.whole_disk && g.vertices == h.vertices && g.arc_after == h.arc_after;
  }
};

inline std::vector<Gap> gaps(const FiniteLamination& lam) {
  if (lam.size() == 0) {
    Gap g;
    g.whole_disk = true;
    return {g};
  }
  std::vector<Angle> V;
  for (const auto& c : lam.leaves()) {
    V.push_back(c.a());
    V.push_back(c.b());
  }
  std::sort(V.begin(), V.end());
  V.erase(std::unique(V.begin(), V.end()), V.end());
  const std::size_t n = V.size();
  auto idx = [&](const Angle& x) { return std::size_t(std::lower_bound(V.begin(), V.end(), x) - V.begin()); };

  // neighbours sorted by forward distance
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& c : lam.leaves()) {
    auto i = idx(c.a()), j = idx(c.b());
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  for (std::size_t i = 0; i < n; ++i)
    std::sort(adj[i].begin(), adj[i].end(), [&](std::size_t x, std::size_t y) { return fwd(V[i], V[x]) < fwd(V[i], V[y]); });

  // element: (from, to, is_arc); an arc runs from i to i+1
  struct El {
    std::size_t from, to;
    bool arc;
    bool operator<(const El& o) const { return std::tie(from, to, arc) < std::tie(o.from, o.to, o.arc); }
    bool operator==(const El& o) const { return from == o.from && to == o.to && arc == o.arc; }
  };
  auto next = [&](const El& e) -> El {
    std::size_t p = e.to;
    const auto& nb = adj[p];
    if (e.arc) return El{p, nb.back(), false};
    auto pos = std::find(nb.begin(), nb.end(), e.from) - nb.begin();
    if (pos == 0) return El{p, (p + 1) % n, true};
    return El{p, nb[pos - 1], false};
  };

  std::set<El> visited;
  std::vector<Gap> out;
  auto walk = [&](const El& start) {
    if (visited.count(start)) return;
    Gap g;
    El e = start;
    do {
      visited.insert(e);
      g.vertices.push_back(V[e.from]);
      g.arc_after.push_back(e.arc);
      e = next(e);
    } while (!(e == start));
    auto m = std::min_element(g.vertices.begin(), g.vertices.end()) - g.vertices.begin();
    std::rotate(g.vertices.begin(), g.vertices.begin() + m, g.vertices.end());
    std::rotate(g.arc_after.begin(), g.arc_after.begin() + m, g.arc_after.end());
    out.push_back(std::move(g));
  };
  for (std::size_t i = 0; i < n; ++i) walk(El{i, (i + 1) % n, true});
  for (std::size_t i = 0; i < n; ++i)
    for (auto j : adj[i]) walk(El{i, j, false});
  std::sort(out.begin(), out.end(), [](const Gap& x, const Gap& y) {
    if (x.vertices != y.vertices) return x.vertices < y.vertices;
    return x.arc_after < y.arc_after;
  });
  return out;
}

// degree of sigma_d on a finite polygon given by positively ordered vertices
inline int polygon_degree(int d, const std::vector<Angle>& vs) {
  std::vector<Angle> img;
  for (const auto& v : vs) img.push_back(sigma(d, v));
  if (std::all_of(img.begin(), img.end(), [&](const Angle& x) { return x == img[0]; }))
    return static_cast<int>(vs.size());
  Q total = 0;
  for (std::size_t i = 0; i < img.size(); ++i) total += fwd(img[i], img[(i + 1) % img.size()]);
  return static_cast<int>(total.get_num().get_si() / total.get_den().get_si());
}

inline int gap_degree(int d, const Gap& g) {
  if (!g.finite()) throw Error("gap degree is only defined for finite gaps");
  return polygon_degree(d, g.vertices);
}

// ---------------------------------------------------------------- invariance

struct InvarianceReport {
  std::vector<Chord> forward_failures;   // image is neither a point nor a leaf
  std::vector<Chord> backward_failures;  // no leaf maps onto it
  std::vector<Chord> sibling_failures;   // no sibling collection inside the lamination
  bool ok() const { return forward_failures.empty() && backward_failures.empty() && sibling_failures.empty(); }
};

// leaves of preperiod >= boundary_depth are exempt from the backward and sibling conditions
inline InvarianceReport check_invariance(const FiniteLamination& lam, std::optional<int> boundary_depth = std::nullopt) {
  const int d = lam.degree();
  InvarianceReport r;
  std::set<Chord> images;
  for (const auto& c : lam.leaves()) {
    Chord im = chord_image(d, c);
    if (!im.degenerate()) images.insert(im);
  }
  for (const auto& c : lam.leaves()) {
    Chord im = chord_image(d, c);
    if (!im.degenerate() && !lam.contains(im)) r.forward_failures.push_back(c);
    if (boundary_depth && orbit_classify(d, c).preperiod >= *boundary_depth) continue;
    if (!images.count(c)) r.backward_failures.push_back(c);
    if (im.degenerate()) continue;
    bool found = false;
    for (const auto& coll : sibling_collections(d, c)) {
      if (std::all_of(coll.begin(), coll.end(), [&](const Chord& s) { return lam.contains(s); })) {
        found = true;
        break;
      }
    }
    if (!found) r.sibling_failures.push_back(c);
  }
  return r;
}

// ---------------------------------------------------------------- pullback

struct PullbackPortrait {
  int degree = 2;
  std::vector<ConvexSet> sets;  // critical sets; their edges are leaves
  ChordCollection spikes;       // full collection of critical chords inside the sets
};

inline bool set_is_critical(int d, const ConvexSet& s) {
  if (s.size() < 2) return false;
  if (s.size() == 2) return is_critical(d, Chord(s.vertices()[0], s.vertices()[1]));
  return polygon_degree(d, s.vertices()) > 1;
}

// chooses deg-1 spikes per set, greedily and without loops or crossings
inline PullbackPortrait portrait_from_sets(int d, std::vector<ConvexSet> sets) {
  PullbackPortrait p{d, {}, {}};
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  for (const auto& s : sets) {
    if (!set_is_critical(d, s)) throw PortraitError("set " + s.str() + " is not critical");
    int k = s.size() == 2 ? 2 : polygon_degree(d, s.vertices());
    int need = k - 1;
    const auto& v = s.vertices();
    for (std::size_t i = 0; i < v.size() && need > 0; ++i)
      for (std::size_t j = i + 1; j < v.size() && need > 0; ++j) {
        Chord c(v[i], v[j]);
        if (!is_critical(d, c)) continue;
        if (std::find(p.spikes.begin(), p.spikes.end(), c) != p.spikes.end()) {
          --need;
          continue;
        }
        ChordCollection trial = p.spikes;
        trial.push_back(c);
        auto rep = validate_collection(d, trial);
        if (rep.has_loop || !rep.pairwise_unlinked) continue;
        p.spikes.push_back(c);
        --need;
      }
  }
  p.sets = std::move(sets);
  return p;
}

// groups chords sharing endpoints; each group spans one critical set
inline PullbackPortrait portrait_from_chords(int d, const ChordCollection& cc) {
  std::map<Angle, Angle> parent;
  std::function<Angle(const Angle&)> find = [&](const Angle& x) -> Angle {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return x;
    return it->second = find(it->second);
  };
  for (const auto& c : cc) {
    if (c.degenerate()) throw PortraitError("degenerate chord in portrait");
    parent.emplace(c.a(), c.a());
    parent.emplace(c.b(), c.b());
    parent[find(c.a())] = find(c.b());
  }
  std::map<Angle, std::vector<Angle>> groups;
  for (const auto& [x, _] : parent) groups[find(x)].push_back(x);
  std::vector<ConvexSet> sets;
  for (auto& [_, vs] : groups) sets.emplace_back(vs);
  return portrait_from_sets(d, std::move(sets));
}

namespace detail {

struct LiftContext {
  int d;
  std::vector<Gap> comps;
  std::vector<Chord> barriers;
  std::vector<ConvexSet> sets;

  bool admissible(const Chord& c) const {
    for (const auto& b : barriers)
      if (linked(c, b)) return false;
    for (const auto& s : sets)
      if (s.size() > 2 && s.contains(c.a()) && s.contains(c.b()) && !s.is_edge(c)) return false;
    return true;
  }

  std::vector<Chord> lifts(const Chord& l) const {
    auto px = preimages(d, l.a());
    auto py = preimages(d, l.b());
    std::vector<Chord> out;
    for (const auto& u : comps) {
      std::optional<Chord> best;
      int best_score = -1;
      for (const auto& x : px) {
        if (!u.touches(x)) continue;
        for (const auto& y : py) {
          if (!u.touches(y) || x == y) continue;
          Chord c(x, y);
          if (!admissible(c)) continue;
          int score = int(u.owns(x)) + int(u.owns(y));
          if (score > best_score || (score == best_score && c < *best)) {
            best = c;
            best_score = score;
          }
        }
      }
      if (!best) throw PortraitError("leaf " + l.str() + " has no admissible lift");
      out.push_back(*best);
    }
    return out;
  }
};

}  // namespace detail

inline void validate_portrait(const PullbackPortrait& p) {
  const int d = p.degree;
  auto rep = validate_collection(d, p.spikes);
  if (!rep.is_full_collection || !rep.pairwise_unlinked)
    throw PortraitError("critical chords of the portrait do not form a full collection");
  for (const auto& s : p.sets)
    if (!set_is_critical(d, s)) throw PortraitError("set " + s.str() + " is not critical");
  for (const auto& sp : p.spikes) {
    bool inside = std::any_of(p.sets.begin(), p.sets.end(),
                              [&](const ConvexSet& s) { return s.contains(sp.a()) && s.contains(sp.b()); });
    if (!inside) throw PortraitError("spike " + sp.str() + " lies outside the critical sets");
  }
  std::vector<Chord> all = p.spikes;
  for (const auto& s : p.sets)
    for (const auto& e : s.edges()) all.push_back(e);
  if (auto w = find_linked_pair(all))
    throw PortraitError("portrait chords " + w->first.str() + " and " + w->second.str() + " cross");
}

inline FiniteLamination pullback_build(const PullbackPortrait& p, int depth, std::size_t orbit_cap = 4096) {
  validate_portrait(p);
  const int d = p.degree;
  detail::LiftContext ctx{d, {}, p.spikes, p.sets};
  for (const auto& s : p.sets)
    for (const auto& e : s.edges()) ctx.barriers.push_back(e);
  ctx.comps = gaps(FiniteLamination(d, p.spikes));
  if (ctx.comps.size() != static_cast<std::size_t>(d)) throw PortraitError("spikes do not cut the disk into d pieces");

  FiniteLamination lam(d);
  std::vector<Chord> frontier;
  auto push = [&](const Chord& c) {
    if (lam.add(c)) frontier.push_back(c);
  };
  for (const auto& s : p.sets)
    for (const auto& e : s.edges()) {
      auto o = orbit_classify(d, e, orbit_cap);
      for (const auto& c : o.orbit)
        if (!c.degenerate()) push(c);
        else break;
    }
  for (const auto& c : lam.leaves()) {
    for (const auto& b : ctx.barriers)
      if (linked(c, b)) throw PortraitError("forward orbit leaf " + c.str() + " crosses portrait chord " + b.str());
    if (!ctx.admissible(c)) throw PortraitError("forward orbit leaf " + c.str() + " is a diagonal of a critical set");
  }
  if (auto w = check_unlinked(lam))
    throw PortraitError("forward orbits cross: " + w->first.str() + " and " + w->second.str());

  for (int gen = 1; gen <= depth; ++gen) {
    std::vector<Chord> cur;
    cur.swap(frontier);
    for (const auto& l : cur)
      for (const auto& c : ctx.lifts(l)) push(c);
  }
  if (auto w = check_unlinked(lam))
    throw PortraitError("pullback produced crossing leaves " + w->first.str() + " and " + w->second.str());
  return lam;
}

inline FiniteLamination pullback_build(int d, const ChordCollection& portrait, int depth, std::size_t orbit_cap = 4096) {
  return pullback_build(portrait_from_chords(d, portrait), depth, orbit_cap);
}

// ---------------------------------------------------------------- critical sets

struct CriticalAnalysis {
  std::vector<Chord> critical_leaves;
  std::vector<Gap> critical_gaps;             // finite gaps of degree > 1
  std::vector<ConvexSet> all_critical_gaps;
  std::vector<ConvexSet> clusters;
  std::vector<ConvexSet> critical_sets;       // critical gaps and free critical leaves
};

inline CriticalAnalysis critical_analysis(const FiniteLamination& lam) {
  const int d = lam.degree();
  CriticalAnalysis r;
  for (const auto& c : lam.leaves())
    if (is_critical(d, c)) r.critical_leaves.push_back(c);
  for (const auto& g : gaps(lam)) {
    if (!g.finite()) continue;
    if (gap_degree(d, g) > 1) {
      r.critical_gaps.push_back(g);
      if (g.hull().image(d).size() == 1) r.all_critical_gaps.push_back(g.hull());
    }
  }
  auto on_all_critical = [&](const Chord& c) {
    return std::any_of(r.all_critical_gaps.begin(), r.all_critical_gaps.end(),
                       [&](const ConvexSet& s) { return s.is_edge(c); });
  };

  // clusters: all-critical gaps glued along shared edges
  std::size_t n = r.all_critical_gaps.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (const auto& e : r.all_critical_gaps[i].edges())
        if (r.all_critical_gaps[j].is_edge(e)) parent[find(i)] = find(j);
  std::map<std::size_t, std::vector<Angle>> merged;
  for (std::size_t i = 0; i < n; ++i) {
    auto& m = merged[find(i)];
    const auto& v = r.all_critical_gaps[i].vertices();
    m.insert(m.end(), v.begin(), v.end());
  }
  for (auto& [_, vs] : merged) r.clusters.emplace_back(vs);
  for (const auto& c : r.critical_leaves)
    if (!on_all_critical(c)) r.clusters.emplace_back(c);
  std::sort(r.clusters.begin(), r.clusters.end());

  for (const auto& g : r.critical_gaps) r.critical_sets.push_back(g.hull());
  for (const auto& c : r.critical_leaves)
    if (!on_all_critical(c)) r.critical_sets.emplace_back(c);
  std::sort(r.critical_sets.begin(), r.critical_sets.end());
  r.critical_sets.erase(std::unique(r.critical_sets.begin(), r.critical_sets.end()), r.critical_sets.end());
  return r;
}

// ---------------------------------------------------------------- structural checks

// smallest k >= 1 with sigma^k(S) == S, if any up to the cap
inline std::optional<int> set_period(int d, const ConvexSet& s, int cap = 256) {
  ConvexSet cur = s;
  for (int k = 1; k <= cap; ++k) {
    cur = cur.image(d);
    if (cur.size() < s.size()) return std::nullopt;
    if (cur == s) return k;
  }
  return std::nullopt;
}

struct GapTransitivity {
  ConvexSet gap;
  int period = 0;
  int vertex_orbits = 0;
  bool all_fixed = false;
  bool ok = false;
};

// periodic finite gaps: the remap has at most d-1 vertex orbits unless it fixes a d-gon pointwise
inline std::vector<GapTransitivity> check_gap_transitivity(const FiniteLamination& lam) {
  const int d = lam.degree();
  std::vector<GapTransitivity> out;
  for (const auto& g : gaps(lam)) {
    if (!g.finite()) continue;
    ConvexSet s = g.hull();
    auto k = set_period(d, s);
    if (!k) continue;
    GapTransitivity t{s, *k, 0, true, false};
    std::set<Angle> seen;
    for (const auto& v : s.vertices()) {
      if (seen.count(v)) continue;
      ++t.vertex_orbits;
      Angle x = v;
      while (!seen.count(x)) {
        seen.insert(x);
        x = sigma_n(d, x, *k);
      }
      if (sigma_n(d, v, *k) != v) t.all_fixed = false;
    }
    t.ok = t.vertex_orbits <= d - 1 || (static_cast<int>(s.size()) == d && t.all_fixed);
    out.push_back(t);
  }
  return out;
}

// a leaf with a periodic endpoint has its other endpoint (pre)periodic of the same period
inline std::vector<Chord> check_same_period(const FiniteLamination& lam) {
  const int d = lam.degree();
  std::vector<Chord> bad;
  for (const auto& c : lam.leaves()) {
    auto oa = orbit_classify(d, c.a());
    auto ob = orbit_classify(d, c.b());
    if ((oa.periodic() || ob.periodic()) && oa.period != ob.period) bad.push_back(c);
  }
  return bad;
}

// edges of periodic gaps are (pre)periodic or (pre)critical
inline std::vector<Chord> check_periodic_gap_edges(const FiniteLamination& lam) {
  const int d = lam.degree();
  std::vector<Chord> bad;
  for (const auto& g : gaps(lam)) {
    if (!g.finite() || !set_period(d, g.hull())) continue;
    for (const auto& e : g.edges()) {
      auto o = orbit_classify(d, e);
      bool precritical = o.orbit.back().degenerate();
      if (!precritical && o.period == 0) bad.push_back(e);
    }
  }
  return bad;
}

}  // namespace lamina

#endif  // LAMINA_LAMINATION_HPP
