#ifndef LAMINA_QUAD_MINOR_HPP
#define LAMINA_QUAD_MINOR_HPP

#include "lamina/lamination.hpp"

namespace lamina {

struct CriticalStrip {
  Chord base;
  std::vector<Chord> boundary_chords;  // empty for a degenerate base
  std::vector<Arc> arcs;

  bool degenerate() const { return boundary_chords.empty(); }

  // the chord meets the open strip
  bool meets_interior(const Chord& c) const {
    if (degenerate() || c.degenerate()) return false;
    for (const auto& b : boundary_chords) {
      if (c == b) return false;
      if (linked(c, b)) return true;
    }
    auto in_closed = [&](const Angle& x) {
      return std::any_of(arcs.begin(), arcs.end(), [&](const Arc& a) { return in_arc(x, a, true); });
    };
    return in_closed(c.a()) && in_closed(c.b());
  }
};

inline CriticalStrip critical_strip(const Chord& c) {
  CriticalStrip s{c, {}, {}};
  if (c.degenerate()) return s;
  Q len = c.length();
  if (len >= Q(1, 3)) throw Error("critical strip needs a chord shorter than 1/3, got " + c.str());
  const Angle& start = fwd(c.a(), c.b()) == len ? c.a() : c.b();
  Q h = start.value() / 2, l = len / 2;
  Angle p0(h), p1(h + l), q0(h + Q(1, 2)), q1(h + Q(1, 2) + l);
  s.arcs = {Arc(p0, p1), Arc(q0, q1)};
  s.boundary_chords = {Chord(p1, q0), Chord(q1, p0)};
  std::sort(s.boundary_chords.begin(), s.boundary_chords.end());
  return s;
}

struct StripResult {
  bool passes = true;
  bool exact = false;          // orbit closed or collapsed within the horizon
  std::optional<int> failing_n;
  std::vector<Chord> orbit;    // images n = 1, 2, ... that were examined
};

inline StripResult strip_test(const Chord& c, int horizon) {
  StripResult r;
  if (c.degenerate()) {
    r.exact = true;
    return r;
  }
  CriticalStrip s = critical_strip(c);
  std::set<Chord> seen{c};
  Chord cur = c;
  for (int n = 1; n <= horizon; ++n) {
    cur = chord_image(2, cur);
    r.orbit.push_back(cur);
    if (s.meets_interior(cur)) {
      r.passes = false;
      r.exact = true;
      r.failing_n = n;
      return r;
    }
    if (cur.degenerate() || !seen.insert(cur).second) {
      r.exact = true;
      return r;
    }
  }
  return r;
}

struct MinorInfo {
  Chord minor;
  std::vector<Chord> majors;
};

inline MinorInfo minor_of(const FiniteLamination& lam) {
  if (lam.degree() != 2) throw Error("minor_of needs a quadratic lamination");
  if (lam.size() == 0) throw Error("minor_of needs a nonempty lamination");
  Q best = -1;
  std::vector<Chord> longest;
  for (const auto& c : lam.leaves()) {
    Q l = c.length();
    if (l > best) {
      best = l;
      longest.clear();
    }
    if (l == best) longest.push_back(c);
  }
  Chord m = chord_image(2, longest.front());
  for (const auto& c : longest)
    if (chord_image(2, c) != m) throw Error("longest leaves " + longest.front().str() + " and " + c.str() + " have different images");
  return {m, longest};
}

// all angles of sigma_2-period at most n
inline std::vector<Angle> periodic_points(int n) {
  std::set<Angle> pts;
  for (int k = 1; k <= n; ++k) {
    long q = (1L << k) - 1;
    for (long p = 0; p < q; ++p) pts.insert(Angle(p, q));
  }
  return {pts.begin(), pts.end()};
}

struct QmlOptions {
  bool literal_image = false;  // return sigma_2 of each passing chord instead of the chord itself
  int horizon = 64;
};

inline std::vector<Chord> qml_enumerate(int period_bound, QmlOptions opt = {}) {
  if (period_bound < 1) throw Error("period bound must be positive");
  auto pts = periodic_points(period_bound);
  std::set<Chord> out;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      Chord c(pts[i], pts[j]);
      if (c.length() >= Q(1, 3)) continue;
      auto r = strip_test(c, opt.horizon);
      if (!r.passes || !r.exact) continue;
      Chord m = opt.literal_image ? chord_image(2, c) : c;
      if (!m.degenerate()) out.insert(m);
    }
  std::vector<Chord> v(out.begin(), out.end());
  if (!opt.literal_image)
    if (auto w = find_linked_pair(v)) throw Error("enumerated minors cross: " + w->first.str() + " " + w->second.str());
  return v;
}

// the collapsing quadrilateral over a minor: the full preimage of its endpoints
inline ConvexSet minor_quad(const Chord& m) {
  auto a = preimages(2, m.a()), b = preimages(2, m.b());
  return ConvexSet({a[0], a[1], b[0], b[1]});
}

struct MinorCheck {
  bool built = false;
  bool invariant = false;
  bool minor_matches = false;
  std::string error;
  bool ok() const { return built && invariant && minor_matches; }
};

// pulls back the quadrilateral over m and checks that m comes back as the minor
inline MinorCheck minor_via_pullback(const Chord& m, int depth) {
  MinorCheck r;
  try {
    auto lam = pullback_build(portrait_from_sets(2, {minor_quad(m)}), depth);
    r.built = true;
    r.invariant = check_invariance(lam, depth).ok();
    r.minor_matches = minor_of(lam).minor == m;
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

}  // namespace lamina

#endif  // LAMINA_QUAD_MINOR_HPP
