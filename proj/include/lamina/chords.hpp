#ifndef LAMINA_CHORDS_HPP
#define LAMINA_CHORDS_HPP

#include "lamina/circle.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <utility>

namespace lamina {

class Chord {
 public:
  Chord() = default;
  Chord(const Angle& x, const Angle& y) : a_(std::min(x, y)), b_(std::max(x, y)) {}

  const Angle& a() const { return a_; }
  const Angle& b() const { return b_; }
  bool degenerate() const { return a_ == b_; }
  bool has_endpoint(const Angle& x) const { return a_ == x || b_ == x; }
  const Angle& other(const Angle& x) const { return x == a_ ? b_ : a_; }
  Q length() const { return shortest_dist(a_, b_); }
  std::string str() const { return a_.str() + " " + b_.str(); }

  friend bool operator==(const Chord& p, const Chord& q) { return p.a_ == q.a_ && p.b_ == q.b_; }
  friend bool operator!=(const Chord& p, const Chord& q) { return !(p == q); }
  friend bool operator<(const Chord& p, const Chord& q) {
    if (p.a_ != q.a_) return p.a_ < q.a_;
    return p.b_ < q.b_;
  }
  friend std::ostream& operator<<(std::ostream& os, const Chord& c) {
    return os << "{" << c.a_ << "," << c.b_ << "}";
  }

 private:
  Angle a_, b_;
};

using ChordCollection = std::vector<Chord>;

inline Chord make_chord(long p1, long q1, long p2, long q2) { return Chord(Angle(p1, q1), Angle(p2, q2)); }

// distinct nondegenerate chords whose endpoints strictly interleave
inline bool linked(const Chord& c1, const Chord& c2) {
  if (c1.degenerate() || c2.degenerate() || c1 == c2) return false;
  const Angle &a1 = c1.a(), &b1 = c1.b(), &a2 = c2.a(), &b2 = c2.b();
  if (a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2) return false;
  bool a2_in = a1 < a2 && a2 < b1;
  bool b2_in = a1 < b2 && b2 < b1;
  return a2_in != b2_in;
}

inline Chord chord_image(int d, const Chord& c) { return Chord(sigma(d, c.a()), sigma(d, c.b())); }

inline Chord chord_image_n(int d, const Chord& c, int n) {
  Chord r = c;
  for (int i = 0; i < n; ++i) r = chord_image(d, r);
  return r;
}

inline bool is_critical(int d, const Chord& c) {
  return !c.degenerate() && sigma(d, c.a()) == sigma(d, c.b());
}

inline std::vector<ChordCollection> sibling_collections(int d, const Chord& c) {
  if (c.degenerate()) throw Error("sibling collections of a degenerate chord");
  if (is_critical(d, c)) throw Error("sibling collections of a critical chord");
  Chord img = chord_image(d, c);
  auto xs = preimages(d, img.a());
  auto ys = preimages(d, img.b());
  // c = {xs[i0], ys[j0]}
  bool a_maps_to_x = sigma(d, c.a()) == img.a();
  const Angle& cx = a_maps_to_x ? c.a() : c.b();
  const Angle& cy = a_maps_to_x ? c.b() : c.a();
  std::size_t i0 = std::find(xs.begin(), xs.end(), cx) - xs.begin();
  std::size_t j0 = std::find(ys.begin(), ys.end(), cy) - ys.begin();

  std::vector<std::size_t> rest_x, rest_y;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (i != i0) rest_x.push_back(i);
  for (std::size_t j = 0; j < ys.size(); ++j)
    if (j != j0) rest_y.push_back(j);

  std::vector<ChordCollection> out;
  do {
    ChordCollection coll{c};
    for (std::size_t k = 0; k < rest_x.size(); ++k) coll.emplace_back(xs[rest_x[k]], ys[rest_y[k]]);
    bool ok = true;
    for (std::size_t p = 0; p < coll.size() && ok; ++p)
      for (std::size_t q = p + 1; q < coll.size() && ok; ++q)
        if (linked(coll[p], coll[q])) ok = false;
    if (ok) {
      std::sort(coll.begin() + 1, coll.end());
      out.push_back(std::move(coll));
    }
  } while (std::next_permutation(rest_y.begin(), rest_y.end()));
  std::sort(out.begin(), out.end());
  return out;
}

struct CollectionReport {
  bool has_loop = false;
  bool all_critical = true;
  bool pairwise_unlinked = true;
  bool is_full_collection = false;
};

inline CollectionReport validate_collection(int d, const ChordCollection& cc) {
  CollectionReport r;
  std::map<Angle, std::size_t> id;
  for (const auto& c : cc) {
    id.emplace(c.a(), id.size());
    id.emplace(c.b(), id.size());
  }
  std::vector<std::size_t> parent(id.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < cc.size(); ++i) {
    const Chord& c = cc[i];
    if (!is_critical(d, c)) r.all_critical = false;
    for (std::size_t j = i + 1; j < cc.size(); ++j)
      if (linked(c, cc[j])) r.pairwise_unlinked = false;
    if (c.degenerate()) continue;
    auto x = find(id[c.a()]), y = find(id[c.b()]);
    if (x == y)
      r.has_loop = true;
    else
      parent[x] = y;
  }
  r.is_full_collection = !r.has_loop && r.all_critical && cc.size() == static_cast<std::size_t>(d - 1);
  return r;
}

// closed convex hull of finitely many points of the circle
class ConvexSet {
 public:
  ConvexSet() = default;
  explicit ConvexSet(std::vector<Angle> pts) : v_(std::move(pts)) {
    std::sort(v_.begin(), v_.end());
    v_.erase(std::unique(v_.begin(), v_.end()), v_.end());
  }
  ConvexSet(std::initializer_list<Angle> pts) : ConvexSet(std::vector<Angle>(pts)) {}
  explicit ConvexSet(const Chord& c) : ConvexSet(std::vector<Angle>{c.a(), c.b()}) {}

  const std::vector<Angle>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  bool contains(const Angle& x) const { return std::binary_search(v_.begin(), v_.end(), x); }

  bool subset_of(const ConvexSet& o) const {
    return std::includes(o.v_.begin(), o.v_.end(), v_.begin(), v_.end());
  }

  std::vector<Chord> edges() const {
    std::vector<Chord> e;
    if (v_.size() == 2) e.emplace_back(v_[0], v_[1]);
    if (v_.size() > 2)
      for (std::size_t i = 0; i < v_.size(); ++i) e.emplace_back(v_[i], v_[(i + 1) % v_.size()]);
    return e;
  }

  // open arcs of the circle between consecutive vertices
  std::vector<Arc> holes() const {
    std::vector<Arc> h;
    if (v_.size() < 2) return h;
    for (std::size_t i = 0; i < v_.size(); ++i) h.emplace_back(v_[i], v_[(i + 1) % v_.size()]);
    return h;
  }

  bool is_edge(const Chord& c) const {
    auto e = edges();
    return std::find(e.begin(), e.end(), c) != e.end();
  }

  ConvexSet image(int d) const {
    std::vector<Angle> w;
    for (const auto& x : v_) w.push_back(sigma(d, x));
    return ConvexSet(std::move(w));
  }

  // the closed sets meet iff they share a vertex or no single open hole of one holds all of the other
  bool intersects(const ConvexSet& o) const {
    if (v_.empty() || o.v_.empty()) return false;
    for (const auto& x : o.v_)
      if (contains(x)) return true;
    if (v_.size() == 1 || o.v_.size() == 1) return false;
    for (const auto& h : holes()) {
      bool all = true;
      for (const auto& x : o.v_)
        if (!in_arc(x, h)) {
          all = false;
          break;
        }
      if (all) return false;
    }
    return true;
  }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < v_.size(); ++i) s += (i ? "," : "") + v_[i].str();
    return s + "}";
  }

  friend bool operator==(const ConvexSet& a, const ConvexSet& b) { return a.v_ == b.v_; }
  friend bool operator!=(const ConvexSet& a, const ConvexSet& b) { return a.v_ != b.v_; }
  friend bool operator<(const ConvexSet& a, const ConvexSet& b) { return a.v_ < b.v_; }
  friend std::ostream& operator<<(std::ostream& os, const ConvexSet& s) { return os << s.str(); }

 private:
  std::vector<Angle> v_;
};

}  // namespace lamina

#endif  // LAMINA_CHORDS_HPP
