#ifndef LAMINA_CIRCLE_HPP
#define LAMINA_CIRCLE_HPP

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lamina {

using Q = mpq_class;
using Z = mpz_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};

// fractional part in [0,1)
inline Q frac(const Q& x) {
  Z fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Q r = x - Q(fl);
  r.canonicalize();
  return r;
}

class Angle {
 public:
  Angle() : v_(0) {}
  Angle(long num, long den) {
    if (den == 0) throw Error("angle with zero denominator");
    Q q(num, den);
    q.canonicalize();
    v_ = frac(q);
  }
  explicit Angle(const Q& q) : v_(frac(q)) {}

  static Angle parse(std::string_view s) {
    auto digits = [](std::string_view t) {
      return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    std::string_view p = s, q = "1";
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
      p = s.substr(0, slash);
      q = s.substr(slash + 1);
    }
    if (!digits(p) || !digits(q)) throw ParseError("bad angle '" + std::string(s) + "'");
    Z num{std::string(p)}, den{std::string(q)};
    if (den == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    if (num >= den && !(num == 0)) throw ParseError("angle outside [0,1): '" + std::string(s) + "'");
    Q r(num, den);
    r.canonicalize();
    return Angle(r);
  }

  const Q& value() const { return v_; }
  Z num() const { return v_.get_num(); }
  Z den() const { return v_.get_den(); }

  std::string str() const {
    if (v_ == 0) return "0";
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }
  double to_double() const { return v_.get_d(); }

  friend bool operator==(const Angle& a, const Angle& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Angle& a, const Angle& b) { return a.v_ != b.v_; }
  friend bool operator<(const Angle& a, const Angle& b) { return a.v_ < b.v_; }
  friend bool operator>(const Angle& a, const Angle& b) { return b.v_ < a.v_; }
  friend bool operator<=(const Angle& a, const Angle& b) { return !(b.v_ < a.v_); }
  friend bool operator>=(const Angle& a, const Angle& b) { return !(a.v_ < b.v_); }
  friend std::ostream& operator<<(std::ostream& os, const Angle& a) { return os << a.str(); }

  Angle operator+(const Q& t) const { return Angle(v_ + t); }
  Angle operator-(const Q& t) const { return Angle(v_ - t); }

 private:
  Q v_;
};

// positive (counterclockwise) distance from a to b, in [0,1)
inline Q fwd(const Angle& a, const Angle& b) { return frac(b.value() - a.value()); }

inline Angle sigma(int d, const Angle& a) {
  if (d < 2) throw Error("degree must be at least 2");
  return Angle(Q(d) * a.value());
}

inline Angle sigma_n(int d, const Angle& a, int n) {
  Angle r = a;
  for (int i = 0; i < n; ++i) r = sigma(d, r);
  return r;
}

inline std::vector<Angle> preimages(int d, const Angle& a) {
  if (d < 2) throw Error("degree must be at least 2");
  std::vector<Angle> out;
  out.reserve(d);
  for (int k = 0; k < d; ++k) out.emplace_back((a.value() + k) / Q(d));
  std::sort(out.begin(), out.end());
  return out;
}

inline Q shortest_dist(const Angle& a, const Angle& b) {
  Q f = fwd(a, b);
  Q g = 1 - f;
  if (f == 0) return 0;
  return f < g ? f : g;
}

// strict positive order a -> b -> c
inline bool cyc_between(const Angle& a, const Angle& b, const Angle& c) {
  if (a == b || b == c || a == c) return false;
  return fwd(a, b) < fwd(a, c);
}

class Arc {
 public:
  Arc(const Angle& from, const Angle& to) : from_(from), to_(to) {
    if (from == to) throw Error("arc endpoints coincide");
  }
  const Angle& from() const { return from_; }
  const Angle& to() const { return to_; }
  Q length() const { return fwd(from_, to_); }
  friend bool operator==(const Arc& a, const Arc& b) { return a.from_ == b.from_ && a.to_ == b.to_; }

 private:
  Angle from_, to_;
};

inline bool in_arc(const Angle& x, const Arc& arc, bool closed = false) {
  if (x == arc.from() || x == arc.to()) return closed;
  return fwd(arc.from(), x) < arc.length();
}

enum class Orientation { positively_ordered, negatively_ordered, neither };

inline Orientation circular_order(const std::vector<Angle>& pts) {
  if (pts.size() < 3) throw Error("circular order needs at least three points");
  auto increasing = [](const std::vector<Angle>& p) {
    Q prev = 0;
    for (std::size_t i = 1; i < p.size(); ++i) {
      Q f = fwd(p[0], p[i]);
      if (f == 0 || f <= prev) return false;
      prev = f;
    }
    return true;
  };
  if (increasing(pts)) return Orientation::positively_ordered;
  std::vector<Angle> rev(pts.rbegin(), pts.rend());
  if (increasing(rev)) return Orientation::negatively_ordered;
  return Orientation::neither;
}

inline std::size_t hash_value(const Angle& a) {
  const auto* n = a.value().get_num_mpz_t();
  const auto* d = a.value().get_den_mpz_t();
  std::size_t h = mpz_get_ui(n) * 0x9e3779b97f4a7c15ULL;
  h ^= mpz_get_ui(d) + 0x7f4a7c159e3779b9ULL + (h << 6) + (h >> 2);
  return h;
}

}  // namespace lamina

template <>
struct std::hash<lamina::Angle> {
  std::size_t operator()(const lamina::Angle& a) const { return lamina::hash_value(a); }
};

#endif  // LAMINA_CIRCLE_HPP
