#ifndef LAMINA_IO_HPP
#define LAMINA_IO_HPP

#include <fstream>
#include <sstream>

#include "lamina/qc_portrait.hpp"

namespace lamina {

namespace detail {

// non-empty lines with comments stripped, paired with their line numbers
inline std::vector<std::pair<int, std::vector<std::string>>> tokenize_lines(std::istream& in) {
  std::vector<std::pair<int, std::vector<std::string>>> out;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ss(line);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (!tok.empty()) out.emplace_back(no, std::move(tok));
  }
  return out;
}

inline int parse_degree_header(const std::vector<std::pair<int, std::vector<std::string>>>& lines) {
  if (lines.empty()) throw ParseError("missing 'degree d' header");
  const auto& [no, tok] = lines.front();
  if (tok.size() != 2 || tok[0] != "degree") throw ParseError("line " + std::to_string(no) + ": expected 'degree d'");
  int d = 0;
  try {
    std::size_t used = 0;
    d = std::stoi(tok[1], &used);
    if (used != tok[1].size()) throw ParseError("");
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(no) + ": bad degree '" + tok[1] + "'");
  }
  if (d < 2) throw ParseError("line " + std::to_string(no) + ": degree must be at least 2");
  return d;
}

inline Angle parse_angle_at(int no, const std::string& s) {
  try {
    return Angle::parse(s);
  } catch (const ParseError& e) {
    throw ParseError("line " + std::to_string(no) + ": " + e.what());
  }
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return in;
}

}  // namespace detail

inline FiniteLamination parse_lamination(std::istream& in) {
  auto lines = detail::tokenize_lines(in);
  FiniteLamination lam(detail::parse_degree_header(lines));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [no, tok] = lines[i];
    if (tok.size() != 2) throw ParseError("line " + std::to_string(no) + ": expected two angles");
    Chord c(detail::parse_angle_at(no, tok[0]), detail::parse_angle_at(no, tok[1]));
    if (c.degenerate()) throw ParseError("line " + std::to_string(no) + ": degenerate chord");
    lam.add(c);
  }
  return lam;
}

inline FiniteLamination parse_lamination(const std::string& text) {
  std::istringstream in(text);
  return parse_lamination(in);
}

inline std::string print_lamination(const FiniteLamination& lam) {
  std::string s = "degree " + std::to_string(lam.degree()) + "\n";
  for (const auto& c : lam.leaves()) s += c.str() + "\n";
  return s;
}

inline FiniteLamination read_lamination(const std::string& path) {
  auto in = detail::open_input(path);
  return parse_lamination(in);
}

inline QcPortrait parse_portrait(std::istream& in) {
  auto lines = detail::tokenize_lines(in);
  QcPortrait p{detail::parse_degree_header(lines), {}};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& [no, tok] = lines[i];
    std::vector<Angle> v;
    for (std::size_t k = 1; k < tok.size(); ++k) v.push_back(detail::parse_angle_at(no, tok[k]));
    try {
      if (tok[0] == "quad" && v.size() == 4) {
        p.quads.emplace_back(Quad4{v[0], v[1], v[2], v[3]}, p.degree);
      } else if (tok[0] == "leaf" && v.size() == 2) {
        p.quads.push_back(leaf_quad(Chord(v[0], v[1]), p.degree));
      } else {
        throw ParseError("expected 'quad a b c d' or 'leaf a b'");
      }
    } catch (const Error& e) {
      throw ParseError("line " + std::to_string(no) + ": " + e.what());
    }
  }
  if (p.quads.empty()) throw ParseError("portrait has no critical sets");
  return p;
}

inline QcPortrait parse_portrait(const std::string& text) {
  std::istringstream in(text);
  return parse_portrait(in);
}

inline std::string print_portrait(const QcPortrait& p) {
  std::string s = "degree " + std::to_string(p.degree) + "\n";
  for (const auto& q : p.quads) {
    if (q.classify() == QuadKind::critical_leaf) {
      s += "leaf " + q.spikes()[0].str() + "\n";
    } else {
      s += "quad";
      for (const auto& v : q.vertices()) s += " " + v.str();
      s += "\n";
    }
  }
  return s;
}

inline QcPortrait read_portrait(const std::string& path) {
  auto in = detail::open_input(path);
  return parse_portrait(in);
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

}  // namespace lamina

#endif  // LAMINA_IO_HPP
