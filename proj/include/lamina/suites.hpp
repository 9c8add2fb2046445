#ifndef LAMINA_SUITES_HPP
#define LAMINA_SUITES_HPP

#include "lamina/accordion.hpp"
#include "lamina/quad_minor.hpp"
#include "lamina/sampling.hpp"

namespace lamina {

struct SuiteOptions {
  int samples = 0;  // 0 picks the suite default
  std::uint32_t seed = 7;
};

struct SuiteReport {
  std::string name;
  long checks = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  bool heuristic = false;

  explicit SuiteReport(std::string n) : name(std::move(n)) {}
  bool pass() const { return failures.empty() && checks > 0; }

  void fail(std::string s) {
    if (failures.size() < 50) failures.push_back(std::move(s));
    else if (failures.size() == 50) failures.push_back("...");
  }
  std::string str() const {
    std::string s = name + ": " + (pass() ? "PASS" : "FAIL") + " checks=" + std::to_string(checks) +
                    " failures=" + std::to_string(failures.size()) + (heuristic ? " (heuristic)" : "") + "\n";
    for (const auto& n : notes) s += "  " + n + "\n";
    for (const auto& f : failures) s += "  failure: " + f + "\n";
    return s;
  }
};

inline int samples_or(const SuiteOptions& o, int fallback) { return o.samples > 0 ? o.samples : fallback; }

// sampled bicritical laminations: distinct critical sets lie at least 1/12 apart
inline SuiteReport suite_crifar(const SuiteOptions& o) {
  SuiteReport r{"crifar"};
  Rng rng(effective_seed(o.seed));
  SamplerOptions so;
  so.count = samples_or(o, 100);
  auto sample = sample_cubic_laminations(rng, so);
  int bicritical = 0;
  for (const auto& s : sample) {
    auto g = geometry_checks(s.lam);
    if (g.separation_checked > 0) ++bicritical;
    r.checks += g.separation_checked;
    for (const auto& f : g.separation_failures) r.fail(f);
  }
  r.notes.push_back(std::to_string(sample.size()) + " laminations, " + std::to_string(bicritical) + " with two critical sets");
  if (static_cast<int>(sample.size()) < so.count) r.fail("sampler produced only " + std::to_string(sample.size()) + " laminations");
  return r;
}

// linked chords in a short window have strongly linked collapsing co-critical quadrilaterals
inline SuiteReport suite_linkco(const SuiteOptions& o) {
  SuiteReport r{"linkco"};
  Rng rng(effective_seed(o.seed));
  int n = samples_or(o, 1000);
  auto fixture = linked_coc(make_chord(0, 1, 1, 12), make_chord(1, 24, 1, 8));
  ++r.checks;
  if (!fixture.ok() || fixture.q1.hull() != ConvexSet{Angle(8, 24), Angle(10, 24), Angle(16, 24), Angle(18, 24)} ||
      fixture.q2.hull() != ConvexSet{Angle(9, 24), Angle(11, 24), Angle(17, 24), Angle(19, 24)})
    r.fail("the /24 fixture does not give strongly linked quadrilaterals");
  for (int i = 0; i < n; ++i) {
    auto [l1, l2] = random_linked_window_pair(rng, 720);
    ++r.checks;
    try {
      if (!linked_coc(l1, l2).ok()) r.fail(l1.str() + " | " + l2.str());
    } catch (const Error& e) {
      r.fail(l1.str() + " | " + l2.str() + ": " + e.what());
    }
  }
  return r;
}

// co-critical duality on short chords, critical leaves and collapsing quadrilaterals
inline SuiteReport suite_reconstruct(const SuiteOptions& o) {
  SuiteReport r{"reconstruct"};
  Rng rng(effective_seed(o.seed));
  int n = samples_or(o, 1000);
  for (int i = 0; i < n; ++i) {
    ConvexSet s(random_short_chord(rng, 720));
    ++r.checks;
    if (cocritical_set(cocritical_set(s)) != s) r.fail("coc twice moves " + s.str());
    ConvexSet c = random_collapsing_set(rng, 720);
    ++r.checks;
    if (reconstruct_from_coc(cocritical_set(c)) != c) r.fail("reconstruction moves " + c.str());
  }
  return r;
}

// exhaustive linked periodic pairs: one accordion case each, and the gap structure when the orbit closes
inline SuiteReport suite_compgap(const SuiteOptions& o, std::vector<long> dens = {80, 26}) {
  SuiteReport r{"compgap"};
  const int h = 16;
  auto s = search_linked_pairs(3, dens, h);
  std::array<int, 4> per_case{};
  int periodic = 0;
  for (const auto& [a, b] : s.pairs) {
    ++r.checks;
    auto c = accordion_cases(3, a, b, h);
    if (c.count() != 1) r.fail("pair " + a.str() + " | " + b.str() + " matches " + std::to_string(c.count()) + " cases");
    else ++per_case[c.which() - 1];
    auto g = compgap_analyze(3, a, b, 64);
    ++r.checks;
    if (!g.precondition) r.fail("pair " + a.str() + " | " + b.str() + " lost its order preserving accordions");
    if (!g.wandering) ++periodic;
    if (!g.structure_holds()) r.fail("gap " + g.gap.str() + " of " + a.str() + " | " + b.str());
  }
  std::string dl;
  for (long d : dens) dl += (dl.empty() ? "" : ",") + std::to_string(d);
  r.notes.push_back("denominators " + dl + ": " + std::to_string(s.candidates.size()) + " chords, " + std::to_string(s.pairs.size()) +
                    " mutually order preserving pairs");
  r.notes.push_back("cases 1-4: " + std::to_string(per_case[0]) + " " + std::to_string(per_case[1]) + " " + std::to_string(per_case[2]) + " " +
                    std::to_string(per_case[3]) + "; periodic gaps " + std::to_string(periodic));
  (void)o;
  return r;
}

struct MainTagStats {
  std::size_t laminations = 0, portraits = 0, pairs = 0, equal = 0, disjoint = 0, overlapping = 0;
  std::size_t inconsistent = 0, tuned = 0, not_contained = 0;
};

// distinct laminations give disjoint or equal tags; tuning a hexagon shrinks the tag
inline SuiteReport suite_maintag(const SuiteOptions& o, MainTagStats* stats = nullptr) {
  SuiteReport r{"maintag"};
  r.heuristic = true;
  Rng rng(effective_seed(o.seed));
  SamplerOptions so;
  so.count = samples_or(o, 100);
  so.depth = 4;
  so.dendritic_only = true;
  auto sample = sample_cubic_laminations(rng, so);
  auto hex = hexagon_laminations(so.depth, 16);
  std::size_t n_random = sample.size();
  sample.insert(sample.end(), hex.begin(), hex.end());
  MainTagStats st;
  st.laminations = sample.size();
  std::vector<TagSubject> subjects;
  for (const auto& s : sample) subjects.emplace_back(s.lam);
  std::vector<std::pair<std::size_t, FullPortrait>> fps;
  for (std::size_t i = 0; i < sample.size(); ++i)
    for (const auto& fp : full_portraits(sample[i].lam)) fps.emplace_back(i, fp);
  st.portraits = fps.size();
  for (std::size_t a = 0; a < fps.size(); ++a)
    for (std::size_t b = 0; b < fps.size(); ++b) {
      if (a == b) continue;
      auto rep = classify_tag_relation(subjects[fps[a].first], fps[a].second, subjects[fps[b].first], fps[b].second);
      ++r.checks;
      if (!rep.consistent) {
        ++st.inconsistent;
        r.fail("classifier disagrees on " + fps[a].second.str() + " / " + fps[b].second.str());
      }
      if (fps[a].first == fps[b].first || b < a) continue;
      ++st.pairs;
      switch (rep.relation) {
        case TagRelation::equal: ++st.equal; break;
        case TagRelation::disjoint: ++st.disjoint; break;
        case TagRelation::properly_overlapping:
          ++st.overlapping;
          r.fail("tags overlap: " + fps[a].second.str() + " / " + fps[b].second.str());
      }
    }
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto& lam = sample[i].lam;
    for (const auto& g : gaps(lam)) {
      if (!g.finite() || g.vertices.size() < 6 || gap_degree(3, g) != 2) continue;
      for (std::size_t choice = 0; choice < 3; ++choice) {
        std::pair<FiniteLamination, CriticalQuadrilateral> tq{FiniteLamination(3), leaf_quad(make_chord(0, 1, 1, 3), 3)};
        try {
          tq = tune_insert(lam, g, choice);
        } catch (const Error& e) {
          r.fail("tuning " + g.hull().str() + ": " + e.what());
          continue;
        }
        for (const auto& fp : full_portraits(lam)) {
          if (fp.first != g.hull() && fp.second != g.hull()) continue;
          FullPortrait refined = fp;
          if (refined.first == g.hull()) refined.first = tq.second.hull();
          if (refined.second == g.hull()) refined.second = tq.second.hull();
          ++st.tuned;
          ++r.checks;
          if (!tag_contained(mixed_tag(refined), mixed_tag(fp))) {
            ++st.not_contained;
            r.fail("tuned tag " + mixed_tag(refined).str() + " escapes " + mixed_tag(fp).str());
          }
        }
      }
    }
  }
  r.notes.push_back(std::to_string(n_random) + " sampled and " + std::to_string(hex.size()) + " hexagon laminations, " +
                    std::to_string(st.portraits) + " full portraits");
  r.notes.push_back(std::to_string(st.pairs) + " cross pairs: " + std::to_string(st.equal) + " equal, " + std::to_string(st.disjoint) +
                    " disjoint, " + std::to_string(st.overlapping) + " overlapping");
  r.notes.push_back(std::to_string(st.tuned) + " tuned refinements, " + std::to_string(st.not_contained) + " not contained");
  if (static_cast<int>(n_random) < so.count) r.fail("sampler produced only " + std::to_string(n_random) + " laminations");
  if (stats) *stats = st;
  return r;
}

// enumerated minors are pairwise unlinked and come back as minors of their pullbacks
inline SuiteReport suite_qml_unlinked(const SuiteOptions& o) {
  SuiteReport r{"qml-unlinked"};
  int period = samples_or(o, 6);
  auto minors = qml_enumerate(period);
  ++r.checks;
  if (auto w = find_linked_pair(minors)) r.fail("minors cross: " + w->first.str() + " | " + w->second.str());
  for (const auto& m : minors) {
    ++r.checks;
    auto c = minor_via_pullback(m, 4);
    if (!c.ok()) r.fail("minor " + m.str() + (c.error.empty() ? " does not come back" : ": " + c.error));
  }
  r.notes.push_back("period " + std::to_string(period) + ": " + std::to_string(minors.size()) + " minors");
  return r;
}

// periodic gaps of generated laminations: vertex orbits, edge types, equal periods on leaves
inline SuiteReport suite_gaptrans(const SuiteOptions& o) {
  SuiteReport r{"gaptrans"};
  Rng rng(effective_seed(o.seed));
  SamplerOptions so;
  so.count = samples_or(o, 40);
  auto sample = sample_cubic_laminations(rng, so);
  std::vector<FiniteLamination> lams;
  for (auto& s : sample) lams.push_back(std::move(s.lam));
  for (const auto& m : qml_enumerate(5)) lams.push_back(pullback_build(portrait_from_sets(2, {minor_quad(m)}), 8));
  int periodic_gaps = 0;
  for (const auto& lam : lams) {
    for (const auto& t : check_gap_transitivity(lam)) {
      ++r.checks;
      ++periodic_gaps;
      if (!t.ok) r.fail("gap " + t.gap.str() + " has " + std::to_string(t.vertex_orbits) + " vertex orbits");
      if (lam.degree() == 2 && t.vertex_orbits != 1) r.fail("quadratic gap " + t.gap.str() + " remap is not transitive");
    }
    ++r.checks;
    for (const auto& e : check_periodic_gap_edges(lam)) r.fail("periodic gap edge " + e.str() + " is neither periodic nor precritical");
    for (const auto& e : check_same_period(lam)) r.fail("leaf " + e.str() + " joins points of different periods");
  }
  r.notes.push_back(std::to_string(lams.size()) + " laminations, " + std::to_string(periodic_gaps) + " periodic gaps");
  return r;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"crifar", "linkco", "reconstruct", "compgap", "maintag", "qml-unlinked", "gaptrans"};
  return names;
}

inline SuiteReport run_suite(const std::string& name, const SuiteOptions& o) {
  if (name == "crifar") return suite_crifar(o);
  if (name == "linkco") return suite_linkco(o);
  if (name == "reconstruct") return suite_reconstruct(o);
  if (name == "compgap") return suite_compgap(o);
  if (name == "maintag") return suite_maintag(o);
  if (name == "qml-unlinked") return suite_qml_unlinked(o);
  if (name == "gaptrans") return suite_gaptrans(o);
  throw Error("unknown suite " + name);
}

}  // namespace lamina

#endif  // LAMINA_SUITES_HPP
