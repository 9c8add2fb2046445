#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "lamina/io.hpp"
#include "lamina/render.hpp"
#include "lamina/suites.hpp"

using namespace lamina;
namespace fs = std::filesystem;

namespace {

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") std::cout << text;
  else write_text(path, text);
}

int cmd_build(const std::string& portrait, int depth, const std::string& out) {
  auto p = read_portrait(portrait);
  auto rep = validate_qc_portrait(p);
  if (!rep.valid) throw PortraitError(portrait + ": " + rep.reason);
  auto lam = pullback_build(pullback_portrait(p), depth);
  emit(out, print_lamination(lam));
  std::cerr << "built " << lam.size() << " leaves at depth " << depth << "\n";
  return 0;
}

int cmd_qml(int period, const std::string& out, const std::string& svg) {
  auto minors = qml_enumerate(period);
  FiniteLamination lam(2, minors);
  if (auto w = check_unlinked(lam)) {
    std::cerr << "minors cross: " << w->first << " | " << w->second << "\n";
    return 1;
  }
  emit(out, print_lamination(lam));
  if (!svg.empty()) write_text(svg, render_svg(lam, RenderSpec{}));
  std::cerr << minors.size() << " minors of period at most " << period << ", pairwise unlinked\n";
  return 0;
}

int cmd_tags(const std::string& dir, int depth, const std::string& out) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".portrait") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  struct Entry {
    std::size_t lam;
    FullPortrait fp;
    MixedTag tag;
  };
  std::vector<FiniteLamination> lams;
  std::vector<Entry> entries;
  std::string report;
  for (const auto& f : files) {
    auto p = read_portrait(f.string());
    if (p.degree != 3) {
      report += "# skipped " + f.string() + ": degree " + std::to_string(p.degree) + "\n";
      continue;
    }
    lams.push_back(pullback_build(pullback_portrait(p), depth));
    report += "lamination " + std::to_string(lams.size() - 1) + " " + f.string() + "\n";
    for (const auto& fp : full_portraits(lams.back())) {
      entries.push_back({lams.size() - 1, fp, mixed_tag(fp)});
      const auto& t = entries.back().tag;
      report += "  tag " + std::to_string(entries.size() - 1) + " portrait " + fp.str() + "\n";
      report += "    cocritical " + t.cocritical_factor.str() + "\n";
      report += "    minor " + t.minor_factor.str() + "\n";
    }
  }
  report += "relations\n";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    report += "  " + std::to_string(i) + ":";
    for (std::size_t j = 0; j < entries.size(); ++j) {
      auto r = tags_relation(entries[i].tag, entries[j].tag);
      report += std::string(" ") + (r == TagRelation::equal ? "=" : r == TagRelation::disjoint ? "." : "X");
    }
    report += "\n";
  }
  emit(out, report);
  return 0;
}

int cmd_verify(const std::string& suite, int samples, std::uint32_t seed) {
  auto r = run_suite(suite, SuiteOptions{samples, seed});
  std::cout << "seed " << effective_seed(seed) << "\n" << r.str();
  return r.pass() ? 0 : 1;
}

int cmd_render(const std::string& in, const std::string& out, const RenderSpec& spec) {
  emit(out, render_svg(read_lamination(in), spec));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact invariant laminations of the circle"};
  app.require_subcommand(1);

  auto* build = app.add_subcommand("build", "pull back a portrait file into a lamination file");
  std::string portrait, build_out;
  int depth = 6;
  build->add_option("--portrait", portrait, "portrait file")->required();
  build->add_option("--depth", depth, "pullback depth")->check(CLI::Range(0, 64));
  build->add_option("-o,--out", build_out, "lamination file, stdout by default");

  auto* qml = app.add_subcommand("qml", "quadratic minors up to a period bound");
  int period = 6;
  std::string qml_out, qml_svg;
  qml->add_option("--period", period, "period bound")->check(CLI::Range(1, 16));
  qml->add_option("-o,--out", qml_out, "lamination file, stdout by default");
  qml->add_option("--svg", qml_svg, "SVG drawing");

  auto* tags = app.add_subcommand("tags", "mixed tags of the cubic portraits in a directory");
  std::string tag_dir, tag_out;
  int tag_depth = 4;
  tags->add_option("--dir", tag_dir, "directory of .portrait files")->required()->check(CLI::ExistingDirectory);
  tags->add_option("--depth", tag_depth, "pullback depth")->check(CLI::Range(0, 32));
  tags->add_option("-o,--out", tag_out, "report file, stdout by default");

  auto* verify = app.add_subcommand("verify", "run a property suite");
  std::string suite;
  int samples = 0;
  std::uint32_t seed = 7;
  verify->add_option("--suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--samples", samples, "sample count, 0 for the suite default")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", seed, "random seed, LAMINA_SEED overrides");

  auto* render = app.add_subcommand("render", "draw a lamination file as SVG");
  std::string render_in, render_out;
  RenderSpec spec;
  bool straight = false;
  std::vector<std::string> highlight;
  render->add_option("--in", render_in, "lamination file")->required();
  render->add_option("-o,--out", render_out, "SVG file, stdout by default");
  render->add_option("--size", spec.size, "pixels")->check(CLI::Range(16, 1 << 15));
  render->add_flag("--straight", straight, "straight chords instead of geodesics");
  render->add_flag("--labels", spec.labels, "label endpoints");
  render->add_flag("--shade", spec.shade_gaps, "shade finite gaps");
  render->add_option("--highlight", highlight, "chord 'p/q r/s' to highlight");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*build) return cmd_build(portrait, depth, build_out);
    if (*qml) return cmd_qml(period, qml_out, qml_svg);
    if (*tags) return cmd_tags(tag_dir, tag_depth, tag_out);
    if (*verify) return cmd_verify(suite, samples, seed);
    if (*render) {
      if (straight) spec.style = GeodesicStyle::straight;
      for (const auto& h : highlight) {
        std::istringstream ss(h);
        std::string a, b, extra;
        if (!(ss >> a >> b) || (ss >> extra)) throw ParseError("bad chord '" + h + "'");
        spec.highlight.emplace_back(Angle::parse(a), Angle::parse(b));
      }
      return cmd_render(render_in, render_out, spec);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
