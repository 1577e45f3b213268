// tiltz: command-line front end. Exit codes: 0 ok, 1 verification failed,
// 2 usage error.

#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tiltz/algebra.hpp"
#include "tiltz/center.hpp"
#include "tiltz/variants.hpp"

using namespace tiltz;
using nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool g_weights = false;

Vertex in_vertex(std::int64_t n) {
  Vertex v = g_weights ? n + 1 : n;
  if (v < 1) throw UsageError("vertex must be >= 1 (weight >= 0)");
  return v;
}
std::int64_t out_vertex(Vertex v) { return g_weights ? v - 1 : v; }

std::string stretches(const std::vector<Stretch>& ss) {
  std::string s;
  for (std::size_t i = 0; i < ss.size(); ++i) s += (i ? " " : "") + to_string(ss[i]);
  return s.empty() ? "-" : s;
}

ordered_json stretch_json(const std::vector<Stretch>& ss) {
  auto a = ordered_json::array();
  for (auto s : ss) a.push_back({s.lo, s.hi});
  return a;
}

int cmd_digits(std::int64_t n, std::int64_t p0, bool json) {
  Prime p(p0);
  Vertex v = in_vertex(n);
  auto d = expand(v, p);
  if (json) {
    ordered_json j{{"v", v},
                   {"weight", v - 1},
                   {"p", p0},
                   {"digits", d.big_endian()},
                   {"generation", generation(v, p)},
                   {"eve", is_eve(v, p)},
                   {"D", digit_set(v, p)}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << d.to_string() << " gen=" << generation(v, p) << " eve=" << (is_eve(v, p) ? "yes" : "no")
              << " D=" << to_string(digit_set(v, p)) << "\n";
  }
  return 0;
}

int cmd_admissible(std::int64_t n, std::int64_t p0, bool json) {
  Prime p(p0);
  Vertex v = in_vertex(n);
  auto downs = minimal_down_stretches(v, p);
  auto ups = minimal_up_stretches(v, p);
  const int lead = leading_index(v, p);
  std::vector<std::pair<int, std::optional<AdmissibleSet>>> hulls;
  for (int i = 0; i <= lead + 1; ++i) hulls.emplace_back(i, down_hull(AdmissibleSet::singleton(i), v, p));
  if (json) {
    ordered_json j{{"v", v}, {"p", p0}, {"minimal_down", stretch_json(downs)}, {"minimal_up", stretch_json(ups)}};
    ordered_json h = ordered_json::object();
    for (const auto& [i, s] : hulls) h[std::to_string(i)] = s ? ordered_json(s->to_string()) : ordered_json();
    j["hulls"] = h;
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "down: " << stretches(downs) << "\n";
  std::cout << "up: " << stretches(ups) << "\n";
  std::cout << "hulls:";
  for (const auto& [i, s] : hulls) std::cout << " {" << i << "}->" << (s ? s->to_string() : "none");
  std::cout << "\n";
  return 0;
}

int cmd_reflect(std::int64_t n, std::int64_t p0, bool down, bool up, const std::string& set) {
  if (down == up) throw UsageError("reflect needs exactly one of --down, --up");
  Prime p(p0);
  Vertex v = in_vertex(n);
  AdmissibleSet s = AdmissibleSet::parse(set);
  const bool ok = down ? is_down_admissible(s, v, p) : is_up_admissible(s, v, p);
  if (!ok) {
    std::cerr << s.to_string() << " is not " << (down ? "down" : "up") << "-admissible for " << out_vertex(v)
              << "\n";
    return 1;
  }
  std::cout << out_vertex(down ? reflect_down(v, s, p) : reflect_up(v, s, p)) << "\n";
  return 0;
}

int cmd_quiver(std::int64_t p0, std::int64_t e, std::int64_t n, const std::string& fmt) {
  Prime p(p0);
  Block b = block(in_vertex(e), p, in_vertex(n));
  std::cout << export_quiver(b, p, fmt == "dot" ? Format::Dot : Format::Json);
  return 0;
}

int cmd_hom(std::int64_t a, std::int64_t b, std::int64_t p0, bool list, bool json) {
  Prime p(p0);
  Vertex v = in_vertex(a), w = in_vertex(b);
  auto basis = hom_basis(v, w, p);
  if (!list) {
    std::cout << basis.size() << "\n";
    return 0;
  }
  if (json) {
    auto arr = ordered_json::array();
    for (const auto& x : basis)
      arr.push_back({{"downs", stretch_json(x.downs)}, {"ups", stretch_json(x.ups)}, {"text", x.to_string(g_weights)}});
    std::cout << ordered_json{{"p", p0}, {"source", v}, {"target", w}, {"basis", arr}}.dump(2) << "\n";
    return 0;
  }
  for (const auto& x : basis) std::cout << x.to_string(g_weights) << "\n";
  return 0;
}

int cmd_normalize(std::int64_t p0, const std::string& word, const std::string& strategy, bool json) {
  Prime p(p0);
  Engine engine(p);
  std::vector<RawWord> words;
  try {
    words = parse_word_sum(word, g_weights);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (words.empty()) {
    std::cout << "0\n";
    return 0;
  }
  std::optional<Morphism> total;
  for (const auto& w : words) {
    Morphism m = strategy == "leftmost"    ? engine.normalize_by_strategy(w, Strategy::Leftmost)
                 : strategy == "rightmost" ? engine.normalize_by_strategy(w, Strategy::Rightmost)
                                           : engine.normalize(w);
    if (!total) total = m;
    else if (total->source() != m.source() || total->target() != m.target())
      throw UsageError("terms of the sum have different endpoints");
    else *total += m;
  }
  std::cout << (json ? total->to_json() : total->to_string(g_weights)) << "\n";
  return 0;
}

int cmd_center(std::int64_t p0, std::int64_t e0, std::int64_t n, std::int64_t m, bool solver,
               const std::vector<std::int64_t>& probes) {
  Prime p(p0);
  const Vertex eve = in_vertex(e0), bound = in_vertex(n);
  if (m < 0 || m >= bound) throw UsageError("margin must lie in [0, N)");
  std::vector<Vertex> probe_vs;
  for (auto x : probes) probe_vs.push_back(in_vertex(x));
  CenterRun run = run_center(p, eve, bound, m, solver, probe_vs);
  const auto& cands = run.candidates;
  const bool products_zero = run.products_zero;
  const auto& rep = run.solver;
  std::string js = center_report_json(p, eve, bound, m, cands, rep ? &*rep : nullptr, products_zero);
  if (rep && !probe_vs.empty()) {
    auto j = ordered_json::parse(js);
    ordered_json imgs = ordered_json::object();
    for (const auto& [x, ms] : rep->local_images) {
      auto a = ordered_json::array();
      for (const auto& mm : ms) a.push_back(mm.to_string(g_weights));
      imgs[std::to_string(out_vertex(x))] = a;
    }
    j["solver"]["local_images"] = imgs;
    js = j.dump(2) + "\n";
  }
  std::cout << js;
  const bool ok = run.ok();
  const std::size_t verified = run.verified();
  std::cerr << "center p=" << p0 << " eve=" << out_vertex(eve) << " N=" << out_vertex(bound) << " M=" << m << ": "
            << verified << "/" << cands.size() << " candidates central, products "
            << (products_zero ? "zero" : "NONZERO");
  if (rep)
    std::cerr << ", solver interior " << rep->interior_dim << " vs predicted " << rep->predicted_dim
              << (rep->matches_prediction ? " (match)" : " (MISMATCH)");
  std::cerr << "\n";
  return ok ? 0 : 1;
}

int cmd_variant(const std::string& kind, std::int64_t base, std::int64_t n, std::int64_t m,
                const std::string& word, std::int64_t vertices, const std::vector<std::int64_t>& ends,
                bool literal) {
  VariantSpec spec = kind == "quantum" ? VariantSpec::quantum(base)
                     : kind == "g1t"   ? VariantSpec::g1t(base)
                                       : VariantSpec::g2t(base, !literal);
  if (vertices > 0) {
    auto arr = ordered_json::array();
    for (const auto& g : variant_vertices(spec, vertices))
      arr.push_back({{"index", g.index}, {"v", g.value}, {"weight", g.value - 1}, {"row", g.row}, {"col", g.col}});
    std::cout << ordered_json{{"variant", spec.name()}, {"base", base}, {"vertices", arr}}.dump(2) << "\n";
    return 0;
  }
  VariantAlgebra a = variant_window(spec, n);
  if (!word.empty()) {
    try {
      std::cout << a.to_string(variant_compose(a, word)) << "\n";
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return 0;
  }
  if (!ends.empty()) {
    ordered_json j = ordered_json::object();
    for (auto i : ends) {
      if (!a.contains(i)) throw UsageError("vertex " + std::to_string(i) + " outside the window");
      auto arr = ordered_json::array();
      for (const auto& w : a.basis(i, i)) arr.push_back(a.path_string(w));
      j[std::to_string(i)] = {{"dim", arr.size()}, {"basis", arr}};
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  auto r = variant_center(a, m);
  std::cout << variant_center_json(r);
  std::cerr << spec.name() << " window [" << r.lo << "," << r.hi << "] margin " << m << ": interior "
            << r.interior_dim << " vs predicted " << r.predicted_dim << " of " << r.family_size
            << (r.ok() ? " (match)" : " (MISMATCH)") << "\n";
  return r.ok() ? 0 : 1;
}

int cmd_donkin(std::int64_t n, std::int64_t p0, bool json) {
  Prime p(p0);
  Vertex v = in_vertex(n);
  if (json) {
    std::cout << donkin_json(v, p);
    return 0;
  }
  auto f = donkin_factorize(v, p);
  std::cout << "T(" << v - 1 << ") = " << f.to_string() << "\n";
  std::cout << "pruned: " << f.pruned().to_string() << "\n";
  const int lead = leading_index(v, p);
  if (lead >= 1) {
    auto s = donkin_split(v, lead, p);
    std::cout << "split j=" << lead << ": T(" << s.upper - 1 << ")^(" << lead << ") (x) T(" << s.lower - 1
              << ") = " << s.upper_twisted.to_string() << " (x) " << s.lower_factors.without_trivial().to_string()
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tiltz: SL2 tilting quiver algebra engine"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--weights", g_weights, "Read and print vertices as weights v-1");

  std::int64_t p = 0, v = 0, w = 0, e = 1, n = 0, m = 0, base = 0, verts = 0;
  bool json = false, down = false, up = false, solver = false, literal = false;
  std::string set, fmt = "dot", word, strategy = "normal", kind;
  std::vector<std::int64_t> probes, ends;

  auto* digits = app.add_subcommand("digits", "p-adic expansion, generation, eve status, D_v");
  digits->add_option("v", v, "Vertex")->required();
  digits->add_option("-p", p, "Prime")->required();
  digits->add_flag("--json", json, "JSON output");

  auto* adm = app.add_subcommand("admissible", "Minimal down/up stretches and singleton hulls");
  adm->add_option("v", v, "Vertex")->required();
  adm->add_option("-p", p, "Prime")->required();
  adm->add_flag("--json", json, "JSON output");

  auto* refl = app.add_subcommand("reflect", "Reflect v along an admissible set");
  refl->add_option("v", v, "Vertex")->required();
  refl->add_option("-p", p, "Prime")->required();
  refl->add_flag("--down", down, "Reflect down");
  refl->add_flag("--up", up, "Reflect up");
  refl->add_option("-S", set, "Set such as {2,1}")->required();

  auto* quiv = app.add_subcommand("quiver", "Export the block of an eve");
  quiv->add_option("-p", p, "Prime")->required();
  quiv->add_option("-e", e, "Eve of the block")->required();
  quiv->add_option("-N", n, "Truncation bound")->required();
  quiv->add_option("--format", fmt, "dot (default) or json")->check(CLI::IsMember({"dot", "json"}));

  auto* hd = app.add_subcommand("homdim", "dim Hom(e_v, e_w)");
  hd->add_option("v", v, "Vertex")->required();
  hd->add_option("w", w, "Target vertex")->required();
  hd->add_option("-p", p, "Prime")->required();
  auto* hb = app.add_subcommand("hombasis", "Normal-form basis of Hom(e_v, e_w)");
  hb->add_option("v", v, "Vertex")->required();
  hb->add_option("w", w, "Target vertex")->required();
  hb->add_option("-p", p, "Prime")->required();
  hb->add_flag("--json", json, "JSON output");

  auto* norm = app.add_subcommand("normalize", "Normal form of a word expression");
  norm->add_option("-p", p, "Prime")->required();
  norm->add_option("--word", word, "e.g. 'D{0} U{1} D{1} e[13]'")->required();
  norm->add_option("--strategy", strategy, "Rewrite order; all give the same result")->check(CLI::IsMember({"normal", "leftmost", "rightmost"}));
  norm->add_flag("--json", json, "JSON output");

  auto* ctr = app.add_subcommand("center", "Verify the central elements of a truncated block");
  ctr->add_option("-p", p, "Prime")->required();
  ctr->add_option("-e", e, "Eve of the block")->required();
  ctr->add_option("-N", n, "Truncation bound")->required();
  ctr->add_option("-M", m, "Margin: check only vertices up to N - M")->required();
  ctr->add_flag("--solver", solver, "Also solve for the full commutant");
  ctr->add_option("--probe", probes, "Report the solver's local image at these vertices");

  auto* var = app.add_subcommand("variant", "Quantum, G1T and G2T algebras");
  var->add_option("kind", kind)->required()->check(CLI::IsMember({"quantum", "g1t", "g2t"}));
  var->add_option("-p,-k", base, "Prime p, or k for quantum (0 = generic)")->required();
  n = 0;
  var->add_option("-n", n, "Window half-size (rows for g2t, length for quantum)");
  var->add_option("-M", m, "Margin cut from the open window ends");
  var->add_option("--word", word, "Normal form of a word like 'D{0} U{0} e[0]'");
  var->add_option("--vertices", verts, "List vertices with |v| up to this bound");
  var->add_option("--end", ends, "End ring bases at these indices");
  var->add_flag("--literal", literal, "g2t: only the printed quadratic relations");

  auto* don = app.add_subcommand("donkin", "Donkin tensor factorization of T(v-1)");
  don->add_option("v", v, "Vertex")->required();
  don->add_option("-p", p, "Prime")->required();
  don->add_flag("--json", json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    std::cerr << ex.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (*digits) return cmd_digits(v, p, json);
    if (*adm) return cmd_admissible(v, p, json);
    if (*refl) return cmd_reflect(v, p, down, up, set);
    if (*quiv) return cmd_quiver(p, e, n, fmt);
    if (*hd) return cmd_hom(v, w, p, false, false);
    if (*hb) return cmd_hom(v, w, p, true, json);
    if (*norm) return cmd_normalize(p, word, strategy, json);
    if (*ctr) return cmd_center(p, e, n, m, solver, probes);
    if (*var) {
      if (n == 0) n = kind == "quantum" ? 12 : kind == "g1t" ? 8 : 2;
      if (m == 0 && var->count("-M") == 0) m = 1;
      return cmd_variant(kind, base, n, m, word, verts, ends, literal);
    }
    if (*don) return cmd_donkin(v, p, json);
  } catch (const UsageError& ex) {
    std::cerr << "usage error: " << ex.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 2;
}
