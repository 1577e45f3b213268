#include "tiltz/quiver.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tiltz {

Generator down_generator(Vertex v, Stretch s, Prime p) {
  if (!is_minimal_down_stretch(s, v, p))
    throw std::invalid_argument(to_string(s) + " is not a minimal down stretch of " +
                                std::to_string(v));
  return {Kind::Down, s, v, reflect_down(v, s, p)};
}

Generator up_generator(Vertex v, Stretch s, Prime p) {
  if (!is_minimal_up_stretch(s, v, p))
    throw std::invalid_argument(to_string(s) + " is not a minimal up stretch of " +
                                std::to_string(v));
  return {Kind::Up, s, v, reflect_up(v, s, p)};
}

std::vector<Generator> neighbors(Vertex v, Prime p) {
  std::vector<Generator> out;
  for (auto s : minimal_down_stretches(v, p)) out.push_back({Kind::Down, s, v, reflect_down(v, s, p)});
  for (auto s : minimal_up_stretches(v, p)) out.push_back({Kind::Up, s, v, reflect_up(v, s, p)});
  return out;
}

Block block(Vertex e, Prime p, Vertex bound) {
  if (!is_eve(e, p)) throw std::invalid_argument(std::to_string(e) + " is not an eve");
  const Vertex explore = 2 * bound;
  std::set<Vertex> seen{e};
  std::deque<Vertex> queue{e};
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (const auto& g : neighbors(v, p)) {
      if (g.target > explore || !seen.insert(g.target).second) continue;
      queue.push_back(g.target);
    }
  }
  Block b{e, bound, {}};
  for (Vertex v : seen)
    if (v <= bound) b.members.push_back(v);
  return b;
}

Vertex block_eve(Vertex v, Prime p) {
  // Down arrows strictly decrease; the only vertex without one is the eve.
  for (;;) {
    auto downs = minimal_down_stretches(v, p);
    if (downs.empty()) return v;
    v = reflect_down(v, downs.front(), p);
  }
}

namespace {

bool contains_all(const DigitSet& big, const DigitSet& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

std::vector<Vertex> equiv_class(Vertex v, const DigitSet& s, Prime p, Vertex bound) {
  if (!contains_all(digit_set(v, p), s))
    throw std::invalid_argument("equiv_class: S is not contained in D_v");
  const Vertex explore = 2 * bound;
  std::set<Vertex> seen{v};
  std::deque<Vertex> queue{v};
  while (!queue.empty()) {
    Vertex w = queue.front();
    queue.pop_front();
    const int top = leading_index(w, p) + 1;
    for (int k = 0; k <= top; ++k) {
      if (std::binary_search(s.begin(), s.end(), k)) continue;
      auto single = AdmissibleSet::singleton(k);
      for (int dir = 0; dir < 2; ++dir) {
        bool ok = dir == 0 ? is_down_admissible(single, w, p) : is_up_admissible(single, w, p);
        if (!ok) continue;
        Vertex u = dir == 0 ? reflect_down(w, single, p) : reflect_up(w, single, p);
        if (u > explore || seen.count(u) || !contains_all(digit_set(u, p), s)) continue;
        seen.insert(u);
        queue.push_back(u);
      }
    }
  }
  std::vector<Vertex> out;
  for (Vertex w : seen)
    if (w <= bound) out.push_back(w);
  return out;
}

std::vector<Edge> edges_among(const std::vector<Vertex>& vertices, Prime p) {
  std::set<Vertex> in(vertices.begin(), vertices.end());
  std::vector<Edge> out;
  for (Vertex v : in)
    for (const auto& g : neighbors(v, p))
      if (g.kind == Kind::Down && in.count(g.target)) out.push_back({g.target, v, g.stretch});
  std::sort(out.begin(), out.end());
  return out;
}

std::string export_quiver(const std::vector<Vertex>& vertices, Prime p, Format fmt, Vertex eve,
                          Vertex bound) {
  std::vector<Vertex> vs(vertices);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  auto edges = edges_among(vs, p);
  if (fmt == Format::Json) {
    nlohmann::ordered_json j;
    j["p"] = p.value();
    j["eve"] = eve;
    j["bound"] = bound;
    j["vertices"] = nlohmann::ordered_json::array();
    for (Vertex v : vs)
      j["vertices"].push_back({{"v", v},
                               {"weight", v - 1},
                               {"generation", generation(v, p)},
                               {"digits", expand(v, p).to_string()}});
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : edges)
      j["edges"].push_back({{"from", e.upper},
                            {"to", e.lower},
                            {"stretch", AdmissibleSet(e.stretch).to_string()}});
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "graph quiver {\n";
  for (Vertex v : vs)
    os << "  w" << v - 1 << " [label=\"" << v - 1 << "|" << generation(v, p) << "|"
       << expand(v, p).to_string() << "\"];\n";
  for (const auto& e : edges)
    os << "  w" << e.lower - 1 << " -- w" << e.upper - 1 << " [label=\""
       << AdmissibleSet(e.stretch).to_string() << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string export_quiver(const Block& b, Prime p, Format fmt) {
  return export_quiver(b.members, p, fmt, b.eve, b.bound);
}

}  // namespace tiltz
