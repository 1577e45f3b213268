#include "tiltz/variants.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "tiltz/padic.hpp"

namespace tiltz {

namespace {

constexpr std::int64_t kQuantumField = 1000003;
constexpr int kDegreeCap = 16;

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

std::int64_t mod_pos(std::int64_t a, std::int64_t b) {
  std::int64_t r = a % b;
  return r < 0 ? r + b : r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Specs and vertices

VariantSpec VariantSpec::quantum(std::int64_t k) {
  if (k == 0) return {VariantKind::QuantumGeneric, 0};
  if (k < 2) throw std::invalid_argument("quantum: k must be >= 2 or 0 for generic");
  return {VariantKind::QuantumRoot, k};
}

VariantSpec VariantSpec::g1t(std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("g1t: p must be prime");
  return {VariantKind::G1T, p};
}

VariantSpec VariantSpec::g2t(std::int64_t p, bool boundary_transport) {
  if (!is_prime(p) || p < 3) throw std::invalid_argument("g2t: p must be an odd prime");
  return {VariantKind::G2T, p, boundary_transport};
}

std::string VariantSpec::name() const {
  switch (kind) {
    case VariantKind::QuantumGeneric: return "quantum";
    case VariantKind::QuantumRoot: return "quantum";
    case VariantKind::G1T: return "g1t";
    case VariantKind::G2T: return "g2t";
  }
  return "?";
}

std::int64_t VariantSpec::field() const {
  return two_sided() ? base : kQuantumField;
}

Vertex variant_value(const VariantSpec& spec, std::int64_t i) {
  if (spec.kind == VariantKind::QuantumGeneric) {
    if (i < 0) throw std::invalid_argument("quantum: negative index");
    return i + 1;
  }
  if (i < 0) {
    if (!spec.two_sided()) throw std::invalid_argument("quantum: negative index");
    const Vertex v = variant_value(spec, -i);
    return (-i) % 2 == 0 ? -v + 2 : -v + 2 * spec.base - 2;
  }
  const std::int64_t k = spec.base;
  Vertex v = 1;
  for (std::int64_t s = 0; s < i; ++s) v += 2 * k - 2 * (v % k);
  return v;
}

GridVertex grid_vertex(const VariantSpec& spec, std::int64_t i) {
  GridVertex g{i, variant_value(spec, i), 0, i};
  if (spec.kind == VariantKind::G2T) {
    const std::int64_t p = spec.base;
    g.row = floor_div(i, p);
    g.col = mod_pos(g.row, 2) == 0 ? i - p * g.row : p * (g.row + 1) - i;
  }
  return g;
}

std::vector<GridVertex> variant_vertices(const VariantSpec& spec, Vertex bound) {
  if (bound < 1) throw std::invalid_argument("variant_vertices: bound must be >= 1");
  std::vector<GridVertex> out;
  // |v_i| grows at least linearly in |i|, so scanning stops at the first miss
  // after a short tail.
  auto scan = [&](std::int64_t step) {
    int misses = 0;
    for (std::int64_t i = step > 0 ? 0 : -1; misses < 4; i += step) {
      if (!spec.two_sided() && i < 0) break;
      Vertex v = variant_value(spec, i);
      if ((v < 0 ? -v : v) <= bound) {
        out.push_back(grid_vertex(spec, i));
        misses = 0;
      } else {
        ++misses;
      }
    }
  };
  scan(1);
  scan(-1);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
  return out;
}

std::vector<std::int64_t> grid_column(const VariantSpec& spec, std::int64_t j, std::int64_t lo,
                                      std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t i = lo; i <= hi; ++i)
    if (grid_vertex(spec, i).col == j) out.push_back(i);
  return out;
}

bool quantum_steinberg(Vertex v, std::int64_t k, bool weight_reading) {
  return mod_pos(weight_reading ? v - 1 : v, k) == 0;
}

// ---------------------------------------------------------------------------
// Elements

void Element::add(const Path& w, std::int64_t c) {
  c = Fp::reduce(c, p);
  if (c == 0) return;
  auto [it, fresh] = terms.emplace(w, c);
  if (fresh) return;
  it->second = (it->second + c) % p;
  if (it->second == 0) terms.erase(it);
}

Element& Element::operator+=(const Element& o) {
  if (o.source != source || o.target != target)
    throw std::invalid_argument("Element: endpoint mismatch");
  for (const auto& [w, c] : o.terms) add(w, c);
  return *this;
}

// ---------------------------------------------------------------------------
// The window algebra

VariantAlgebra::VariantAlgebra(const VariantSpec& spec, std::int64_t lo, std::int64_t hi)
    : spec_(spec), lo_(lo), hi_(hi), p_(spec.field()) {
  if (!spec_.two_sided()) lo_ = std::max<std::int64_t>(lo_, 0);
  if (spec_.kind == VariantKind::G2T) {
    lo_ = spec_.base * floor_div(lo_, spec_.base);
    hi_ = spec_.base * floor_div(hi_, spec_.base) + spec_.base - 1;
  }
  if (lo_ > hi_) throw std::invalid_argument("variant window is empty");

  auto link = [&](std::int64_t a, std::int64_t b, int digit) {
    out_[a].push_back(arrows_.size());
    arrows_.push_back({a, b, Kind::Up, digit});
    out_[b].push_back(arrows_.size());
    arrows_.push_back({b, a, Kind::Down, digit});
  };
  for (std::int64_t x = lo_; x <= hi_; ++x) out_[x];
  if (spec_.kind == VariantKind::QuantumRoot || spec_.kind == VariantKind::G1T) {
    for (std::int64_t x = lo_; x < hi_; ++x) link(x, x + 1, 0);
  } else if (spec_.kind == VariantKind::G2T) {
    const std::int64_t p = spec_.base;
    for (std::int64_t x = lo_; x < hi_; ++x)
      if (floor_div(x, p) == floor_div(x + 1, p)) link(x, x + 1, 0);
    for (std::int64_t x = lo_; x <= hi_; ++x) {
      GridVertex g = grid_vertex(spec_, x);
      if (g.col < 1 || g.col > p - 1) continue;
      const std::int64_t r = g.row + 1;
      const std::int64_t y = mod_pos(r, 2) == 0 ? p * r + g.col : p * (r + 1) - g.col;
      if (y <= hi_) link(x, y, 1);
    }
  }
  build();
}

std::vector<std::size_t> VariantAlgebra::arrows_from(std::int64_t x) const {
  auto it = out_.find(x);
  return it == out_.end() ? std::vector<std::size_t>{} : it->second;
}

std::optional<std::size_t> VariantAlgebra::arrow(std::int64_t x, Kind kind, int digit) const {
  for (std::size_t a : arrows_from(x))
    if (arrows_[a].kind == kind && arrows_[a].digit == digit) return a;
  return std::nullopt;
}

std::int64_t VariantAlgebra::end_of(const Path& w) const {
  return w.arrows.empty() ? w.source : arrows_[w.arrows.back()].target;
}

std::vector<Path> VariantAlgebra::paths_from(std::int64_t x, std::size_t len) const {
  std::vector<Path> cur{Path{x, {}}};
  for (std::size_t d = 0; d < len; ++d) {
    std::vector<Path> next;
    for (const auto& w : cur)
      for (std::size_t a : arrows_from(end_of(w))) {
        Path n = w;
        n.arrows.push_back(a);
        next.push_back(std::move(n));
      }
    cur = std::move(next);
  }
  return cur;
}

// Relations starting at x, each a list of (path, coefficient) with
// common target. Terms leaving the window vanish, which realizes the quotient
// by the outside idempotents.
std::vector<std::vector<std::pair<Path, std::int64_t>>> VariantAlgebra::relations_at(
    std::int64_t x) const {
  std::vector<std::vector<std::pair<Path, std::int64_t>>> rels;
  const std::int64_t p = spec_.base;
  auto path2 = [&](std::size_t a, std::size_t b) { return Path{x, {a, b}}; };

  // Neighbours in the infinite quiver along one digit, so that vanishing
  // outside the window stays distinct from a missing corner.
  auto infinite_neighbours = [&](std::int64_t v, int digit) {
    std::vector<std::int64_t> out;
    if (spec_.kind == VariantKind::QuantumRoot || spec_.kind == VariantKind::G1T) {
      if (digit != 0) return out;
      if (spec_.two_sided() || v > 0) out.push_back(v - 1);
      out.push_back(v + 1);
    } else if (spec_.kind == VariantKind::G2T) {
      GridVertex g = grid_vertex(spec_, v);
      if (digit == 0) {
        if (floor_div(v - 1, p) == g.row) out.push_back(v - 1);
        if (floor_div(v + 1, p) == g.row) out.push_back(v + 1);
      } else if (g.col >= 1 && g.col <= p - 1) {
        for (std::int64_t r : {g.row - 1, g.row + 1})
          out.push_back(mod_pos(r, 2) == 0 ? p * r + g.col : p * (r + 1) - g.col);
      }
    }
    return out;
  };
  auto arrow_to = [&](std::int64_t a, std::int64_t b) -> std::optional<std::size_t> {
    for (std::size_t id : arrows_from(a))
      if (arrows_[id].target == b) return id;
    return std::nullopt;
  };
  // The length-2 path a -> b -> c, if present in the window.
  auto via = [&](std::int64_t b, std::int64_t c) -> std::optional<Path> {
    auto u = arrow_to(x, b);
    if (!u) return std::nullopt;
    auto w = arrow_to(b, c);
    if (!w) return std::nullopt;
    return path2(*u, *w);
  };

  if (spec_.kind == VariantKind::QuantumGeneric) return rels;
  const int digits = spec_.kind == VariantKind::G2T ? 2 : 1;

  for (int d = 0; d < digits; ++d) {
    auto nb = infinite_neighbours(x, d);
    // Straight paths x -> y -> z along one digit vanish.
    for (std::int64_t y : nb)
      for (std::int64_t z : infinite_neighbours(y, d))
        if (z != x)
          if (auto w = via(y, z)) rels.push_back({{*w, 1}});
    // The loops through both neighbours agree; a lone quantum boundary loop
    // vanishes; the lone loop at a G2T row end is free.
    if (nb.size() == 2) {
      std::vector<std::pair<Path, std::int64_t>> r;
      if (auto w = via(nb[0], x)) r.push_back({*w, 1});
      if (auto w = via(nb[1], x)) r.push_back({*w, p_ - 1});
      if (!r.empty()) rels.push_back(r);
    } else if (nb.size() == 1 && spec_.kind == VariantKind::QuantumRoot) {
      if (auto w = via(nb[0], x)) rels.push_back({{*w, 1}});
    }
  }

  if (spec_.kind == VariantKind::G2T) {
    // Complete squares commute: for each diagonal corner z reachable both ways.
    std::map<std::int64_t, std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>> corners;
    for (std::int64_t h : infinite_neighbours(x, 0))
      for (std::int64_t z : infinite_neighbours(h, 1)) corners[z].first.push_back(h);
    for (std::int64_t v : infinite_neighbours(x, 1))
      for (std::int64_t z : infinite_neighbours(v, 0)) corners[z].second.push_back(v);
    for (const auto& [z, mids] : corners) {
      if (mids.first.empty() || mids.second.empty()) continue;
      std::vector<std::pair<Path, std::int64_t>> r;
      for (std::int64_t h : mids.first)
        if (auto w = via(h, z)) r.push_back({*w, 1});
      for (std::int64_t v : mids.second)
        if (auto w = via(v, z)) r.push_back({*w, p_ - 1});
      if (!r.empty()) rels.push_back(r);
    }
    // At the arrowless columns 0 and p, e_x Z e_x is K[l]/(l^2): the column
    // loop of the row neighbour y, conjugated into x, vanishes.
    if (spec_.boundary_transport && grid_vertex(spec_, x).col % p == 0) {
      for (std::int64_t y : infinite_neighbours(x, 0)) {
        auto h = arrow_to(x, y);
        auto back = arrow_to(y, x);
        if (!h || !back) continue;
        for (std::int64_t z : infinite_neighbours(y, 1)) {
          auto u = arrow_to(y, z);
          auto w = u ? arrow_to(z, y) : std::nullopt;
          if (w) rels.push_back({{Path{x, {*h, *u, *w, *back}}, 1}});
        }
      }
    }
  }
  return rels;
}

void VariantAlgebra::build() {
  layers_.clear();
  for (int d = 0; d <= kDegreeCap; ++d) {
    Layer layer;
    for (std::int64_t x = lo_; x <= hi_; ++x)
      for (auto& w : paths_from(x, static_cast<std::size_t>(d)))
        layer.paths[{x, end_of(w)}].push_back(std::move(w));
    for (auto& [key, ps] : layer.paths) std::sort(ps.begin(), ps.end());
    std::size_t normal = 0;
    if (d >= 2) {
      auto column = [&](const Path& w) {
        const auto& ps = layer.paths.at({w.source, end_of(w)});
        return static_cast<std::size_t>(std::lower_bound(ps.begin(), ps.end(), w) - ps.begin());
      };
      for (std::int64_t x = lo_; x <= hi_; ++x) {
        for (int j = 0; j + 2 <= d; ++j) {
          for (const auto& pre : paths_from(x, static_cast<std::size_t>(j))) {
            const std::int64_t y = end_of(pre);
            for (const auto& rel : relations_at(y)) {
              const int len = static_cast<int>(rel.front().first.arrows.size());
              if (j + len > d) continue;
              const std::int64_t z = end_of(rel.front().first);
              for (const auto& post : paths_from(z, static_cast<std::size_t>(d - len - j))) {
                SparseVec v;
                for (const auto& [t, c] : rel) {
                  Path w = pre;
                  w.arrows.insert(w.arrows.end(), t.arrows.begin(), t.arrows.end());
                  w.arrows.insert(w.arrows.end(), post.arrows.begin(), post.arrows.end());
                  v.emplace_back(column(w), c);
                }
                std::sort(v.begin(), v.end());
                const std::int64_t t = end_of(post);
                layer.ideal.try_emplace({x, t}, p_).first->second.insert(std::move(v));
              }
            }
          }
        }
      }
      for (auto& [key, r] : layer.ideal) r.to_reduced();
    }
    for (const auto& [key, ps] : layer.paths) {
      auto it = layer.ideal.find(key);
      normal += ps.size() - (it == layer.ideal.end() ? 0 : it->second.rank());
    }
    if (normal == 0) return;
    layers_.push_back(std::move(layer));
  }
  throw std::logic_error("variant algebra: no top degree below the cap");
}

Element VariantAlgebra::idempotent(std::int64_t x) const {
  if (!contains(x)) throw std::out_of_range("vertex outside the window");
  Element e{p_, x, x, {}};
  e.add(Path{x, {}}, 1);
  return e;
}

Element VariantAlgebra::reduce(const Path& w) const {
  const std::int64_t t = end_of(w);
  Element e{p_, w.source, t, {}};
  const std::size_t d = w.arrows.size();
  if (d >= layers_.size()) return e;
  const Layer& layer = layers_[d];
  auto pit = layer.paths.find({w.source, t});
  if (pit == layer.paths.end()) return e;
  const auto& ps = pit->second;
  auto pos = std::lower_bound(ps.begin(), ps.end(), w);
  if (pos == ps.end() || !(*pos == w)) throw std::invalid_argument("not a path in the window");
  const std::size_t col = static_cast<std::size_t>(pos - ps.begin());
  auto iit = layer.ideal.find({w.source, t});
  if (iit != layer.ideal.end()) {
    auto rit = iit->second.rows().find(col);
    if (rit != iit->second.rows().end()) {
      for (const auto& [c, x] : rit->second)
        if (c != col) e.add(ps[c], p_ - x);
      return e;
    }
  }
  e.add(w, 1);
  return e;
}

Element VariantAlgebra::compose(const Element& f, const Element& g) const {
  if (f.source != g.target) throw std::invalid_argument("compose: endpoint mismatch");
  Element out{p_, g.source, f.target, {}};
  for (const auto& [wg, cg] : g.terms)
    for (const auto& [wf, cf] : f.terms) {
      Path w = wg;
      w.arrows.insert(w.arrows.end(), wf.arrows.begin(), wf.arrows.end());
      const Element r = reduce(w);
      for (const auto& [t, c] : r.terms) out.add(t, c * (cf * cg % p_) % p_);
    }
  return out;
}

std::vector<Path> VariantAlgebra::basis(std::int64_t x, std::int64_t y) const {
  std::vector<Path> out;
  for (const auto& layer : layers_) {
    auto pit = layer.paths.find({x, y});
    if (pit == layer.paths.end()) continue;
    auto iit = layer.ideal.find({x, y});
    for (std::size_t c = 0; c < pit->second.size(); ++c)
      if (iit == layer.ideal.end() || !iit->second.rows().count(c)) out.push_back(pit->second[c]);
  }
  return out;
}

Element VariantAlgebra::loop(std::int64_t x, Kind kind, int digit) const {
  Element e{p_, x, x, {}};
  auto a = arrow(x, kind, digit);
  if (!a) return e;
  auto b = arrow(arrows_[*a].target, kind == Kind::Up ? Kind::Down : Kind::Up, digit);
  if (!b || arrows_[*b].target != x) return e;
  return reduce(Path{x, {*a, *b}});
}

Element VariantAlgebra::row_loop(std::int64_t x) const {
  Element e = loop(x, Kind::Up, 0);
  return e.is_zero() ? loop(x, Kind::Down, 0) : e;
}

Element VariantAlgebra::column_loop(std::int64_t x) const {
  Element e = loop(x, Kind::Up, 1);
  return e.is_zero() ? loop(x, Kind::Down, 1) : e;
}

std::string VariantAlgebra::path_string(const Path& w) const {
  std::ostringstream os;
  os << "e[" << end_of(w) << "]";
  for (auto it = w.arrows.rbegin(); it != w.arrows.rend(); ++it)
    os << ' ' << (arrows_[*it].kind == Kind::Up ? 'U' : 'D') << '{' << arrows_[*it].digit << '}';
  if (!w.arrows.empty()) os << " e[" << w.source << "]";
  return os.str();
}

std::string VariantAlgebra::to_string(const Element& e) const {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : e.terms) {
    if (!first) os << " + ";
    first = false;
    if (c != 1) os << c << "*";
    os << path_string(w);
  }
  return os.str();
}

VariantAlgebra variant_window(const VariantSpec& spec, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("variant window size must be >= 1");
  switch (spec.kind) {
    case VariantKind::QuantumGeneric:
    case VariantKind::QuantumRoot: return VariantAlgebra(spec, 0, n - 1);
    case VariantKind::G1T: return VariantAlgebra(spec, -n, n);
    case VariantKind::G2T: return VariantAlgebra(spec, -n * spec.base, n * spec.base);
  }
  throw std::logic_error("unknown variant");
}

// ---------------------------------------------------------------------------
// Words

Element variant_compose(const VariantAlgebra& a, std::string_view text) {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("bad variant word '" + std::string(text) + "': " + why);
  };
  std::optional<Element> total;
  std::size_t start = 0;
  for (;;) {
    std::size_t plus = text.find('+', start);
    std::string_view piece = text.substr(start, plus == std::string_view::npos ? text.npos : plus - start);
    std::size_t pos = 0;
    auto ws = [&] {
      while (pos < piece.size() && std::isspace(static_cast<unsigned char>(piece[pos]))) ++pos;
    };
    auto read_int = [&]() -> std::int64_t {
      ws();
      bool neg = false;
      if (pos < piece.size() && piece[pos] == '-') {
        neg = true;
        ++pos;
      }
      if (pos >= piece.size() || !std::isdigit(static_cast<unsigned char>(piece[pos])))
        fail("expected integer");
      std::int64_t x = 0;
      while (pos < piece.size() && std::isdigit(static_cast<unsigned char>(piece[pos])))
        x = x * 10 + (piece[pos++] - '0');
      return neg ? -x : x;
    };
    ws();
    std::int64_t scalar = 1;
    if (pos < piece.size() && (std::isdigit(static_cast<unsigned char>(piece[pos])) || piece[pos] == '-')) {
      scalar = read_int();
      ws();
      if (pos >= piece.size() || piece[pos] != '*') fail("expected '*' after coefficient");
      ++pos;
    }
    struct Tok {
      char kind;
      std::int64_t n;
    };
    std::vector<Tok> toks;
    for (;;) {
      ws();
      if (pos >= piece.size()) break;
      char c = piece[pos++];
      if (c == 'e') {
        ws();
        if (pos >= piece.size() || piece[pos++] != '[') fail("expected '[' after e");
        std::int64_t n = read_int();
        ws();
        if (pos >= piece.size() || piece[pos++] != ']') fail("expected ']'");
        toks.push_back({'e', n});
      } else if (c == 'U' || c == 'D') {
        ws();
        if (pos >= piece.size() || piece[pos++] != '{') fail("expected '{'");
        std::int64_t n = read_int();
        ws();
        if (pos >= piece.size() || piece[pos++] != '}') fail("expected '}'");
        if (n != 0 && n != 1) fail("variant letters carry digit 0 or 1");
        toks.push_back({c, n});
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
    }
    if (toks.empty() || toks.back().kind != 'e') fail("word must end with the source e[i]");
    for (std::size_t i = 1; i + 1 < toks.size(); ++i)
      if (toks[i].kind == 'e') fail("idempotents only at the ends");
    const std::int64_t source = toks.back().n;
    if (!a.contains(source)) fail("source outside the window");
    Path w{source, {}};
    std::int64_t at = source;
    for (std::size_t i = toks.size() - 1; i-- > 0;) {
      if (toks[i].kind == 'e') continue;
      auto id = a.arrow(at, toks[i].kind == 'U' ? Kind::Up : Kind::Down, static_cast<int>(toks[i].n));
      if (!id) fail("no such arrow at e[" + std::to_string(at) + "]");
      w.arrows.push_back(*id);
      at = a.arrows()[*id].target;
    }
    if (toks.size() > 1 && toks.front().kind == 'e' && toks.front().n != at)
      fail("endpoint mismatch: word ends at e[" + std::to_string(at) + "]");
    Element e = a.reduce(w);
    Element scaled{e.p, e.source, e.target, {}};
    for (const auto& [t, c] : e.terms) scaled.add(t, c * Fp::reduce(scalar, e.p) % e.p);
    if (!total) total = scaled;
    else *total += scaled;
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return *total;
}

// ---------------------------------------------------------------------------
// Centers

bool variant_interior(const VariantAlgebra& a, std::int64_t x, std::int64_t margin) {
  const auto& s = a.spec();
  const std::int64_t unit = s.kind == VariantKind::G2T ? s.base : 1;
  const std::int64_t lo = s.two_sided() ? a.lo() + margin * unit : a.lo();
  return x >= lo && x <= a.hi() - margin * unit;
}

std::vector<VariantCandidate> variant_predicted(const VariantAlgebra& a, std::int64_t margin) {
  const auto& s = a.spec();
  std::vector<VariantCandidate> out;
  if (s.kind == VariantKind::QuantumGeneric) {
    for (std::int64_t x = a.lo(); x <= a.hi(); ++x)
      if (variant_interior(a, x, margin)) out.push_back({"1_" + std::to_string(x), {{x, a.idempotent(x)}}});
    return out;
  }
  VariantCandidate unit{"1", {}};
  for (std::int64_t x = a.lo(); x <= a.hi(); ++x) unit.support.emplace(x, a.idempotent(x));
  out.push_back(unit);
  for (std::int64_t x = a.lo(); x <= a.hi(); ++x) {
    if (!variant_interior(a, x, margin)) continue;
    const std::string i = std::to_string(x);
    if (s.kind != VariantKind::G2T) {
      if (s.kind == VariantKind::QuantumRoot && x == 0) continue;  // the boundary loop is zero
      out.push_back({"l_" + i, {{x, a.row_loop(x)}}});
    } else if (mod_pos(x, s.base) == 0) {
      out.push_back({"l_" + i, {{x, a.row_loop(x)}}});
    } else {
      out.push_back({"l_" + i + "l'_" + i, {{x, a.compose(a.row_loop(x), a.column_loop(x))}}});
    }
  }
  if (s.kind == VariantKind::G2T) {
    for (std::int64_t j = 1; j < s.base; ++j) {
      VariantCandidate c{"L_c(" + std::to_string(j) + ")", {}};
      for (std::int64_t x : grid_column(s, j, a.lo(), a.hi())) c.support.emplace(x, a.row_loop(x));
      out.push_back(c);
    }
  }
  return out;
}

VariantCenterReport variant_center(const VariantAlgebra& a, std::int64_t margin) {
  const std::int64_t q = a.prime();
  VariantCenterReport rep;
  rep.variant = a.spec().name();
  rep.lo = a.lo();
  rep.hi = a.hi();
  rep.margin = margin;

  // Interior vertices first, so interior coordinates form a prefix.
  std::vector<std::int64_t> order;
  for (std::int64_t x = a.lo(); x <= a.hi(); ++x)
    if (variant_interior(a, x, margin)) order.push_back(x);
  const std::size_t n_interior = order.size();
  for (std::int64_t x = a.lo(); x <= a.hi(); ++x)
    if (!variant_interior(a, x, margin)) order.push_back(x);

  std::map<std::int64_t, std::vector<Path>> words;
  std::map<std::int64_t, std::size_t> offset;
  std::size_t interior_cols = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::int64_t x = order[k];
    offset[x] = rep.unknowns;
    words[x] = a.basis(x, x);
    rep.unknowns += words[x].size();
    if (k + 1 == n_interior) interior_cols = rep.unknowns;
  }
  auto column = [&](std::int64_t x, const Path& w) {
    const auto& ws = words.at(x);
    auto it = std::find(ws.begin(), ws.end(), w);
    if (it == ws.end()) throw std::logic_error("path outside End basis");
    return offset.at(x) + static_cast<std::size_t>(it - ws.begin());
  };

  std::vector<SparseVec> rows;
  for (std::size_t id = 0; id < a.arrows().size(); ++id) {
    const Arrow& g = a.arrows()[id];
    Element ge{q, g.source, g.target, {}};
    ge.add(Path{g.source, {id}}, 1);
    std::map<Path, std::map<std::size_t, std::int64_t>> eq;
    const auto& ey = words.at(g.target);
    for (std::size_t i = 0; i < ey.size(); ++i) {
      Element m{q, g.target, g.target, {}};
      m.add(ey[i], 1);
      const Element r = a.compose(m, ge);
      for (const auto& [w, c] : r.terms) eq[w][offset.at(g.target) + i] += c;
    }
    const auto& ex = words.at(g.source);
    for (std::size_t i = 0; i < ex.size(); ++i) {
      Element m{q, g.source, g.source, {}};
      m.add(ex[i], 1);
      const Element r = a.compose(ge, m);
      for (const auto& [w, c] : r.terms) eq[w][offset.at(g.source) + i] -= c;
    }
    for (const auto& [w, cols] : eq) {
      SparseVec row;
      for (const auto& [c, k] : cols)
        if (Fp::reduce(k, q) != 0) row.emplace_back(c, Fp::reduce(k, q));
      if (!row.empty()) rows.push_back(std::move(row));
    }
  }
  rep.equations = rows.size();
  auto kernel = nullspace(rows, rep.unknowns, q);
  rep.nullity = kernel.size();

  RowReducer solved(q);
  for (const auto& v : kernel) {
    SparseVec r;
    for (const auto& e : v)
      if (e.first < interior_cols) r.push_back(e);
    solved.insert(std::move(r));
  }
  rep.interior_dim = solved.rank();

  auto family = variant_predicted(a, margin);
  rep.family_size = family.size();
  RowReducer predicted(q), joint(q);
  for (const auto& [c, row] : solved.rows()) joint.insert(row);
  for (const auto& c : family) {
    rep.basis.push_back(c.label);
    SparseVec v;
    for (const auto& [x, e] : c.support) {
      if (!variant_interior(a, x, margin)) continue;
      for (const auto& [w, k] : e.terms) v.emplace_back(column(x, w), k);
    }
    std::sort(v.begin(), v.end());
    predicted.insert(v);
    joint.insert(v);

    // Centrality of the candidate on the whole window.
    auto at = [&](std::int64_t x) {
      auto it = c.support.find(x);
      return it == c.support.end() ? Element{q, x, x, {}} : it->second;
    };
    for (std::size_t id = 0; id < a.arrows().size(); ++id) {
      const Arrow& g = a.arrows()[id];
      Element ge{q, g.source, g.target, {}};
      ge.add(Path{g.source, {id}}, 1);
      if (!(a.compose(at(g.target), ge) == a.compose(ge, at(g.source)))) {
        rep.candidates_central = false;
        rep.failures.push_back(c.label + " fails to commute with " + a.path_string(Path{g.source, {id}}));
      }
    }
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family[i].label == "1" || family[i].label.rfind("1_", 0) == 0) continue;
    for (std::size_t j = i; j < family.size(); ++j) {
      if (family[j].label == "1" || family[j].label.rfind("1_", 0) == 0) continue;
      for (const auto& [x, e] : family[i].support) {
        auto it = family[j].support.find(x);
        if (it == family[j].support.end()) continue;
        if (!a.compose(e, it->second).is_zero()) {
          rep.products_zero = false;
          rep.failures.push_back(family[i].label + " * " + family[j].label + " != 0 at e[" +
                                 std::to_string(x) + "]");
        }
      }
    }
  }
  rep.predicted_dim = predicted.rank();
  rep.matches_prediction = rep.predicted_dim == family.size() &&
                           rep.interior_dim == rep.predicted_dim && joint.rank() == rep.predicted_dim;
  return rep;
}

std::string variant_center_json(const VariantCenterReport& r) {
  nlohmann::ordered_json j;
  j["variant"] = r.variant;
  j["window"] = {r.lo, r.hi};
  j["margin"] = r.margin;
  j["unknowns"] = r.unknowns;
  j["equations"] = r.equations;
  j["nullity"] = r.nullity;
  j["interior_dim"] = r.interior_dim;
  j["predicted_dim"] = r.predicted_dim;
  j["family_size"] = r.family_size;
  j["candidates_central"] = r.candidates_central;
  j["products_zero"] = r.products_zero;
  j["matches_prediction"] = r.matches_prediction;
  j["basis"] = r.basis;
  j["failures"] = r.failures;
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Donkin

DonkinFactorization DonkinFactorization::pruned() const {
  DonkinFactorization out{p, {}};
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (i == 0 || factors[i].weight != p - 1) out.factors.push_back(factors[i]);
  return out;
}

DonkinFactorization DonkinFactorization::without_trivial() const {
  DonkinFactorization out{p, {}};
  for (const auto& f : factors)
    if (f.weight != 0) out.factors.push_back(f);
  return out;
}

std::string DonkinFactorization::to_string() const {
  if (factors.empty()) return "T(0)";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) os << " (x) ";
    os << "T(" << factors[i].weight << ")^(" << factors[i].twist << ")";
  }
  return os.str();
}

Vertex DonkinFactorization::value() const {
  if (factors.empty()) return 1;
  Vertex v = (factors[0].weight + 1) * ipow(p, factors[0].twist);
  for (std::size_t i = 1; i < factors.size(); ++i)
    v += (factors[i].weight - p + 1) * ipow(p, factors[i].twist);
  return v;
}

DonkinFactorization donkin_factorize(Vertex v, Prime p) {
  auto d = expand(v, p).digits();
  const int j = static_cast<int>(d.size()) - 1;
  DonkinFactorization out{p.value(), {}};
  out.factors.push_back({d[j] - 1, j});
  for (int i = j - 1; i >= 0; --i) out.factors.push_back({d[i] + p.value() - 1, i});
  return out;
}

DonkinSplit donkin_split(Vertex w, int j, Prime p) {
  const int lead = leading_index(w, p);
  if (j < 1 || j > lead) throw std::invalid_argument("donkin_split: need 0 < j <= leading index");
  const std::int64_t pj = ipow(p, j);
  DonkinSplit s{w / pj, pj + w % pj, j, donkin_factorize(w / pj, p), donkin_factorize(pj + w % pj, p)};
  for (auto& f : s.upper_twisted.factors) f.twist += j;
  return s;
}

std::string donkin_json(Vertex v, Prime p) {
  auto list = [](const DonkinFactorization& f) {
    auto a = nlohmann::ordered_json::array();
    for (const auto& x : f.factors) a.push_back({{"weight", x.weight}, {"twist", x.twist}});
    return a;
  };
  auto full = donkin_factorize(v, p);
  nlohmann::ordered_json j;
  j["p"] = p.value();
  j["v"] = v;
  j["digits"] = expand(v, p).to_string();
  j["factors"] = list(full);
  j["pruned"] = list(full.pruned());
  j["text"] = full.to_string();
  const int lead = leading_index(v, p);
  if (lead >= 1) {
    auto s = donkin_split(v, lead, p);
    j["split"] = {{"j", lead},
                  {"upper", s.upper},
                  {"lower", s.lower},
                  {"upper_twisted", list(s.upper_twisted)},
                  {"lower_factors", list(s.lower_factors.without_trivial())}};
  }
  return j.dump(2) + "\n";
}

}  // namespace tiltz
