#include "tiltz/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "tiltz/linalg.hpp"

namespace tiltz {

namespace {

constexpr std::size_t kStepBudget = 1'000'000;

std::size_t mix(std::size_t h, std::size_t x) {
  return h ^ (x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::size_t hash_stretches(std::size_t h, const std::vector<Stretch>& v) {
  h = mix(h, v.size());
  for (auto s : v) h = mix(mix(h, static_cast<std::size_t>(s.lo)), static_cast<std::size_t>(s.hi));
  return h;
}

bool is_normal_pair(const Letter& first, const Letter& second) {
  if (first.kind == Kind::Down && second.kind == Kind::Up) return true;
  if (first.kind == Kind::Down && second.kind == Kind::Down) return second.stretch.hi < first.stretch.lo;
  if (first.kind == Kind::Up && second.kind == Kind::Up) return second.stretch.lo > first.stretch.hi;
  return false;
}

BasisWord word_from_letters(Vertex source, Vertex target, const std::vector<Letter>& ls) {
  BasisWord w{source, target, {}, {}};
  for (const auto& l : ls) (l.kind == Kind::Down ? w.downs : w.ups).push_back(l.stretch);
  std::reverse(w.downs.begin(), w.downs.end());
  return w;
}

std::string vertex_label(Vertex v, bool weights) { return std::to_string(weights ? v - 1 : v); }

}  // namespace

// ---------------------------------------------------------------------------
// Letters and basis words

bool is_generator_at(Vertex x, const Letter& g, Prime p) {
  return g.kind == Kind::Down ? is_minimal_down_stretch(g.stretch, x, p)
                              : is_minimal_up_stretch(g.stretch, x, p);
}

Vertex apply_letter(Vertex x, const Letter& g, Prime p) {
  if (!is_generator_at(x, g, p))
    throw std::invalid_argument((g.kind == Kind::Down ? "D" : "U") + to_string(g.stretch) +
                                " is not a generator at " + std::to_string(x));
  return g.kind == Kind::Down ? reflect_down(x, g.stretch, p) : reflect_up(x, g.stretch, p);
}

BasisWord BasisWord::make(Vertex source, std::vector<Stretch> downs, std::vector<Stretch> ups,
                          Prime p) {
  for (std::size_t i = 1; i < downs.size(); ++i)
    if (downs[i - 1].hi >= downs[i].lo) throw std::invalid_argument("downs not strictly ascending");
  for (std::size_t i = 1; i < ups.size(); ++i)
    if (ups[i - 1].hi >= ups[i].lo) throw std::invalid_argument("ups not strictly ascending");
  BasisWord w{source, source, std::move(downs), std::move(ups)};
  Vertex x = source;
  for (const auto& l : w.letters()) x = apply_letter(x, l, p);
  w.target = x;
  return w;
}

std::vector<Letter> BasisWord::letters() const {
  std::vector<Letter> out;
  for (auto it = downs.rbegin(); it != downs.rend(); ++it) out.push_back({Kind::Down, *it});
  for (auto s : ups) out.push_back({Kind::Up, s});
  return out;
}

Vertex BasisWord::middle(Prime p) const {
  Vertex x = source;
  for (auto it = downs.rbegin(); it != downs.rend(); ++it) x = reflect_down(x, *it, p);
  return x;
}

std::string BasisWord::to_string(bool weights) const {
  std::ostringstream os;
  os << "e[" << vertex_label(target, weights) << "]";
  for (auto it = ups.rbegin(); it != ups.rend(); ++it) os << " U" << tiltz::to_string(*it);
  for (auto s : downs) os << " D" << tiltz::to_string(s);
  if (!is_identity()) os << " e[" << vertex_label(source, weights) << "]";
  return os.str();
}

std::size_t BasisWordHash::operator()(const BasisWord& w) const noexcept {
  std::size_t h = mix(static_cast<std::size_t>(w.source), static_cast<std::size_t>(w.target));
  return hash_stretches(hash_stretches(h, w.downs), w.ups);
}

// ---------------------------------------------------------------------------
// Morphisms

Morphism Morphism::identity(Prime p, Vertex v) { return of(p, BasisWord::identity(v)); }

Morphism Morphism::of(Prime p, const BasisWord& w, std::int64_t coeff) {
  Morphism m(p, w.source, w.target);
  m.add(w, coeff);
  return m;
}

Fp Morphism::coefficient(const BasisWord& w) const {
  auto it = terms_.find(w);
  return Fp(it == terms_.end() ? 0 : it->second, p_);
}

void Morphism::add(const BasisWord& w, std::int64_t coeff) {
  if (w.source != source_ || w.target != target_)
    throw std::invalid_argument("Morphism::add: endpoint mismatch");
  coeff = Fp::reduce(coeff, p_.value());
  if (coeff == 0) return;
  auto [it, fresh] = terms_.emplace(w, coeff);
  if (fresh) return;
  it->second = (it->second + coeff) % p_.value();
  if (it->second == 0) terms_.erase(it);
}

void Morphism::check(const Morphism& o) const {
  if (!(o.p_ == p_) || o.source_ != source_ || o.target_ != target_)
    throw std::invalid_argument("Morphism: mismatched endpoints or prime");
}

Morphism& Morphism::operator+=(const Morphism& o) {
  check(o);
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

Morphism& Morphism::operator-=(const Morphism& o) {
  check(o);
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

Morphism Morphism::scaled(std::int64_t c) const {
  Morphism r(p_, source_, target_);
  c = Fp::reduce(c, p_.value());
  if (c == 0) return r;
  for (const auto& [w, k] : terms_) r.terms_.emplace(w, (k * c) % p_.value());
  return r;
}

std::string Morphism::to_string(bool weights) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (c != 1) os << c << "*";
    os << w.to_string(weights);
  }
  return os.str();
}

std::string Morphism::to_json() const {
  nlohmann::ordered_json j;
  j["p"] = p_.value();
  j["source"] = source_;
  j["target"] = target_;
  j["terms"] = nlohmann::ordered_json::array();
  auto chain = [](const std::vector<Stretch>& v) {
    auto a = nlohmann::ordered_json::array();
    for (auto s : v) a.push_back({s.lo, s.hi});
    return a;
  };
  for (const auto& [w, c] : terms_)
    j["terms"].push_back({{"downs", chain(w.downs)}, {"ups", chain(w.ups)}, {"coeff", c}});
  return j.dump();
}

// ---------------------------------------------------------------------------
// Word parsing

RawWord parse_word(std::string_view text, bool weights) {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("bad word '" + std::string(text) + "': " + why);
  };
  std::size_t pos = 0;
  auto ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_int = [&]() -> std::int64_t {
    ws();
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) neg = text[pos++] == '-';
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) fail("expected integer");
    std::int64_t x = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      x = x * 10 + (text[pos++] - '0');
    return neg ? -x : x;
  };

  RawWord out;
  ws();
  // Optional leading coefficient `c*`.
  {
    std::size_t save = pos;
    if (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '-')) {
      std::int64_t c = read_int();
      ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        out.scalar = c;
      } else {
        pos = save;
      }
    }
  }
  struct Tok {
    char kind;  // 'e', 'U', 'D'
    Vertex v;
    AdmissibleSet s;
  };
  std::vector<Tok> toks;
  for (;;) {
    ws();
    if (pos >= text.size()) break;
    char c = text[pos];
    if (c == 'e') {
      ++pos;
      ws();
      if (pos >= text.size() || text[pos] != '[') fail("expected '[' after e");
      ++pos;
      std::int64_t n = read_int();
      ws();
      if (pos >= text.size() || text[pos] != ']') fail("expected ']'");
      ++pos;
      Vertex v = weights ? n + 1 : n;
      if (v < 1) fail("vertex must be >= 1");
      toks.push_back({'e', v, {}});
    } else if (c == 'U' || c == 'D') {
      ++pos;
      ws();
      std::size_t close = text.find('}', pos);
      if (pos >= text.size() || text[pos] != '{' || close == std::string_view::npos) fail("expected {set}");
      toks.push_back({c, 0, AdmissibleSet::parse(text.substr(pos, close - pos + 1))});
      if (toks.back().s.empty()) fail("empty stretch set");
      pos = close + 1;
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
  }
  if (toks.empty() || toks.back().kind != 'e') fail("word must end with the source idempotent e[v]");
  out.source = toks.back().v;
  for (std::size_t i = 0; i + 1 < toks.size(); ++i)
    if (toks[i].kind == 'e' && i != 0) fail("idempotents only at the ends");
  if (toks.size() > 1 && toks.front().kind == 'e') out.target = toks.front().v;
  for (std::size_t i = toks.size() - 1; i-- > 0;) {
    if (toks[i].kind == 'e') continue;
    out.letters.push_back({toks[i].kind == 'D' ? Kind::Down : Kind::Up, toks[i].s});
  }
  return out;
}

std::vector<RawWord> parse_word_sum(std::string_view text, bool weights) {
  std::vector<RawWord> out;
  std::string t(text);
  auto trimmed = [](std::string s) {
    auto b = s.find_first_not_of(" \t\n");
    auto e = s.find_last_not_of(" \t\n");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  if (trimmed(t) == "0") return out;
  std::size_t start = 0;
  for (;;) {
    std::size_t plus = t.find('+', start);
    std::string piece = trimmed(t.substr(start, plus == std::string::npos ? std::string::npos : plus - start));
    if (piece.empty()) throw std::invalid_argument("bad word sum: empty term");
    out.push_back(parse_word(piece, weights));
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Engine

Engine::Engine(Prime p, std::size_t memo_cap) : p_(p), memo_cap_(memo_cap) {}

std::size_t Engine::default_memo_cap() {
  if (const char* env = std::getenv("TILTZ_MEMO_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::size_t>(v);
  }
  return 2'000'000;
}

std::size_t Engine::KeyHash::operator()(const Key& k) const noexcept {
  std::size_t h = BasisWordHash{}(k.b);
  h = mix(h, static_cast<std::size_t>(k.g.kind));
  return mix(mix(h, static_cast<std::size_t>(k.g.stretch.lo)), static_cast<std::size_t>(k.g.stretch.hi));
}

bool Engine::is_generator(Vertex x, const Letter& g) const { return is_generator_at(x, g, p_); }

Vertex Engine::step(Vertex x, const Letter& g) const { return apply_letter(x, g, p_); }

std::optional<std::vector<Letter>> Engine::expand_down(const AdmissibleSet& s, Vertex v) const {
  if (s.empty()) return std::vector<Letter>{};
  if (!is_down_admissible(s, v, p_)) return std::nullopt;
  std::vector<Letter> out;
  std::vector<Stretch> pieces;
  for (auto m : minimal_down_stretches(v, p_))
    if (AdmissibleSet(m).is_subset_of(s)) pieces.push_back(m);
  if (!(AdmissibleSet::from_stretches(pieces) == s)) return std::nullopt;
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) out.push_back({Kind::Down, *it});
  // Check the chain at running vertices.
  Vertex x = v;
  for (const auto& l : out) {
    if (!is_generator(x, l)) return std::nullopt;
    x = step(x, l);
  }
  return out;
}

std::optional<std::vector<Letter>> Engine::expand_up(const AdmissibleSet& s, Vertex v) const {
  std::vector<Letter> out;
  AdmissibleSet rest = s;
  Vertex y = v;
  while (!rest.empty()) {
    int lo = rest.min();
    if (digit(y, lo, p_) == 0) return std::nullopt;
    int hi = lo;
    while (digit(y, hi + 1, p_) == p_.value() - 1) ++hi;
    Stretch piece{lo, hi};
    if (!AdmissibleSet(piece).is_subset_of(rest)) return std::nullopt;
    out.push_back({Kind::Up, piece});
    y = reflect_up(y, piece, p_);
    rest = rest.minus(piece);
  }
  return out;
}

std::optional<std::vector<Letter>> Engine::expand(
    Vertex x, const std::vector<std::pair<Kind, AdmissibleSet>>& ls, Vertex* end) const {
  std::vector<Letter> out;
  for (const auto& [kind, set] : ls) {
    auto part = kind == Kind::Down ? expand_down(set, x) : expand_up(set, x);
    if (!part) return std::nullopt;
    for (const auto& l : *part) {
      x = step(x, l);
      out.push_back(l);
    }
  }
  if (end) *end = x;
  return out;
}

std::optional<std::vector<Engine::Term>> Engine::rewrite_pair(Vertex x, const Letter& first,
                                                              const Letter& second) const {
  if (is_normal_pair(first, second)) return std::nullopt;
  const AdmissibleSet a(first.stretch), b(second.stretch);
  auto D = [](const AdmissibleSet& s) { return std::pair{Kind::Down, s}; };
  auto U = [](const AdmissibleSet& s) { return std::pair{Kind::Up, s}; };
  using Terms = std::vector<Term>;
  auto unexpected = [&]() -> std::logic_error {
    std::ostringstream os;
    os << "no relation for " << (second.kind == Kind::Down ? "D" : "U") << b.to_string() << " "
       << (first.kind == Kind::Down ? "D" : "U") << a.to_string() << " e[" << x << "]";
    return std::logic_error(os.str());
  };

  if (first.kind == Kind::Down) {  // D_B D_A e_x with B not below A
    if (b.is_subset_of(a)) return Terms{};
    if (b.above(a)) {
      if (distance(a, b) > 1) return Terms{{1, {D(b), D(a)}}};
      return Terms{{scale_h(a, x, p_).value(), {D(b), U(a)}}};
    }
    auto common = a.intersect(b);
    if (common.size() == 1 && common.min() == a.max() && common.min() == b.min())
      return Terms{{1, {D(b.minus(common)), D(a), U(common)}}};
    throw unexpected();
  }

  if (second.kind == Kind::Up) {  // U_B U_A e_x with B not above A
    if (a.is_subset_of(b)) return Terms{};
    if (a.above(b)) {
      if (distance(a, b) > 1) return Terms{{1, {U(b), U(a)}}};
      Vertex target = step(step(x, first), second);
      return Terms{{scale_h(b, target, p_).value(), {D(b), U(a)}}};
    }
    auto common = a.intersect(b);
    if (common.size() == 1 && common.min() == b.max() && common.min() == a.min())
      return Terms{{1, {D(common), U(b), U(a.minus(common))}}};
    throw unexpected();
  }

  // D_B U_A e_x
  if (a == b) {
    auto hull = down_hull(a, x, p_);
    if (!hull) return Terms{};
    Terms out;
    auto g = scale_g(a, x, p_), f = scale_f(a, x, p_);
    if (!g.is_zero()) out.push_back({g.value(), {D(*hull), U(*hull)}});
    if (!f.is_zero()) {
      for (auto t : minimal_down_stretches(x, p_)) {
        if (t.lo > hull->max()) {
          out.push_back({f.value(), {D(t), D(*hull), U(*hull), U(t)}});
          break;
        }
      }
    }
    return out;
  }
  const int d = distance(a, b);
  if (d > 1) return Terms{{1, {D(b), U(a)}}};
  if (d == 1) {
    if (b.above(a)) return Terms{{1, {D(a.unite(b))}}};
    return Terms{{1, {U(a.unite(b))}}};
  }
  throw unexpected();
}

Morphism Engine::left_mul(const Letter& g, const BasisWord& b) {
  const Vertex x = b.target;
  if (!is_generator(x, g))
    throw std::logic_error("left_mul: letter is not a generator at " + std::to_string(x));
  const Vertex y = step(x, g);

  if (g.kind == Kind::Up) {
    if (b.ups.empty() || g.stretch.lo > b.ups.back().hi) {
      BasisWord r = b;
      r.ups.push_back(g.stretch);
      r.target = y;
      return Morphism::of(p_, r);
    }
  } else if (b.ups.empty() && (b.downs.empty() || g.stretch.hi < b.downs.front().lo)) {
    BasisWord r = b;
    r.downs.insert(r.downs.begin(), g.stretch);
    r.target = y;
    return Morphism::of(p_, r);
  }

  Key key{g, b};
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  if (active_.empty()) word_steps_ = 0;
  if (!active_.insert(key).second)
    throw std::runtime_error("rewrite cycle at " + b.to_string());
  ++steps_;
  if (++word_steps_ > kStepBudget) {
    active_.erase(key);
    throw std::runtime_error("rewrite step budget exhausted");
  }

  struct Guard {
    std::unordered_set<Key, KeyHash>& set;
    const Key& key;
    ~Guard() { set.erase(key); }
  } guard{active_, key};

  BasisWord prefix = b;
  Letter last{};
  if (!b.ups.empty()) {
    last = {Kind::Up, b.ups.back()};
    prefix.ups.pop_back();
  } else {
    last = {Kind::Down, b.downs.front()};
    prefix.downs.erase(prefix.downs.begin());
  }
  Vertex x0 = prefix.source;
  for (const auto& l : prefix.letters()) x0 = step(x0, l);
  prefix.target = x0;

  auto rhs = rewrite_pair(x0, last, g);
  Morphism result(p_, b.source, y);
  for (const auto& term : *rhs) {
    Vertex end = 0;
    auto ls = expand(x0, term.letters, &end);
    if (!ls || end != y)
      throw std::logic_error("relation right-hand side is not a valid path at " + std::to_string(x0));
    Morphism m = Morphism::of(p_, prefix);
    for (const auto& l : *ls) m = apply(l, m);
    result += m.scaled(term.coeff);
  }
  if (memo_.size() >= memo_cap_) memo_.clear();
  memo_.emplace(key, result);
  return result;
}

Morphism Engine::apply(const Letter& g, const Morphism& m) {
  Morphism out(p_, m.source(), step(m.target(), g));
  for (const auto& [w, c] : m.terms()) out += left_mul(g, w).scaled(c);
  return out;
}

Morphism Engine::compose(const Morphism& f, const Morphism& g) {
  if (f.source() != g.target())
    throw std::invalid_argument("compose: source " + std::to_string(f.source()) +
                                " does not match target " + std::to_string(g.target()));
  Morphism out(p_, g.source(), f.target());
  for (const auto& [w, c] : f.terms()) {
    Morphism m = g;
    for (const auto& l : w.letters()) m = apply(l, m);
    out += m.scaled(c);
  }
  return out;
}

Morphism Engine::generalized_down(const AdmissibleSet& s, Vertex v) {
  auto ls = expand_down(s, v);
  if (!ls) throw std::invalid_argument(s.to_string() + " is not down-admissible for " + std::to_string(v));
  Morphism m = Morphism::identity(p_, v);
  for (const auto& l : *ls) m = apply(l, m);
  return m;
}

Morphism Engine::generalized_up(const AdmissibleSet& s, Vertex v) {
  auto ls = expand_up(s, v);
  if (!ls) throw std::invalid_argument(s.to_string() + " is not up-admissible for " + std::to_string(v));
  Morphism m = Morphism::identity(p_, v);
  for (const auto& l : *ls) m = apply(l, m);
  return m;
}

Morphism Engine::generator_morphism(const Generator& g) {
  return apply({g.kind, g.stretch}, Morphism::identity(p_, g.source));
}

Morphism Engine::normalize(const RawWord& w) {
  Vertex end = w.source;
  auto ls = expand(w.source, w.letters, &end);
  if (!ls || (w.target && *w.target != end)) return Morphism(p_, w.source, w.target.value_or(w.source));
  Morphism m = Morphism::identity(p_, w.source);
  for (const auto& l : *ls) m = apply(l, m);
  return m.scaled(w.scalar);
}

Morphism Engine::normalize_by_strategy(const RawWord& w, Strategy s) {
  Vertex end = w.source;
  auto ls = expand(w.source, w.letters, &end);
  if (!ls || (w.target && *w.target != end)) return Morphism(p_, w.source, w.target.value_or(w.source));
  std::map<std::vector<Letter>, std::int64_t> pending{{*ls, Fp::reduce(w.scalar, p_.value())}};
  Morphism out(p_, w.source, end);
  std::size_t steps = 0;
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const auto& word = node.key();
    const std::int64_t coeff = node.mapped();
    if (coeff == 0) continue;
    std::vector<Vertex> trail{w.source};
    for (const auto& l : word) trail.push_back(step(trail.back(), l));
    std::optional<std::size_t> at;
    for (std::size_t i = 0; i + 1 < word.size(); ++i) {
      if (is_normal_pair(word[i], word[i + 1])) continue;
      at = i;
      if (s == Strategy::Leftmost) break;
    }
    if (!at) {
      out.add(word_from_letters(w.source, end, word), coeff);
      continue;
    }
    if (++steps > kStepBudget) throw std::runtime_error("strategy rewrite budget exhausted");
    const std::size_t i = *at;
    auto rhs = rewrite_pair(trail[i], word[i], word[i + 1]);
    for (const auto& term : *rhs) {
      Vertex mid = 0;
      auto exp = expand(trail[i], term.letters, &mid);
      if (!exp || mid != trail[i + 2])
        throw std::logic_error("relation right-hand side is not a valid path");
      std::vector<Letter> next(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(i));
      next.insert(next.end(), exp->begin(), exp->end());
      next.insert(next.end(), word.begin() + static_cast<std::ptrdiff_t>(i + 2), word.end());
      auto& slot = pending[next];
      slot = (slot + coeff * term.coeff) % p_.value();
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hom spaces

namespace {

std::vector<Stretch> pick(const std::vector<Stretch>& all, unsigned mask) {
  std::vector<Stretch> out;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (mask & (1U << i)) out.push_back(all[i]);
  return out;
}

}  // namespace

std::vector<BasisWord> hom_basis(Vertex v, Vertex w, Prime p) {
  auto dv = minimal_down_stretches(v, p), dw = minimal_down_stretches(w, p);
  if (dv.size() > 30 || dw.size() > 30) throw std::out_of_range("hom_basis: too many stretches");
  std::multimap<Vertex, std::vector<Stretch>> from_w;
  for (unsigned t = 0; t < (1U << dw.size()); ++t) {
    auto ts = pick(dw, t);
    from_w.emplace(reflect_down(w, AdmissibleSet::from_stretches(ts), p), ts);
  }
  std::vector<BasisWord> out;
  for (unsigned m = 0; m < (1U << dv.size()); ++m) {
    auto ss = pick(dv, m);
    Vertex mid = reflect_down(v, AdmissibleSet::from_stretches(ss), p);
    auto [lo, hi] = from_w.equal_range(mid);
    for (auto it = lo; it != hi; ++it) out.push_back({v, w, ss, it->second});
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

void chains_up(Vertex y, Vertex w, Prime p, BasisWord& cur, std::vector<BasisWord>& out) {
  if (y == w) {
    cur.target = w;
    out.push_back(cur);
  }
  for (auto s : minimal_up_stretches(y, p)) {
    if (!cur.ups.empty() && s.lo <= cur.ups.back().hi) continue;
    Vertex z = reflect_up(y, s, p);
    if (z > w) continue;
    cur.ups.push_back(s);
    chains_up(z, w, p, cur, out);
    cur.ups.pop_back();
  }
}

void chains_down(Vertex y, Vertex w, Prime p, BasisWord& cur, std::vector<BasisWord>& out) {
  chains_up(y, w, p, cur, out);
  for (auto s : minimal_down_stretches(y, p)) {
    if (!cur.downs.empty() && s.hi >= cur.downs.front().lo) continue;
    cur.downs.insert(cur.downs.begin(), s);
    chains_down(reflect_down(y, s, p), w, p, cur, out);
    cur.downs.erase(cur.downs.begin());
  }
}

}  // namespace

std::vector<BasisWord> hom_basis_by_chains(Vertex v, Vertex w, Prime p) {
  std::vector<BasisWord> out;
  BasisWord cur{v, w, {}, {}};
  chains_down(v, w, p, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t hom_dim(Vertex v, Vertex w, Prime p) { return hom_basis(v, w, p).size(); }

Morphism loop(const AdmissibleSet& s, Vertex v, Engine& engine) {
  Morphism down = engine.generalized_down(s, v);
  Morphism up = engine.generalized_up(s, down.target());
  if (up.target() != v) throw std::logic_error("loop does not return to its vertex");
  return engine.compose(up, down);
}

EndRing end_ring(Vertex v, Engine& engine) {
  const Prime p = engine.prime();
  EndRing r;
  r.v = v;
  r.stretches = minimal_down_stretches(v, p);
  for (auto s : r.stretches) r.loops.push_back(loop(s, v, engine));
  const std::size_t k = r.loops.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (!engine.compose(r.loops[i], r.loops[i]).is_zero()) r.squares_zero = false;
    for (std::size_t j = i + 1; j < k; ++j)
      if (!(engine.compose(r.loops[i], r.loops[j]) == engine.compose(r.loops[j], r.loops[i])))
        r.commute = false;
  }
  std::vector<Morphism> products;
  for (unsigned m = 0; m < (1U << k); ++m) {
    Morphism prod = Morphism::identity(p, v);
    std::vector<Stretch> parts;
    for (std::size_t i = 0; i < k; ++i)
      if (m & (1U << i)) {
        prod = engine.compose(r.loops[i], prod);
        parts.push_back(r.stretches[i]);
      }
    if (!parts.empty() && !(prod == loop(AdmissibleSet::from_stretches(parts), v, engine)))
      r.products_are_loops = false;
    products.push_back(prod);
  }
  r.span_dim = rank_of(products);
  return r;
}

Morphism truncate(const Morphism& m, const Truncation& t) {
  Morphism out(m.prime(), m.source(), m.target());
  for (const auto& [w, c] : m.terms()) {
    Vertex x = w.source;
    bool inside = x <= t.bound;
    for (const auto& l : w.letters()) {
      x = apply_letter(x, l, m.prime());
      inside = inside && x <= t.bound;
    }
    if (inside) out.add(w, c);
  }
  return out;
}

}  // namespace tiltz
