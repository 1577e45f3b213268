#include "tiltz/admissible.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tiltz/padic.hpp"

namespace tiltz {

AdmissibleSet::AdmissibleSet(Stretch s) {
  if (s.lo < 0 || s.lo > s.hi) throw std::invalid_argument("invalid stretch");
  parts_.push_back(s);
}

AdmissibleSet AdmissibleSet::from_elements(std::vector<int> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  AdmissibleSet out;
  for (int e : elements) {
    if (e < 0) throw std::invalid_argument("negative digit position");
    if (!out.parts_.empty() && out.parts_.back().hi + 1 == e)
      out.parts_.back().hi = e;
    else
      out.parts_.push_back({e, e});
  }
  return out;
}

AdmissibleSet AdmissibleSet::from_stretches(const std::vector<Stretch>& parts) {
  std::vector<int> el;
  for (auto s : parts)
    for (int i = s.lo; i <= s.hi; ++i) el.push_back(i);
  return from_elements(std::move(el));
}

AdmissibleSet AdmissibleSet::parse(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("bad set syntax: " + std::string(text)); };
  std::size_t pos = 0;
  auto ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  ws();
  if (pos >= text.size() || text[pos] != '{') fail();
  ++pos;
  ws();
  std::vector<int> el;
  if (pos < text.size() && text[pos] == '}') {
    ++pos;
  } else {
    for (;;) {
      ws();
      if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) fail();
      int x = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        x = x * 10 + (text[pos++] - '0');
      el.push_back(x);
      ws();
      if (pos < text.size() && (text[pos] == ',' || text[pos] == '|')) { ++pos; continue; }
      if (pos < text.size() && text[pos] == '}') { ++pos; break; }
      fail();
    }
  }
  ws();
  if (pos != text.size()) fail();
  return from_elements(std::move(el));
}

std::vector<int> AdmissibleSet::elements() const {
  std::vector<int> out;
  for (auto s : parts_)
    for (int i = s.lo; i <= s.hi; ++i) out.push_back(i);
  return out;
}

std::size_t AdmissibleSet::size() const noexcept {
  std::size_t n = 0;
  for (auto s : parts_) n += static_cast<std::size_t>(s.hi - s.lo + 1);
  return n;
}

int AdmissibleSet::min() const {
  if (empty()) throw std::logic_error("min of empty set");
  return parts_.front().lo;
}

int AdmissibleSet::max() const {
  if (empty()) throw std::logic_error("max of empty set");
  return parts_.back().hi;
}

bool AdmissibleSet::contains(int i) const noexcept {
  return std::any_of(parts_.begin(), parts_.end(), [i](Stretch s) { return s.contains(i); });
}

bool AdmissibleSet::is_subset_of(const AdmissibleSet& other) const {
  return std::all_of(parts_.begin(), parts_.end(), [&](Stretch s) {
    return std::any_of(other.parts_.begin(), other.parts_.end(),
                       [s](Stretch t) { return t.lo <= s.lo && s.hi <= t.hi; });
  });
}

AdmissibleSet AdmissibleSet::unite(const AdmissibleSet& other) const {
  auto a = elements(), b = other.elements();
  a.insert(a.end(), b.begin(), b.end());
  return from_elements(std::move(a));
}

AdmissibleSet AdmissibleSet::intersect(const AdmissibleSet& other) const {
  std::vector<int> out;
  for (int e : elements())
    if (other.contains(e)) out.push_back(e);
  return from_elements(std::move(out));
}

AdmissibleSet AdmissibleSet::minus(const AdmissibleSet& other) const {
  std::vector<int> out;
  for (int e : elements())
    if (!other.contains(e)) out.push_back(e);
  return from_elements(std::move(out));
}

bool AdmissibleSet::above(const AdmissibleSet& other) const {
  if (empty() || other.empty()) return true;
  return min() > other.max();
}

std::string AdmissibleSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t k = parts_.size(); k-- > 0;) {
    for (int i = parts_[k].hi; i >= parts_[k].lo; --i) {
      os << i;
      if (i != parts_[k].lo) os << ',';
    }
    if (k) os << '|';
  }
  os << '}';
  return os.str();
}

std::string to_string(Stretch s) { return AdmissibleSet(s).to_string(); }

int distance(const AdmissibleSet& s, const AdmissibleSet& t) {
  if (s.empty() || t.empty()) throw std::invalid_argument("distance: empty operand");
  int best = std::numeric_limits<int>::max();
  for (auto a : s.stretches())
    for (auto b : t.stretches()) {
      int d = 0;
      if (a.hi < b.lo) d = b.lo - a.hi;
      else if (b.hi < a.lo) d = a.lo - b.hi;
      best = std::min(best, d);
    }
  return best;
}

namespace {

// Conditions (i) and (ii) with `blocked` the digit value that forces s+1 into S.
bool admissible(const AdmissibleSet& s, Vertex v, Prime p, std::int64_t blocked) {
  if (v < 1) return false;
  for (auto part : s.stretches()) {
    if (digit(v, part.lo, p) == 0) return false;
    if (digit(v, part.hi + 1, p) == blocked) return false;
  }
  return true;
}

}  // namespace

bool is_down_admissible(const AdmissibleSet& s, Vertex v, Prime p) { return admissible(s, v, p, 0); }

bool is_up_admissible(const AdmissibleSet& s, Vertex v, Prime p) {
  return admissible(s, v, p, p.value() - 1);
}

Vertex reflect_down(Vertex v, const AdmissibleSet& s, Prime p) {
  if (!is_down_admissible(s, v, p))
    throw std::invalid_argument(s.to_string() + " is not down-admissible for " + std::to_string(v));
  Vertex out = v;
  for (int k : s.elements()) out -= 2 * digit(v, k, p) * ipow(p, k);
  return out;
}

Vertex reflect_up(Vertex v, const AdmissibleSet& s, Prime p) {
  if (!is_up_admissible(s, v, p))
    throw std::invalid_argument(s.to_string() + " is not up-admissible for " + std::to_string(v));
  Vertex out = v;
  for (int k : s.elements()) out -= 2 * digit(v, k, p) * ipow(p, k);
  for (auto part : s.stretches()) out += 2 * ipow(p, part.hi + 1);
  return out;
}

std::optional<AdmissibleSet> down_hull(const AdmissibleSet& s, Vertex v, Prime p) {
  if (s.empty()) return s;
  const int j = leading_index(v, p);
  std::set<int> el;
  for (int e : s.elements()) el.insert(e);
  for (bool changed = true; changed;) {
    changed = false;
    // Condition (ii): zeros above an element must be included.
    for (int e : std::vector<int>(el.begin(), el.end())) {
      if (e >= j) return std::nullopt;  // only zeros above: unbounded
      if (digit(v, e + 1, p) == 0 && el.insert(e + 1).second) changed = true;
    }
    // Condition (i): a stretch may not start on a zero digit.
    auto cur = AdmissibleSet::from_elements({el.begin(), el.end()});
    for (auto part : cur.stretches()) {
      if (digit(v, part.lo, p) == 0) {
        if (part.lo == 0) return std::nullopt;
        el.insert(part.lo - 1);
        changed = true;
      }
    }
  }
  return AdmissibleSet::from_elements({el.begin(), el.end()});
}

std::vector<Stretch> minimal_down_stretches(Vertex v, Prime p) {
  std::vector<Stretch> out;
  const int j = leading_index(v, p);
  for (int i = 0; i < j; ++i) {
    if (digit(v, i, p) == 0) continue;
    int hi = i;
    while (digit(v, hi + 1, p) == 0) ++hi;
    out.push_back({i, hi});
  }
  return out;
}

std::vector<Stretch> minimal_up_stretches(Vertex v, Prime p) {
  std::vector<Stretch> out;
  const int j = leading_index(v, p);
  for (int i = 0; i <= j; ++i) {
    if (digit(v, i, p) == 0) continue;
    int hi = i;
    while (digit(v, hi + 1, p) == p.value() - 1) ++hi;
    out.push_back({i, hi});
  }
  return out;
}

bool is_minimal_down_stretch(Stretch s, Vertex v, Prime p) {
  if (v < 1 || s.lo < 0 || s.lo > s.hi || digit(v, s.lo, p) == 0) return false;
  for (int i = s.lo + 1; i <= s.hi; ++i)
    if (digit(v, i, p) != 0) return false;
  return digit(v, s.hi + 1, p) != 0;
}

bool is_minimal_up_stretch(Stretch s, Vertex v, Prime p) {
  if (v < 1 || s.lo < 0 || s.lo > s.hi || digit(v, s.lo, p) == 0) return false;
  for (int i = s.lo + 1; i <= s.hi; ++i)
    if (digit(v, i, p) != p.value() - 1) return false;
  return digit(v, s.hi + 1, p) != p.value() - 1;
}

}  // namespace tiltz
