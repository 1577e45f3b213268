#include "tiltz/padic.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace tiltz {

PadicDigits::PadicDigits(std::vector<std::int64_t> little_endian, Prime p)
    : digits_(std::move(little_endian)), p_(p) {}

PadicDigits PadicDigits::from_big_endian(const std::vector<std::int64_t>& digits, Prime p) {
  return PadicDigits(std::vector<std::int64_t>(digits.rbegin(), digits.rend()), p);
}

PadicDigits PadicDigits::parse(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("bad digit string: " + std::string(text)); };
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_int = [&]() -> std::int64_t {
    skip_ws();
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) neg = text[pos++] == '-';
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) fail();
    std::int64_t x = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      x = x * 10 + (text[pos++] - '0');
    skip_ws();
    return neg ? -x : x;
  };
  skip_ws();
  if (pos >= text.size() || text[pos] != '[') fail();
  ++pos;
  std::vector<std::int64_t> big;
  skip_ws();
  if (pos < text.size() && text[pos] != ']') {
    for (;;) {
      big.push_back(read_int());
      if (pos < text.size() && text[pos] == ',') { ++pos; continue; }
      break;
    }
  }
  if (pos >= text.size() || text[pos] != ']') fail();
  ++pos;
  if (pos >= text.size() || text[pos] != '_') fail();
  ++pos;
  std::int64_t p = read_int();
  if (pos != text.size()) fail();
  return from_big_endian(big, Prime(p));
}

std::int64_t PadicDigits::value() const {
  std::int64_t v = 0;
  for (auto it = digits_.rbegin(); it != digits_.rend(); ++it) v = v * p_.value() + *it;
  return v;
}

bool PadicDigits::is_canonical() const {
  for (auto d : digits_)
    if (d < 0 || d >= p_.value()) return false;
  return digits_.empty() || digits_.back() != 0;
}

PadicDigits PadicDigits::normalize() const {
  std::int64_t v = value();
  if (v < 0) throw std::domain_error("normalize: negative value " + std::to_string(v));
  std::vector<std::int64_t> out;
  for (; v > 0; v /= p_.value()) out.push_back(v % p_.value());
  return PadicDigits(std::move(out), p_);
}

std::vector<std::int64_t> PadicDigits::big_endian() const {
  return {digits_.rbegin(), digits_.rend()};
}

std::string PadicDigits::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = digits_.size(); i-- > 0;) {
    os << digits_[i];
    if (i) os << ',';
  }
  os << "]_" << p_.value();
  return os.str();
}

PadicDigits expand(Vertex v, Prime p) {
  if (v <= 0) throw std::invalid_argument("expand: vertex must be >= 1, got " + std::to_string(v));
  return PadicDigits({v}, p).normalize();
}

std::int64_t digit(Vertex v, int i, Prime p) {
  for (int k = 0; k < i && v > 0; ++k) v /= p.value();
  return v % p.value();
}

int leading_index(Vertex v, Prime p) {
  int j = -1;
  for (; v > 0; v /= p.value()) ++j;
  return j;
}

std::int64_t ipow(std::int64_t p, int k) {
  std::int64_t r = 1;
  while (k-- > 0) r *= p;
  return r;
}

int generation(Vertex v, Prime p) {
  int nonzero = 0;
  for (; v > 0; v /= p.value())
    if (v % p.value() != 0) ++nonzero;
  return nonzero - 1;
}

bool is_eve(Vertex v, Prime p) { return v >= 1 && generation(v, p) == 0; }

std::vector<Eve> eves_below(Vertex n, Prime p) {
  std::vector<Eve> out;
  for (std::int64_t scale = 1; scale <= n; scale *= p.value()) {
    for (std::int64_t a = 1; a < p.value() && a * scale <= n; ++a)
      out.push_back({a * scale, scale == 1});
    if (scale > n / p.value()) break;
  }
  return out;
}

std::optional<Vertex> mother(Vertex v, Prime p) {
  if (is_eve(v, p)) return std::nullopt;
  for (std::int64_t scale = 1;; scale *= p.value()) {
    std::int64_t a = (v / scale) % p.value();
    if (a != 0) return v - a * scale;
  }
}

DigitSet digit_set(Vertex v, Prime p) {
  DigitSet out;
  const int j = leading_index(v, p);
  for (int i = 0; i < j; ++i, v /= p.value())
    if (v % p.value() != 0) out.push_back(i);
  return out;
}

std::string to_string(const DigitSet& d) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << '}';
  return os.str();
}

}  // namespace tiltz
