#include "sched/core/ticks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sched {

Ticks snap_to_ticks(double units) {
  return static_cast<Ticks>(std::llround(units * static_cast<double>(kTicksPerUnit)));
}

namespace {

// Bring both operands to the larger exponent.
void align(Dyadic& a, Dyadic& b) {
  if (a.exp < b.exp) {
    a.num <<= (b.exp - a.exp);
    a.exp = b.exp;
  } else if (b.exp < a.exp) {
    b.num <<= (a.exp - b.exp);
    b.exp = a.exp;
  }
}

Dyadic reduced(Dyadic d) {
  while (d.exp > 0 && (d.num & 1) == 0) {
    d.num >>= 1;
    --d.exp;
  }
  if (d.num == 0) d.exp = 0;
  return d;
}

}  // namespace

std::string int128_to_string(__int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

double Dyadic::to_double() const { return std::ldexp(static_cast<double>(num), -exp); }

std::string Dyadic::to_string() const {
  Dyadic r = reduced(*this);
  if (r.exp == 0) return int128_to_string(r.num);
  return int128_to_string(r.num) + "/" + int128_to_string(static_cast<__int128>(1) << r.exp);
}

Dyadic Dyadic::parse(const std::string& s) {
  auto parse_int = [](const std::string& part) -> __int128 {
    if (part.empty()) throw std::invalid_argument("empty number");
    std::size_t i = 0;
    bool neg = false;
    if (part[0] == '-') {
      neg = true;
      i = 1;
    }
    if (i == part.size()) throw std::invalid_argument("bad number");
    __int128 v = 0;
    for (; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') throw std::invalid_argument("bad digit in " + part);
      v = v * 10 + (part[i] - '0');
    }
    return neg ? -v : v;
  };
  auto slash = s.find('/');
  if (slash == std::string::npos) return {parse_int(s), 0};
  __int128 num = parse_int(s.substr(0, slash));
  __int128 den = parse_int(s.substr(slash + 1));
  if (den <= 0 || (den & (den - 1)) != 0) throw std::invalid_argument("denominator is not a power of two");
  int exp = 0;
  while ((static_cast<__int128>(1) << exp) < den) ++exp;
  return reduced({num, exp});
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  Dyadic x = a, y = b;
  align(x, y);
  return {x.num + y.num, x.exp};
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) {
  Dyadic x = a, y = b;
  align(x, y);
  return {x.num - y.num, x.exp};
}

Dyadic operator*(const Dyadic& a, std::int64_t k) { return {a.num * k, a.exp}; }

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  Dyadic x = a, y = b;
  align(x, y);
  if (x.num < y.num) return std::strong_ordering::less;
  if (x.num > y.num) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace sched
