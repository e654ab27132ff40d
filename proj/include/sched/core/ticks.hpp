#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace sched {

// Schedules live on a grid of 2^-20 time units.
using Ticks = std::int64_t;
inline constexpr int kTickBits = 20;
inline constexpr Ticks kTicksPerUnit = Ticks{1} << kTickBits;

constexpr Ticks units_to_ticks(std::int64_t units) { return units * kTicksPerUnit; }

// Nearest tick to a real value given in time units.
Ticks snap_to_ticks(double units);

// Exact value num / 2^exp. Every objective computed on the tick grid has this
// form, so comparisons and string output never round.
struct Dyadic {
  __int128 num = 0;
  int exp = 0;

  static Dyadic integer(std::int64_t v) { return {v, 0}; }
  static Dyadic ticks(__int128 t) { return {t, kTickBits}; }

  double to_double() const;
  // Reduced "n/d" form, or plain "n" when the denominator is 1.
  std::string to_string() const;
  // Inverse of to_string. Throws std::invalid_argument for anything that is
  // not an integer over a power of two.
  static Dyadic parse(const std::string& s);

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, std::int64_t k);
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);
  friend bool operator==(const Dyadic& a, const Dyadic& b) { return (a <=> b) == 0; }
};

std::string int128_to_string(__int128 v);

}  // namespace sched
