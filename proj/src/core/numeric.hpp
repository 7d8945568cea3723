// Exact integer/rational scalars and small helpers used throughout the core.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mumford {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rat& q) { return boost::multiprecision::denominator(q); }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

inline int sign(const Int& a) { return a.sign(); }
inline int sign(const Rat& a) { return a.sign(); }

// floor(a/b) for integers, b != 0.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Int floor_rat(const Rat& q) { return floor_div(num(q), den(q)); }
inline Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

// Largest s >= 0 with s*s <= n.  Requires n >= 0.
inline Int isqrt(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  return boost::multiprecision::sqrt(n);
}

// floor(sqrt(q)) for q >= 0.
inline Int isqrt_floor(const Rat& q) {
  if (q < 0) throw std::domain_error("isqrt of negative");
  return isqrt(floor_rat(q));
}

// Smallest integer c with c*c >= q (q >= 0).
inline Int isqrt_ceil(const Rat& q) {
  Int r = isqrt_floor(q);
  if (Rat(r) * Rat(r) < q) ++r;
  return r;
}

inline std::string to_string(const Int& a) { return a.str(); }

inline std::string to_string(const Rat& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

// Parses "p" or "p/q"; throws std::invalid_argument on malformed input.
Rat parse_rat(const std::string& s);

}  // namespace mumford
