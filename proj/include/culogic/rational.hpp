#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <functional>

#include "culogic/error.hpp"

namespace culogic {

/// Exact rational number with a 64-bit numerator/denominator pair kept
/// coprime, denominator positive. Intermediate products go through 128-bit
/// arithmetic; results that do not fit back into 64 bits raise Error rather
/// than silently wrapping. The quantities handled here (truth values,
/// dyadic grids, small metric tables) keep well clear of that bound.
class Rat {
public:
  constexpr Rat() : num_(0), den_(1) {}

  Rat(long long num, long long den) {
    if (den == 0) throw Error("rational with zero denominator");
    __int128 n = num, d = den;
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    num_ = narrow(n);
    den_ = narrow(d);
  }

  static Rat of(long long integer) { return Rat(integer, 1); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return (__int128)a.num_ * b.den_ < (__int128)b.num_ * a.den_;
  }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return make((__int128)a.num_ * b.den_ + (__int128)b.num_ * a.den_,
                (__int128)a.den_ * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return make((__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_,
                (__int128)a.den_ * b.den_);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return make((__int128)a.num_ * b.num_, (__int128)a.den_ * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw Error("rational division by zero");
    return make((__int128)a.num_ * b.den_, (__int128)a.den_ * b.num_);
  }

  /// Canonical "p/q" rendering, e.g. "0/1", "1/2", "3/1".
  std::string str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Parses "p/q" or a bare integer "p".
  static Rat parse(std::string_view s) {
    auto slash = s.find('/');
    try {
      if (slash == std::string_view::npos)
        return Rat(std::stoll(std::string(s)), 1);
      return Rat(std::stoll(std::string(s.substr(0, slash))),
                 std::stoll(std::string(s.substr(slash + 1))));
    } catch (const std::logic_error&) {
      throw Error("malformed rational: '" + std::string(s) + "'");
    }
  }

  std::size_t hash() const {
    return std::hash<long long>()(num_) * 1000003u ^ std::hash<long long>()(den_);
  }

private:
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
  }
  static long long narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw Error("rational overflow");
    return (long long)v;
  }
  static Rat make(__int128 n, __int128 d) {
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    Rat r;
    r.num_ = narrow(n);
    r.den_ = narrow(d);
    return r;
  }

  long long num_;
  long long den_;
};

inline Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

/// A truth value: an exact rational confined to the unit interval.
/// 0 plays the role of truth, 1 of (maximal) falsity.
class Value {
public:
  constexpr Value() : r_() {}

  explicit Value(const Rat& r) : r_(r) {
    if (r.is_negative() || Rat(1, 1) < r)
      throw Error("value outside [0,1]: " + r.str());
  }
  Value(long long num, long long den) : Value(Rat(num, den)) {}

  static Value zero() { return Value(); }
  static Value one() { return Value(1, 1); }

  const Rat& rat() const { return r_; }
  bool is_zero() const { return r_.is_zero(); }

  friend bool operator==(const Value& a, const Value& b) { return a.r_ == b.r_; }
  friend bool operator!=(const Value& a, const Value& b) { return a.r_ != b.r_; }
  friend bool operator<(const Value& a, const Value& b) { return a.r_ < b.r_; }
  friend bool operator<=(const Value& a, const Value& b) { return a.r_ <= b.r_; }
  friend bool operator>(const Value& a, const Value& b) { return a.r_ > b.r_; }
  friend bool operator>=(const Value& a, const Value& b) { return a.r_ >= b.r_; }

  std::string str() const { return r_.str(); }
  static Value parse(std::string_view s) { return Value(Rat::parse(s)); }

private:
  Rat r_;
};

inline Value min(const Value& a, const Value& b) { return a < b ? a : b; }
inline Value max(const Value& a, const Value& b) { return a < b ? b : a; }

/// min(a+b, 1): truncated addition on truth values.
inline Value truncated_add(const Value& a, const Value& b) {
  Rat s = a.rat() + b.rat();
  return s > Rat(1, 1) ? Value::one() : Value(s);
}

/// max(a-b, 0): truncated subtraction on truth values.
inline Value truncated_sub(const Value& a, const Value& b) {
  Rat d = a.rat() - b.rat();
  return d.is_negative() ? Value::zero() : Value(d);
}

/// 1 - a.
inline Value complement(const Value& a) { return Value(Rat(1, 1) - a.rat()); }

} // namespace culogic
