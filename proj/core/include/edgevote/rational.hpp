#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace edgevote {

// Exact rational with a 64-bit numerator/denominator, always normalized
// (gcd-reduced, denominator > 0).  Edge and threshold comparisons throughout
// the library go through this type so that borderline features are never
// decided by floating-point rounding.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rational() = default;

  Rational(std::int64_t n) : num(n), den(1) {}

  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    if (num == 0) {
      den = 1;
      return;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    num /= g;
    den /= g;
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  long double to_long_double() const {
    return static_cast<long double>(num) / static_cast<long double>(den);
  }

  bool is_zero() const { return num == 0; }

  // exact comparisons via 128-bit cross products
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make_checked(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                        static_cast<__int128>(a.den) * b.den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make_checked(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
                        static_cast<__int128>(a.den) * b.den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make_checked(static_cast<__int128>(a.num) * b.num,
                        static_cast<__int128>(a.den) * b.den);
  }
  Rational operator-() const {
    Rational r = *this;
    r.num = -r.num;
    return r;
  }

  // floor(x * this) and ceil(x * this) as exact integers
  std::int64_t floor_mul(std::int64_t x) const {
    __int128 n = static_cast<__int128>(num) * x;
    __int128 d = den;
    __int128 q = n / d;
    if (n % d != 0 && (n < 0)) q -= 1;
    return static_cast<std::int64_t>(q);
  }
  std::int64_t ceil_mul(std::int64_t x) const {
    __int128 n = static_cast<__int128>(num) * x;
    __int128 d = den;
    __int128 q = n / d;
    if (n % d != 0 && (n > 0)) q += 1;
    return static_cast<std::int64_t>(q);
  }

  // Accepts "a/b", plain integers, and decimal literals ("0.13" -> 13/100).
  static Rational parse(const std::string& text);

  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }

 private:
  static Rational make_checked(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 an = n < 0 ? -n : n;
    // reduce before the range check so mixed-denominator sums stay in range
    Rational r;
    __int128 gg = gcd128(an, d);
    if (gg > 1) {
      n /= gg;
      d /= gg;
      an = n < 0 ? -n : n;
    }
    constexpr __int128 lim = static_cast<__int128>(INT64_MAX);
    if (an > lim || d > lim) throw std::overflow_error("Rational: 64-bit overflow");
    r.num = static_cast<std::int64_t>(n);
    r.den = static_cast<std::int64_t>(d);
    return r;
  }
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a < 0 ? -a : a;
  }
};

inline Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("Rational::parse: empty string");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::int64_t n = std::stoll(text.substr(0, slash));
    const std::int64_t d = std::stoll(text.substr(slash + 1));
    return Rational(n, d);
  }
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (frac.size() > 18) throw std::invalid_argument("Rational::parse: too many decimals");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const bool neg = !whole.empty() && whole[0] == '-';
    const std::int64_t w = (whole.empty() || whole == "-" || whole == "+") ? 0 : std::stoll(whole);
    std::int64_t f = frac.empty() ? 0 : std::stoll(frac);
    if (neg) f = -f;
    return Rational(w * den + f, den);
  }
  return Rational(std::stoll(text));
}

}  // namespace edgevote
