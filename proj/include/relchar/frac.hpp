#pragma once
// Small exact rational type used for character phases (values in Q/Z) and
// for exact Haar volumes.  Numerators/denominators stay tiny at desk scale
// (denominators divide unit-group orders or are p-powers), so int64 is ample.

#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace rc {

struct Frac {
  long long num = 0;
  long long den = 1;

  Frac() = default;
  Frac(long long n, long long d = 1) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("Frac: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    if (num == 0) den = 1;
  }

  bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Frac& o) const { return !(*this == o); }
  bool operator<(const Frac& o) const { return num * o.den < o.num * den; }

  Frac operator+(const Frac& o) const { return Frac(num * o.den + o.num * den, den * o.den); }
  Frac operator-(const Frac& o) const { return Frac(num * o.den - o.num * den, den * o.den); }
  Frac operator*(const Frac& o) const { return Frac(num * o.num, den * o.den); }
  Frac operator/(const Frac& o) const {
    if (o.num == 0) throw std::domain_error("Frac: division by zero");
    return Frac(num * o.den, den * o.num);
  }
  Frac operator-() const { return Frac(-num, den); }
  Frac operator*(long long k) const { return Frac(num * k, den); }

  // Representative in [0,1): used for phases, which live in Q/Z.
  Frac mod1() const {
    long long n = num % den;
    if (n < 0) n += den;
    return Frac(n, den);
  }
  bool is_zero_mod1() const { return mod1().num == 0; }

  double to_double() const { return double(num) / double(den); }
  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
};

using cplx = std::complex<double>;

// e^{2 pi i f} for a rational phase f.
inline cplx unit_from_phase(const Frac& f) {
  static const double TWO_PI = 6.283185307179586476925286766559;
  Frac g = f.mod1();
  return std::polar(1.0, TWO_PI * g.to_double());
}

}  // namespace rc
