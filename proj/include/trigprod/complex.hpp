// Complex values over Real. Principal-branch log/arg; finiteness is
// enforced at the public operation boundaries (see numerics), not on every
// intermediate.
#pragma once

#include <string>
#include <utility>

#include "trigprod/real.hpp"

namespace trigprod {

class Complex {
 public:
  Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}

  static Complex zero(long prec) {
    return Complex(Real::zero(prec), Real::zero(prec));
  }
  static Complex one(long prec) {
    return Complex(Real::one(prec), Real::zero(prec));
  }
  static Complex of(const Real& re) {
    return Complex(re, Real::zero(re.prec()));
  }
  static Complex of_longs(long re, long im, long prec) {
    return Complex(Real::of_long(re, prec), Real::of_long(im, prec));
  }

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }
  long prec() const { return pmax(re_, im_); }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
  bool is_real() const { return im_.is_zero(); }

  Complex round_to(long prec) const {
    return Complex(re_.round_to(prec), im_.round_to(prec));
  }

 private:
  Real re_, im_;
};

inline Complex operator+(const Complex& a, const Complex& b) {
  return Complex(a.re() + b.re(), a.im() + b.im());
}
inline Complex operator-(const Complex& a, const Complex& b) {
  return Complex(a.re() - b.re(), a.im() - b.im());
}
inline Complex operator-(const Complex& a) {
  return Complex(-a.re(), -a.im());
}
inline Complex operator*(const Complex& a, const Complex& b) {
  return Complex(a.re() * b.re() - a.im() * b.im(),
                 a.re() * b.im() + a.im() * b.re());
}
inline Complex operator*(const Complex& a, const Real& s) {
  return Complex(a.re() * s, a.im() * s);
}
inline Complex operator*(const Real& s, const Complex& a) { return a * s; }
inline Complex operator/(const Complex& a, const Complex& b) {
  Real d = b.re() * b.re() + b.im() * b.im();
  return Complex((a.re() * b.re() + a.im() * b.im()) / d,
                 (a.im() * b.re() - a.re() * b.im()) / d);
}
inline Complex operator/(const Complex& a, const Real& s) {
  return Complex(a.re() / s, a.im() / s);
}
inline Complex operator/(const Complex& a, long s) {
  return Complex(a.re() / s, a.im() / s);
}

inline Complex conj(const Complex& a) { return Complex(a.re(), -a.im()); }
inline Real abs(const Complex& a) { return hypot(a.re(), a.im()); }
inline Real arg(const Complex& a) { return atan2(a.im(), a.re()); }

// Principal-branch logarithm: imaginary part in (-pi, pi].
inline Complex log(const Complex& a) {
  return Complex(log(abs(a)), arg(a));
}
inline Complex exp(const Complex& a) {
  Real m = exp(a.re());
  Real s(a.prec()), c(a.prec());
  mpfr_sin_cos(s.raw(), c.raw(), a.im().raw(), MPFR_RNDN);
  return Complex(m * c, m * s);
}

inline Complex mul_z(const Complex& a, const mpz_class& z) {
  return Complex(mul_z(a.re(), z), mul_z(a.im(), z));
}
inline Complex div_z(const Complex& a, const mpz_class& z) {
  return Complex(div_z(a.re(), z), div_z(a.im(), z));
}
// a * 2^e exactly.
inline Complex ldexp2(const Complex& a, long e) {
  return Complex(ldexp2(a.re(), e), ldexp2(a.im(), e));
}

// Binary exponent of the larger component magnitude; `lo` for zero.
inline long magnitude_exponent(const Complex& a, long lo) {
  long e = lo;
  if (!a.re().is_zero()) e = std::max(e, a.re().exponent());
  if (!a.im().is_zero()) e = std::max(e, a.im().exponent());
  return e;
}

// Relative distance |a - b| / max(|b|, floor); the workhorse of the tests.
inline Real rel_diff(const Complex& a, const Complex& b) {
  Real d = abs(a - b);
  Real m = abs(b);
  if (m.is_zero()) return d;
  return d / m;
}

}  // namespace trigprod
