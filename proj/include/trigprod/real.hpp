// Thin RAII wrapper over MPFR reals with explicit per-value precision.
// Arithmetic results carry max(operand precisions); precision changes are
// always explicit via round_to(). Rounding mode is round-to-nearest
// throughout.
#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

#include "trigprod/errors.hpp"

namespace trigprod {

class Real {
 public:
  explicit Real(long prec) { mpfr_init2(v_, clamp_prec(prec)); }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  static Real of_long(long x, long prec) {
    Real r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real of_double(double x, long prec) {
    Real r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }
  static Real of_mpz(const mpz_class& x, long prec) {
    Real r(prec);
    mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
    return r;
  }
  static Real of_mpq(const mpq_class& x, long prec) {
    Real r(prec);
    mpfr_set_q(r.v_, x.get_mpq_t(), MPFR_RNDN);
    return r;
  }
  static Real parse(const std::string& s, long prec) {
    Real r(prec);
    if (s.empty() || mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
      throw InvalidRequestError("cannot parse real number: '" + s + "'");
    return r;
  }
  static Real zero(long prec) { return of_long(0, prec); }
  static Real one(long prec) { return of_long(1, prec); }
  static Real pi(long prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  static Real inf(long prec, int sign = 1) {
    Real r(prec);
    mpfr_set_inf(r.v_, sign);
    return r;
  }
  // 2^e exactly.
  static Real pow2(long e, long prec) {
    Real r(prec);
    mpfr_set_si_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }

  long prec() const { return mpfr_get_prec(v_); }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  // Binary exponent of the magnitude (value in [2^(e-1), 2^e)); only
  // meaningful for nonzero finite values.
  long exponent() const { return static_cast<long>(mpfr_get_exp(v_)); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  std::string str(long digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*RNg", static_cast<int>(std::max(2L, digits)), v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

  Real round_to(long prec) const {
    Real r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  static long clamp_prec(long prec) {
    return std::max<long>(prec, MPFR_PREC_MIN);
  }

 private:
  mpfr_t v_;
};

inline long pmax(const Real& a, const Real& b) {
  return std::max(a.prec(), b.prec());
}

#define TRIGPROD_REAL_BINOP(op, fn)                       \
  inline Real operator op(const Real& a, const Real& b) { \
    Real r(pmax(a, b));                                   \
    fn(r.raw(), a.raw(), b.raw(), MPFR_RNDN);             \
    return r;                                             \
  }
TRIGPROD_REAL_BINOP(+, mpfr_add)
TRIGPROD_REAL_BINOP(-, mpfr_sub)
TRIGPROD_REAL_BINOP(*, mpfr_mul)
TRIGPROD_REAL_BINOP(/, mpfr_div)
#undef TRIGPROD_REAL_BINOP

inline Real operator-(const Real& a) {
  Real r(a.prec());
  mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real operator*(const Real& a, long b) {
  Real r(a.prec());
  mpfr_mul_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
inline Real operator*(long a, const Real& b) { return b * a; }
inline Real operator/(const Real& a, long b) {
  Real r(a.prec());
  mpfr_div_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
inline Real operator+(const Real& a, long b) {
  Real r(a.prec());
  mpfr_add_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}
inline Real operator-(const Real& a, long b) {
  Real r(a.prec());
  mpfr_sub_si(r.raw(), a.raw(), b, MPFR_RNDN);
  return r;
}

inline bool operator<(const Real& a, const Real& b) {
  return mpfr_less_p(a.raw(), b.raw()) != 0;
}
inline bool operator>(const Real& a, const Real& b) {
  return mpfr_greater_p(a.raw(), b.raw()) != 0;
}
inline bool operator<=(const Real& a, const Real& b) {
  return mpfr_lessequal_p(a.raw(), b.raw()) != 0;
}
inline bool operator>=(const Real& a, const Real& b) {
  return mpfr_greaterequal_p(a.raw(), b.raw()) != 0;
}
inline bool operator==(const Real& a, const Real& b) {
  return mpfr_equal_p(a.raw(), b.raw()) != 0;
}
inline bool operator!=(const Real& a, const Real& b) { return !(a == b); }

#define TRIGPROD_REAL_UNFN(name, fn)    \
  inline Real name(const Real& a) {     \
    Real r(a.prec());                   \
    fn(r.raw(), a.raw(), MPFR_RNDN);    \
    return r;                           \
  }
TRIGPROD_REAL_UNFN(abs, mpfr_abs)
TRIGPROD_REAL_UNFN(sqrt, mpfr_sqrt)
TRIGPROD_REAL_UNFN(exp, mpfr_exp)
TRIGPROD_REAL_UNFN(log, mpfr_log)
TRIGPROD_REAL_UNFN(sin, mpfr_sin)
TRIGPROD_REAL_UNFN(cos, mpfr_cos)
TRIGPROD_REAL_UNFN(tan, mpfr_tan)
TRIGPROD_REAL_UNFN(sinh, mpfr_sinh)
TRIGPROD_REAL_UNFN(cosh, mpfr_cosh)
#undef TRIGPROD_REAL_UNFN

inline Real atan2(const Real& y, const Real& x) {
  Real r(pmax(y, x));
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}
inline Real hypot(const Real& x, const Real& y) {
  Real r(pmax(x, y));
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}
// Round to nearest integer (as a Real).
inline Real round_nearest(const Real& a) {
  Real r(a.prec());
  mpfr_rint(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
// a * 2^e exactly.
inline Real ldexp2(const Real& a, long e) {
  Real r(a.prec());
  mpfr_mul_2si(r.raw(), a.raw(), e, MPFR_RNDN);
  return r;
}
inline Real mul_z(const Real& a, const mpz_class& z) {
  Real r(a.prec());
  mpfr_mul_z(r.raw(), a.raw(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}
inline Real div_z(const Real& a, const mpz_class& z) {
  Real r(a.prec());
  mpfr_div_z(r.raw(), a.raw(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}
// z - a with an exact big-integer minuend.
inline Real z_sub(const mpz_class& z, const Real& a) {
  Real r(a.prec());
  mpfr_z_sub(r.raw(), z.get_mpz_t(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real add_z(const Real& a, const mpz_class& z) {
  Real r(a.prec());
  mpfr_add_z(r.raw(), a.raw(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}
// b^e for integer e (b > 0), rounded at `prec` bits.
inline Real pow_si(long b, long e, long prec) {
  Real base = Real::of_long(b, prec);
  Real r(prec);
  mpfr_pow_si(r.raw(), base.raw(), e, MPFR_RNDN);
  return r;
}

}  // namespace trigprod
