#include "trigprod/numerics.hpp"

#include <mutex>
#include <vector>

namespace trigprod {

void validate_precision(Precision prec) {
  if (prec.bits < 53 || prec.bits > 16384)
    throw InvalidRequestError("precision bits must lie in [53, 16384], got " +
                              std::to_string(prec.bits));
}

const char* trig_name(TrigFn fn) {
  switch (fn) {
    case TrigFn::Sin: return "sin";
    case TrigFn::Cos: return "cos";
    case TrigFn::Tan: return "tan";
    case TrigFn::Cot: return "cot";
    case TrigFn::Csc: return "csc";
  }
  return "?";
}

Real pole_guard_threshold(long bits) {
  return Real::pow2(-(bits / 2), 64);
}

SinCosPair complex_sin_cos(const Complex& w, long prec) {
  Real sx(prec), cx(prec), shy(prec), chy(prec);
  Real x = w.re().round_to(prec);
  Real y = w.im().round_to(prec);
  mpfr_sin_cos(sx.raw(), cx.raw(), x.raw(), MPFR_RNDN);
  mpfr_sinh_cosh(shy.raw(), chy.raw(), y.raw(), MPFR_RNDN);
  return SinCosPair{Complex(sx * chy, cx * shy), Complex(cx * chy, -(sx * shy))};
}

namespace {

Complex finish(const Complex& v, Precision prec, const char* what) {
  Complex r = v.round_to(prec.bits);
  if (!r.is_finite())
    throw NumericRangeError(std::string(what) + " produced a non-finite value");
  return r;
}

void guard_magnitude(const Real& mag, long bits, const char* fn,
                     const char* detail) {
  if (mag < pole_guard_threshold(bits))
    throw PoleProximityError(std::string("argument within pole guard of ") +
                                 fn + " (" + detail + ")",
                             -1, fn);
}

}  // namespace

Complex c_trig(TrigFn fn, const Complex& w, Precision prec) {
  validate_precision(prec);
  if (!w.is_finite()) throw NumericRangeError("c_trig: non-finite argument");
  const long pw = work_bits(prec);
  SinCosPair sc = complex_sin_cos(w, pw);
  switch (fn) {
    case TrigFn::Sin:
      return finish(sc.sin, prec, "sin");
    case TrigFn::Cos:
      return finish(sc.cos, prec, "cos");
    case TrigFn::Tan:
      guard_magnitude(abs(sc.cos), prec.bits, "tan", "cos(w) ~ 0");
      return finish(sc.sin / sc.cos, prec, "tan");
    case TrigFn::Cot:
      guard_magnitude(abs(sc.sin), prec.bits, "cot", "sin(w) ~ 0");
      return finish(sc.cos / sc.sin, prec, "cot");
    case TrigFn::Csc:
      guard_magnitude(abs(sc.sin), prec.bits, "csc", "sin(w) ~ 0");
      return finish(Complex::one(pw) / sc.sin, prec, "csc");
  }
  throw InvalidRequestError("unknown trig function");
}

namespace detail {

Complex log_sin_at(const Complex& w, long pw, long guard_bits) {
  SinCosPair sc = complex_sin_cos(w, pw);
  guard_magnitude(abs(sc.sin), guard_bits, "log_sin", "sin(w) ~ 0");
  return log(sc.sin);
}

Complex reduce_imag(const Complex& logval) {
  const long p = logval.prec();
  Real im = logval.im();
  Real pi = Real::pi(p + kGuardBits);
  // im - 2*pi*floor((im + pi) / (2*pi)) lands in (-pi, pi].
  Real twopi = ldexp2(pi, 1);
  Real k(p + kGuardBits);
  mpfr_div(k.raw(), (im + pi).raw(), twopi.raw(), MPFR_RNDN);
  mpfr_floor(k.raw(), k.raw());
  Real reduced = im - twopi * k;
  if (reduced > pi) reduced = reduced - twopi;
  if (reduced <= -pi) reduced = reduced + twopi;
  return Complex(logval.re(), reduced.round_to(p));
}

namespace {

// Exact Bernoulli numbers B_0, B_1, B_2, ... via the defining recurrence;
// grown on demand and cached.
const mpq_class& bernoulli(std::size_t n) {
  static std::vector<mpq_class> cache{mpq_class(1), mpq_class(-1, 2)};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() <= n) {
    std::size_t m = cache.size();
    mpq_class acc(0);
    for (std::size_t j = 0; j < m; ++j) {
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(m + 1),
                   static_cast<unsigned long>(j));
      acc += binom * cache[j];
    }
    cache.push_back(-acc / mpz_class(m + 1));
  }
  return cache[n];
}

// Stirling series for log-gamma, valid after shifting Re(u) past a
// precision-dependent threshold.
Complex lgamma_stirling(const Complex& u, long pw) {
  Complex l = log(u);
  Real half = ldexp2(Real::one(pw), -1);
  Complex acc = (u - Complex::of(half)) * l - u +
                Complex::of(ldexp2(log(ldexp2(Real::pi(pw), 1)), -1));
  Complex inv = Complex::one(pw) / u;
  Complex inv2 = inv * inv;
  Complex p = inv;
  Real cutoff = Real::pow2(-(pw + 8), 64);
  for (std::size_t j = 1; j < 4096; ++j) {
    Real coef = Real::of_mpq(bernoulli(2 * j), pw) /
                static_cast<long>(2 * j * (2 * j - 1));
    Complex t = p * coef;
    acc = acc + t;
    Real tm = abs(t);
    Real am = abs(acc);
    if (tm <= cutoff * (am < Real::one(64) ? Real::one(64) : am)) break;
    p = p * inv2;
  }
  return acc;
}

Complex lgamma_right_half(const Complex& w, long pw) {
  // Shift until the asymptotic series is accurate to ~pw bits.
  const long shift_target = static_cast<long>(0.13 * pw) + 12;
  Complex u = w.round_to(pw);
  Complex logsum = Complex::zero(pw);
  Real target = Real::of_long(shift_target, 64);
  while (u.re() < target) {
    logsum = logsum + log(u);
    u = u + Complex::one(pw);
  }
  return lgamma_stirling(u, pw) - logsum;
}

}  // namespace

Complex log_gamma_at(const Complex& w, long pw, long guard_bits) {
  Real half = ldexp2(Real::one(64), -1);
  if (w.re() >= half) {
    if (w.is_real()) {
      Real lg(pw);
      int sign = 0;
      mpfr_lgamma(lg.raw(), &sign, w.re().round_to(pw).raw(), MPFR_RNDN);
      return Complex::of(lg);
    }
    return lgamma_right_half(w, pw);
  }
  // Pole guard: distance to the nearest non-positive integer.
  Real nearest = round_nearest(w.re());
  if (nearest.sign() <= 0) {
    Real d = hypot(w.re() - nearest, w.im());
    if (d < pole_guard_threshold(guard_bits))
      throw PoleProximityError(
          "log_gamma argument within pole guard of a non-positive integer", -1,
          "gamma");
  }
  // Reflection: log G(w) = log pi - log sin(pi w) - log G(1 - w), up to a
  // multiple of 2 pi i that reduce_imag removes at the call site.
  const long pr = pw + 64;
  Real pi = Real::pi(pr);
  Complex pw_arg = w.round_to(pr) * pi;
  SinCosPair sc = complex_sin_cos(pw_arg, pr);
  guard_magnitude(abs(sc.sin), guard_bits, "log_gamma", "sin(pi w) ~ 0");
  Complex one_minus = Complex::one(pr) - w.round_to(pr);
  return (Complex::of(log(pi)) - log(sc.sin) - lgamma_right_half(one_minus, pr))
      .round_to(pw);
}

}  // namespace detail

Complex log_sin(const Complex& w, Precision prec) {
  validate_precision(prec);
  if (!w.is_finite()) throw NumericRangeError("log_sin: non-finite argument");
  return finish(detail::log_sin_at(w, work_bits(prec), prec.bits), prec,
                "log_sin");
}

Complex log_gamma(const Complex& w, Precision prec) {
  validate_precision(prec);
  if (!w.is_finite()) throw NumericRangeError("log_gamma: non-finite argument");
  Complex lg = detail::log_gamma_at(w, work_bits(prec) + kGuardBits, prec.bits);
  return finish(detail::reduce_imag(lg), prec, "log_gamma");
}

Complex sinc_ref(const Complex& z, Precision prec) {
  validate_precision(prec);
  if (!z.is_finite()) throw NumericRangeError("sinc_ref: non-finite argument");
  const long pw = work_bits(prec);
  if (z.is_zero()) return Complex::one(prec.bits);
  Real az = abs(z);
  if (az < Real::pow2(-(prec.bits / 4), 64)) {
    // 1 - z^2/6 + z^4/120; the tail is far below the target precision here.
    Complex z2 = z.round_to(pw) * z.round_to(pw);
    Complex z4 = z2 * z2;
    return finish(Complex::one(pw) - z2 / 6 + z4 / 120, prec, "sinc_ref");
  }
  SinCosPair sc = complex_sin_cos(z, pw);
  return finish(sc.sin / z.round_to(pw), prec, "sinc_ref");
}

Real pole_distance(TrigFn fn, const Complex& w) {
  const long p = std::max<long>(w.prec(), 64);
  if (fn == TrigFn::Sin || fn == TrigFn::Cos) return Real::inf(p);
  const long pw = p + kGuardBits;
  Real pi = Real::pi(pw);
  Real x = w.re().round_to(pw);
  if (fn == TrigFn::Tan) {
    // Poles at (k + 1/2) pi.
    Real k = round_nearest(x / pi - ldexp2(Real::one(pw), -1));
    Real nearest = (k + ldexp2(Real::one(pw), -1)) * pi;
    return hypot(x - nearest, w.im()).round_to(p);
  }
  // csc/cot: poles at k pi.
  Real k = round_nearest(x / pi);
  return hypot(x - k * pi, w.im()).round_to(p);
}

}  // namespace trigprod
