// Precision-parameterized complex special functions: the five trig kernels,
// principal-branch log-sin and log-gamma, the sinc reference, and pole
// proximity measurement. All functions are pure and thread-safe.
#pragma once

#include "trigprod/complex.hpp"
#include "trigprod/errors.hpp"

namespace trigprod {

// Binary mantissa precision of results. Valid range: [53, 16384].
struct Precision {
  long bits = 113;
};

inline constexpr long kGuardBits = 32;
inline constexpr long kDefaultPrecisionBits = 113;

void validate_precision(Precision prec);
// Internal working precision for a target of `prec` bits.
inline long work_bits(Precision prec) { return prec.bits + kGuardBits; }

enum class TrigFn { Sin, Cos, Tan, Cot, Csc };
const char* trig_name(TrigFn fn);

// Rejection threshold for near-pole arguments: 2^-(bits/2). A trig factor
// whose relevant sin/cos magnitude falls below this is refused.
Real pole_guard_threshold(long bits);

struct SinCosPair {
  Complex sin;
  Complex cos;
};
// sin and cos of a complex argument in one pass, at `prec` bits.
SinCosPair complex_sin_cos(const Complex& w, long prec);

// The named trig function at w, accurate to a few ulp at prec.bits.
// Throws PoleProximityError when a tan/cot/csc argument is guarded.
Complex c_trig(TrigFn fn, const Complex& w, Precision prec);

// Principal-branch log(sin(w)); imaginary part in (-pi, pi].
Complex log_sin(const Complex& w, Precision prec);

// Principal-branch log-gamma; reflection is used for Re(w) < 1/2.
Complex log_gamma(const Complex& w, Precision prec);

// sin(z)/z with sinc(0) = 1; a short series is used for tiny |z| so the
// removable singularity never costs accuracy.
Complex sinc_ref(const Complex& z, Precision prec);

// Distance from w to the nearest pole of fn (+inf for sin/cos).
Real pole_distance(TrigFn fn, const Complex& w);

namespace detail {
// Unrounded internals used by the product evaluators, which need values at
// elevated working precisions. `guard_bits` sets the pole-guard threshold
// (the guard tracks the *requested* precision, not the working one).
Complex log_sin_at(const Complex& w, long pw, long guard_bits);
Complex log_gamma_at(const Complex& w, long pw, long guard_bits);
// Wrap an imaginary part into (-pi, pi].
Complex reduce_imag(const Complex& logval);
}  // namespace detail

}  // namespace trigprod
