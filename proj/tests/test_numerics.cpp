// Unit and property tests for the complex special-function kernels.
// Frozen reference values were computed independently with mpmath at 45
// significant digits.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "test_util.hpp"

using namespace trigprod;
using tt::C;
using tt::R;
using tt::close_rel;

namespace {
const Precision P113{113};
Real pi_at(long bits) { return Real::pi(bits); }
}  // namespace

TEST_CASE("c_trig matches exact values at special points") {
  Complex half_pi = Complex::of(ldexp2(pi_at(145), -1).round_to(113));
  Complex s = c_trig(TrigFn::Sin, half_pi, P113);
  CHECK(close_rel(s, Complex::one(113), -111));

  Complex sixth_pi = Complex::of((pi_at(145) / 6).round_to(113));
  Complex csc = c_trig(TrigFn::Csc, sixth_pi, P113);
  CHECK(close_rel(csc, C("2"), -109));
}

TEST_CASE("cos of a complex argument matches the hyperbolic expansion") {
  // cos(1+1i) = cos(1)cosh(1) - i sin(1)sinh(1); reference from mpmath.
  Complex got = c_trig(TrigFn::Cos, C("1", "1"), P113);
  Complex want = C("0.8337300251311490488838853943350944798099",
                   "-0.9888977057628650963821295408926861886421");
  CHECK(close_rel(got, want, -105));

  // Same expansion evaluated through the real mpfr kernels at 256 bits.
  long pw = 256;
  Real one = Real::one(pw);
  Complex alt(cos(one) * cosh(one), -(sin(one) * sinh(one)));
  CHECK(close_rel(got, alt.round_to(113), -105));
}

TEST_CASE("log_sin returns the principal branch") {
  Complex half_pi = Complex::of(ldexp2(pi_at(145), -1).round_to(113));
  CHECK(abs(log_sin(half_pi, P113)) <= Real::pow2(-100, 64));

  Complex sixth_pi = Complex::of((pi_at(145) / 6).round_to(113));
  Complex want = Complex::of(-log(R("2", 145)));
  CHECK(close_rel(log_sin(sixth_pi, P113), want.round_to(113), -105));

  Complex got = log_sin(C("1", "2"), P113);
  CHECK(close_rel(got,
                  C("1.314582489063649920853928002178329184920",
                    "0.5542694476155005250276848674631095300699"),
                  -105));
  CHECK(got.im() <= pi_at(145));
  CHECK(got.im() > -pi_at(145));
}

TEST_CASE("log_gamma anchors: integers, half-integers, complex, reflected") {
  CHECK(abs(log_gamma(C("1"), P113)) <= Real::pow2(-100, 64));
  CHECK(close_rel(log_gamma(C("0.5"), P113),
                  C("0.5723649429247000870717136756765293558236"), -104));
  CHECK(close_rel(log_gamma(C("5"), P113),
                  C("3.178053830347945619646941601297055408874"), -104));
  CHECK(close_rel(log_gamma(C("1.5", "0.5"), P113),
                  C("-0.2341863474703495421899292404619803174324",
                    "0.03466896127539756497065105380054841044517"),
                  -100));
  // Reflected region; imaginary part reduced into (-pi, pi].
  Complex refl = log_gamma(C("-2.5", "1.5"), P113);
  CHECK(close_rel(refl,
                  C("-3.717513451191791846159344616347905995318",
                    "-1.429880218654606049043252626588206608549"),
                  -90));
  CHECK(abs(refl.im()) <= pi_at(145));
}

TEST_CASE("log_gamma functional equation exp(lg(w+1)) = w exp(lg(w))") {
  auto rng = tt::fixed_rng();
  std::uniform_real_distribution<double> dre(0.5, 10.0), dim(-5.0, 5.0);
  for (int i = 0; i < 25; ++i) {
    Complex w(Real::of_double(dre(rng), 113), Real::of_double(dim(rng), 113));
    Complex lhs = exp(log_gamma(w + Complex::one(113), P113));
    Complex rhs = w * exp(log_gamma(w, P113));
    CHECK(close_rel(lhs, rhs, -101));  // 2^(-P+12)
  }
}

TEST_CASE("sinc_ref handles zero, special points and the tiny-z series") {
  CHECK(sinc_ref(Complex::zero(113), P113).re() == Real::one(113));
  CHECK(sinc_ref(Complex::zero(113), P113).im().is_zero());

  Complex half_pi = Complex::of(ldexp2(pi_at(145), -1).round_to(113));
  Complex two_over_pi = Complex::of((R("2", 145) / pi_at(145)).round_to(113));
  CHECK(close_rel(sinc_ref(half_pi, P113), two_over_pi, -105));

  Complex near_pi = Complex::of(pi_at(113).round_to(113));
  CHECK(abs(sinc_ref(near_pi, P113)) <= Real::pow2(-110, 64));

  // Below 2^(-P/4) the series path takes over; compare against sin(z)/z at
  // elevated precision.
  Complex tiny = C("9.5e-13", "3e-13");
  Complex got = sinc_ref(tiny, P113);
  Complex ref = (c_trig(TrigFn::Sin, tiny.round_to(256), Precision{256}) /
                 tiny.round_to(256))
                    .round_to(113);
  CHECK(close_rel(got, ref, -108));

  CHECK(close_rel(sinc_ref(C("1", "0.5"), P113),
                  C("0.8717112232038682219481410794983959792546",
                    "-0.1543066164665997171515088703804864220554"),
                  -105));
  CHECK(close_rel(sinc_ref(C("0", "3"), P113),
                  C("3.339291642469967299658197873155276020059"), -105));
}

TEST_CASE("pole_distance locates the nearest pole") {
  CHECK(abs(pole_distance(TrigFn::Csc, Complex::of(pi_at(113)))) <=
        Real::pow2(-110, 64));
  CHECK(close_rel(pole_distance(TrigFn::Tan, Complex::zero(113)),
                  ldexp2(pi_at(145), -1).round_to(113), -105));
  CHECK(close_rel(pole_distance(TrigFn::Csc, C("3", "0.1")),
                  R("0.1733449726718348992760764018982855351675"), -100));
  CHECK(pole_distance(TrigFn::Sin, C("1", "1")).is_inf());
  CHECK(pole_distance(TrigFn::Cos, C("1", "1")).is_inf());
  // Far from the origin the rounding of k pi still dominates correctly.
  Complex far = C("31416", "0.25");
  Real d = pole_distance(TrigFn::Cot, far);
  CHECK(d >= R("0.2"));
  CHECK(d <= R("0.9"));
}

TEST_CASE("pole guards reject near-pole arguments") {
  Complex near_pi = Complex::of(pi_at(113));  // off the true pi by ~2^-112
  CHECK_THROWS_AS(c_trig(TrigFn::Csc, near_pi, P113), PoleProximityError);
  CHECK_THROWS_AS(c_trig(TrigFn::Cot, near_pi, P113), PoleProximityError);
  CHECK_THROWS_AS(log_sin(near_pi, P113), PoleProximityError);
  Complex near_tan_pole = Complex::of(ldexp2(pi_at(113), -1));
  CHECK_THROWS_AS(c_trig(TrigFn::Tan, near_tan_pole, P113),
                  PoleProximityError);
  CHECK_THROWS_AS(log_gamma(C("-3", "1e-18"), P113), PoleProximityError);
  // Within half a guard radius but not on the axis: still guarded.
  CHECK_THROWS_AS(log_gamma(C("-2", "1e-19"), P113), PoleProximityError);
  // Outside the guard: fine.
  CHECK_NOTHROW(log_gamma(C("-2.5", "0"), P113));
}

TEST_CASE("conjugate symmetry holds for every trig kernel") {
  auto rng = tt::fixed_rng();
  const TrigFn fns[] = {TrigFn::Sin, TrigFn::Cos, TrigFn::Tan, TrigFn::Cot,
                        TrigFn::Csc};
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    Complex w = tt::random_z(rng, 3.0);
    if (w.im().is_zero()) continue;
    for (TrigFn fn : fns) {
      try {
        Complex a = c_trig(fn, conj(w), P113);
        Complex b = conj(c_trig(fn, w, P113));
        CHECK(close_rel(a, b, -111));
        ++checked;
      } catch (const PoleProximityError&) {
        // guarded points are excluded by contract
      }
    }
  }
  CHECK(checked > 150);
}

TEST_CASE("reciprocal consistency: csc*sin = 1 and tan*cot = 1") {
  auto rng = tt::fixed_rng();
  for (int i = 0; i < 30; ++i) {
    Complex w = tt::random_z(rng, 3.0);
    try {
      Complex p = c_trig(TrigFn::Csc, w, P113) * c_trig(TrigFn::Sin, w, P113);
      CHECK(close_rel(p, Complex::one(113), -108));
      Complex t = c_trig(TrigFn::Tan, w, P113) * c_trig(TrigFn::Cot, w, P113);
      CHECK(close_rel(t, Complex::one(113), -108));
    } catch (const PoleProximityError&) {
    }
  }
}

TEST_CASE("exp(log_sin(w)) recovers sin(w)") {
  auto rng = tt::fixed_rng();
  for (int i = 0; i < 30; ++i) {
    Complex w = tt::random_z(rng, 4.0);
    try {
      Complex a = exp(log_sin(w, P113));
      Complex b = c_trig(TrigFn::Sin, w, P113);
      CHECK(close_rel(a, b, -108));
    } catch (const PoleProximityError&) {
    }
  }
}

TEST_CASE("precision monotonicity between 113 and 256 bits") {
  auto rng = tt::fixed_rng();
  for (int i = 0; i < 20; ++i) {
    Complex w = tt::random_z(rng, 2.5);
    Complex w256 = w.round_to(256);  // exact embedding
    for (TrigFn fn : {TrigFn::Sin, TrigFn::Cos, TrigFn::Tan}) {
      try {
        Complex a = c_trig(fn, w, P113);
        Complex b = c_trig(fn, w256, Precision{256});
        CHECK(close_rel(a.round_to(256), b, -100));
      } catch (const PoleProximityError&) {
      }
    }
    try {
      CHECK(close_rel(log_gamma(w + C("3.5"), P113).round_to(256),
                      log_gamma(w256 + C("3.5", "0", 256), Precision{256}),
                      -100));
    } catch (const PoleProximityError&) {
    }
  }
}

TEST_CASE("accuracy holds for large arguments (reduction across 10^6)") {
  // Non-trivial real part near 10^6 plus a modest imaginary part; the
  // reference is the same kernel at 256 bits on the exactly-embedded input.
  Complex w(R("999983.125"), R("2.5"));
  for (TrigFn fn : {TrigFn::Sin, TrigFn::Cos, TrigFn::Tan}) {
    Complex a = c_trig(fn, w, P113);
    Complex b = c_trig(fn, w.round_to(256), Precision{256});
    CHECK(close_rel(a.round_to(256), b, -109));  // within 4 ulp analog
  }
  Complex big_im(R("0.75"), R("1000000"));
  Complex s = c_trig(TrigFn::Sin, big_im, P113);
  CHECK(s.is_finite());
  CHECK(close_rel(s.round_to(256),
                  c_trig(TrigFn::Sin, big_im.round_to(256), Precision{256}),
                  -109));
}

TEST_CASE("precision configuration is validated") {
  CHECK_THROWS_AS(c_trig(TrigFn::Sin, C("1"), Precision{52}),
                  InvalidRequestError);
  CHECK_THROWS_AS(sinc_ref(C("1"), Precision{-7}), InvalidRequestError);
  CHECK_NOTHROW(sinc_ref(C("1"), Precision{53}));
}

TEST_CASE("non-finite inputs are refused rather than propagated") {
  Complex bad(Real::inf(113), Real::zero(113));
  CHECK_THROWS_AS(c_trig(TrigFn::Sin, bad, P113), NumericRangeError);
  CHECK_THROWS_AS(sinc_ref(bad, P113), NumericRangeError);
}
