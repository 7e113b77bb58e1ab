// Remainder model, tolerance-driven truncation, and rate fitting. True
// residuals come from the telescoped oracles at elevated precision, so the
// model checks are independent of the model itself.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "test_util.hpp"
#include "trigprod/convergence.hpp"

using namespace trigprod;
using tt::C;
using tt::R;
using tt::close_rel;
using tt::inf_req;

namespace {
const Precision P113{113};

// |oracle_partial / sinc - 1| at 2P bits: the model's ground truth.
Real true_residual(FormulaId f, const Complex& z, long q, long N) {
  const long p2 = 2 * 113 + 32;
  ProductRequest req = inf_req(f, z.round_to(p2), q, N, p2 - 32);
  Complex oracle = oracle_partial(req);
  Complex sinc = sinc_ref(z.round_to(p2), Precision{p2});
  return abs(oracle.round_to(p2) / sinc - Complex::one(p2));
}
}  // namespace

TEST_CASE("model matches the frozen anchors") {
  Complex half_pi = Complex::of(ldexp2(Real::pi(145), -1).round_to(113));
  Real m = remainder_model(FormulaId::Viete, half_pi, 2, 10);
  // (pi/2)^2/6 * 4^-10 = 3.9218e-7 (frozen); true residual 3.9218e-7.
  CHECK(m >= R("3.92e-7"));
  CHECK(m <= R("3.93e-7"));
  Real t = true_residual(FormulaId::Viete, half_pi, 2, 10);
  CHECK(t / m >= R("0.5"));
  CHECK(t / m <= R("2"));

  CHECK(remainder_model(FormulaId::RatioInf, Complex::zero(113), 3, 7)
            .is_zero());

  Real mt = remainder_model(FormulaId::ExpTowerInf, C("1"), 2, 10);
  CHECK(mt >= R("1.62e-4"));
  CHECK(mt <= R("1.63e-4"));
  Real tt_ = true_residual(FormulaId::ExpTowerInf, C("1"), 2, 10);
  CHECK(tt_ / mt >= R("0.5"));
  CHECK(tt_ / mt <= R("2"));
}

TEST_CASE("model soundness band: true residual within [model/50, 50*model]") {
  struct Case {
    FormulaId f;
    long q;
  };
  const Case cases[] = {{FormulaId::Viete, 2},
                        {FormulaId::RatioInf, 2},
                        {FormulaId::RatioInf, 3},
                        {FormulaId::CosineSumInf, 2},
                        {FormulaId::ExpTowerInf, 2},
                        {FormulaId::ExpTowerInf, 3}};
  const Complex zs[] = {C("1"), C("2", "1"), C("0.5", "-2"), C("3.1", "0.4")};
  for (const Case& c : cases)
    for (const Complex& z : zs)
      for (long N : {4L, 8L, 14L}) {
        Real model = remainder_model(c.f, z, c.q, N);
        Real truth = true_residual(c.f, z, c.q, N);
        if (truth <= Real::pow2(-89, 64)) continue;  // precision floor
        CHECK(truth >= model / 50);
        CHECK(truth <= model * 50);
      }
}

TEST_CASE("residuals decrease monotonically once past the start-up indices") {
  Complex z = C("2.5", "1.5");
  for (FormulaId f : {FormulaId::Viete, FormulaId::RatioInf}) {
    Real prev = true_residual(f, z, 2, 4);
    for (long N = 5; N <= 16; ++N) {
      Real cur = true_residual(f, z, 2, N);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("run_to_tolerance lands near the modeled term count") {
  Complex half_pi = Complex::of(ldexp2(Real::pi(145), -1).round_to(113));
  EvalResult r = run_to_tolerance(FormulaId::RatioInf, half_pi, 2, R("1e-12"),
                                  48, P113);
  CHECK(r.terms_used >= 20);
  CHECK(r.terms_used <= 24);
  Complex two_over_pi = Complex::of((R("2", 145) / Real::pi(145)).round_to(113));
  CHECK(abs(r.value - two_over_pi) <= R("1e-12") * abs(two_over_pi));
  REQUIRE(r.est_remainder);
  CHECK(*r.est_remainder <= R("1e-14"));
}

TEST_CASE("run_to_tolerance: z = 0 needs no terms at all") {
  for (FormulaId f : {FormulaId::Viete, FormulaId::RatioInf,
                      FormulaId::ExpTowerInf}) {
    EvalResult r =
        run_to_tolerance(f, Complex::zero(113), 2, R("1e-10"), 48, P113);
    CHECK(r.terms_used == 0);
    CHECK(r.value.re() == Real::one(113));
  }
}

TEST_CASE("run_to_tolerance converges for purely imaginary arguments") {
  Complex z3i = C("0", "3");
  EvalResult r =
      run_to_tolerance(FormulaId::Viete, z3i, 2, R("1e-10"), 48, P113);
  Complex sinc = sinc_ref(z3i, P113);  // sinh(3)/3
  CHECK(close_rel(sinc, C("3.339291642469967299658197873155276020059"),
                  -104));
  CHECK(rel_diff(r.value, sinc) <= R("1e-10"));
}

TEST_CASE("unreachable tolerances are rejected with the achievable bound") {
  // Floor: below 2^(-P+24) nothing can be promised.
  CHECK_THROWS_AS(run_to_tolerance(FormulaId::Viete, C("1"), 2,
                                   Real::pow2(-90, 64), 48, P113),
                  ToleranceUnreachableError);
  // Cap: the tower would need more than 48 terms for 1e-14 at q=2.
  try {
    run_to_tolerance(FormulaId::ExpTowerInf, C("1"), 2, R("1e-14"), 48, P113);
    FAIL("expected ToleranceUnreachableError");
  } catch (const ToleranceUnreachableError& e) {
    CHECK(e.achievable > 0.0);
    CHECK(e.achievable < 1e-13);
  }
  CHECK_THROWS_AS(run_to_tolerance(FormulaId::TelescopeFinite, C("1"), 2,
                                   R("1e-6"), 48, P113),
                  UnsupportedFormulaError);
}

TEST_CASE("fitted rates match the family predictions") {
  ConvergenceReport r1 =
      fit_rate(FormulaId::RatioInf, C("1"), 3, 2, 12, P113);
  CHECK(r1.rate_rel_error <= 0.02);
  CHECK(r1.fitted_log_rate < 0.0);

  ConvergenceReport r2 =
      fit_rate(FormulaId::ExpTowerInf, C("1"), 2, 2, 20, P113);
  CHECK(r2.rate_rel_error <= 0.05);

  Complex half_pi = Complex::of(ldexp2(Real::pi(145), -1).round_to(113));
  ConvergenceReport r3 = fit_rate(FormulaId::Viete, half_pi, 2, 2, 14, P113);
  CHECK(r3.rate_rel_error <= 0.02);

  // Sample invariants: strictly increasing N, positive residuals.
  for (const ConvergenceReport* r : {&r1, &r2, &r3}) {
    REQUIRE(r->samples.size() >= 5);
    for (std::size_t i = 0; i < r->samples.size(); ++i) {
      CHECK(r->samples[i].residual > Real::zero(64));
      if (i) CHECK(r->samples[i].n > r->samples[i - 1].n);
    }
  }
}

TEST_CASE("rate fit refuses degenerate sample sets") {
  // z = 0: every residual sits at the floor, so nothing is usable.
  CHECK_THROWS_AS(fit_rate(FormulaId::Viete, Complex::zero(113), 2, 2, 12,
                           P113),
                  InsufficientSamplesError);
  // A window too narrow to yield five samples.
  CHECK_THROWS_AS(fit_rate(FormulaId::RatioInf, C("1"), 3, 2, 4, P113),
                  InsufficientSamplesError);
  // No decay rate is defined for the gamma family.
  CHECK_THROWS_AS(fit_rate(FormulaId::GammaInf, C("1"), 2, 2, 12, P113),
                  UnsupportedFormulaError);
}

TEST_CASE("fit excludes floor-saturated samples instead of fitting them") {
  // At q=5 the residual passes the 2^(-89) floor around N=13.
  ConvergenceReport r = fit_rate(FormulaId::RatioInf, C("1"), 5, 2, 24, P113);
  CHECK(!r.excluded.empty());
  for (const auto& [n, reason] : r.excluded)
    CHECK(reason.find("floor") != std::string::npos);
  CHECK(r.rate_rel_error <= 0.02);
}
