// Grid sweeps, cross-family term checks, the nested-radical table, and the
// reporting invariants (determinism, skip accounting, verdict taxonomy).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "test_util.hpp"
#include "trigprod/verification.hpp"

using namespace trigprod;
using tt::C;
using tt::R;
using tt::close_rel;

namespace {
const Precision P113{113};

GridSpec small_grid(const char* lo, const char* hi, long count,
                    std::vector<long> qs) {
  GridSpec g;
  g.re_min = R(lo);
  g.re_max = R(hi);
  g.re_count = count;
  g.im_min = R(lo);
  g.im_max = R(hi);
  g.im_count = count;
  g.q_set = std::move(qs);
  return g;
}

std::string report_fingerprint(const VerificationReport& r) {
  std::ostringstream os;
  os << formula_flag(r.formula) << "|" << verdict_name(r.verdict) << "|"
     << r.points_tested << "|" << r.points_skipped << "|"
     << r.max_rel_residual.str(36) << "|" << r.worst.at.z.re().str(36) << ","
     << r.worst.at.z.im().str(36) << "|" << r.worst.at.q;
  for (const auto& p : r.per_point)
    os << ";" << p.at.z.re().str(30) << "," << p.at.z.im().str(30) << ","
       << p.at.q << "," << p.residual.str(30);
  for (const auto& s : r.skips)
    os << ";" << s.at.z.re().str(30) << "," << s.at.z.im().str(30) << ","
       << s.at.q << "," << s.reason;
  return os.str();
}
}  // namespace

TEST_CASE("proved telescoping identity passes on a complex grid") {
  GridSpec g = small_grid("-2", "2", 5, {2, 3});
  g.mn_set = {{0, 3}};
  VerificationReport rep = verify_identity(FormulaId::TelescopeFinite, g,
                                           R("1e-12"), P113);
  CHECK(rep.verdict == Verdict::Pass);
  CHECK(rep.max_rel_residual <= R("1e-12"));
  // z = 0 sits on the csc pole and is skipped once per q, never dropped.
  CHECK(rep.points_skipped == 2);
  CHECK(rep.points_tested + rep.points_skipped == 5 * 5 * 2);
  REQUIRE(rep.skips.size() == 2);
  for (const auto& s : rep.skips) {
    CHECK(s.at.z.is_zero());
    CHECK(!s.reason.empty());
  }
}

TEST_CASE("single-point grid: the halving product lands on 2/pi") {
  GridSpec g;
  Real half_pi = ldexp2(Real::pi(145), -1).round_to(113);
  g.re_min = half_pi;
  g.re_max = half_pi;
  g.re_count = 1;
  g.im_min = Real::zero(113);
  g.im_max = Real::zero(113);
  g.im_count = 1;
  g.q_set = {2};
  VerificationReport rep =
      verify_identity(FormulaId::Viete, g, R("1e-10"), P113, true);
  CHECK(rep.verdict == Verdict::Pass);
  CHECK(rep.points_tested == 1);
  CHECK(rep.max_rel_residual <= R("1e-10"));
}

TEST_CASE("finite exponent-tower verdicts never hard-fail") {
  // Real z with 0 < z q^n < pi/2: every power base is positive real.
  GridSpec g;
  g.re_min = R("0.02");
  g.re_max = R("0.15");
  g.re_count = 4;
  g.im_min = Real::zero(113);
  g.im_max = Real::zero(113);
  g.im_count = 1;
  g.q_set = {2, 3};
  g.mn_set = {{0, 1}, {0, 2}};
  VerificationReport rep = verify_identity(FormulaId::ExpTowerFinite, g,
                                           R("1e-10"), P113, true);
  // The cotangent reading of the factor leaves LHS/RHS carrying a
  // cosine-power ratio: a finding with a percent-scale residual, not a
  // pass and not a failure.
  CHECK(rep.verdict == Verdict::Finding);
  CHECK(rep.max_rel_residual > R("1e-4"));
  CHECK(rep.max_rel_residual < R("0.5"));
  CHECK(rep.points_tested == 4 * 2 * 2);
  CHECK(rep.worst.at.n >= 1);
}

TEST_CASE("cosine-sum vs base-2q ratio crosscheck passes tightly") {
  GridSpec g = small_grid("-2", "2", 3, {2, 3});
  VerificationReport rep = crosscheck_terms(
      FormulaId::CosineSumInf, FormulaId::RatioInf, g, 6, R("1e-12"), P113);
  CHECK(rep.verdict == Verdict::Pass);
  CHECK(rep.max_rel_residual <= R("1e-12"));
  CHECK(rep.points_tested + rep.points_skipped == 3 * 3 * 2 * 7);
  REQUIRE(rep.crosscheck_with);
  CHECK(*rep.crosscheck_with == FormulaId::RatioInf);
}

TEST_CASE("gamma crosscheck reports a finding with its worst point") {
  GridSpec g = small_grid("-2", "2", 3, {2, 3, 4, 5});
  VerificationReport rep = crosscheck_terms(
      FormulaId::GammaInf, FormulaId::RatioInf, g, 3, R("1e-12"), P113);
  CHECK(rep.verdict == Verdict::Finding);
  CHECK(rep.max_rel_residual > R("1e-3"));
  CHECK(rep.points_tested > 0);
  CHECK(rep.worst.at.k >= 0);
  CHECK(rep.worst.residual == rep.max_rel_residual);
}

TEST_CASE("unsupported crosscheck pairs are rejected") {
  GridSpec g = small_grid("-1", "1", 2, {2});
  CHECK_THROWS_AS(crosscheck_terms(FormulaId::Viete, FormulaId::RatioInf, g, 3,
                                   R("1e-12"), P113),
                  InvalidRequestError);
}

TEST_CASE("nested-radical arguments match their closed forms") {
  // Forms computed in-test from square roots at 160 bits.
  const long p = 160;
  Real pi = Real::pi(p);
  Real two = Real::of_long(2, p);
  Real cases[5] = {
      ldexp2(sqrt(two), 1) / pi,                                   // n=2
      Real::of_long(3, p) / pi,                                    // n=3
      Real::of_long(4, p) * sqrt(two - sqrt(two)) / pi,            // n=4
      Real::of_long(5, p) * (sqrt(Real::of_long(5, p)) - 1) / (pi * 2),
      Real::of_long(3, p) * (sqrt(Real::of_long(6, p)) - sqrt(two)) / pi,
  };
  const char* notes[5] = {"2*sqrt(2)/pi", "3/pi", "4*sqrt(2-sqrt(2))/pi",
                          "5*(sqrt(5)-1)/(2*pi)", "3*(sqrt(6)-sqrt(2))/pi"};
  for (long n = 2; n <= 6; ++n) {
    Example1Z e = example1_z(n, P113);
    CHECK(abs(e.z.re() - cases[n - 2].round_to(113)) <=
          Real::pow2(-105, 64));
    CHECK(e.z.im().is_zero());
    CHECK(e.note == notes[n - 2]);
  }
  CHECK(example1_z(40, P113).note == "2n*sin(pi/(2n))/pi");
  CHECK_THROWS_AS(example1_z(1, P113), InvalidRequestError);
}

TEST_CASE("nested-radical rows reproduce sinc within the table tolerance") {
  Example1Row r3 = example1_row(3, FormulaId::RatioInf, 24, P113);
  CHECK(r3.residual <= R("1e-10"));
  CHECK(r3.arg.note == "3/pi");
  Example1Row r2 = example1_row(2, FormulaId::Viete, 24, P113);
  CHECK(r2.residual <= R("1e-10"));
  // Large n: z_n -> 1 and the product approaches sin(1).
  Example1Row big = example1_row(10000, FormulaId::RatioInf, 24, P113);
  CHECK(abs(big.arg.z.re() - Real::one(113)) <= R("1e-8"));
  Complex sin1 = c_trig(TrigFn::Sin, Complex::one(113), P113);
  CHECK(rel_diff(big.product.value, sin1) <= R("1e-8"));
  // The exponent-tower row converges too, at its slower rate.
  Example1Row t4 = example1_row(4, FormulaId::ExpTowerInf, 24, P113);
  CHECK(t4.residual <= R("1e-7"));
  CHECK(t4.residual >= R("1e-10"));
  CHECK_THROWS_AS(example1_row(3, FormulaId::TelescopeFinite, 24, P113),
                  InvalidRequestError);
}

TEST_CASE("reports are deterministic") {
  GridSpec g = small_grid("-2", "2", 4, {2, 3});
  g.mn_set = {{0, 3}, {1, 4}};
  VerificationReport a = verify_identity(FormulaId::TelescopeFinite, g,
                                         R("1e-12"), P113, true);
  VerificationReport b = verify_identity(FormulaId::TelescopeFinite, g,
                                         R("1e-12"), P113, true);
  CHECK(report_fingerprint(a) == report_fingerprint(b));
}

TEST_CASE("precision changes accuracy but not the skip set") {
  GridSpec g = small_grid("-3", "3", 5, {2, 3, 5});
  g.mn_set = {{0, 3}, {1, 4}};
  VerificationReport a = verify_identity(FormulaId::TelescopeFinite, g,
                                         R("1e-12"), P113);
  VerificationReport b = verify_identity(FormulaId::TelescopeFinite, g,
                                         R("1e-12"), Precision{256});
  CHECK(a.points_skipped == b.points_skipped);
  REQUIRE(a.skips.size() == b.skips.size());
  for (std::size_t i = 0; i < a.skips.size(); ++i) {
    CHECK(a.skips[i].at.q == b.skips[i].at.q);
    CHECK(abs(a.skips[i].at.z.re().round_to(113) -
              b.skips[i].at.z.re().round_to(113)) <= Real::pow2(-100, 64));
  }
  CHECK(b.max_rel_residual < a.max_rel_residual);
}

TEST_CASE("grid validation") {
  GridSpec g = small_grid("-1", "1", 0, {2});
  CHECK_THROWS_AS(verify_identity(FormulaId::Viete, g, R("1e-10"), P113),
                  InvalidRequestError);
  GridSpec g2 = small_grid("-1", "1", 2, {});
  CHECK_THROWS_AS(verify_identity(FormulaId::Viete, g2, R("1e-10"), P113),
                  InvalidRequestError);
  GridSpec g3 = small_grid("-1", "1", 2, {1});
  CHECK_THROWS_AS(verify_identity(FormulaId::Viete, g3, R("1e-10"), P113),
                  InvalidRequestError);
}

TEST_CASE("infinite-family sweep with explicit truncations") {
  GridSpec g = small_grid("-1.5", "1.5", 3, {2});
  g.n_set = {16, 24};
  VerificationReport rep =
      verify_identity(FormulaId::RatioInf, g, R("1e-8"), P113);
  CHECK(rep.verdict == Verdict::Pass);
  CHECK(rep.points_tested + rep.points_skipped == 3 * 3 * 2);
}
