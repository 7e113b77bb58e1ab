#include "trigprod/verification.hpp"

#include <algorithm>

namespace trigprod {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Finding: return "finding";
  }
  return "?";
}

void validate_grid(const GridSpec& grid) {
  if (grid.re_count < 1 || grid.im_count < 1)
    throw InvalidRequestError("grid counts must be >= 1");
  if (!grid.re_min.is_finite() || !grid.re_max.is_finite() ||
      !grid.im_min.is_finite() || !grid.im_max.is_finite())
    throw InvalidRequestError("grid ranges must be finite");
  if (grid.q_set.empty()) throw InvalidRequestError("grid q-set is empty");
  for (long q : grid.q_set)
    if (q < 2) throw InvalidRequestError("grid q values must be >= 2");
}

namespace {

Real grid_coord(const Real& lo, const Real& hi, long count, long i, long pw) {
  if (count == 1) return lo.round_to(pw);
  return lo.round_to(pw) +
         (hi.round_to(pw) - lo.round_to(pw)) * i / (count - 1);
}

// The classic cosine-doubling closed form, kept local to verification:
// prod_{k=m}^{n-1} cos(z 2^k) = 2^(m-n) sin(z 2^n) / sin(z 2^m).
Complex morrie_rhs(const Complex& z, long m, long n, long pw, long bits) {
  Complex sn = complex_sin_cos(ldexp2(z.round_to(pw), n), pw).sin;
  Complex sm = complex_sin_cos(ldexp2(z.round_to(pw), m), pw).sin;
  Real thr = pole_guard_threshold(bits);
  if (abs(sm) < thr)
    throw PoleProximityError("csc(z 2^m) within pole guard", -1, "csc");
  if (abs(sn) < thr)
    throw PoleProximityError("sin(z 2^n) vanishes within the pole guard", -1,
                             "sin");
  return ldexp2(sn / sm, m - n);
}

struct Collector {
  explicit Collector(long bits)
      : max_res(Real::zero(bits)), has_any(false) {}
  Real max_res;
  bool has_any;
  void add(VerificationReport& rep, const PointRef& at, const Real& residual,
           bool detail) {
    ++rep.points_tested;
    if (detail) rep.per_point.push_back(PointResidual{at, residual});
    if (!has_any || residual > max_res) {
      max_res = residual;
      rep.worst = PointResidual{at, residual};
      has_any = true;
    }
  }
  void skip(VerificationReport& rep, const PointRef& at,
            const std::string& reason) {
    ++rep.points_skipped;
    rep.skips.push_back(SkipRecord{at, reason});
  }
};

Verdict decide(FormulaId formula, bool tested_any, const Real& max_res,
               const Real& tol) {
  if (!tested_any) return Verdict::Finding;
  if (max_res <= tol) return Verdict::Pass;
  // Unproved or branch-ambiguous targets degrade to findings, never hard
  // failures; the proved identities fail loudly.
  if (formula == FormulaId::GammaInf || formula == FormulaId::ExpTowerFinite)
    return Verdict::Finding;
  return Verdict::Fail;
}

std::vector<long> effective_q_set(FormulaId formula,
                                  const std::vector<long>& q_set) {
  if (formula == FormulaId::Viete || formula == FormulaId::MorrieClassic)
    return {2};  // base is fixed for these families
  return q_set;
}

}  // namespace

VerificationReport verify_identity(FormulaId formula, const GridSpec& grid,
                                   const Real& tol, Precision prec,
                                   bool per_point_detail) {
  validate_grid(grid);
  validate_precision(prec);
  const long P = prec.bits;
  const long pw = work_bits(prec);
  const long p2 = 2 * P;

  VerificationReport rep;
  rep.formula = formula;
  rep.tol = tol.round_to(P);
  Collector col(P);

  const bool finite = is_finite_family(formula);
  const std::vector<long> qs = effective_q_set(formula, grid.q_set);

  for (long i = 0; i < grid.re_count; ++i) {
    Real re = grid_coord(grid.re_min, grid.re_max, grid.re_count, i, pw);
    for (long j = 0; j < grid.im_count; ++j) {
      Real im = grid_coord(grid.im_min, grid.im_max, grid.im_count, j, pw);
      Complex z = Complex(re, im).round_to(P);
      for (long q : qs) {
        if (finite) {
          for (const auto& [m, n] : grid.mn_set) {
            PointRef at;
            at.z = z;
            at.q = q;
            at.m = m;
            at.n = n;
            ProductRequest req;
            req.formula = formula;
            req.z = z;
            req.q = q;
            req.m = m;
            req.n = n;
            req.prec = prec;
            try {
              EvalResult lhs = partial_product(req);
              Complex rhs = formula == FormulaId::MorrieClassic
                                ? morrie_rhs(z, m, n, pw, P)
                                : finite_rhs(req);
              Real residual =
                  rel_diff(lhs.value.round_to(pw), rhs.round_to(pw))
                      .round_to(P);
              col.add(rep, at, residual, per_point_detail);
            } catch (const PoleProximityError& e) {
              col.skip(rep, at, e.what());
            } catch (const RangeCapError& e) {
              col.skip(rep, at, e.what());
            }
          }
        } else {
          auto test_at_n = [&](long N, PointRef at) {
            at.terms = N;
            ProductRequest req;
            req.formula = formula;
            req.z = z;
            req.q = q;
            req.terms = N;
            req.prec = prec;
            EvalResult r = partial_product(req);
            Complex sinc2 = sinc_ref(z, Precision{p2});
            Real residual = rel_diff(r.value.round_to(p2 + kGuardBits), sinc2)
                                .round_to(P);
            col.add(rep, at, residual, per_point_detail);
          };
          PointRef at;
          at.z = z;
          at.q = q;
          try {
            if (!grid.n_set.empty()) {
              for (long N : grid.n_set) test_at_n(N, at);
            } else if (z.is_zero()) {
              test_at_n(0, at);
            } else {
              EvalResult probe =
                  run_to_tolerance(formula, z, q, tol.round_to(pw), 48, prec);
              test_at_n(probe.terms_used, at);
            }
          } catch (const PoleProximityError& e) {
            col.skip(rep, at, e.what());
          } catch (const ToleranceUnreachableError& e) {
            col.skip(rep, at, e.what());
          } catch (const RangeCapError& e) {
            col.skip(rep, at, e.what());
          }
        }
      }
    }
  }

  rep.max_rel_residual = col.max_res;
  rep.verdict = decide(formula, col.has_any, col.max_res, rep.tol);
  return rep;
}

VerificationReport crosscheck_terms(FormulaId a, FormulaId b,
                                    const GridSpec& grid, long k_max,
                                    const Real& tol, Precision prec,
                                    bool per_point_detail) {
  validate_grid(grid);
  validate_precision(prec);
  const bool cosine_pair =
      a == FormulaId::CosineSumInf && b == FormulaId::RatioInf;
  const bool gamma_pair = a == FormulaId::GammaInf && b == FormulaId::RatioInf;
  if (!cosine_pair && !gamma_pair)
    throw InvalidRequestError(
        "supported crosschecks: eq10 vs eq9 (base 2q) and eq11 vs eq9");
  if (k_max < 0) throw InvalidRequestError("k_max must be >= 0");

  const long P = prec.bits;
  const long pw = work_bits(prec);
  VerificationReport rep;
  rep.formula = a;
  rep.crosscheck_with = b;
  rep.tol = tol.round_to(P);
  Collector col(P);

  for (long i = 0; i < grid.re_count; ++i) {
    Real re = grid_coord(grid.re_min, grid.re_max, grid.re_count, i, pw);
    for (long j = 0; j < grid.im_count; ++j) {
      Real im = grid_coord(grid.im_min, grid.im_max, grid.im_count, j, pw);
      Complex z = Complex(re, im).round_to(P);
      for (long q : grid.q_set) {
        for (long k = 0; k <= k_max; ++k) {
          PointRef at;
          at.z = z;
          at.q = q;
          at.k = k;
          try {
            ProductRequest ra;
            ra.formula = a;
            ra.z = z;
            ra.q = q;
            ra.terms = k + 1;
            ra.prec = prec;
            TermValue ta = term(ra, k);
            ProductRequest rb;
            rb.formula = b;
            rb.z = z;
            rb.q = cosine_pair ? 2 * q : q;
            rb.terms = k + 1;
            rb.prec = prec;
            TermValue tb = term(rb, k);
            Complex va = ta.value_hint ? *ta.value_hint : exp(ta.log_value);
            Complex vb = tb.value_hint ? *tb.value_hint : exp(tb.log_value);
            Real residual =
                rel_diff(va.round_to(pw), vb.round_to(pw)).round_to(P);
            col.add(rep, at, residual, per_point_detail);
          } catch (const PoleProximityError& e) {
            col.skip(rep, at, e.what());
          } catch (const RangeCapError& e) {
            col.skip(rep, at, e.what());
          }
        }
      }
    }
  }

  rep.max_rel_residual = col.max_res;
  if (!col.has_any) {
    rep.verdict = Verdict::Finding;
  } else if (col.max_res <= rep.tol) {
    rep.verdict = Verdict::Pass;
  } else {
    rep.verdict = gamma_pair ? Verdict::Finding : Verdict::Fail;
  }
  return rep;
}

Example1Z example1_z(long n, Precision prec) {
  validate_precision(prec);
  if (n < 2) throw InvalidRequestError("nested-radical arguments need n >= 2");
  const long pw = work_bits(prec);
  Real pi = Real::pi(pw);
  Real z = Real::of_long(2 * n, pw) * sin(pi / (2 * n)) / pi;
  Example1Z out{Complex::of(z.round_to(prec.bits)), {}};
  switch (n) {
    case 2: out.note = "2*sqrt(2)/pi"; break;
    case 3: out.note = "3/pi"; break;
    case 4: out.note = "4*sqrt(2-sqrt(2))/pi"; break;
    case 5: out.note = "5*(sqrt(5)-1)/(2*pi)"; break;
    case 6: out.note = "3*(sqrt(6)-sqrt(2))/pi"; break;
    default: out.note = "2n*sin(pi/(2n))/pi"; break;
  }
  return out;
}

Example1Row example1_row(long n, FormulaId formula, long N, Precision prec) {
  if (is_finite_family(formula))
    throw InvalidRequestError(
        "the nested-radical table uses the infinite families");
  Example1Row row;
  row.n = n;
  row.arg = example1_z(n, prec);
  ProductRequest req;
  req.formula = formula;
  req.z = row.arg.z;
  req.q = 2;
  req.terms = N;
  req.prec = prec;
  row.product = partial_product(req);
  row.sinc = sinc_ref(row.arg.z, prec);
  const long pw = work_bits(prec);
  row.residual = rel_diff(row.product.value.round_to(pw),
                          row.sinc.round_to(pw))
                     .round_to(prec.bits);
  return row;
}

}  // namespace trigprod
