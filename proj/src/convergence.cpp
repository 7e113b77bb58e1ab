#include "trigprod/convergence.hpp"

#include <cmath>

namespace trigprod {

Real remainder_model(FormulaId formula, const Complex& z, long q, long N) {
  const long pw = std::max<long>(z.prec(), 64) + kGuardBits;
  Real az = abs(z).round_to(pw);
  Real az2 = az * az;
  switch (formula) {
    case FormulaId::Viete:
      return az2 / 6 * pow_si(2, -2 * N, pw);
    case FormulaId::RatioInf:
    case FormulaId::GammaInf:
      return az2 / 6 * pow_si(q, -2 * N, pw);
    case FormulaId::CosineSumInf:
      return az2 / 6 * pow_si(2 * q, -2 * N, pw);
    case FormulaId::ExpTowerInf:
      return az2 / 6 * pow_si(q, -N, pw);
    default:
      throw UnsupportedFormulaError(
          "remainder model exists for the infinite families only");
  }
}

double expected_log_rate(FormulaId formula, long q) {
  switch (formula) {
    case FormulaId::Viete: return -2.0 * std::log(2.0);
    case FormulaId::RatioInf: return -2.0 * std::log(static_cast<double>(q));
    case FormulaId::CosineSumInf:
      return -2.0 * std::log(static_cast<double>(2 * q));
    case FormulaId::ExpTowerInf: return -std::log(static_cast<double>(q));
    default:
      throw UnsupportedFormulaError(
          "expected rate exists for the convergent infinite families only");
  }
}

namespace {

Real precision_floor(Precision prec) { return Real::pow2(-prec.bits + 24, 64); }

ProductRequest make_request(FormulaId formula, const Complex& z, long q,
                            long N, Precision prec) {
  ProductRequest req;
  req.formula = formula;
  req.z = z;
  req.q = q;
  req.terms = N;
  req.prec = prec;
  return req;
}

}  // namespace

EvalResult run_to_tolerance(FormulaId formula, const Complex& z, long q,
                            const Real& tol, long maxN, Precision prec) {
  validate_precision(prec);
  if (is_finite_family(formula))
    throw UnsupportedFormulaError(
        "run_to_tolerance applies to the infinite families only");
  if (!(tol > Real::zero(64)))
    throw InvalidRequestError("tolerance must be positive");
  if (tol <= precision_floor(prec))
    throw ToleranceUnreachableError(
        "tolerance is at or below the precision floor 2^(-P+24)",
        precision_floor(prec).to_double());
  if (z.is_zero())
    return partial_product(make_request(formula, z, q, 0, prec));

  Real budget = tol / 100;
  for (long N = 1; N <= maxN; ++N) {
    if (formula == FormulaId::ExpTowerInf && N > kMaxTowerTerms) break;
    if (remainder_model(formula, z, q, N) <= budget)
      return partial_product(make_request(formula, z, q, N, prec));
  }
  long capN = formula == FormulaId::ExpTowerInf
                  ? std::min(maxN, kMaxTowerTerms)
                  : maxN;
  double achievable = remainder_model(formula, z, q, capN).to_double();
  throw ToleranceUnreachableError(
      "tolerance unreachable within N <= " + std::to_string(capN) +
          "; modeled remainder at the cap is " + std::to_string(achievable),
      achievable);
}

ConvergenceReport fit_rate(FormulaId formula, const Complex& z, long q,
                           long n_min, long n_max, Precision prec) {
  validate_precision(prec);
  expected_log_rate(formula, q);  // rejects unsupported families
  if (n_min < 0 || n_max < n_min)
    throw InvalidRequestError("rate fit needs 0 <= n_min <= n_max");

  ConvergenceReport rep;
  rep.formula = formula;
  rep.z = z;
  rep.q = q;
  rep.expected_log_rate = expected_log_rate(formula, q);

  const long p2 = 2 * prec.bits;
  Complex sinc2 = sinc_ref(z, Precision{p2});
  Real floor = precision_floor(prec);

  for (long N = n_min; N <= n_max; ++N) {
    try {
      EvalResult r = partial_product(make_request(formula, z, q, N, prec));
      Real residual =
          abs(r.value.round_to(p2 + kGuardBits) / sinc2 - Complex::one(p2));
      if (residual.is_zero() || residual <= floor) {
        rep.excluded.emplace_back(N, "at precision floor");
        continue;
      }
      rep.samples.push_back(ConvergenceSample{N, residual.round_to(prec.bits)});
    } catch (const PoleProximityError& e) {
      rep.excluded.emplace_back(N, std::string("pole guard: ") + e.what());
    }
  }

  const long usable = static_cast<long>(rep.samples.size());
  if (usable < 5)
    throw InsufficientSamplesError(
        "rate fit needs at least 5 usable samples, got " +
            std::to_string(usable),
        usable);

  // Ordinary least squares on (N, ln residual); rates are O(1) so double
  // arithmetic is ample here.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& s : rep.samples) {
    double x = static_cast<double>(s.n);
    double y = std::log(s.residual.to_double());
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double nn = static_cast<double>(usable);
  rep.fitted_log_rate = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
  rep.rate_rel_error = std::abs(rep.fitted_log_rate - rep.expected_log_rate) /
                       std::abs(rep.expected_log_rate);
  return rep;
}

}  // namespace trigprod
