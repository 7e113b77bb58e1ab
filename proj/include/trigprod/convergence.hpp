// Truncation control for the infinite families: an order-of-magnitude
// remainder model derived from the telescoped closed forms, automatic term
// selection against a tolerance, and least-squares measurement of the
// empirical geometric convergence rate.
#pragma once

#include <vector>

#include "trigprod/product_core.hpp"

namespace trigprod {

// Model of |P_N / sinc(z) - 1|:
//   Viete / RatioInf / CosineSumInf : |z|^2 b^(-2N) / 6  (b = 2, q, 2q)
//   ExpTowerInf                     : |z|^2 q^(-N) / 6
// GammaInf borrows the RatioInf model (uncertified). Finite families have
// no truncation remainder.
Real remainder_model(FormulaId formula, const Complex& z, long q, long N);

// ln of the model's per-term decay: -2 ln b, or -ln q for the tower.
double expected_log_rate(FormulaId formula, long q);

// Evaluate with the smallest N whose modeled remainder is <= tol/100.
// Throws ToleranceUnreachableError when maxN or the precision floor
// (tol <= 2^(-P+24)) blocks the request.
EvalResult run_to_tolerance(FormulaId formula, const Complex& z, long q,
                            const Real& tol, long maxN, Precision prec);

struct ConvergenceSample {
  long n = 0;
  Real residual;  // |P_n / sinc(z) - 1| measured at 2P bits
};

struct ConvergenceReport {
  FormulaId formula = FormulaId::Viete;
  Complex z = Complex::zero(kDefaultPrecisionBits);
  long q = 2;
  std::vector<ConvergenceSample> samples;  // strictly increasing n
  std::vector<std::pair<long, std::string>> excluded;  // n -> reason
  double fitted_log_rate = 0.0;
  double expected_log_rate = 0.0;
  double rate_rel_error = 0.0;
};

// Least-squares slope of ln(residual) vs N over [n_min, n_max], excluding
// pole-skipped points and residuals at the precision floor. Requires at
// least 5 usable samples.
ConvergenceReport fit_rate(FormulaId formula, const Complex& z, long q,
                           long n_min, long n_max, Precision prec);

}  // namespace trigprod
