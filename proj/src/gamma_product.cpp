#include "trigprod/gamma_product.hpp"

namespace trigprod {

namespace {

ProductRequest gamma_request(const Complex& z, long q, long N, Precision prec) {
  ProductRequest req;
  req.formula = FormulaId::GammaInf;
  req.z = z;
  req.q = q;
  req.terms = N;
  req.prec = prec;
  return req;
}

}  // namespace

GammaTermBreakdown gamma_inner(const Complex& z, long q, long k,
                               Precision prec) {
  validate_precision(prec);
  if (q < 2) throw InvalidRequestError("base q must be >= 2");
  if (k < 0) throw IndexOutOfRangeError("outer index k must be >= 0");
  const long P = prec.bits;
  const long pw = work_bits(prec);

  GammaTermBreakdown out;
  out.k = k;

  // Inner factors one by one (exp of the per-k1 log-gamma combination);
  // the product itself reuses the adaptively evaluated term generator.
  mpz_class qk;
  mpz_ui_pow_ui(qk.get_mpz_t(), static_cast<unsigned long>(q),
                static_cast<unsigned long>(k));
  mpz_class qk1 = qk * q;
  Real t_re = z.re().round_to(pw) / Real::pi(pw);
  Real t_im = z.im().round_to(pw) / Real::pi(pw);
  for (long k1 = 1; k1 <= q; ++k1) {
    mpz_class a = k1 * qk;
    Complex base =
        Complex::of(div_z(Real::of_mpz(mpz_class(k1), pw), mpz_class(q)));
    Complex lower = Complex(div_z(z_sub(a, t_re), qk1), div_z(-t_im, qk1));
    Complex upper = Complex(div_z(add_z(t_re, a), qk1), div_z(t_im, qk1));
    try {
      Complex g0 = detail::log_gamma_at(base, pw, P);
      Complex lg = g0 + g0 - detail::log_gamma_at(lower, pw, P) -
                   detail::log_gamma_at(upper, pw, P);
      out.inner_factors.push_back(exp(lg).round_to(P));
    } catch (const PoleProximityError& e) {
      throw PoleProximityError(std::string(e.what()) + " (inner index k1=" +
                                   std::to_string(k1) + ", outer k=" +
                                   std::to_string(k) + ")",
                               k, "gamma factor k1=" + std::to_string(k1));
    }
  }

  ProductRequest req = gamma_request(z, q, k + 1, prec);
  TermValue tv = term(req, k);
  out.flags = tv.flags;
  out.product = tv.value_hint ? *tv.value_hint : exp(tv.log_value).round_to(P);

  ProductRequest ratio = gamma_request(z, q, k + 1, prec);
  ratio.formula = FormulaId::RatioInf;
  TermValue rv = term(ratio, k);
  out.matched_ratio_term =
      rv.value_hint ? *rv.value_hint : exp(rv.log_value).round_to(P);
  out.flags.merge(rv.flags);

  out.term_residual =
      rel_diff(out.product.round_to(pw), out.matched_ratio_term.round_to(pw))
          .round_to(P);
  return out;
}

EvalResult gamma_partial(const Complex& z, long q, long N, Precision prec) {
  return partial_product(gamma_request(z, q, N, prec));
}

}  // namespace trigprod
