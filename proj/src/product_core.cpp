#include "trigprod/product_core.hpp"

#include <climits>
#include <functional>
#include <vector>

#include "trigprod/convergence.hpp"

namespace trigprod {

bool is_finite_family(FormulaId f) {
  return f == FormulaId::MorrieClassic || f == FormulaId::TelescopeFinite ||
         f == FormulaId::ExpTowerFinite;
}

const char* formula_flag(FormulaId f) {
  switch (f) {
    case FormulaId::MorrieClassic: return "eq1";
    case FormulaId::Viete: return "eq2";
    case FormulaId::TelescopeFinite: return "eq3";
    case FormulaId::ExpTowerInf: return "eq8";
    case FormulaId::RatioInf: return "eq9";
    case FormulaId::CosineSumInf: return "eq10";
    case FormulaId::GammaInf: return "eq11";
    case FormulaId::ExpTowerFinite: return "eq12";
  }
  return "?";
}

std::optional<FormulaId> formula_from_flag(const std::string& flag) {
  static const std::pair<const char*, FormulaId> table[] = {
      {"eq1", FormulaId::MorrieClassic}, {"eq2", FormulaId::Viete},
      {"eq3", FormulaId::TelescopeFinite}, {"eq8", FormulaId::ExpTowerInf},
      {"eq9", FormulaId::RatioInf}, {"eq10", FormulaId::CosineSumInf},
      {"eq11", FormulaId::GammaInf}, {"eq12", FormulaId::ExpTowerFinite},
  };
  for (const auto& [name, id] : table)
    if (flag == name) return id;
  return std::nullopt;
}

std::string flags_to_string(TermFlags flags) {
  std::string s;
  auto app = [&s](const char* name) {
    if (!s.empty()) s += "|";
    s += name;
  };
  if (flags.has(TermFlag::PoleSkip)) app("POLE_SKIP");
  if (flags.has(TermFlag::BranchWarning)) app("BRANCH_WARNING");
  if (flags.has(TermFlag::RangeEscape)) app("RANGE_ESCAPE");
  return s;
}

namespace {

mpz_class q_pow(long q, long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q),
                static_cast<unsigned long>(k));
  return r;
}

const mpz_class& exponent_cap() {
  static const mpz_class cap = mpz_class(1) << kMaxExponentBits;
  return cap;
}

// z * q^k for any integer k, at `pw` bits.
Complex scale_pow(const Complex& z, long q, long k, long pw) {
  Complex zz = z.round_to(pw);
  if (k == 0) return zz;
  if (q == 2) return ldexp2(zz, k);
  if (k > 0) return mul_z(zz, q_pow(q, k));
  return div_z(zz, q_pow(q, -k));
}

struct TermCore {
  Complex log;  // at working precision or better
  std::optional<Complex> value;
  TermFlags flags;
  int retries = 0;
};

// Retry a cancelling sum of log pieces at doubled precision until the result
// keeps `need_bits` significant bits (or the ladder cap is reached).
TermCore adaptive_log_sum(long request_bits, long need_bits,
                          const std::function<std::vector<Complex>(long)>& gen) {
  const long cap = std::max<long>(1024, request_bits + 352);
  long pw = request_bits + kGuardBits;
  TermCore out{Complex::zero(pw), std::nullopt, {}, 0};
  for (;;) {
    std::vector<Complex> pieces = gen(pw);
    Complex s = Complex::zero(pw);
    long maxe = LONG_MIN;
    for (const Complex& p : pieces) {
      s = s + p;
      maxe = std::max(maxe, magnitude_exponent(p, LONG_MIN));
    }
    long lost = 0;
    if (maxe != LONG_MIN) {
      long se = magnitude_exponent(s, maxe - pw);
      lost = std::max(0L, maxe - se);
    }
    if (pw - lost >= need_bits || pw >= cap) {
      out.log = s;
      return out;
    }
    pw = std::min(cap, pw * 2);
    ++out.retries;
  }
}

// Direct value when exp() stays in a sane range; RANGE_ESCAPE otherwise.
void fill_value_hint(TermCore& tc) {
  Real lim = Real::pow2(20, 64);
  if (abs(tc.log.re()) <= lim) {
    Complex v = exp(tc.log);
    if (v.is_finite()) {
      tc.value = v;
      return;
    }
  }
  tc.flags.set(TermFlag::RangeEscape);
}

void guard_vanishing(const Complex& v, long bits, const char* what) {
  if (abs(v) < pole_guard_threshold(bits))
    throw PoleProximityError(
        std::string(what) + " vanishes within the pole guard", -1, what);
}

// Value-space factor -> TermCore with principal log.
TermCore from_value(Complex v, long bits, const char* what) {
  guard_vanishing(v, bits, what);
  TermCore tc{log(v), std::move(v), {}, 0};
  return tc;
}

TermCore unit_term(long pw, bool escaped) {
  TermCore tc{Complex::zero(pw), Complex::one(pw), {}, 0};
  if (escaped) tc.flags.set(TermFlag::RangeEscape);
  return tc;
}

Real half_pi(long pw) { return ldexp2(Real::pi(pw), -1); }

// Ratio factors are assembled in log space so that legitimately huge or
// tiny sine magnitudes (complex arguments) never overflow a quotient; only
// the sine values themselves are pole-guarded.
TermCore ratio_term_core(const Complex& num_sin, const Complex& den_sin,
                         const Real& log_scale, long bits,
                         const char* num_what, const char* den_what) {
  guard_vanishing(num_sin, bits, num_what);
  guard_vanishing(den_sin, bits, den_what);
  TermCore tc{log(num_sin) - log(den_sin) + Complex::of(log_scale),
              std::nullopt,
              {},
              0};
  fill_value_hint(tc);
  return tc;
}

TermCore term_morrie(const ProductRequest& req, long k, long pw) {
  return from_value(
      complex_sin_cos(scale_pow(req.z, 2, k, pw), pw).cos, req.prec.bits,
      "cos(z 2^k)");
}

TermCore term_telescope(const ProductRequest& req, long k, long pw) {
  Complex sa = complex_sin_cos(scale_pow(req.z, req.q, k, pw), pw).sin;
  Complex sb = complex_sin_cos(scale_pow(req.z, req.q, k + 1, pw), pw).sin;
  return ratio_term_core(sa, sb, log(Real::of_long(req.q, pw)), req.prec.bits,
                         "sin(z q^k)", "csc(z q^(k+1))");
}

TermCore term_viete(const ProductRequest& req, long k, long pw) {
  return from_value(
      complex_sin_cos(ldexp2(req.z.round_to(pw), -k - 1), pw).cos,
      req.prec.bits, "cos(z 2^(-k-1))");
}

TermCore term_ratio(const ProductRequest& req, long k, long pw) {
  if (req.z.is_zero()) return unit_term(pw, true);
  Complex sa = complex_sin_cos(scale_pow(req.z, req.q, -k, pw), pw).sin;
  Complex sb = complex_sin_cos(scale_pow(req.z, req.q, -k - 1, pw), pw).sin;
  return ratio_term_core(sa, sb, -log(Real::of_long(req.q, pw)),
                         req.prec.bits, "sin(z q^(-k))", "csc(z q^(-k-1))");
}

TermCore term_cosine_sum(const ProductRequest& req, long k, long pw) {
  Complex base = scale_pow(req.z, 2 * req.q, -k - 1, pw);
  Complex acc = Complex::zero(pw);
  Real scale = Real::one(64);
  for (long j = 1; j <= req.q; ++j) {
    Complex c = complex_sin_cos(base * Real::of_long(2 * j - 1, pw), pw).cos;
    Real m = abs(c);
    if (m > scale) scale = m;
    acc = acc + c;
  }
  // A near-zero sum of larger summands has cancelled its accuracy away;
  // that is the pole of the matching csc form.
  if (abs(acc) < pole_guard_threshold(req.prec.bits) * scale)
    throw PoleProximityError("averaged cosine sum vanishes within the pole "
                             "guard",
                             -1, "cosine sum");
  TermCore tc{log(acc / req.q), std::nullopt, {}, 0};
  fill_value_hint(tc);
  return tc;
}

TermCore term_exp_tower_inf(const ProductRequest& req, long k) {
  if (req.z.is_zero()) return unit_term(work_bits(req.prec), true);
  const long q = req.q;
  const mpz_class qk = q_pow(q, k);
  const mpz_class qk1 = q_pow(q, k + 1);
  if (qk1 > exponent_cap())
    throw RangeCapError("exponent q^(k+1) exceeds the 2^96 cap at k=" +
                        std::to_string(k));
  const mpz_class e_base = qk * (k * (q - 1) + q);  // exponent of 1/q
  const mpz_class e_z = qk * (q - 1);               // exponent of z
  auto gen = [&](long pw) {
    Real lnq = log(Real::of_long(q, pw));
    std::vector<Complex> pieces;
    pieces.push_back(Complex::of(-mul_z(lnq, e_base)));
    pieces.push_back(mul_z(log(req.z.round_to(pw)), e_z));
    pieces.push_back(
        mul_z(detail::log_sin_at(scale_pow(req.z, q, -k, pw), pw, req.prec.bits),
              qk));
    pieces.push_back(-mul_z(
        detail::log_sin_at(scale_pow(req.z, q, -k - 1, pw), pw, req.prec.bits),
        qk1));
    return pieces;
  };
  TermCore tc = adaptive_log_sum(req.prec.bits, req.prec.bits + 24, gen);
  fill_value_hint(tc);
  return tc;
}

TermCore term_exp_tower_finite(const ProductRequest& req, long k) {
  const long q = req.q;
  if (req.z.is_zero())
    throw PoleProximityError("zero base for fractional power z^(...)", k, "z");
  const mpz_class qk = q_pow(q, k);
  const mpz_class qk1 = q_pow(q, k + 1);
  TermFlags warn;
  auto warn_branch = [&warn](const Complex& base, long pw) {
    if (abs(arg(base)) > half_pi(pw)) warn.set(TermFlag::BranchWarning);
  };
  auto gen = [&](long pw) {
    Real lnq = log(Real::of_long(q, pw));
    Real inv_qk = div_z(Real::one(pw), qk);
    Real inv_qk1 = div_z(Real::one(pw), qk1);
    Real e_q = Real::of_long(1 - k * (q - 1), pw) * inv_qk1;
    Real e_z = -(Real::of_long(q - 1, pw) * inv_qk1);
    SinCosPair a = complex_sin_cos(scale_pow(req.z, q, k, pw), pw);
    SinCosPair b = complex_sin_cos(scale_pow(req.z, q, k + 1, pw), pw);
    guard_vanishing(a.cos, req.prec.bits, "tan(z q^k)");
    guard_vanishing(a.sin, req.prec.bits, "tan(z q^k) zero");
    guard_vanishing(b.sin, req.prec.bits, "cot(z q^(k+1))");
    guard_vanishing(b.cos, req.prec.bits, "cot(z q^(k+1)) zero");
    Complex tan_a = a.sin / a.cos;
    Complex cot_b = b.cos / b.sin;
    Complex zz = req.z.round_to(pw);
    warn.bits = 0;
    warn_branch(zz, pw);
    warn_branch(a.cos, pw);
    warn_branch(tan_a, pw);
    warn_branch(cot_b, pw);
    std::vector<Complex> pieces;
    pieces.push_back(Complex::of(e_q * lnq));
    pieces.push_back(log(zz) * e_z);
    pieces.push_back(log(a.cos) * inv_qk);
    pieces.push_back(log(tan_a) * inv_qk);
    pieces.push_back(log(cot_b) * inv_qk1);
    return pieces;
  };
  TermCore tc = adaptive_log_sum(req.prec.bits, req.prec.bits + 24, gen);
  tc.flags.merge(warn);
  fill_value_hint(tc);
  return tc;
}

TermCore term_gamma(const ProductRequest& req, long k) {
  const long q = req.q;
  const mpz_class qk = q_pow(q, k);
  const mpz_class qk1 = q_pow(q, k + 1);
  auto gen = [&](long pw) {
    Real t = req.z.re().round_to(pw) / Real::pi(pw);
    Complex tz(t, req.z.im().round_to(pw) / Real::pi(pw));
    std::vector<Complex> pieces;
    for (long k1 = 1; k1 <= q; ++k1) {
      // Gamma arguments built from exact integers k1*q^k and q^(k+1),
      // combined with z/pi at working precision.
      mpz_class a = k1 * qk;
      Complex base = Complex::of(div_z(Real::of_mpz(mpz_class(k1), pw), mpz_class(q)));
      Complex lower = Complex(div_z(z_sub(a, tz.re()), qk1), div_z(-tz.im(), qk1));
      Complex upper = Complex(div_z(add_z(tz.re(), a), qk1), div_z(tz.im(), qk1));
      try {
        Complex g0 = detail::log_gamma_at(base, pw, req.prec.bits);
        pieces.push_back(g0 + g0);
        pieces.push_back(-detail::log_gamma_at(lower, pw, req.prec.bits));
        pieces.push_back(-detail::log_gamma_at(upper, pw, req.prec.bits));
      } catch (const PoleProximityError& e) {
        throw PoleProximityError(std::string(e.what()) + " (inner index k1=" +
                                     std::to_string(k1) + ")",
                                 k, "gamma factor k1=" + std::to_string(k1));
      }
    }
    return pieces;
  };
  TermCore tc = adaptive_log_sum(req.prec.bits, req.prec.bits + 24, gen);
  fill_value_hint(tc);
  return tc;
}

TermCore term_core(const ProductRequest& req, long k) {
  const long pw = work_bits(req.prec);
  try {
    switch (req.formula) {
      case FormulaId::MorrieClassic: return term_morrie(req, k, pw);
      case FormulaId::TelescopeFinite: return term_telescope(req, k, pw);
      case FormulaId::Viete: return term_viete(req, k, pw);
      case FormulaId::RatioInf: return term_ratio(req, k, pw);
      case FormulaId::CosineSumInf: return term_cosine_sum(req, k, pw);
      case FormulaId::ExpTowerInf: return term_exp_tower_inf(req, k);
      case FormulaId::ExpTowerFinite: return term_exp_tower_finite(req, k);
      case FormulaId::GammaInf: return term_gamma(req, k);
    }
  } catch (PoleProximityError& e) {
    throw PoleProximityError(
        std::string(e.what()) + " [term k=" + std::to_string(k) + "]", k,
        e.factor);
  }
  throw InvalidRequestError("unknown formula");
}

void check_term_index(const ProductRequest& req, long k) {
  if (is_finite_family(req.formula)) {
    if (k < req.m || k >= req.n)
      throw IndexOutOfRangeError("term index k=" + std::to_string(k) +
                                 " outside [m, n) = [" + std::to_string(req.m) +
                                 ", " + std::to_string(req.n) + ")");
  } else if (k < 0) {
    throw IndexOutOfRangeError("term index must be >= 0");
  }
}

TermValue pack_term(TermCore&& tc, long k, Precision prec) {
  TermValue tv{tc.log.round_to(prec.bits), std::nullopt, k, tc.flags,
               tc.retries};
  if (tc.value) tv.value_hint = tc.value->round_to(prec.bits);
  return tv;
}

}  // namespace

void validate(const ProductRequest& req) {
  validate_precision(req.prec);
  if (!req.z.is_finite())
    throw InvalidRequestError("argument z must be finite");
  if (req.q < 2) throw InvalidRequestError("base q must be >= 2");
  if (req.q > 1000000) throw RangeCapError("base q exceeds 10^6");
  if (req.formula == FormulaId::MorrieClassic && req.q != 2)
    throw InvalidRequestError(
        "the classic cosine-doubling product is defined for base q=2");
  if (is_finite_family(req.formula)) {
    if (req.m < 0 || req.n <= req.m)
      throw IndexOutOfRangeError(
          "finite products need 0 <= m < n (empty ranges are rejected); got m=" +
          std::to_string(req.m) + ", n=" + std::to_string(req.n));
    if (req.n > 96) throw RangeCapError("upper index n exceeds 96");
    mpz_class qn = q_pow(req.q, req.n);
    if (qn > exponent_cap())
      throw RangeCapError("q^n exceeds the 2^96 exponent cap");
    Real reach = mul_z(abs(req.z).round_to(64), qn);
    if (reach > Real::pow2(40, 64))
      throw RangeCapError("|z| q^n exceeds the 2^40 argument cap");
  } else {
    if (req.terms < 0)
      throw InvalidRequestError("truncation length must be >= 0");
    if (req.formula == FormulaId::ExpTowerInf) {
      if (req.terms > kMaxTowerTerms)
        throw RangeCapError("exponent-tower truncation capped at N <= " +
                            std::to_string(kMaxTowerTerms));
      if (q_pow(req.q, req.terms) > exponent_cap())
        throw RangeCapError("q^N exceeds the 2^96 exponent cap");
    } else if (req.terms > kMaxInfiniteTerms) {
      throw RangeCapError("truncation length capped at N <= " +
                          std::to_string(kMaxInfiniteTerms));
    }
  }
}

TermValue term(const ProductRequest& req, long k) {
  validate(req);
  check_term_index(req, k);
  return pack_term(term_core(req, k), k, req.prec);
}

TermValue exp_tower_term_literal(const ProductRequest& req, long k) {
  validate(req);
  if (req.formula != FormulaId::ExpTowerInf)
    throw UnsupportedFormulaError(
        "literal factor form exists only for the exponent-tower product");
  check_term_index(req, k);
  const long q = req.q;
  const long pw0 = work_bits(req.prec);
  if (req.z.is_zero()) return pack_term(unit_term(pw0, true), k, req.prec);
  const mpz_class qk = q_pow(q, k);
  const mpz_class qk1 = q_pow(q, k + 1);
  const mpz_class e_base = qk * (k * (q - 1) + q);
  const mpz_class e_z = qk * (q - 1);
  auto gen = [&](long pw) {
    Real lnq = log(Real::of_long(q, pw));
    SinCosPair inner = complex_sin_cos(scale_pow(req.z, q, -k - 1, pw), pw);
    SinCosPair outer = complex_sin_cos(scale_pow(req.z, q, -k, pw), pw);
    guard_vanishing(inner.cos, req.prec.bits, "tan(z q^(-k-1))");
    guard_vanishing(inner.sin, req.prec.bits, "tan(z q^(-k-1)) zero");
    guard_vanishing(outer.cos, req.prec.bits, "tan(z q^(-k))");
    guard_vanishing(outer.sin, req.prec.bits, "tan(z q^(-k)) zero");
    std::vector<Complex> pieces;
    pieces.push_back(Complex::of(-mul_z(lnq, e_base)));
    pieces.push_back(mul_z(log(req.z.round_to(pw)), e_z));
    pieces.push_back(-mul_z(log(inner.cos), qk1));
    pieces.push_back(mul_z(log(outer.cos), qk));
    pieces.push_back(-mul_z(log(inner.sin / inner.cos), qk1));
    pieces.push_back(mul_z(log(outer.sin / outer.cos), qk));
    return pieces;
  };
  TermCore tc = adaptive_log_sum(req.prec.bits, req.prec.bits + 24, gen);
  fill_value_hint(tc);
  return pack_term(std::move(tc), k, req.prec);
}

EvalResult partial_product(const ProductRequest& req) {
  validate(req);
  const long P = req.prec.bits;
  const long pw = work_bits(req.prec);
  const bool finite = is_finite_family(req.formula);
  const long k_begin = finite ? req.m : 0;
  const long k_end = finite ? req.n : req.terms;

  EvalResult res{Complex::one(P), Complex::zero(P), 0, std::nullopt, {}, 0};

  if (!finite && req.z.is_zero() &&
      (req.formula == FormulaId::RatioInf ||
       req.formula == FormulaId::ExpTowerInf)) {
    // Each factor degenerates to its sinc limit of 1.
    res.terms_used = k_end;
    res.flags.set(TermFlag::RangeEscape);
    res.est_remainder = Real::zero(P);
    return res;
  }

  Complex acc = Complex::zero(pw);
  for (long k = k_begin; k < k_end; ++k) {
    TermCore tc = term_core(req, k);
    acc = acc + tc.log.round_to(pw);
    res.flags.merge(tc.flags);
    res.precision_retries += tc.retries;
    ++res.terms_used;
  }
  Complex value = exp(acc);
  if (!value.is_finite())
    throw NumericRangeError("partial product escapes the floating range");
  res.value = value.round_to(P);
  res.log_value = acc.round_to(P);
  if (finite) {
    res.est_remainder = Real::zero(P);
  } else if (req.formula != FormulaId::GammaInf) {
    res.est_remainder = remainder_model(req.formula, req.z, req.q, req.terms);
  }
  // GammaInf: no certified remainder model; left unset.
  return res;
}

Complex finite_rhs(const ProductRequest& req) {
  validate(req);
  const long P = req.prec.bits;
  const long pw = work_bits(req.prec);
  if (req.formula == FormulaId::TelescopeFinite) {
    Complex sm = complex_sin_cos(scale_pow(req.z, req.q, req.m, pw), pw).sin;
    Complex sn = complex_sin_cos(scale_pow(req.z, req.q, req.n, pw), pw).sin;
    guard_vanishing(sn, P, "csc(z q^n)");
    guard_vanishing(sm, P, "sin(z q^m)");
    Complex v = mul_z(sm / sn, q_pow(req.q, req.n - req.m));
    if (!v.is_finite())
      throw NumericRangeError("finite_rhs escapes the floating range");
    return v.round_to(P);
  }
  if (req.formula != FormulaId::ExpTowerFinite)
    throw UnsupportedFormulaError(
        "finite_rhs is defined for the finite telescoping and finite "
        "exponent-tower families only");
  if (req.z.is_zero())
    throw PoleProximityError("zero base for fractional power z^(...)", -1, "z");
  const long q = req.q;
  const mpz_class qm = q_pow(q, req.m);
  const mpz_class qn = q_pow(q, req.n);
  auto gen = [&](long pw2) {
    Real lnq = log(Real::of_long(q, pw2));
    Real inv_qm = div_z(Real::one(pw2), qm);
    Real inv_qn = div_z(Real::one(pw2), qn);
    Real e_q = Real::of_long(req.n, pw2) * inv_qn -
               Real::of_long(req.m, pw2) * inv_qm;
    Real e_z = inv_qn - inv_qm;
    SinCosPair a = complex_sin_cos(scale_pow(req.z, q, req.m, pw2), pw2);
    SinCosPair b = complex_sin_cos(scale_pow(req.z, q, req.n, pw2), pw2);
    guard_vanishing(a.cos, P, "tan(z q^m)");
    guard_vanishing(a.sin, P, "tan(z q^m) zero");
    guard_vanishing(b.sin, P, "cot(z q^n)");
    guard_vanishing(b.cos, P, "cot(z q^n) zero / cos(z q^n)");
    Complex tan_a = a.sin / a.cos;
    Complex cot_b = b.cos / b.sin;
    std::vector<Complex> pieces;
    pieces.push_back(Complex::of(e_q * lnq));
    pieces.push_back(log(req.z.round_to(pw2)) * e_z);
    pieces.push_back(log(a.cos) * inv_qm);
    pieces.push_back(log(tan_a) * inv_qm);
    pieces.push_back(log(b.cos) * (-inv_qn));
    pieces.push_back(log(cot_b) * inv_qn);
    return pieces;
  };
  TermCore tc = adaptive_log_sum(P, P + 24, gen);
  Complex v = exp(tc.log);
  if (!v.is_finite())
    throw NumericRangeError("finite_rhs escapes the floating range");
  return v.round_to(P);
}

Complex oracle_partial(const ProductRequest& req) {
  validate(req);
  const long P = req.prec.bits;
  const long pw = work_bits(req.prec);
  switch (req.formula) {
    case FormulaId::TelescopeFinite:
      return finite_rhs(req);
    case FormulaId::Viete:
    case FormulaId::RatioInf:
    case FormulaId::CosineSumInf: {
      // sin(z) / (b^N sin(z b^-N)) == sinc(z) / sinc(z b^-N); the sinc form
      // stays regular as the tail argument shrinks toward zero.
      if (req.terms == 0 || req.z.is_zero()) return Complex::one(P);
      const long b = req.formula == FormulaId::Viete ? 2
                     : req.formula == FormulaId::RatioInf ? req.q
                                                          : 2 * req.q;
      Complex s_full = sinc_ref(req.z, Precision{pw});
      Complex s_tail =
          sinc_ref(scale_pow(req.z, b, -req.terms, pw), Precision{pw});
      return (s_full / s_tail).round_to(P);
    }
    case FormulaId::ExpTowerInf: {
      if (req.terms == 0) return Complex::one(P);
      if (req.z.is_zero()) return Complex::one(P);
      const mpz_class qN = q_pow(req.q, req.terms);
      // (x / sin x)^(q^N) = exp(-q^N log sinc(x)); the integer exponent
      // amplifies the absolute error of the bracket, so it is evaluated
      // with that many extra bits.
      const long amp = static_cast<long>(mpz_sizeinbase(qN.get_mpz_t(), 2));
      const long pw2 = P + amp + 48;
      Complex x = scale_pow(req.z, req.q, -req.terms, pw2);
      Complex bracket = -log(sinc_ref(x, Precision{pw2}));
      Complex v = exp(mul_z(bracket, qN)) *
                  sinc_ref(req.z, Precision{pw2}).round_to(pw2);
      if (!v.is_finite())
        throw NumericRangeError("oracle escapes the floating range");
      return v.round_to(P);
    }
    default:
      throw UnsupportedFormulaError(
          std::string("no bundled telescoped oracle for ") +
          formula_flag(req.formula));
  }
}

}  // namespace trigprod
