// Term generators and partial-product evaluators for the eight product
// families, plus the independently telescoped closed forms used as oracles.
// Products accumulate sums of principal-branch term logs; the imaginary part
// is left unreduced until exponentiation, and the exponent-tower families
// keep their integer exponents exact (GMP) with an adaptive working
// precision that absorbs the cancellation they cause.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "trigprod/numerics.hpp"

namespace trigprod {

enum class FormulaId {
  MorrieClassic,   // finite cosine-doubling product, base 2
  TelescopeFinite, // q sin(z q^k) csc(z q^k+1) over k = m..n-1
  Viete,           // infinite cosine-halving product -> sinc(z)
  ExpTowerInf,     // exponent-tower infinite product -> sinc(z)
  RatioInf,        // sin(z q^-k) csc(z q^-k-1) / q -> sinc(z)
  CosineSumInf,    // averaged cosine sums, base 2q -> sinc(z)
  GammaInf,        // doubly indexed gamma-ratio product (unproved target)
  ExpTowerFinite,  // finite exponent-tower with fractional powers
};

bool is_finite_family(FormulaId f);
// CLI identifiers: eq1, eq3, eq2, eq8, eq9, eq10, eq11, eq12.
const char* formula_flag(FormulaId f);
std::optional<FormulaId> formula_from_flag(const std::string& flag);

struct ProductRequest {
  FormulaId formula = FormulaId::Viete;
  Complex z = Complex::zero(kDefaultPrecisionBits);
  long q = 2;
  long m = 0;      // finite families: lower index (inclusive)
  long n = 0;      // finite families: upper index (exclusive factor bound)
  long terms = 0;  // infinite families: truncation length N >= 0
  Precision prec{};
};

// Throws InvalidRequestError / IndexOutOfRangeError / RangeCapError.
void validate(const ProductRequest& req);

// Index caps: exact exponents q^k stay below 2^96 and tower truncations
// below 48 terms; see validate().
inline constexpr long kMaxTowerTerms = 48;
inline constexpr long kMaxExponentBits = 96;
inline constexpr long kMaxInfiniteTerms = 4096;

enum class TermFlag : unsigned {
  PoleSkip = 1u,
  BranchWarning = 2u,
  RangeEscape = 4u,
};

struct TermFlags {
  unsigned bits = 0;
  void set(TermFlag f) { bits |= static_cast<unsigned>(f); }
  bool has(TermFlag f) const { return bits & static_cast<unsigned>(f); }
  void merge(TermFlags o) { bits |= o.bits; }
  bool empty() const { return bits == 0; }
};
std::string flags_to_string(TermFlags flags);

struct TermValue {
  // principal-branch log of the factor
  Complex log_value = Complex::zero(kDefaultPrecisionBits);
  std::optional<Complex> value_hint;  // direct value, when within range
  long k = 0;
  TermFlags flags;
  int precision_retries = 0;
};

struct EvalResult {
  Complex value = Complex::one(kDefaultPrecisionBits);
  // unreduced accumulated log
  Complex log_value = Complex::zero(kDefaultPrecisionBits);
  long terms_used = 0;
  std::optional<Real> est_remainder;  // model bound, infinite families only
  TermFlags flags;
  int precision_retries = 0;
};

// The k-th factor of the requested product. Finite families accept
// k in [m, n); infinite families any k >= 0.
TermValue term(const ProductRequest& req, long k);

// Diagnostic: the exponent-tower infinite factor with every sub-factor
// kept separate (no cos*tan fusion); integer exponents exact.
TermValue exp_tower_term_literal(const ProductRequest& req, long k);

// Product of term() over the request's index range, accumulated in log
// space. PoleProximityError reports the failing k.
EvalResult partial_product(const ProductRequest& req);

// Closed-form right-hand side for the two finite identities, evaluated
// factor-by-factor under the same principal-branch policy as term().
Complex finite_rhs(const ProductRequest& req);

// Independently telescoped N-term (or m..n) closed form:
//   Viete / RatioInf:  sin(z) / (b^N sin(z b^-N)),  b = 2 / q
//   CosineSumInf:      the same with b = 2q
//   ExpTowerInf:       sinc(z) * (z q^-N / sin(z q^-N))^(q^N)
//   TelescopeFinite:   the finite RHS
// GammaInf / ExpTowerFinite / MorrieClassic have no bundled oracle.
Complex oracle_partial(const ProductRequest& req);

}  // namespace trigprod
