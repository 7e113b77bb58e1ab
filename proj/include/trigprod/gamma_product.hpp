// The doubly indexed gamma-ratio product and its empirical certification
// against the sine-ratio terms and the sinc limit. The target identity is
// stated without proof, so agreement is measured and reported, never
// assumed: disagreement surfaces as a finding, not an evaluation error.
#pragma once

#include <vector>

#include "trigprod/product_core.hpp"

namespace trigprod {

struct GammaTermBreakdown {
  long k = 0;
  std::vector<Complex> inner_factors;  // one per inner index k1 = 1..q
  Complex product = Complex::one(kDefaultPrecisionBits);
  Complex matched_ratio_term = Complex::one(kDefaultPrecisionBits);
  Real term_residual = Real::zero(kDefaultPrecisionBits);  // |product/ratio - 1|
  TermFlags flags;
};

// The inner product over k1 at outer index k, with the same-k sine-ratio
// term attached for cross-certification.
GammaTermBreakdown gamma_inner(const Complex& z, long q, long k,
                               Precision prec);

// Product of gamma_inner values for k = 0..N-1. The remainder model is not
// certified for this family, so est_remainder stays unset.
EvalResult gamma_partial(const Complex& z, long q, long N, Precision prec);

}  // namespace trigprod
