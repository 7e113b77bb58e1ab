// Grid-sweep certification of the product identities, termwise cross-family
// checks, and the nested-radical argument table. Verdicts encode epistemic
// status: proved identities may fail hard, unproved ones only yield
// findings. Point ordering is fixed (re, then im, then q, then indices) so
// reports are deterministic.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trigprod/convergence.hpp"
#include "trigprod/gamma_product.hpp"

namespace trigprod {

struct GridSpec {
  Real re_min = Real::of_long(-3, kDefaultPrecisionBits);
  Real re_max = Real::of_long(3, kDefaultPrecisionBits);
  long re_count = 13;
  Real im_min = Real::of_long(-3, kDefaultPrecisionBits);
  Real im_max = Real::of_long(3, kDefaultPrecisionBits);
  long im_count = 13;
  std::vector<long> q_set = {2, 3, 4, 5};
  std::vector<std::pair<long, long>> mn_set = {{0, 3}, {1, 4}, {2, 5}};
  std::vector<long> n_set;  // infinite families: explicit N; empty = auto
};
void validate_grid(const GridSpec& grid);

struct PointRef {
  Complex z = Complex::zero(kDefaultPrecisionBits);
  long q = 2;
  long m = -1, n = -1;  // finite families
  long terms = -1;      // infinite families
  long k = -1;          // crosscheck term index
};

struct PointResidual {
  PointRef at;
  Real residual = Real::zero(kDefaultPrecisionBits);
};

struct SkipRecord {
  PointRef at;
  std::string reason;
};

enum class Verdict { Pass, Fail, Finding };
const char* verdict_name(Verdict v);

struct VerificationReport {
  FormulaId formula = FormulaId::TelescopeFinite;
  std::optional<FormulaId> crosscheck_with;
  long points_tested = 0;
  long points_skipped = 0;
  Real max_rel_residual = Real::zero(kDefaultPrecisionBits);
  PointResidual worst;
  std::vector<PointResidual> per_point;  // filled when detail requested
  std::vector<SkipRecord> skips;
  Verdict verdict = Verdict::Finding;
  Real tol = Real::zero(kDefaultPrecisionBits);
};

// Residual per grid point: |LHS/RHS - 1| for the finite identities,
// |P_N / sinc(z) - 1| for the infinite ones (N from run_to_tolerance when
// grid.n_set is empty). Per-point failures become skips, never errors.
VerificationReport verify_identity(FormulaId formula, const GridSpec& grid,
                                   const Real& tol, Precision prec,
                                   bool per_point_detail = false);

// Termwise |term_a / term_b - 1| over the grid and k = 0..k_max.
// Supported pairs: (CosineSumInf, RatioInf at base 2q) and
// (GammaInf, RatioInf).
VerificationReport crosscheck_terms(FormulaId a, FormulaId b,
                                    const GridSpec& grid, long k_max,
                                    const Real& tol, Precision prec,
                                    bool per_point_detail = false);

struct Example1Z {
  Complex z = Complex::zero(kDefaultPrecisionBits);
  std::string note;  // exact radical form for small n
};
// z_n = 2n sin(pi/(2n)) / pi for n >= 2.
Example1Z example1_z(long n, Precision prec);

struct Example1Row {
  long n = 2;
  Example1Z arg;
  EvalResult product;
  Complex sinc = Complex::one(kDefaultPrecisionBits);
  Real residual = Real::zero(kDefaultPrecisionBits);
};
// Evaluate the chosen infinite product (base 2) at z_n and compare with the
// sinc reference.
Example1Row example1_row(long n, FormulaId formula, long N, Precision prec);

}  // namespace trigprod
