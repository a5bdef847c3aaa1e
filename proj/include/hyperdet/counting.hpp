#pragma once

// The counting routes for nondegenerate hypermatrices respecting a shape P:
// direct enumeration, the group-action orbit of E, the augmented-cell
// polynomial f(q), and the closed-form product it is compared against. Also
// the classical (two-dimensional) rook and matrix counts used as oracles.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperdet/gf.hpp"
#include "hyperdet/permcells.hpp"
#include "hyperdet/qpoly.hpp"
#include "hyperdet/shapes.hpp"

namespace hyperdet {

struct Budgets {
  std::uint64_t brute = std::uint64_t{1} << 28;   // assignments
  std::uint64_t action = std::uint64_t{1} << 32;  // |GL_{k+1}| * |GL_k|
  int cells_max_k = kMaxFormatK;
};

/// Parses "brute=2^30,action=1000000,cells=5" on top of `base`.
Budgets parse_budget_override(std::string_view text, Budgets base = {});
/// Applies HYPERDET_BUDGET_OVERRIDE when set.
Budgets budgets_from_env(Budgets base = {});

struct Conjectured {
  QPolynomial f_product;  // product of q-integers
  QPolynomial full;       // prefactor(k) * f_product
};

/// [k+1-lambda_1] ... [2-lambda_k] * [k-mu_1] ... [1-mu_k], with [n]_q = 0 for n <= 0.
Conjectured conjectured_polynomial(const PlanePartition& P);

/// Shapes where equality with the product is known: mu empty, P the
/// staircase, or k <= 2.
bool is_proved_family(const PlanePartition& P);

/// Counts nondegenerate hypermatrices respecting P by visiting every
/// assignment of the cells outside P. Result does not depend on `jobs`.
std::uint64_t brute_force_count(const PlanePartition& P, const FieldPtr& field, int jobs = 1,
                                std::uint64_t budget = Budgets{}.brute);

/// |{(g1, g2) : (g1, g2) o E respects P}| / (q - 1). Throws NonDivisibleCount
/// if the division is not exact.
std::uint64_t action_count(const PlanePartition& P, const FieldPtr& field, int jobs = 1,
                           std::uint64_t budget = Budgets{}.action);
/// Same quantity without pruning: applies act() to E for every pair.
std::uint64_t action_count_literal(const PlanePartition& P, const FieldPtr& field,
                                   std::uint64_t budget = std::uint64_t{1} << 22);

/// f(q) = sum over hyperrook-respecting (sigma, pi) of q^(|Inv sigma| + |Inv pi| - h).
QPolynomial cell_polynomial(const PlanePartition& P, int jobs = 1, int max_k = Budgets{}.cells_max_k);
/// f(q) for many shapes of one k in a single pass over the pairs.
std::vector<QPolynomial> cell_polynomials(int k, const std::vector<PlanePartition>& shapes, int jobs = 1,
                                          int max_k = Budgets{}.cells_max_k);
/// The same sum computed from the symbolic augmented hypermatrices (slow).
QPolynomial cell_polynomial_symbolic(const PlanePartition& P);

enum class Method { Brute, Action, Cells };
const char* to_string(Method m) noexcept;
Method parse_method(std::string_view text);

struct MethodResult {
  int q;
  Method method;
  BigInt count;
  double seconds = 0.0;
};

struct ComparisonFlags {
  std::optional<bool> cells_vs_brute;
  std::optional<bool> cells_vs_action;
  bool poly_vs_conjecture = false;
  bool f1_vs_hyperrook = false;
};

struct CountReport {
  PlanePartition shape;
  std::vector<MethodResult> results;
  std::vector<std::string> skipped;  // "q=3 brute: budget" style notes
  QPolynomial f_poly;
  Conjectured conjectured;
  std::uint64_t hyperrook = 0;
  ComparisonFlags flags;
  bool proved_family = false;
  double cells_seconds = 0.0;

  /// A disagreement between two computed counts, or with f(1): always a bug.
  bool internal_mismatch() const;
  /// f differs from the product on a shape where equality is proved.
  bool proved_failure() const { return proved_family && !flags.poly_vs_conjecture; }
  /// f differs from the product on a conjectural shape.
  bool finding() const { return !proved_family && !flags.poly_vs_conjecture; }
};

struct VerifyOptions {
  std::vector<FieldPtr> fields;
  std::vector<Method> methods;  // Cells is always computed
  Budgets budgets;
  int jobs = 1;
  /// Record over-budget methods in `skipped` instead of throwing.
  bool skip_over_budget = false;
  /// Reuse an already computed f(q) (sweeps compute all shapes at once).
  const QPolynomial* precomputed_f = nullptr;
};

CountReport verify_conjecture(const PlanePartition& P, const VerifyOptions& options);

// ---------------------------------------------------------------- classical oracles

/// (n - lambda_1)(n - 1 - lambda_2) ... (1 - lambda_n); 0 if a factor is <= 0.
std::uint64_t classical_rook_count(const IntegerPartition& lam);
/// Direct count of permutations avoiding the forced-zero region of lambda.
std::uint64_t classical_rook_count_brute(const IntegerPartition& lam);
/// q^C(n,2) (q-1)^n [n - lambda_1]_q ... [1 - lambda_n]_q
QPolynomial classical_matrix_polynomial(const IntegerPartition& lam);
/// Direct count of invertible n x n matrices with a_{ij} = 0 for i > n - lambda_j.
std::uint64_t classical_matrix_count(const IntegerPartition& lam, const FieldPtr& field,
                                     std::uint64_t budget = Budgets{}.brute);

/// For every lambda of length k with lambda_i <= k+1-i, the q-integer products
/// over lambda and its transpose agree.
bool transposition_identity_check(int k);

struct MaxShapeResult {
  bool holds = false;
  std::uint64_t staircase_count = 0;
  std::vector<std::pair<PlanePartition, std::uint64_t>> extensions;
};

/// The staircase admits nondegenerate hypermatrices and every one-cell growth of it does not.
MaxShapeResult max_shape_check(int k, const FieldPtr& field, int jobs = 1, std::uint64_t budget = Budgets{}.brute);

}  // namespace hyperdet
