#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hyperdet/gf.hpp"

namespace hyperdet {

/// Dense row-major matrix over a small finite field. Indices are 0-based.
class Matrix {
 public:
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);
  Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Element> entries);

  static Matrix identity(FieldPtr field, std::size_t n);
  /// Builds from nested integer lists of field indices (handy in tests and JSON).
  static Matrix from_rows(FieldPtr field, const std::vector<std::vector<int>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const FieldPtr& field() const noexcept { return field_; }

  Element operator()(std::size_t r, std::size_t c) const noexcept { return entries_[r * cols_ + c]; }
  Element& operator()(std::size_t r, std::size_t c) noexcept { return entries_[r * cols_ + c]; }
  Element at(std::size_t r, std::size_t c) const;

  std::span<const Element> entries() const noexcept { return entries_; }
  std::span<const Element> row(std::size_t r) const noexcept { return {entries_.data() + r * cols_, cols_}; }
  std::vector<std::vector<int>> to_rows() const;

  bool is_zero() const noexcept;
  bool is_upper_triangular() const noexcept;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  FieldPtr field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> entries_;
};

std::ostream& operator<<(std::ostream& os, const Matrix& m);

/// Permutation of [n] in one-line notation with 1-based images.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// The long cycle (1 2 ... n).
  static Permutation long_cycle(int n);
  /// Builds a permutation of [n] from a single cycle (a1 a2 ... ar).
  static Permutation from_cycle(int n, const std::vector<int>& cycle);
  /// Accepts "4213" (digits, n <= 9) or a comma-separated list "10,2,...".
  static Permutation parse(std::string_view text);

  int size() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int i) const noexcept { return images_[i - 1]; }
  const std::vector<int>& images() const noexcept { return images_; }

  Permutation inverse() const;
  std::vector<std::vector<int>> cycles() const;
  bool is_full_cycle() const;

  /// One-line notation; digits are concatenated when n <= 9.
  std::string to_string() const;
  std::string to_cycle_string() const;

  /// (a * b)(i) = a(b(i)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// All permutations of [n] in lexicographic order of their one-line words.
std::vector<Permutation> all_permutations(int n);

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);
/// (m_sigma)_{i,j} = 1 exactly when i = sigma(j).
Matrix permutation_matrix(const Permutation& sigma, FieldPtr field);
std::size_t rank(const Matrix& m);
Matrix inverse(const Matrix& m);
/// a * A + b * B for matrices of equal shape.
Matrix linear_combination(Element a, const Matrix& A, Element b, const Matrix& B);

/// Univariate polynomial over F_q, lowest degree first, trimmed.
class Polynomial {
 public:
  explicit Polynomial(FieldPtr field, std::vector<Element> coefficients = {});

  const FieldPtr& field() const noexcept { return field_; }
  const std::vector<Element>& coefficients() const noexcept { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  Element leading() const noexcept { return coeffs_.empty() ? Element{0} : coeffs_.back(); }
  Element coefficient(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : Element{0}; }
  Element evaluate(Element t) const noexcept;
  Polynomial monic() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  std::string to_string(char var = 'x') const;

 private:
  void trim() noexcept;

  FieldPtr field_;
  std::vector<Element> coeffs_;
};

struct PolyDivision {
  Polynomial quotient;
  Polynomial remainder;
};

PolyDivision divmod(const Polynomial& f, const Polynomial& g);
/// Monic gcd via Euclid. gcd(0, 0) is the zero polynomial.
Polynomial poly_gcd(const Polynomial& f, const Polynomial& g);

/// M = upper * cell with upper invertible upper triangular and cell in the
/// SE w-augmented pattern: 1 at (w(i), i), free entries only at (w(i), j)
/// for inversions (i, j) of w.
struct BruhatFactor {
  Permutation w;
  Matrix upper;
  Matrix cell;
};

BruhatFactor bruhat_factorize(const Matrix& m);

/// True when cell has exactly the SE w-augmented support pattern.
bool matches_se_pattern(const Matrix& cell, const Permutation& w);

/// |GL_n(F_q)|; saturates at UINT64_MAX.
std::uint64_t gl_order(int n, int q) noexcept;

inline constexpr std::uint64_t kDefaultGlBudget = std::uint64_t{1} << 32;

/// Row-by-row enumeration of invertible n x n matrices. Each row is drawn from
/// the vectors outside the span of the rows above it, in lexicographic order,
/// so nothing is ever rejected for singularity. An optional row filter prunes
/// partial matrices (the filter sees the 0-based row index and the candidate);
/// with no filter every element of GL_n is visited exactly once.
class InvertibleEnumerator {
 public:
  using RowFilter = std::function<bool(std::size_t row, std::span<const Element> candidate)>;
  using Visitor = std::function<void(std::span<const Element> entries)>;

  InvertibleEnumerator(std::size_t n, FieldPtr field, std::uint64_t budget = kDefaultGlBudget);

  std::size_t n() const noexcept { return n_; }
  /// Number of choices for the first row (q^n - 1); shards split this range.
  std::uint64_t first_row_choices() const noexcept;

  void for_each(const Visitor& visit, const RowFilter& filter = {}) const;
  /// Visits only first-row choices in [begin, end).
  void for_each_range(std::uint64_t begin, std::uint64_t end, const Visitor& visit,
                      const RowFilter& filter = {}) const;

 private:
  std::size_t n_;
  FieldPtr field_;
};

/// Materializes GL_n(F_q); throws BudgetExceeded when |GL_n| > budget.
std::vector<Matrix> gl_enumerate(int n, const FieldPtr& field, std::uint64_t budget = 1u << 20);

}  // namespace hyperdet
