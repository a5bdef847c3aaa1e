#include "hyperdet/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hyperdet/errors.hpp"

namespace hyperdet {

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols, 0) {
  if (!field_) throw Error(Errc::InvalidArgument, "null field");
}

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols, std::vector<Element> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (!field_) throw Error(Errc::InvalidArgument, "null field");
  if (entries_.size() != rows * cols) throw Error(Errc::DimensionMismatch, "entry count does not match shape");
  for (Element e : entries_)
    if (e >= field_->size()) throw Error(Errc::InvalidArgument, "entry outside " + field_->name());
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(FieldPtr field, const std::vector<std::vector<int>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  std::vector<Element> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(Errc::DimensionMismatch, "ragged matrix rows");
    for (int v : row) {
      if (v < 0 || v >= field->size()) throw Error(Errc::InvalidArgument, "entry outside " + field->name());
      entries.push_back(static_cast<Element>(v));
    }
  }
  return Matrix(std::move(field), r, c, std::move(entries));
}

Element Matrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw Error(Errc::IndexOutOfRange, "matrix index out of range");
  return (*this)(r, c);
}

std::vector<std::vector<int>> Matrix::to_rows() const {
  std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r][c] = (*this)(r, c);
  return out;
}

bool Matrix::is_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](Element e) { return e == 0; });
}

bool Matrix::is_upper_triangular() const noexcept {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < std::min(r, cols_); ++c)
      if ((*this)(r, c) != 0) return false;
  return true;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_ &&
         (a.field_ == b.field_ || *a.field_ == *b.field_);
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << "; ";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << m.field()->format(m(r, c));
    }
  }
  return os << ']';
}

namespace {

void require_same_field(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field() && !(*a.field() == *b.field()))
    throw Error(Errc::FieldMismatch, a.field()->name() + " vs " + b.field()->name());
}

}  // namespace

Matrix matmul(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.cols() != b.rows()) throw Error(Errc::DimensionMismatch, "matmul inner dimensions differ");
  const Field& f = *a.field();
  Matrix out(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const Element x = a(i, l);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = f.add(out(i, j), f.mul(x, b(l, j)));
    }
  }
  return out;
}

Matrix transpose(const Matrix& m) {
  Matrix out(m.field(), m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(c, r) = m(r, c);
  return out;
}

Matrix permutation_matrix(const Permutation& sigma, FieldPtr field) {
  const auto n = static_cast<std::size_t>(sigma.size());
  Matrix out(std::move(field), n, n);
  for (int j = 1; j <= sigma.size(); ++j) out(sigma(j) - 1, j - 1) = 1;
  return out;
}

namespace {

// In-place row reduction; returns the pivot column of each pivot row in order.
std::vector<std::size_t> row_reduce(Matrix& m) {
  const Field& f = *m.field();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
    const Element scale = f.inv(m(row, col));
    for (std::size_t c = 0; c < m.cols(); ++c) m(row, c) = f.mul(m(row, c), scale);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Element factor = m(r, col);
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = f.sub(m(r, c), f.mul(factor, m(row, c)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const Matrix& m) {
  Matrix work = m;
  return row_reduce(work).size();
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  const auto pivots = row_reduce(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw Error(Errc::SingularMatrix, "matrix is not invertible");
  Matrix out(m.field(), n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(r, c) = aug(r, n + c);
  return out;
}

Matrix linear_combination(Element a, const Matrix& A, Element b, const Matrix& B) {
  require_same_field(A, B);
  if (A.rows() != B.rows() || A.cols() != B.cols()) throw Error(Errc::DimensionMismatch, "shapes differ");
  const Field& f = *A.field();
  Matrix out(A.field(), A.rows(), A.cols());
  for (std::size_t r = 0; r < A.rows(); ++r)
    for (std::size_t c = 0; c < A.cols(); ++c) out(r, c) = f.add(f.mul(a, A(r, c)), f.mul(b, B(r, c)));
  return out;
}

// ---------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size() + 1, false);
  for (int v : images_) {
    if (v < 1 || v > static_cast<int>(images_.size()) || seen[v])
      throw Error(Errc::InvalidArgument, "not a permutation: " + to_string());
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  return Permutation(std::move(img));
}

Permutation Permutation::long_cycle(int n) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = (i + 1) % n + 1;
  return Permutation(std::move(img));
}

Permutation Permutation::from_cycle(int n, const std::vector<int>& cycle) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const int from = cycle[i];
    if (from < 1 || from > n) throw Error(Errc::InvalidArgument, "cycle entry out of range");
    img[from - 1] = cycle[(i + 1) % cycle.size()];
  }
  return Permutation(std::move(img));
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<int> img;
  if (text.find(',') == std::string_view::npos) {
    for (char ch : text) {
      if (ch < '1' || ch > '9') throw Error(Errc::InvalidArgument, "bad permutation '" + std::string(text) + "'");
      img.push_back(ch - '0');
    }
  } else {
    std::string s(text);
    std::stringstream ss(s);
    std::string token;
    while (std::getline(ss, token, ',')) {
      try {
        img.push_back(std::stoi(token));
      } catch (const std::exception&) {
        throw Error(Errc::InvalidArgument, "bad permutation '" + s + "'");
      }
    }
  }
  if (img.empty()) throw Error(Errc::InvalidArgument, "empty permutation");
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<int> img(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) img[images_[i] - 1] = static_cast<int>(i) + 1;
  return Permutation(std::move(img));
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(images_.size() + 1, false);
  for (int start = 1; start <= size(); ++start) {
    if (seen[start]) continue;
    std::vector<int> cyc;
    for (int x = start; !seen[x]; x = (*this)(x)) {
      seen[x] = true;
      cyc.push_back(x);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

bool Permutation::is_full_cycle() const { return size() >= 1 && cycles().size() == 1; }

std::string Permutation::to_string() const {
  std::ostringstream os;
  const bool compact = images_.size() <= 9;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (!compact && i) os << ',';
    os << images_[i];
  }
  return os.str();
}

std::string Permutation::to_cycle_string() const {
  std::ostringstream os;
  for (const auto& cyc : cycles()) {
    os << '(';
    for (std::size_t i = 0; i < cyc.size(); ++i) os << (i ? " " : "") << cyc[i];
    os << ')';
  }
  return os.str();
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw Error(Errc::SizeMismatch, "composing permutations of different sizes");
  std::vector<int> img(a.images_.size());
  for (int i = 1; i <= a.size(); ++i) img[i - 1] = a(b(i));
  return Permutation(std::move(img));
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> img(n);
  std::iota(img.begin(), img.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(FieldPtr field, std::vector<Element> coefficients)
    : field_(std::move(field)), coeffs_(std::move(coefficients)) {
  if (!field_) throw Error(Errc::InvalidArgument, "null field");
  trim();
}

void Polynomial::trim() noexcept {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Element Polynomial::evaluate(Element t) const noexcept {
  Element acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = field_->add(field_->mul(acc, t), *it);
  return acc;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  const Element s = field_->inv(leading());
  std::vector<Element> c(coeffs_);
  for (auto& x : c) x = field_->mul(x, s);
  return Polynomial(field_, std::move(c));
}

namespace {

const FieldPtr& poly_field(const Polynomial& a, const Polynomial& b) {
  if (a.field() != b.field() && !(*a.field() == *b.field()))
    throw Error(Errc::FieldMismatch, a.field()->name() + " vs " + b.field()->name());
  return a.field();
}

}  // namespace

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  const FieldPtr& f = poly_field(a, b);
  std::vector<Element> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f->add(a.coefficient(i), b.coefficient(i));
  return Polynomial(f, std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  const FieldPtr& f = poly_field(a, b);
  std::vector<Element> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f->sub(a.coefficient(i), b.coefficient(i));
  return Polynomial(f, std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  const FieldPtr& f = poly_field(a, b);
  if (a.is_zero() || b.is_zero()) return Polynomial(f);
  std::vector<Element> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] = f->add(c[i + j], f->mul(a.coeffs_[i], b.coeffs_[j]));
  return Polynomial(f, std::move(c));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.coeffs_ == b.coeffs_ && (a.field_ == b.field_ || *a.field_ == *b.field_);
}

std::string Polynomial::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Element c = coeffs_[i];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    const bool show_coeff = c != 1 || i == 0;
    if (show_coeff) {
      const std::string s = field_->format(c);
      os << (field_->is_prime_field() || i == 0 ? s : "(" + s + ")");
    }
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

PolyDivision divmod(const Polynomial& f, const Polynomial& g) {
  const FieldPtr& field = poly_field(f, g);
  if (g.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  std::vector<Element> rem(f.coefficients());
  const int dg = g.degree();
  std::vector<Element> quot(std::max(0, f.degree() - dg + 1), 0);
  const Element lead_inv = field->inv(g.leading());
  for (int d = static_cast<int>(rem.size()) - 1; d >= dg; --d) {
    if (rem[d] == 0) continue;
    const Element factor = field->mul(rem[d], lead_inv);
    quot[d - dg] = factor;
    for (int i = 0; i <= dg; ++i) rem[d - dg + i] = field->sub(rem[d - dg + i], field->mul(factor, g.coefficient(i)));
  }
  return {Polynomial(field, std::move(quot)), Polynomial(field, std::move(rem))};
}

Polynomial poly_gcd(const Polynomial& f, const Polynomial& g) {
  poly_field(f, g);
  Polynomial a = f;
  Polynomial b = g;
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// ---------------------------------------------------------------- Bruhat

BruhatFactor bruhat_factorize(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(Errc::DimensionMismatch, "Bruhat factorization needs a square matrix");
  const Field& f = *m.field();
  const std::size_t n = m.rows();
  Matrix cell = m;
  std::vector<bool> used(n, false);
  std::vector<int> w(n);
  // Column by column, the pivot is the lowest nonzero entry among rows not yet
  // used; everything above it in that column is cleared with row operations
  // that add multiples of a lower row to a higher one. Those operations (and
  // the row scaling) are upper triangular, so the accumulated transform is too.
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t r = n; r-- > 0;) {
      if (!used[r] && cell(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == n) throw Error(Errc::SingularMatrix, "matrix is not invertible");
    const Element scale = f.inv(cell(pivot, col));
    for (std::size_t c = 0; c < n; ++c) cell(pivot, c) = f.mul(cell(pivot, c), scale);
    for (std::size_t r = 0; r < pivot; ++r) {
      const Element factor = cell(r, col);
      if (factor == 0) continue;
      for (std::size_t c = 0; c < n; ++c) cell(r, c) = f.sub(cell(r, c), f.mul(factor, cell(pivot, c)));
    }
    used[pivot] = true;
    w[col] = static_cast<int>(pivot) + 1;
  }
  Matrix upper = matmul(m, inverse(cell));
  return {Permutation(std::move(w)), std::move(upper), std::move(cell)};
}

bool matches_se_pattern(const Matrix& cell, const Permutation& w) {
  const int n = w.size();
  if (cell.rows() != static_cast<std::size_t>(n) || cell.cols() != static_cast<std::size_t>(n)) return false;
  std::vector<std::vector<int>> kind(n, std::vector<int>(n, 0));  // 0 zero, 1 one, 2 free
  for (int i = 1; i <= n; ++i) {
    kind[w(i) - 1][i - 1] = 1;
    for (int j = i + 1; j <= n; ++j)
      if (w(i) > w(j)) kind[w(i) - 1][j - 1] = 2;
  }
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const Element e = cell(r, c);
      if (kind[r][c] == 0 && e != 0) return false;
      if (kind[r][c] == 1 && e != 1) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- GL_n

std::uint64_t gl_order(int n, int q) noexcept {
  unsigned __int128 qn = 1;
  for (int i = 0; i < n; ++i) qn *= static_cast<unsigned>(q);
  unsigned __int128 order = 1;
  unsigned __int128 qi = 1;
  for (int i = 0; i < n; ++i) {
    order *= (qn - qi);
    if (order > UINT64_MAX) return UINT64_MAX;
    qi *= static_cast<unsigned>(q);
  }
  return static_cast<std::uint64_t>(order);
}

InvertibleEnumerator::InvertibleEnumerator(std::size_t n, FieldPtr field, std::uint64_t budget)
    : n_(n), field_(std::move(field)) {
  if (n_ == 0) throw Error(Errc::InvalidArgument, "GL_0 is not enumerated");
  if (gl_order(static_cast<int>(n_), field_->size()) > budget) {
    throw Error(Errc::BudgetExceeded, "|GL_" + std::to_string(n_) + "(" + field_->name() + ")| exceeds the budget " +
                                          std::to_string(budget));
  }
}

std::uint64_t InvertibleEnumerator::first_row_choices() const noexcept {
  std::uint64_t qn = 1;
  for (std::size_t i = 0; i < n_; ++i) qn *= static_cast<std::uint64_t>(field_->size());
  return qn - 1;
}

void InvertibleEnumerator::for_each(const Visitor& visit, const RowFilter& filter) const {
  for_each_range(0, first_row_choices(), visit, filter);
}

namespace {

struct SpanWalker {
  const Field& f;
  std::size_t n;
  std::uint64_t qn;
  const InvertibleEnumerator::Visitor& visit;
  const InvertibleEnumerator::RowFilter& filter;
  std::vector<Element> entries;                // rows chosen so far
  std::vector<std::vector<Element>> echelon;   // reduced basis, one per level
  std::vector<std::size_t> pivot_col;
  std::vector<Element> candidate;
  std::vector<Element> scratch;

  void decode(std::uint64_t index, std::vector<Element>& out) const {
    for (std::size_t c = n; c-- > 0;) {
      out[c] = static_cast<Element>(index % f.size());
      index /= f.size();
    }
  }

  // Reduces v against the first `level` echelon rows; returns false if v
  // falls in their span. On success the reduced vector is left in scratch.
  bool outside_span(std::size_t level, const std::vector<Element>& v) {
    scratch = v;
    for (std::size_t b = 0; b < level; ++b) {
      const Element factor = scratch[pivot_col[b]];
      if (factor == 0) continue;
      for (std::size_t c = 0; c < n; ++c) scratch[c] = f.sub(scratch[c], f.mul(factor, echelon[b][c]));
    }
    return std::any_of(scratch.begin(), scratch.end(), [](Element e) { return e != 0; });
  }

  void push_basis(std::size_t level) {
    std::size_t pc = 0;
    while (scratch[pc] == 0) ++pc;
    const Element s = f.inv(scratch[pc]);
    for (auto& x : scratch) x = f.mul(x, s);
    // Keep earlier rows reduced at the new pivot so reduction stays one pass.
    for (std::size_t b = 0; b < level; ++b) {
      const Element factor = echelon[b][pc];
      if (factor == 0) continue;
      for (std::size_t c = 0; c < n; ++c) echelon[b][c] = f.sub(echelon[b][c], f.mul(factor, scratch[c]));
    }
    echelon[level] = scratch;
    pivot_col[level] = pc;
  }

  void place(std::size_t level, const std::vector<Element>& row) {
    std::copy(row.begin(), row.end(), entries.begin() + static_cast<std::ptrdiff_t>(level * n));
  }

  void recurse(std::size_t level) {
    if (level == n) {
      visit(entries);
      return;
    }
    // Saved because deeper levels overwrite the echelon rows in place.
    const auto saved = echelon;
    const auto saved_pivots = pivot_col;
    std::vector<Element> v(n);
    for (std::uint64_t idx = 0; idx < qn; ++idx) {
      decode(idx, v);
      if (!outside_span(level, v)) continue;
      if (filter && !filter(level, v)) continue;
      place(level, v);
      push_basis(level);
      recurse(level + 1);
      echelon = saved;
      pivot_col = saved_pivots;
    }
  }
};

}  // namespace

void InvertibleEnumerator::for_each_range(std::uint64_t begin, std::uint64_t end, const Visitor& visit,
                                          const RowFilter& filter) const {
  const std::uint64_t qn = first_row_choices() + 1;
  end = std::min(end, qn - 1);
  SpanWalker walker{*field_, n_, qn, visit, filter, std::vector<Element>(n_ * n_, 0),
                    std::vector<std::vector<Element>>(n_, std::vector<Element>(n_, 0)),
                    std::vector<std::size_t>(n_, 0), std::vector<Element>(n_, 0), std::vector<Element>(n_, 0)};
  // The first row is any nonzero vector; choice j is the vector with index j + 1.
  std::vector<Element> v(n_);
  for (std::uint64_t choice = begin; choice < end; ++choice) {
    walker.decode(choice + 1, v);
    if (filter && !filter(0, v)) continue;
    walker.outside_span(0, v);
    walker.place(0, v);
    walker.push_basis(0);
    walker.recurse(1);
  }
}

std::vector<Matrix> gl_enumerate(int n, const FieldPtr& field, std::uint64_t budget) {
  InvertibleEnumerator en(static_cast<std::size_t>(n), field, budget);
  std::vector<Matrix> out;
  en.for_each([&](std::span<const Element> entries) {
    out.emplace_back(field, n, n, std::vector<Element>(entries.begin(), entries.end()));
  });
  return out;
}

}  // namespace hyperdet
