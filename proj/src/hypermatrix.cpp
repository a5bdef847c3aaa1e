#include "hyperdet/hypermatrix.hpp"

#include <bit>
#include <ostream>

#include "hyperdet/errors.hpp"

namespace hyperdet {

Hypermatrix::Hypermatrix(Matrix front, Matrix back) : front_(std::move(front)), back_(std::move(back)) {
  if (front_.cols() < 1 || front_.rows() != front_.cols() + 1)
    throw Error(Errc::DimensionMismatch, "faces must be (k+1) x k with k >= 1");
  if (back_.rows() != front_.rows() || back_.cols() != front_.cols())
    throw Error(Errc::DimensionMismatch, "front and back faces differ in shape");
  if (front_.field() != back_.field() && !(*front_.field() == *back_.field()))
    throw Error(Errc::FieldMismatch, "front and back faces live over different fields");
}

Hypermatrix Hypermatrix::zero(int k, FieldPtr field) {
  if (k < 1) throw Error(Errc::InvalidArgument, "k must be at least 1");
  Matrix f(field, k + 1, k);
  Matrix b(std::move(field), k + 1, k);
  return Hypermatrix(std::move(f), std::move(b));
}

Element Hypermatrix::entry(int face, int row, int col) const {
  if (face != 1 && face != 2) throw Error(Errc::IndexOutOfRange, "face must be 1 or 2");
  const Matrix& m = face == 1 ? front_ : back_;
  return m.at(static_cast<std::size_t>(row - 1), static_cast<std::size_t>(col - 1));
}

std::ostream& operator<<(std::ostream& os, const Hypermatrix& h) { return os << h.front() << " | " << h.back(); }

Hypermatrix standard_E(int k, FieldPtr field) {
  Hypermatrix h = Hypermatrix::zero(k, std::move(field));
  for (int j = 0; j < k; ++j) {
    h.front()(j, j) = 1;
    h.back()(j + 1, j) = 1;
  }
  return h;
}

Hypermatrix act(const Matrix& g1, const Matrix& g2, const Hypermatrix& h) {
  const auto k = static_cast<std::size_t>(h.k());
  if (g1.rows() != k + 1 || g1.cols() != k + 1 || g2.rows() != k || g2.cols() != k)
    throw Error(Errc::DimensionMismatch, "group element sizes do not match the format");
  if (rank(g1) != k + 1 || rank(g2) != k) throw Error(Errc::SingularMatrix, "acting matrices must be invertible");
  const Matrix g2t = transpose(g2);
  return Hypermatrix(matmul(matmul(g1, h.front()), g2t), matmul(matmul(g1, h.back()), g2t));
}

Hypermatrix act_face_mix(const Matrix& g0, const Hypermatrix& h) {
  if (g0.rows() != 2 || g0.cols() != 2) throw Error(Errc::DimensionMismatch, "face mixing needs a 2 x 2 matrix");
  if (rank(g0) != 2) throw Error(Errc::SingularMatrix, "face mixing matrix must be invertible");
  return Hypermatrix(linear_combination(g0(0, 0), h.front(), g0(0, 1), h.back()),
                     linear_combination(g0(1, 0), h.front(), g0(1, 1), h.back()));
}

// ---------------------------------------------------------------- kernel

NondegeneracyKernel::NondegeneracyKernel(const Field& field, int k)
    : add_(field.add_table()),
      mul_(field.mul_table()),
      neg_(field.neg_table()),
      field_(&field),
      q_(field.size()),
      k_(k),
      rows_(k + 1) {
  if (k < 1 || k > kMaxFormatK)
    throw Error(Errc::InvalidArgument, "k must lie in [1, " + std::to_string(kMaxFormatK) + "]");
  table_.assign(std::size_t{1} << rows_, Form{});
  by_size_.assign(rows_ + 1, {});
  for (unsigned s = 0; s < (1u << rows_); ++s) by_size_[std::popcount(s)].push_back(static_cast<int>(s));
  result_.assign(rows_, Form{});
  inv_.assign(q_, 0);
  for (int a = 1; a < q_; ++a) inv_[a] = field.inv(static_cast<Element>(a));
}

void NondegeneracyKernel::minors(const Element* front, const Element* back) {
  const int q = q_;
  table_[0] = Form{};
  table_[0][0] = 1;
  // Laplace expansion along the last column: the determinant of rows S and
  // columns 0..m is a signed sum over r in S of entry(r, m) times the minor on
  // S \ {r}. Entry (r, m) of the pencil is front*x + back*y.
  for (int m = 0; m < k_; ++m) {
    for (int s : by_size_[m + 1]) {
      Form acc{};
      int pos = 0;
      for (int r = 0; r < rows_; ++r) {
        if (!(s >> r & 1)) continue;
        const Element a = front[r * k_ + m];
        const Element b = back[r * k_ + m];
        if (a != 0 || b != 0) {
          const Form& c = table_[s & ~(1 << r)];
          const bool negate = ((pos + m) & 1) != 0;
          const Element sa = negate ? neg_[a] : a;
          const Element sb = negate ? neg_[b] : b;
          const Element* ma = mul_ + sa * q;
          const Element* mb = mul_ + sb * q;
          for (int j = 0; j <= m + 1; ++j) {
            Element term = 0;
            if (j <= m) term = ma[c[j]];
            if (j >= 1) term = add_[term * q + mb[c[j - 1]]];
            acc[j] = add_[acc[j] * q + term];
          }
        }
        ++pos;
      }
      table_[s] = acc;
    }
  }
  const int full = (1 << rows_) - 1;
  for (int i = 0; i < rows_; ++i) result_[i] = table_[full & ~(1 << i)];
}

const std::array<Element, kMaxFormatK + 1>& NondegeneracyKernel::form(int deleted_row) const noexcept {
  return result_[deleted_row];
}

bool NondegeneracyKernel::operator()(const Element* front, const Element* back) {
  minors(front, back);
  return decide();
}

bool NondegeneracyKernel::decide() {
  const int q = q_;
  // A common root at (1:0) means every form has vanishing x^k coefficient.
  bool lead_seen = false;
  for (int i = 0; i < rows_; ++i)
    if (result_[i][0] != 0) lead_seen = true;
  if (!lead_seen) return false;

  // Dehomogenize: coefficient of t^e in form(t, 1) is the stored c[k - e].
  Form g{};
  int dg = -1;
  Form f{};
  for (int i = 0; i < rows_; ++i) {
    int df = -1;
    for (int e = 0; e <= k_; ++e) {
      f[e] = result_[i][k_ - e];
      if (f[e] != 0) df = e;
    }
    if (df < 0) continue;
    if (dg < 0) {
      g = f;
      dg = df;
    } else {
      // Euclid on (g, f), result left in g.
      Form* a = &g;
      Form* b = &f;
      int da = dg;
      int db = df;
      if (da < db) {
        std::swap(a, b);
        std::swap(da, db);
      }
      while (db >= 0) {
        const Element lead_inv = inv_[(*b)[db]];
        while (da >= db) {
          const Element factor = mul_[(*a)[da] * q + lead_inv];
          const Element* row = mul_ + neg_[factor] * q;
          for (int i2 = 0; i2 <= db; ++i2) {
            Element& slot = (*a)[da - db + i2];
            slot = add_[slot * q + row[(*b)[i2]]];
          }
          while (da >= 0 && (*a)[da] == 0) --da;
        }
        std::swap(a, b);
        std::swap(da, db);
      }
      if (a != &g) g = *a;
      dg = da;
    }
    if (dg == 0) return true;
  }
  return dg == 0;
}

std::vector<BinaryForm> pencil_minors(const Hypermatrix& h) {
  NondegeneracyKernel kernel(*h.field(), h.k());
  const auto front = h.front().entries();
  const auto back = h.back().entries();
  kernel.minors(front.data(), back.data());
  std::vector<BinaryForm> out;
  const int k = h.k();
  for (int i = 0; i <= k; ++i) {
    const auto& c = kernel.form(i);
    std::vector<Element> coeffs(k + 1);
    for (int e = 0; e <= k; ++e) coeffs[e] = c[k - e];
    out.push_back({Polynomial(h.field(), std::move(coeffs)), c[0]});
  }
  return out;
}

bool is_nondegenerate(const Hypermatrix& h) {
  NondegeneracyKernel kernel(*h.field(), h.k());
  return kernel(h.front().entries().data(), h.back().entries().data());
}

bool is_nondegenerate_oracle(const Hypermatrix& h) {
  const Field& base = *h.field();
  if (!base.is_prime_field()) throw Error(Errc::NonPrimeField, "closure oracle needs a prime field, got " + base.name());
  const int p = base.characteristic();
  const auto k = static_cast<std::size_t>(h.k());
  for (int d = 1; d <= h.k(); ++d) {
    const FieldPtr ext = cached_field(p, d);
    const Matrix front(ext, k + 1, k, std::vector<Element>(h.front().entries().begin(), h.front().entries().end()));
    const Matrix back(ext, k + 1, k, std::vector<Element>(h.back().entries().begin(), h.back().entries().end()));
    if (rank(front) < k) return false;
    for (int t = 0; t < ext->size(); ++t)
      if (rank(linear_combination(static_cast<Element>(t), front, 1, back)) < k) return false;
  }
  return true;
}

bool respects(const Hypermatrix& h, const PlanePartition& P) {
  if (P.k() != h.k()) throw Error(Errc::FormatMismatch, "shape and hypermatrix have different k");
  const int k = h.k();
  for (int c = 1; c <= k; ++c) {
    for (int r = k + 2 - P.lam().part(c); r <= k + 1; ++r)
      if (h.front()(r - 1, c - 1) != 0) return false;
    for (int r = k + 2 - P.mu().part(c); r <= k + 1; ++r)
      if (h.back()(r - 1, c - 1) != 0) return false;
  }
  return true;
}

std::string field_literal(const Field& f) {
  if (f.is_prime_field()) return std::to_string(f.characteristic());
  return std::to_string(f.characteristic()) + "^" + std::to_string(f.degree());
}

nlohmann::json to_json(const Hypermatrix& h) {
  return {{"k", h.k()}, {"q", field_literal(*h.field())}, {"front", h.front().to_rows()}, {"back", h.back().to_rows()}};
}

Hypermatrix hypermatrix_from_json(const nlohmann::json& j) {
  try {
    const int k = j.at("k").get<int>();
    if (k < 1) throw Error(Errc::InvalidArgument, "k must be at least 1");
    const auto& qv = j.at("q");
    const FieldPtr field = parse_field(qv.is_string() ? qv.get<std::string>() : std::to_string(qv.get<int>()));
    auto front = Matrix::from_rows(field, j.at("front").get<std::vector<std::vector<int>>>());
    auto back = Matrix::from_rows(field, j.at("back").get<std::vector<std::vector<int>>>());
    if (front.rows() != static_cast<std::size_t>(k + 1) || front.cols() != static_cast<std::size_t>(k))
      throw Error(Errc::DimensionMismatch, "front face is not (k+1) x k");
    return Hypermatrix(std::move(front), std::move(back));
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::InvalidArgument, std::string("malformed hypermatrix literal: ") + e.what());
  }
}

}  // namespace hyperdet
