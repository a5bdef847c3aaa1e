#pragma once

// 2 x (k+1) x k hypermatrices stored as a front and a back face, each a
// (k+1) x k matrix. GL_2 acts by mixing the faces; GL_{k+1} x GL_k acts on
// both faces at once by face -> g1 * face * g2^T.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "hyperdet/gf.hpp"
#include "hyperdet/linalg.hpp"
#include "hyperdet/shapes.hpp"

namespace hyperdet {

inline constexpr int kMaxFormatK = 6;

class Hypermatrix {
 public:
  /// Throws DimensionMismatch / FieldMismatch unless both faces are (k+1) x k over one field.
  Hypermatrix(Matrix front, Matrix back);
  static Hypermatrix zero(int k, FieldPtr field);

  int k() const noexcept { return static_cast<int>(front_.cols()); }
  const FieldPtr& field() const noexcept { return front_.field(); }
  const Matrix& front() const noexcept { return front_; }
  const Matrix& back() const noexcept { return back_; }
  Matrix& front() noexcept { return front_; }
  Matrix& back() noexcept { return back_; }
  /// face is 1 (front) or 2 (back); row and col are 1-based.
  Element entry(int face, int row, int col) const;

  friend bool operator==(const Hypermatrix& a, const Hypermatrix& b) {
    return a.front_ == b.front_ && a.back_ == b.back_;
  }

 private:
  Matrix front_;
  Matrix back_;
};

std::ostream& operator<<(std::ostream& os, const Hypermatrix& h);

/// Front is the identity over a zero row, back is a zero row over the identity.
Hypermatrix standard_E(int k, FieldPtr field);

/// face -> g1 * face * g2^T on both faces. Throws DimensionMismatch or SingularMatrix.
Hypermatrix act(const Matrix& g1, const Matrix& g2, const Hypermatrix& h);
/// front' = a*front + b*back, back' = c*front + d*back for g0 = [[a,b],[c,d]].
Hypermatrix act_face_mix(const Matrix& g0, const Hypermatrix& h);

/// A binary form of degree k in (x, y), kept as its dehomogenization
/// f(t) = form(t, 1) together with the coefficient of x^k.
struct BinaryForm {
  Polynomial dehomogenized;
  Element lead;
};

/// The k+1 maximal minors of x*front + y*back; entry i deletes row i.
std::vector<BinaryForm> pencil_minors(const Hypermatrix& h);

/// Reusable nondegeneracy test for a fixed field and k. Faces are passed as
/// row-major (k+1) x k arrays. Not safe to share between threads; make one
/// per worker.
class NondegeneracyKernel {
 public:
  NondegeneracyKernel(const Field& field, int k);

  bool operator()(const Element* front, const Element* back);

  /// Leaves the k+1 minors in forms(); coefficient j multiplies x^(k-j) y^j.
  void minors(const Element* front, const Element* back);
  const std::array<Element, kMaxFormatK + 1>& form(int deleted_row) const noexcept;

 private:
  using Form = std::array<Element, kMaxFormatK + 1>;

  bool decide();

  const Element* add_;
  const Element* mul_;
  const Element* neg_;
  const Field* field_;
  int q_;
  int k_;
  int rows_;
  std::vector<Form> table_;        // indexed by row subsets
  std::vector<std::vector<int>> by_size_;
  std::vector<Form> result_;
  std::vector<Element> inv_;
};

/// Every nonzero combination of the faces (over the
/// algebraic closure) has full column rank.
bool is_nondegenerate(const Hypermatrix& h);

/// Independent check over explicit extension fields F_{p^d}, d = 1..k.
/// Prime fields only (NonPrimeField otherwise).
bool is_nondegenerate_oracle(const Hypermatrix& h);

/// True when every cell inside P is zero. Throws FormatMismatch on differing k.
bool respects(const Hypermatrix& h, const PlanePartition& P);

/// "2" or "2^2"
std::string field_literal(const Field& f);
nlohmann::json to_json(const Hypermatrix& h);
/// Parses {"k", "q", "front", "back"}; rejects k < 1 and malformed faces.
Hypermatrix hypermatrix_from_json(const nlohmann::json& j);

}  // namespace hyperdet
