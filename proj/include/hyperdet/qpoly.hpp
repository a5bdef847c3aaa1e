#pragma once

// Integer polynomials in q with arbitrary-precision coefficients, plus the
// q-integers and q-factorials used by the closed-form counts.

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hyperdet {

using BigInt = boost::multiprecision::cpp_int;

class QPolynomial {
 public:
  QPolynomial() = default;
  explicit QPolynomial(std::vector<BigInt> coefficients);
  static QPolynomial constant(BigInt c);
  /// c * q^e
  static QPolynomial monomial(std::size_t e, BigInt c = 1);

  const std::vector<BigInt>& coefficients() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  BigInt coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }
  BigInt evaluate(const BigInt& q) const;
  bool has_nonnegative_coefficients() const;

  QPolynomial& operator+=(const QPolynomial& other);
  friend QPolynomial operator+(QPolynomial a, const QPolynomial& b) { return a += b; }
  friend QPolynomial operator-(const QPolynomial& a, const QPolynomial& b);
  friend QPolynomial operator*(const QPolynomial& a, const QPolynomial& b);
  friend bool operator==(const QPolynomial& a, const QPolynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// "1 + 2q + q^3"
  std::string to_string() const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

/// [n]_q = 1 + q + ... + q^(n-1); zero for n <= 0.
QPolynomial q_int(int n);
/// [n]!_q = [n]_q [n-1]_q ... [1]_q; [0]!_q = 1.
QPolynomial q_factorial(int n);
/// q^(k^2) (q - 1)^(2k)
QPolynomial prefactor(int k);

}  // namespace hyperdet
