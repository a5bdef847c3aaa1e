#include "hyperdet/qpoly.hpp"

#include <algorithm>
#include <sstream>

namespace hyperdet {

QPolynomial::QPolynomial(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

QPolynomial QPolynomial::constant(BigInt c) { return QPolynomial({std::move(c)}); }

QPolynomial QPolynomial::monomial(std::size_t e, BigInt c) {
  std::vector<BigInt> v(e + 1, 0);
  v[e] = std::move(c);
  return QPolynomial(std::move(v));
}

void QPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt QPolynomial::evaluate(const BigInt& q) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * q + *it;
  return acc;
}

bool QPolynomial::has_nonnegative_coefficients() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c >= 0; });
}

QPolynomial& QPolynomial::operator+=(const QPolynomial& other) {
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

QPolynomial operator-(const QPolynomial& a, const QPolynomial& b) {
  std::vector<BigInt> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coefficient(i) - b.coefficient(i);
  return QPolynomial(std::move(c));
}

QPolynomial operator*(const QPolynomial& a, const QPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return QPolynomial(std::move(c));
}

std::string QPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    BigInt c = coeffs_[i];
    if (c == 0) continue;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (c < 0) c = -c;
    if (c != 1 || i == 0) os << c;
    if (i >= 1) os << 'q';
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

QPolynomial q_int(int n) {
  if (n <= 0) return {};
  return QPolynomial(std::vector<BigInt>(static_cast<std::size_t>(n), 1));
}

QPolynomial q_factorial(int n) {
  QPolynomial out = QPolynomial::constant(1);
  for (int i = 2; i <= n; ++i) out = out * q_int(i);
  return out;
}

QPolynomial prefactor(int k) {
  QPolynomial out = QPolynomial::monomial(static_cast<std::size_t>(k) * k);
  const QPolynomial q_minus_one({-1, 1});
  for (int i = 0; i < 2 * k; ++i) out = out * q_minus_one;
  return out;
}

}  // namespace hyperdet
