#pragma once

// Finite fields F_q, q = p^m, with small cardinality. Elements are plain
// indices in [0, q): index 0 is zero, index 1 is one, and for m > 1 the index
// is the base-p encoding of the polynomial representative (constant term in
// the least significant digit). All arithmetic is table lookup.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hyperdet {

using Element = std::uint8_t;

inline constexpr int kDefaultFieldBound = 81;
inline constexpr int kMaxFieldBound = 256;

bool is_prime(int n) noexcept;

/// Exhaustive irreducibility test for a monic polynomial over F_p, given as
/// coefficients lowest degree first (the last entry must be 1).
bool is_irreducible(int p, std::span<const int> monic);

/// Lexicographically smallest monic irreducible of degree m over F_p, where
/// the non-leading coefficients are compared from degree m-1 down to 0.
std::vector<int> default_modulus(int p, int m);

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  static FieldPtr create(int p, int m = 1, std::optional<std::vector<int>> modulus = std::nullopt,
                         int bound = kDefaultFieldBound);

  int characteristic() const noexcept { return p_; }
  int degree() const noexcept { return m_; }
  int size() const noexcept { return q_; }
  bool is_prime_field() const noexcept { return m_ == 1; }
  /// Full monic modulus, lowest degree first; empty for prime fields.
  const std::vector<int>& modulus() const noexcept { return modulus_; }

  Element add(Element a, Element b) const noexcept { return add_[a * q_ + b]; }
  Element sub(Element a, Element b) const noexcept { return add_[a * q_ + neg_[b]]; }
  Element mul(Element a, Element b) const noexcept { return mul_[a * q_ + b]; }
  Element neg(Element a) const noexcept { return neg_[a]; }
  Element inv(Element a) const;
  Element div(Element a, Element b) const;

  Element generator() const noexcept { return generator_; }
  /// generator^e for any integer e (reduced modulo q - 1).
  Element exp(long long e) const noexcept;
  /// Discrete log base generator(); throws DivisionByZero for 0.
  int log(Element a) const;

  /// Image of an integer in the prime subfield.
  Element from_integer(long long v) const noexcept;
  std::vector<int> digits(Element a) const;
  Element from_digits(std::span<const int> digits) const;

  std::string name() const;
  std::string format(Element a) const;

  const Element* add_table() const noexcept { return add_.data(); }
  const Element* mul_table() const noexcept { return mul_.data(); }
  const Element* neg_table() const noexcept { return neg_.data(); }

  bool operator==(const Field& other) const noexcept {
    return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
  }

 private:
  Field() = default;

  int p_ = 0;
  int m_ = 0;
  int q_ = 0;
  std::vector<int> modulus_;
  Element generator_ = 0;
  std::vector<Element> add_;
  std::vector<Element> mul_;
  std::vector<Element> neg_;
  std::vector<Element> inv_;
  std::vector<Element> exp_;
  std::vector<int> log_;
};

/// An element bundled with its field. Mixed-field arithmetic throws FieldMismatch.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Element value);

  const FieldPtr& field() const noexcept { return field_; }
  Element value() const noexcept { return value_; }
  bool is_zero() const noexcept { return value_ == 0; }

  FieldElement inv() const;
  FieldElement operator-() const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  FieldPtr field_;
  Element value_;
};

/// Embeds an element of the prime field F_p into an extension of the same
/// characteristic. Only prime bases are supported.
Element embed(const Field& base, const Field& ext, Element e);
FieldElement embed(const FieldPtr& ext, const FieldElement& e);

/// Parses "p", "p^m" or a bare prime power such as "9".
FieldPtr parse_field(std::string_view text, int bound = kDefaultFieldBound);

/// Shared cache of default-modulus fields, used by extension-field oracles.
FieldPtr cached_field(int p, int m);

}  // namespace hyperdet
