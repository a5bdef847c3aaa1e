#include "hyperdet/gf.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <sstream>

#include "hyperdet/errors.hpp"

namespace hyperdet {

namespace {

using IntPoly = std::vector<int>;

void trim(IntPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int mod_inverse(int a, int p) {
  for (int b = 1; b < p; ++b)
    if ((a * b) % p == 1) return b;
  return 0;
}

// Remainder of f modulo g over F_p; g must be nonzero.
IntPoly poly_mod(IntPoly f, const IntPoly& g, int p) {
  trim(f);
  const int dg = static_cast<int>(g.size()) - 1;
  const int lead_inv = mod_inverse(g.back(), p);
  while (static_cast<int>(f.size()) - 1 >= dg) {
    const int shift = static_cast<int>(f.size()) - 1 - dg;
    const int factor = (f.back() * lead_inv) % p;
    for (int i = 0; i <= dg; ++i) {
      f[shift + i] = ((f[shift + i] - factor * g[i]) % p + p) % p;
    }
    trim(f);
  }
  return f;
}

// Decodes index -> coefficient vector of length width, base p.
IntPoly decode(int index, int p, int width) {
  IntPoly out(width, 0);
  for (int i = 0; i < width; ++i) {
    out[i] = index % p;
    index /= p;
  }
  return out;
}

int encode(const IntPoly& f, int p) {
  int index = 0;
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) index = index * p + f[i];
  return index;
}

int ipow(int base, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

bool is_prime(int n) noexcept {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible(int p, std::span<const int> monic) {
  IntPoly f(monic.begin(), monic.end());
  const int m = static_cast<int>(f.size()) - 1;
  if (m < 1 || f.back() != 1) throw Error(Errc::InvalidArgument, "modulus must be monic of degree >= 1");
  if (m == 1) return true;
  // Any factorization has a monic factor of degree <= m/2.
  for (int d = 1; d <= m / 2; ++d) {
    const int count = ipow(p, d);
    for (int low = 0; low < count; ++low) {
      IntPoly g = decode(low, p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<int> default_modulus(int p, int m) {
  if (m <= 1) return {};
  const int count = ipow(p, m);
  for (int low = 0; low < count; ++low) {
    IntPoly f = decode(low, p, m);
    f.push_back(1);
    if (is_irreducible(p, f)) return f;
  }
  throw Error(Errc::ReducibleModulus, "no irreducible polynomial found");
}

FieldPtr Field::create(int p, int m, std::optional<std::vector<int>> modulus, int bound) {
  if (bound < 2 || bound > kMaxFieldBound)
    throw Error(Errc::InvalidArgument, "field bound must lie in [2, " + std::to_string(kMaxFieldBound) + "]");
  if (!is_prime(p)) throw Error(Errc::CompositeCharacteristic, std::to_string(p) + " is not prime");
  if (m < 1) throw Error(Errc::InvalidArgument, "extension degree must be >= 1");
  long long q = 1;
  for (int i = 0; i < m; ++i) {
    q *= p;
    if (q > bound) {
      throw Error(Errc::BoundExceeded,
                  std::to_string(p) + "^" + std::to_string(m) + " exceeds the field bound " + std::to_string(bound));
    }
  }

  std::shared_ptr<Field> field(new Field());
  field->p_ = p;
  field->m_ = m;
  field->q_ = static_cast<int>(q);

  if (m == 1) {
    if (modulus && !modulus->empty()) throw Error(Errc::InvalidArgument, "prime fields take no modulus");
  } else if (modulus) {
    const auto& f = *modulus;
    if (static_cast<int>(f.size()) != m + 1 || f.back() != 1)
      throw Error(Errc::InvalidArgument, "modulus must be monic of degree " + std::to_string(m));
    for (int c : f)
      if (c < 0 || c >= p) throw Error(Errc::InvalidArgument, "modulus coefficient out of range");
    if (!is_irreducible(p, f)) throw Error(Errc::ReducibleModulus, "modulus is reducible over F_" + std::to_string(p));
    field->modulus_ = f;
  } else {
    field->modulus_ = default_modulus(p, m);
  }

  const int qi = field->q_;
  field->add_.assign(static_cast<std::size_t>(qi) * qi, 0);
  field->neg_.assign(qi, 0);
  for (int a = 0; a < qi; ++a) {
    const IntPoly da = decode(a, p, m);
    IntPoly na(m);
    for (int i = 0; i < m; ++i) na[i] = (p - da[i]) % p;
    field->neg_[a] = static_cast<Element>(encode(na, p));
    for (int b = 0; b < qi; ++b) {
      const IntPoly db = decode(b, p, m);
      IntPoly s(m);
      for (int i = 0; i < m; ++i) s[i] = (da[i] + db[i]) % p;
      field->add_[a * qi + b] = static_cast<Element>(encode(s, p));
    }
  }

  // Schoolbook product reduced by the modulus; only used to find a generator.
  auto slow_mul = [&](int a, int b) {
    if (m == 1) return (a * b) % p;
    const IntPoly da = decode(a, p, m);
    const IntPoly db = decode(b, p, m);
    IntPoly prod(2 * m - 1, 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    IntPoly r = poly_mod(prod, field->modulus_, p);
    r.resize(m, 0);
    return encode(r, p);
  };

  const int order = qi - 1;
  int generator = 0;
  for (int g = 1; g < qi && generator == 0; ++g) {
    int x = 1;
    int period = 0;
    do {
      x = slow_mul(x, g);
      ++period;
    } while (x != 1);
    if (period == order) generator = g;
  }
  field->generator_ = static_cast<Element>(generator);

  field->exp_.assign(2 * order, 0);
  field->log_.assign(qi, -1);
  int x = 1;
  for (int e = 0; e < order; ++e) {
    field->exp_[e] = static_cast<Element>(x);
    field->exp_[e + order] = static_cast<Element>(x);
    field->log_[x] = e;
    x = slow_mul(x, generator);
  }

  field->mul_.assign(static_cast<std::size_t>(qi) * qi, 0);
  field->inv_.assign(qi, 0);
  for (int a = 1; a < qi; ++a) {
    for (int b = 1; b < qi; ++b) field->mul_[a * qi + b] = field->exp_[field->log_[a] + field->log_[b]];
    field->inv_[a] = field->exp_[(order - field->log_[a]) % order];
  }
  return field;
}

Element Field::inv(Element a) const {
  if (a == 0) throw Error(Errc::DivisionByZero, "inverse of zero in " + name());
  return inv_[a];
}

Element Field::div(Element a, Element b) const { return mul(a, inv(b)); }

Element Field::exp(long long e) const noexcept {
  const long long order = q_ - 1;
  long long r = e % order;
  if (r < 0) r += order;
  return exp_[static_cast<std::size_t>(r)];
}

int Field::log(Element a) const {
  if (a == 0) throw Error(Errc::DivisionByZero, "logarithm of zero in " + name());
  return log_[a];
}

Element Field::from_integer(long long v) const noexcept {
  long long r = v % p_;
  if (r < 0) r += p_;
  return static_cast<Element>(r);
}

std::vector<int> Field::digits(Element a) const { return decode(a, p_, m_); }

Element Field::from_digits(std::span<const int> digits) const {
  if (static_cast<int>(digits.size()) > m_) throw Error(Errc::InvalidArgument, "too many digits for " + name());
  IntPoly f(m_, 0);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= p_) throw Error(Errc::InvalidArgument, "digit out of range");
    f[i] = digits[i];
  }
  return static_cast<Element>(encode(f, p_));
}

std::string Field::name() const {
  return m_ == 1 ? "F_" + std::to_string(p_) : "F_" + std::to_string(q_);
}

std::string Field::format(Element a) const {
  if (m_ == 1) return std::to_string(a);
  const IntPoly d = digits(a);
  std::ostringstream os;
  bool first = true;
  for (int i = m_ - 1; i >= 0; --i) {
    if (d[i] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0 || d[i] != 1) os << d[i];
    if (i >= 1) os << 't';
    if (i >= 2) os << '^' << i;
  }
  if (first) os << '0';
  return os.str();
}

FieldElement::FieldElement(FieldPtr field, Element value) : field_(std::move(field)), value_(value) {
  if (!field_) throw Error(Errc::InvalidArgument, "null field");
  if (value_ >= field_->size()) throw Error(Errc::InvalidArgument, "element index out of range");
}

namespace {

const Field& common_field(const FieldElement& a, const FieldElement& b) {
  if (a.field() != b.field() && !(*a.field() == *b.field()))
    throw Error(Errc::FieldMismatch, a.field()->name() + " vs " + b.field()->name());
  return *a.field();
}

}  // namespace

FieldElement FieldElement::inv() const { return {field_, field_->inv(value_)}; }
FieldElement FieldElement::operator-() const { return {field_, field_->neg(value_)}; }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  return {a.field_, common_field(a, b).add(a.value_, b.value_)};
}
FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  return {a.field_, common_field(a, b).sub(a.value_, b.value_)};
}
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  return {a.field_, common_field(a, b).mul(a.value_, b.value_)};
}
FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  return {a.field_, common_field(a, b).div(a.value_, b.value_)};
}
bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.value_ == b.value_ && (a.field_ == b.field_ || *a.field_ == *b.field_);
}

Element embed(const Field& base, const Field& ext, Element e) {
  if (!base.is_prime_field()) throw Error(Errc::IncompatibleFields, "embedding base must be a prime field");
  if (base.characteristic() != ext.characteristic())
    throw Error(Errc::IncompatibleFields, base.name() + " does not embed in " + ext.name());
  if (e >= base.size()) throw Error(Errc::InvalidArgument, "element index out of range");
  // Constants are encoded by their own value in every extension.
  return e;
}

FieldElement embed(const FieldPtr& ext, const FieldElement& e) {
  return {ext, embed(*e.field(), *ext, e.value())};
}

FieldPtr parse_field(std::string_view text, int bound) {
  auto parse_int = [&](std::string_view s) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw Error(Errc::InvalidArgument, "cannot parse field '" + std::string(text) + "'");
    return v;
  };
  const auto caret = text.find('^');
  if (caret != std::string_view::npos) {
    return Field::create(parse_int(text.substr(0, caret)), parse_int(text.substr(caret + 1)), std::nullopt, bound);
  }
  const int q = parse_int(text);
  if (q < 2) throw Error(Errc::InvalidArgument, "field size must be >= 2");
  int p = 2;
  while (q % p != 0) ++p;
  int m = 0;
  int rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++m;
  }
  if (rest != 1) throw Error(Errc::CompositeCharacteristic, std::to_string(q) + " is not a prime power");
  return Field::create(p, m, std::nullopt, bound);
}

FieldPtr cached_field(int p, int m) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, FieldPtr> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{p, m}];
  if (!slot) slot = Field::create(p, m, std::nullopt, kMaxFieldBound);
  return slot;
}

}  // namespace hyperdet
