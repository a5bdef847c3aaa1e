#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "hyperdet/errors.hpp"
#include "hyperdet/linalg.hpp"
#include "hyperdet/permcells.hpp"

using namespace hyperdet;

namespace {

// Every n x n matrix over F_q, in index order.
std::vector<Matrix> all_square(int n, const FieldPtr& f) {
  const int q = f->size();
  const int cells = n * n;
  std::size_t total = 1;
  for (int i = 0; i < cells; ++i) total *= static_cast<std::size_t>(q);
  std::vector<Matrix> out;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<Element> e(static_cast<std::size_t>(cells));
    std::size_t v = idx;
    for (auto& x : e) {
      x = static_cast<Element>(v % static_cast<std::size_t>(q));
      v /= static_cast<std::size_t>(q);
    }
    out.emplace_back(f, n, n, std::move(e));
  }
  return out;
}

Polynomial poly(const FieldPtr& f, std::vector<Element> c) { return Polynomial(f, std::move(c)); }

}  // namespace

TEST_CASE("rank examples") {
  auto f2 = Field::create(2);
  auto f3 = Field::create(3);
  CHECK(rank(Matrix::identity(f2, 3)) == 3);
  CHECK(rank(Matrix(f3, 4, 3)) == 0);
  CHECK(rank(Matrix::from_rows(f2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}})) == 3);
}

TEST_CASE("rank is transpose invariant on all 2x3 matrices over F_3") {
  auto f3 = Field::create(3);
  for (int idx = 0; idx < 729; ++idx) {
    std::vector<Element> e(6);
    int v = idx;
    for (auto& x : e) {
      x = static_cast<Element>(v % 3);
      v /= 3;
    }
    const Matrix m(f3, 2, 3, e);
    CHECK(rank(m) == rank(transpose(m)));
  }
}

TEST_CASE("permutation matrices and products") {
  auto f2 = Field::create(2);
  const Matrix m = permutation_matrix(Permutation::parse("4213"), f2);
  const std::set<std::pair<int, int>> ones{{4, 1}, {2, 2}, {1, 3}, {3, 4}};
  for (int r = 1; r <= 4; ++r)
    for (int c = 1; c <= 4; ++c) CHECK(m(r - 1, c - 1) == (ones.count({r, c}) ? 1 : 0));

  auto f5 = Field::create(5);
  const Matrix a = Matrix::from_rows(f5, {{1, 2, 3}, {4, 0, 1}});
  CHECK(matmul(Matrix::identity(f5, 2), a) == a);
  CHECK(transpose(transpose(a)) == a);
  CHECK_THROWS_AS(matmul(a, a), Error);
}

TEST_CASE("GL enumeration matches the order formula and a rank filter") {
  auto f2 = Field::create(2);
  CHECK(gl_enumerate(1, f2).size() == 1);
  CHECK(gl_enumerate(2, f2).size() == 6);
  CHECK(gl_enumerate(3, f2).size() == 168);
  for (int q : {2, 3})
    for (int n = 1; n <= 3; ++n) {
      auto f = Field::create(q);
      const auto gl = gl_enumerate(n, f);
      std::uint64_t expected = 1;
      for (int i = 0; i < n; ++i) {
        std::uint64_t qn = 1, qi = 1;
        for (int j = 0; j < n; ++j) qn *= static_cast<std::uint64_t>(q);
        for (int j = 0; j < i; ++j) qi *= static_cast<std::uint64_t>(q);
        expected *= qn - qi;
      }
      CHECK(gl.size() == expected);
      CHECK(gl_order(n, q) == expected);
      std::set<std::vector<Element>> seen;
      for (const auto& m : gl) {
        CHECK(rank(m) == static_cast<std::size_t>(n));
        seen.emplace(m.entries().begin(), m.entries().end());
      }
      CHECK(seen.size() == gl.size());
      std::size_t filtered = 0;
      for (const auto& m : all_square(n, f)) filtered += rank(m) == static_cast<std::size_t>(n);
      CHECK(filtered == gl.size());
    }
  CHECK_THROWS_AS(gl_enumerate(4, Field::create(3), 1000), Error);
}

TEST_CASE("Bruhat factorization examples") {
  auto f3 = Field::create(3);
  const auto id = bruhat_factorize(Matrix::identity(f3, 3));
  CHECK(id.w == Permutation::identity(3));
  CHECK(id.upper == Matrix::identity(f3, 3));
  CHECK(id.cell == Matrix::identity(f3, 3));

  const Permutation w = Permutation::parse("312");
  const auto pf = bruhat_factorize(permutation_matrix(w, f3));
  CHECK(pf.w == w);
  CHECK(pf.upper == Matrix::identity(f3, 3));
  CHECK(pf.cell == permutation_matrix(w, f3));

  CHECK_THROWS_AS(bruhat_factorize(Matrix::from_rows(f3, {{1, 2}, {2, 1}})), Error);
}

TEST_CASE("Bruhat cells partition GL_n") {
  for (int q : {2, 3})
    for (int n = 1; n <= 3; ++n) {
      if (q == 3 && n == 3) continue;  // 11232 elements; covered at q = 2
      auto f = Field::create(q);
      std::map<std::vector<int>, std::uint64_t> cell_sizes;
      for (const auto& m : gl_enumerate(n, f)) {
        const auto b = bruhat_factorize(m);
        CHECK(matmul(b.upper, b.cell) == m);
        CHECK(b.upper.is_upper_triangular());
        for (int i = 0; i < n; ++i) CHECK(b.upper(i, i) != 0);
        CHECK(matches_se_pattern(b.cell, b.w));
        ++cell_sizes[b.w.images()];
      }
      std::uint64_t total = 0;
      for (const auto& w : all_permutations(n)) {
        std::uint64_t expected = 1;
        for (int i = 0; i < n; ++i) expected *= static_cast<std::uint64_t>(q - 1);
        const std::size_t exp = static_cast<std::size_t>(n * (n - 1) / 2) + inversions(w).size();
        for (std::size_t i = 0; i < exp; ++i) expected *= static_cast<std::uint64_t>(q);
        CHECK(cell_sizes[w.images()] == expected);
        total += expected;
      }
      CHECK(total == gl_order(n, q));
    }
}

TEST_CASE("polynomial gcd examples") {
  auto f2 = Field::create(2);
  auto f3 = Field::create(3);
  CHECK(poly_gcd(poly(f2, {1, 0, 1}), poly(f2, {1, 1})) == poly(f2, {1, 1}));
  CHECK(poly_gcd(poly(f3, {2, 0, 2}), poly(f3, {})) == poly(f3, {1, 0, 1}));
  CHECK(poly_gcd(poly(f3, {0, 1, 1}), poly(f3, {1, 0, 1})) == poly(f3, {1}));
  CHECK(poly_gcd(poly(f3, {}), poly(f3, {})).is_zero());
}

TEST_CASE("gcd divides both inputs and absorbs common divisors") {
  std::mt19937 rng(12345);
  for (int q : {2, 3, 5}) {
    auto f = Field::create(q);
    std::uniform_int_distribution<int> coef(0, q - 1);
    auto random_poly = [&](int deg) {
      std::vector<Element> c(static_cast<std::size_t>(deg + 1));
      for (auto& x : c) x = static_cast<Element>(coef(rng));
      return poly(f, c);
    };
    for (int trial = 0; trial < 200; ++trial) {
      const Polynomial d = random_poly(trial % 3);
      const Polynomial a = d * random_poly(1 + trial % 4);
      const Polynomial b = d * random_poly(2 + trial % 3);
      if (a.is_zero() && b.is_zero()) continue;
      const Polynomial g = poly_gcd(a, b);
      CHECK(g.leading() == 1);
      CHECK(divmod(a, g).remainder.is_zero());
      CHECK(divmod(b, g).remainder.is_zero());
      if (!d.is_zero()) CHECK(divmod(g, d).remainder.is_zero());
    }
  }
}
