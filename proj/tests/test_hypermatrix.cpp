#include <doctest.h>

#include <random>

#include "hyperdet/errors.hpp"
#include "hyperdet/hypermatrix.hpp"

using namespace hyperdet;

namespace {

// Decodes an index into both faces, front first, row-major.
Hypermatrix decode(std::uint64_t idx, int k, const FieldPtr& f) {
  Hypermatrix h = Hypermatrix::zero(k, f);
  const auto q = static_cast<std::uint64_t>(f->size());
  for (int face = 0; face < 2; ++face)
    for (int r = 0; r <= k; ++r)
      for (int c = 0; c < k; ++c) {
        (face == 0 ? h.front() : h.back())(r, c) = static_cast<Element>(idx % q);
        idx /= q;
      }
  return h;
}

std::uint64_t power(std::uint64_t b, int e) {
  std::uint64_t out = 1;
  while (e-- > 0) out *= b;
  return out;
}

Matrix mat(const FieldPtr& f, const std::vector<std::vector<int>>& rows) { return Matrix::from_rows(f, rows); }

}  // namespace

TEST_CASE("the hypermatrix E") {
  auto f2 = Field::create(2);
  const Hypermatrix e3 = standard_E(3, f2);
  CHECK(e3.front() == mat(f2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}}));
  CHECK(e3.back() == mat(f2, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  const Hypermatrix e1 = standard_E(1, f2);
  CHECK(e1.front() == mat(f2, {{1}, {0}}));
  CHECK(e1.back() == mat(f2, {{0}, {1}}));
  for (int q : {2, 3})
    for (int k = 1; k <= 4; ++k) {
      const Hypermatrix e = standard_E(k, Field::create(q));
      CHECK(is_nondegenerate(e));
      CHECK(respects(e, staircase_delta(k)));
    }
  CHECK(is_nondegenerate_oracle(e3));
}

TEST_CASE("diagonal and cyclic action on E, k=3") {
  auto f5 = Field::create(5);
  const int a = 1, b = 2, c = 3, d = 4, x = 2;
  const Matrix g1 = mat(f5, {{a, 0, 0, 0}, {0, b, 0, 0}, {0, 0, c, 0}, {0, 0, 0, d}});
  const Matrix g2 = mat(f5, {{0, 0, x}, {1, 0, 0}, {0, 1, 0}});
  const Hypermatrix h = act(g1, g2, standard_E(3, f5));
  CHECK(h.front() == mat(f5, {{0, a, 0}, {0, 0, b}, {(c * x) % 5, 0, 0}, {0, 0, 0}}));
  CHECK(h.back() == mat(f5, {{0, 0, 0}, {0, b, 0}, {0, 0, c}, {(d * x) % 5, 0, 0}}));
}

TEST_CASE("hyperrook placement as an action") {
  auto f2 = Field::create(2);
  const Matrix ms = permutation_matrix(Permutation::parse("4213"), f2);
  const Matrix mp = permutation_matrix(Permutation::parse("231").inverse(), f2);
  const Hypermatrix h = act(ms, mp, standard_E(3, f2));
  CHECK(h.front() == mat(f2, {{0, 1, 0}, {1, 0, 0}, {0, 0, 0}, {0, 0, 1}}));
  CHECK(h.back() == mat(f2, {{1, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 0, 0}}));
}

TEST_CASE("action laws and invariance, k=2 q=2") {
  auto f2 = Field::create(2);
  const auto gl3 = gl_enumerate(3, f2);
  const auto gl2 = gl_enumerate(2, f2);
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick3(0, gl3.size() - 1), pick2(0, gl2.size() - 1);
  for (std::uint64_t idx = 0; idx < 4096; ++idx) {
    const Hypermatrix h = decode(idx, 2, f2);
    CHECK(act(Matrix::identity(f2, 3), Matrix::identity(f2, 2), h) == h);
    const Matrix &g1 = gl3[pick3(rng)], &g2 = gl2[pick2(rng)], &h1 = gl3[pick3(rng)], &h2 = gl2[pick2(rng)];
    const Hypermatrix moved = act(g1, g2, h);
    CHECK(act(matmul(g1, h1), matmul(g2, h2), h) == act(g1, g2, act(h1, h2, h)));
    CHECK(is_nondegenerate(moved) == is_nondegenerate(h));
  }
  CHECK_THROWS_AS(act(Matrix::identity(f2, 2), Matrix::identity(f2, 2), standard_E(2, f2)), Error);
  CHECK_THROWS_AS(act(mat(f2, {{1, 1, 0}, {1, 1, 0}, {0, 0, 1}}), Matrix::identity(f2, 2), standard_E(2, f2)), Error);
}

TEST_CASE("mixing the faces") {
  auto f3 = Field::create(3);
  const Hypermatrix e = standard_E(2, f3);
  CHECK(act_face_mix(Matrix::identity(f3, 2), e) == e);
  const Hypermatrix swapped = act_face_mix(mat(f3, {{0, 1}, {1, 0}}), e);
  CHECK(swapped.front() == e.back());
  CHECK(swapped.back() == e.front());
  CHECK(is_nondegenerate(swapped));

  auto f2 = Field::create(2);
  const Hypermatrix same(standard_E(2, f2).front(), standard_E(2, f2).front());
  CHECK_FALSE(is_nondegenerate(act_face_mix(mat(f2, {{1, 1}, {0, 1}}), same)));
  CHECK_THROWS_AS(act_face_mix(mat(f3, {{1, 1}, {1, 1}}), e), Error);
}

TEST_CASE("pencil minors") {
  auto f3 = Field::create(3);
  // pencil [[x,0],[y,x],[0,y]]: deleting a row leaves y^2, xy, x^2
  const auto forms = pencil_minors(standard_E(2, f3));
  REQUIRE(forms.size() == 3);
  CHECK(forms[0].dehomogenized.degree() == 0);  // y^2 -> constant, lead 0
  CHECK(forms[0].lead == 0);
  CHECK(forms[1].dehomogenized.degree() == 1);  // xy -> t
  CHECK(forms[1].dehomogenized.coefficient(0) == 0);
  CHECK(forms[1].lead == 0);
  CHECK(forms[2].dehomogenized.degree() == 2);  // x^2 -> t^2
  CHECK(forms[2].lead != 0);

  auto f2 = Field::create(2);
  const Matrix m = mat(f2, {{1, 0}, {0, 1}, {1, 1}});
  for (const auto& form : pencil_minors(Hypermatrix(m, m))) {
    // (x+y)^2 times a constant; t = 1 is a root of every nonzero form
    if (!form.dehomogenized.is_zero()) CHECK(form.dehomogenized.evaluate(1) == 0);
  }
  CHECK_FALSE(is_nondegenerate(Hypermatrix(m, m)));

  const Hypermatrix zero_col(mat(f3, {{1, 0}, {2, 0}, {0, 0}}), mat(f3, {{0, 0}, {1, 0}, {1, 0}}));
  for (const auto& form : pencil_minors(zero_col)) {
    CHECK(form.dehomogenized.is_zero());
    CHECK(form.lead == 0);
  }
}

TEST_CASE("zero slices are degenerate") {
  auto f3 = Field::create(3);
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> val(0, 2);
  for (int trial = 0; trial < 300; ++trial) {
    Hypermatrix h = Hypermatrix::zero(3, f3);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 3; ++c) {
        h.front()(r, c) = static_cast<Element>(val(rng));
        h.back()(r, c) = static_cast<Element>(val(rng));
      }
    const int kind = trial % 3;
    if (kind == 0) h.back() = Matrix(f3, 4, 3);
    for (int c = 0; c < 3 && kind == 1; ++c) h.front()(trial % 4, c) = h.back()(trial % 4, c) = 0;
    for (int r = 0; r < 4 && kind == 2; ++r) h.front()(r, trial % 3) = h.back()(r, trial % 3) = 0;
    CHECK_FALSE(is_nondegenerate(h));
  }
}

TEST_CASE("exhaustive k=2 q=2: 1008 nondegenerate, matching the closure oracle") {
  auto f2 = Field::create(2);
  int nondegenerate = 0;
  bool agree = true;
  for (std::uint64_t idx = 0; idx < 4096; ++idx) {
    const Hypermatrix h = decode(idx, 2, f2);
    const bool nd = is_nondegenerate(h);
    nondegenerate += nd;
    agree = agree && nd == is_nondegenerate_oracle(h);
  }
  CHECK(nondegenerate == 1008);
  CHECK(agree);
}

TEST_CASE("closure oracle agreement, k=2 q=3 exhaustive and k=3 q=2 sampled") {
  auto f3 = Field::create(3);
  const std::uint64_t total = power(3, 12);
  std::uint64_t disagreements = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const Hypermatrix h = decode(idx, 2, f3);
    disagreements += is_nondegenerate(h) != is_nondegenerate_oracle(h);
  }
  CHECK(disagreements == 0);

  auto f2 = Field::create(2);
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::uint64_t> any(0, power(2, 24) - 1);
  disagreements = 0;
  for (int trial = 0; trial < 100000; ++trial) {
    const Hypermatrix h = decode(any(rng), 3, f2);
    disagreements += is_nondegenerate(h) != is_nondegenerate_oracle(h);
  }
  CHECK(disagreements == 0);
  CHECK_THROWS_AS(is_nondegenerate_oracle(standard_E(2, Field::create(2, 2))), Error);
}

TEST_CASE("oracle rejects proportional faces") {
  for (int p : {2, 3, 5}) {
    auto f = Field::create(p);
    const Matrix pad = mat(f, {{1, 0}, {0, 1}, {0, 0}});
    CHECK_FALSE(is_nondegenerate_oracle(Hypermatrix(pad, pad)));
  }
}

TEST_CASE("respecting shapes") {
  auto f3 = Field::create(3);
  const auto P = PlanePartition::create(4, {4, 2, 1, 0}, {3, 2, 1, 0});
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> val(1, 2);
  // star pattern of the two faces; zeros elsewhere
  const std::vector<std::string> front_pattern{"****", "0***", "0***", "00**", "000*"};
  const std::vector<std::string> back_pattern{"****", "****", "0***", "00**", "000*"};
  for (int trial = 0; trial < 50; ++trial) {
    Hypermatrix h = Hypermatrix::zero(4, f3);
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 4; ++c) {
        if (front_pattern[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] == '*')
          h.front()(r, c) = static_cast<Element>(val(rng));
        if (back_pattern[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] == '*')
          h.back()(r, c) = static_cast<Element>(val(rng));
      }
    CHECK(respects(h, P));
    Hypermatrix bad = h;
    bad.back()(4, 2) = 1;
    CHECK_FALSE(respects(bad, P));
  }
  CHECK(respects(standard_E(3, f3), empty_shape(3)));
  CHECK_THROWS_AS(respects(standard_E(3, f3), empty_shape(2)), Error);
}

TEST_CASE("respecting a larger shape implies respecting a smaller one") {
  auto f2 = Field::create(2);
  const auto shapes = enumerate_subshapes(2);
  for (std::uint64_t idx = 0; idx < 4096; idx += 7) {
    const Hypermatrix h = decode(idx, 2, f2);
    for (const auto& big : shapes)
      for (const auto& small : shapes)
        if (contains(big, small) && respects(h, big)) CHECK(respects(h, small));
  }
}

TEST_CASE("JSON literal roundtrip") {
  auto f4 = Field::create(2, 2);
  Hypermatrix h = standard_E(2, f4);
  h.front()(2, 1) = 3;
  const auto j = to_json(h);
  CHECK(j["q"] == "2^2");
  CHECK(hypermatrix_from_json(j) == h);
  CHECK_THROWS_AS(hypermatrix_from_json(nlohmann::json{{"k", 0}, {"q", "2"}, {"front", nlohmann::json::array()},
                                                       {"back", nlohmann::json::array()}}),
                  Error);
}
