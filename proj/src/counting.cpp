#include "hyperdet/counting.hpp"

#include <chrono>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "hyperdet/errors.hpp"
#include "hyperdet/hypermatrix.hpp"
#include "parallel.hpp"

namespace hyperdet {

namespace {

std::uint64_t checked_power(int q, int e, std::uint64_t budget, const std::string& what) {
  std::uint64_t total = 1;
  for (int i = 0; i < e; ++i) {
    if (total > budget / static_cast<std::uint64_t>(q))
      throw Error(Errc::BudgetExceeded, what + ": " + std::to_string(q) + "^" + std::to_string(e) +
                                            " exceeds the budget " + std::to_string(budget));
    total *= static_cast<std::uint64_t>(q);
  }
  return total;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::uint64_t parse_budget_value(std::string_view text) {
  const std::string s(text);
  const auto caret = s.find('^');
  try {
    std::size_t used = 0;
    if (caret == std::string::npos) {
      const auto v = std::stoull(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    }
    const auto base = std::stoull(s.substr(0, caret), &used);
    if (used != caret) throw std::invalid_argument(s);
    const auto exp = std::stoull(s.substr(caret + 1), &used);
    if (used != s.size() - caret - 1 || exp > 63) throw std::invalid_argument(s);
    std::uint64_t v = 1;
    for (unsigned long long i = 0; i < exp; ++i) {
      if (v > UINT64_MAX / base) return UINT64_MAX;
      v *= base;
    }
    return v;
  } catch (const std::logic_error&) {
    throw Error(Errc::InvalidArgument, "bad budget value '" + s + "'");
  }
}

}  // namespace

Budgets parse_budget_override(std::string_view text, Budgets base) {
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(Errc::InvalidArgument, "budget override entry '" + item + "' lacks '='");
    const std::string key = item.substr(0, eq);
    const std::uint64_t value = parse_budget_value(std::string_view(item).substr(eq + 1));
    if (key == "brute") base.brute = value;
    else if (key == "action") base.action = value;
    else if (key == "cells") base.cells_max_k = static_cast<int>(std::min<std::uint64_t>(value, kMaxFormatK));
    else throw Error(Errc::InvalidArgument, "unknown budget '" + key + "'");
  }
  return base;
}

Budgets budgets_from_env(Budgets base) {
  const char* env = std::getenv("HYPERDET_BUDGET_OVERRIDE");
  if (env == nullptr || *env == '\0') return base;
  return parse_budget_override(env, base);
}

Conjectured conjectured_polynomial(const PlanePartition& P) {
  const int k = P.k();
  QPolynomial f = QPolynomial::constant(1);
  for (int i = 1; i <= k; ++i) {
    f = f * q_int(k + 2 - i - P.lam().part(i));
    f = f * q_int(k + 1 - i - P.mu().part(i));
  }
  return {f, prefactor(k) * f};
}

bool is_proved_family(const PlanePartition& P) {
  return P.k() <= 2 || P.mu().is_empty() || P == staircase_delta(P.k());
}

// ---------------------------------------------------------------- brute force

std::uint64_t brute_force_count(const PlanePartition& P, const FieldPtr& field, int jobs, std::uint64_t budget) {
  const int k = P.k();
  if (k > kMaxFormatK) throw Error(Errc::InvalidArgument, "k too large");
  const int q = field->size();
  // Free cells in (face, column, row) order; the first one is the most
  // significant odometer digit.
  std::vector<std::pair<int, int>> cells;  // (face, offset into the face array)
  for (int face = 1; face <= 2; ++face)
    for (int c = 1; c <= k; ++c)
      for (int r = 1; r <= k + 1; ++r)
        if (!cell_in_shape(P, face, r, c)) cells.emplace_back(face, (r - 1) * k + (c - 1));
  const int free = static_cast<int>(cells.size());
  checked_power(q, free, budget, "brute force over " + P.to_string());

  // Shards fix the leading digits.
  int prefix = 0;
  std::uint64_t shards = 1;
  while (jobs > 1 && prefix < free && shards < static_cast<std::uint64_t>(jobs) * 8) {
    shards *= static_cast<std::uint64_t>(q);
    ++prefix;
  }
  const int rest = free - prefix;
  std::vector<std::uint64_t> partial(shards, 0);
  std::vector<NondegeneracyKernel> kernels;
  for (int w = 0; w < std::max(1, jobs); ++w) kernels.emplace_back(*field, k);

  detail::parallel_tasks(shards, jobs, [&](std::size_t worker, std::size_t shard) {
    std::vector<Element> faces(2 * (k + 1) * k, 0);
    Element* front = faces.data();
    Element* back = faces.data() + (k + 1) * k;
    std::vector<Element*> slot(free);
    for (int i = 0; i < free; ++i) slot[i] = (cells[i].first == 1 ? front : back) + cells[i].second;
    std::uint64_t s = shard;
    for (int i = prefix - 1; i >= 0; --i) {
      *slot[i] = static_cast<Element>(s % q);
      s /= q;
    }
    NondegeneracyKernel& kernel = kernels[worker];
    std::uint64_t count = 0;
    std::vector<int> digit(rest, 0);
    while (true) {
      if (kernel(front, back)) ++count;
      int pos = rest - 1;
      while (pos >= 0) {
        Element* cell = slot[prefix + pos];
        if (++digit[pos] < q) {
          *cell = static_cast<Element>(digit[pos]);
          break;
        }
        digit[pos] = 0;
        *cell = 0;
        --pos;
      }
      if (pos < 0) break;
    }
    partial[shard] = count;
  });
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

// ---------------------------------------------------------------- group action

std::uint64_t action_count(const PlanePartition& P, const FieldPtr& field, int jobs, std::uint64_t budget) {
  const int k = P.k();
  const int q = field->size();
  const std::uint64_t big = gl_order(k + 1, q);
  const std::uint64_t small = gl_order(k, q);
  if (big == UINT64_MAX || small == UINT64_MAX || (small != 0 && big > budget / small))
    throw Error(Errc::BudgetExceeded, "|GL_" + std::to_string(k + 1) + "| * |GL_" + std::to_string(k) + "| over " +
                                          field->name() + " exceeds the budget " + std::to_string(budget));
  const Field& f = *field;
  const std::vector<Matrix> g2s = gl_enumerate(k, field, budget);
  const Hypermatrix E = standard_E(k, field);
  std::vector<std::uint64_t> partial(g2s.size(), 0);

  detail::parallel_tasks(g2s.size(), jobs, [&](std::size_t, std::size_t t) {
    const Matrix g2t = transpose(g2s[t]);
    const Matrix front = matmul(E.front(), g2t);
    const Matrix back = matmul(E.back(), g2t);
    // Row r of g1 * face must vanish in the columns P forces to zero there,
    // so each row of g1 must be orthogonal to those columns of front / back.
    std::vector<std::vector<std::vector<Element>>> orth(k + 1);
    for (int r = 1; r <= k + 1; ++r) {
      for (int c = 1; c <= k; ++c) {
        for (int face = 1; face <= 2; ++face) {
          if (!cell_in_shape(P, face, r, c)) continue;
          const Matrix& m = face == 1 ? front : back;
          std::vector<Element> col(k + 1);
          for (int s = 0; s <= k; ++s) col[s] = m(s, c - 1);
          orth[r - 1].push_back(std::move(col));
        }
      }
    }
    const InvertibleEnumerator::RowFilter filter = [&](std::size_t row, std::span<const Element> v) {
      for (const auto& col : orth[row]) {
        Element dot = 0;
        for (int s = 0; s <= k; ++s) dot = f.add(dot, f.mul(v[s], col[s]));
        if (dot != 0) return false;
      }
      return true;
    };
    std::uint64_t count = 0;
    InvertibleEnumerator(k + 1, field, UINT64_MAX).for_each([&](std::span<const Element>) { ++count; }, filter);
    partial[t] = count;
  });
  const std::uint64_t pairs = std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
  if (pairs % static_cast<std::uint64_t>(q - 1) != 0)
    throw Error(Errc::NonDivisibleCount, std::to_string(pairs) + " pairs is not divisible by q-1 = " + std::to_string(q - 1));
  return pairs / static_cast<std::uint64_t>(q - 1);
}

std::uint64_t action_count_literal(const PlanePartition& P, const FieldPtr& field, std::uint64_t budget) {
  const int k = P.k();
  const auto g1s = gl_enumerate(k + 1, field, budget);
  const auto g2s = gl_enumerate(k, field, budget);
  const Hypermatrix E = standard_E(k, field);
  std::uint64_t pairs = 0;
  for (const auto& g1 : g1s)
    for (const auto& g2 : g2s)
      if (respects(act(g1, g2, E), P)) ++pairs;
  const auto q1 = static_cast<std::uint64_t>(field->size() - 1);
  if (pairs % q1 != 0) throw Error(Errc::NonDivisibleCount, "pair count not divisible by q-1");
  return pairs / q1;
}

// ---------------------------------------------------------------- cells

std::vector<QPolynomial> cell_polynomials(int k, const std::vector<PlanePartition>& shapes, int jobs, int max_k) {
  if (k < 1) throw Error(Errc::InvalidArgument, "k must be at least 1");
  if (k > max_k) throw Error(Errc::BudgetExceeded, "cell sweep limited to k <= " + std::to_string(max_k));
  for (const auto& P : shapes)
    if (P.k() != k) throw Error(Errc::FormatMismatch, "all shapes must share k");
  const auto sigmas = all_permutations(k + 1);
  const auto pis = all_permutations(k);
  const int max_exp = k * k;
  const std::size_t width = static_cast<std::size_t>(max_exp + 1);
  const int workers = std::max(1, jobs);
  std::vector<std::vector<std::uint64_t>> hist(workers, std::vector<std::uint64_t>(shapes.size() * width, 0));
  detail::parallel_tasks(sigmas.size(), jobs, [&](std::size_t worker, std::size_t si) {
    auto& h = hist[worker];
    for (const auto& pi : pis) {
      const PairProfile prof(sigmas[si], pi);
      for (std::size_t s = 0; s < shapes.size(); ++s) {
        if (!prof.rook_respects(shapes[s])) continue;
        ++h[s * width + static_cast<std::size_t>(prof.variable_count() - prof.h(shapes[s]))];
      }
    }
  });
  std::vector<QPolynomial> out;
  out.reserve(shapes.size());
  for (std::size_t s = 0; s < shapes.size(); ++s) {
    std::vector<BigInt> coeffs(width, 0);
    for (int w = 0; w < workers; ++w)
      for (std::size_t e = 0; e < width; ++e) coeffs[e] += hist[w][s * width + e];
    out.emplace_back(std::move(coeffs));
  }
  return out;
}

QPolynomial cell_polynomial(const PlanePartition& P, int jobs, int max_k) {
  return cell_polynomials(P.k(), {P}, jobs, max_k).front();
}

QPolynomial cell_polynomial_symbolic(const PlanePartition& P) {
  QPolynomial out;
  for (const auto& [sigma, pi] : hyperrook_placements(P)) {
    const SymbolicHypermatrix g = generic_augmented(sigma, pi);
    const HCount h = h_count(g, P);
    out += QPolynomial::monomial(static_cast<std::size_t>(g.variables().size() - h.value));
  }
  return out;
}

// ---------------------------------------------------------------- reports

const char* to_string(Method m) noexcept {
  switch (m) {
    case Method::Brute: return "brute";
    case Method::Action: return "action";
    case Method::Cells: return "cells";
  }
  return "?";
}

Method parse_method(std::string_view text) {
  if (text == "brute") return Method::Brute;
  if (text == "action") return Method::Action;
  if (text == "cells") return Method::Cells;
  throw Error(Errc::InvalidArgument, "unknown method '" + std::string(text) + "'");
}

bool CountReport::internal_mismatch() const {
  return (flags.cells_vs_brute && !*flags.cells_vs_brute) || (flags.cells_vs_action && !*flags.cells_vs_action) ||
         !flags.f1_vs_hyperrook;
}

CountReport verify_conjecture(const PlanePartition& P, const VerifyOptions& options) {
  CountReport report;
  report.shape = P;
  const auto start = std::chrono::steady_clock::now();
  report.f_poly = options.precomputed_f ? *options.precomputed_f
                                        : cell_polynomial(P, options.jobs, options.budgets.cells_max_k);
  report.cells_seconds = options.precomputed_f ? 0.0 : seconds_since(start);
  report.conjectured = conjectured_polynomial(P);
  report.hyperrook = hyperrook_count(P);
  report.proved_family = is_proved_family(P);
  report.flags.poly_vs_conjecture = report.f_poly == report.conjectured.f_product;
  report.flags.f1_vs_hyperrook = report.f_poly.evaluate(1) == BigInt(report.hyperrook);
  const QPolynomial pre = prefactor(P.k());

  for (const auto& field : options.fields) {
    const int q = field->size();
    const BigInt cells = pre.evaluate(q) * report.f_poly.evaluate(q);
    report.results.push_back({q, Method::Cells, cells, report.cells_seconds});
    for (Method m : options.methods) {
      if (m == Method::Cells) continue;
      const auto t0 = std::chrono::steady_clock::now();
      std::uint64_t value = 0;
      try {
        value = m == Method::Brute ? brute_force_count(P, field, options.jobs, options.budgets.brute)
                                   : action_count(P, field, options.jobs, options.budgets.action);
      } catch (const Error& e) {
        if (e.code() != Errc::BudgetExceeded || !options.skip_over_budget) throw;
        report.skipped.push_back("q=" + std::to_string(q) + " " + to_string(m) + ": over budget");
        continue;
      }
      report.results.push_back({q, m, BigInt(value), seconds_since(t0)});
      auto& flag = m == Method::Brute ? report.flags.cells_vs_brute : report.flags.cells_vs_action;
      const bool same = BigInt(value) == cells;
      flag = flag.value_or(true) && same;
    }
  }
  return report;
}

// ---------------------------------------------------------------- classical

std::uint64_t classical_rook_count(const IntegerPartition& lam) {
  const int n = static_cast<int>(lam.length());
  std::uint64_t out = 1;
  for (int i = 1; i <= n; ++i) {
    const int factor = n + 1 - i - lam.part(i);
    if (factor <= 0) return 0;
    out *= static_cast<std::uint64_t>(factor);
  }
  return out;
}

std::uint64_t classical_rook_count_brute(const IntegerPartition& lam) {
  const int n = static_cast<int>(lam.length());
  std::uint64_t count = 0;
  for (const auto& s : all_permutations(n)) {
    bool ok = true;
    for (int j = 1; j <= n && ok; ++j) ok = s(j) <= n - lam.part(j);
    if (ok) ++count;
  }
  return count;
}

QPolynomial classical_matrix_polynomial(const IntegerPartition& lam) {
  const int n = static_cast<int>(lam.length());
  QPolynomial out = QPolynomial::monomial(static_cast<std::size_t>(n * (n - 1) / 2));
  const QPolynomial q_minus_one({-1, 1});
  for (int i = 1; i <= n; ++i) out = out * q_minus_one * q_int(n + 1 - i - lam.part(i));
  return out;
}

namespace {

// Rank-n test for a small square matrix held in a scratch buffer (destroyed).
bool full_rank(const Field& f, Element* m, int n) {
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && m[pivot * n + col] == 0) ++pivot;
    if (pivot == n) return false;
    if (pivot != col)
      for (int c = col; c < n; ++c) std::swap(m[pivot * n + c], m[col * n + c]);
    const Element inv = f.inv(m[col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      const Element factor = m[r * n + col];
      if (factor == 0) continue;
      const Element scale = f.neg(f.mul(factor, inv));
      for (int c = col; c < n; ++c) m[r * n + c] = f.add(m[r * n + c], f.mul(scale, m[col * n + c]));
    }
  }
  return true;
}

}  // namespace

std::uint64_t classical_matrix_count(const IntegerPartition& lam, const FieldPtr& field, std::uint64_t budget) {
  const int n = static_cast<int>(lam.length());
  const Field& f = *field;
  const int q = f.size();
  std::vector<int> cells;
  for (int c = 1; c <= n; ++c)
    for (int r = 1; r <= n - lam.part(c); ++r) cells.push_back((r - 1) * n + (c - 1));
  const int free = static_cast<int>(cells.size());
  const std::uint64_t total = checked_power(q, free, budget, "classical matrix count");
  std::vector<Element> m(n * n, 0), scratch(n * n);
  std::vector<int> digit(free, 0);
  std::uint64_t count = 0;
  for (std::uint64_t step = 0; step < total; ++step) {
    scratch = m;
    if (full_rank(f, scratch.data(), n)) ++count;
    for (int pos = free - 1; pos >= 0; --pos) {
      if (++digit[pos] < q) {
        m[cells[pos]] = static_cast<Element>(digit[pos]);
        break;
      }
      digit[pos] = 0;
      m[cells[pos]] = 0;
    }
  }
  return count;
}

bool transposition_identity_check(int k) {
  // lambda ranges over the partitions with lambda_i <= k+1-i, i.e. the first
  // layer of the staircase and everything below it.
  for (const auto& P : enumerate_subshapes(k)) {
    if (!P.mu().is_empty()) continue;
    const IntegerPartition& lam = P.lam();
    const IntegerPartition lt = transpose(lam);
    QPolynomial lhs = QPolynomial::constant(1);
    QPolynomial rhs = QPolynomial::constant(1);
    for (int i = 1; i <= k; ++i) lhs = lhs * q_int(k + 2 - i - lam.part(i));
    for (int i = 1; i <= k + 1; ++i) rhs = rhs * q_int(k + 2 - i - lt.part(i));
    if (!(lhs == rhs)) return false;
  }
  return true;
}

MaxShapeResult max_shape_check(int k, const FieldPtr& field, int jobs, std::uint64_t budget) {
  MaxShapeResult out;
  out.staircase_count = brute_force_count(staircase_delta(k), field, jobs, budget);
  out.holds = out.staircase_count > 0;
  for (const auto& P : staircase_extensions(k)) {
    const std::uint64_t c = brute_force_count(P, field, jobs, budget);
    out.extensions.emplace_back(P, c);
    if (c != 0) out.holds = false;
  }
  return out;
}

}  // namespace hyperdet
