#include "hyperdet/selftest.hpp"

#include <chrono>
#include <functional>
#include <set>
#include <sstream>

#include "hyperdet/counting.hpp"
#include "hyperdet/errors.hpp"
#include "hyperdet/hypermatrix.hpp"
#include "hyperdet/permcells.hpp"

namespace hyperdet {

namespace {

using Check = std::function<std::string()>;  // empty string on success

std::string field_axioms(int q) {
  const FieldPtr f = parse_field(std::to_string(q));
  for (int a = 0; a < q; ++a) {
    const auto ea = static_cast<Element>(a);
    if (a != 0 && f->mul(ea, f->inv(ea)) != 1) return "inverse fails in " + f->name();
    for (int b = 0; b < q; ++b) {
      const auto eb = static_cast<Element>(b);
      if (f->add(ea, eb) != f->add(eb, ea) || f->mul(ea, eb) != f->mul(eb, ea)) return "commutativity fails";
      for (int c = 0; c < q; ++c) {
        const auto ec = static_cast<Element>(c);
        if (f->mul(ea, f->add(eb, ec)) != f->add(f->mul(ea, eb), f->mul(ea, ec))) return "distributivity fails";
        if (f->mul(f->mul(ea, eb), ec) != f->mul(ea, f->mul(eb, ec))) return "associativity fails";
      }
    }
  }
  return {};
}

std::string nondegenerate_matches_oracle(int q, int k) {
  const FieldPtr f = Field::create(q);
  const int cells = 2 * (k + 1) * k;
  std::uint64_t total = 1;
  for (int i = 0; i < cells; ++i) total *= static_cast<std::uint64_t>(q);
  Hypermatrix h = Hypermatrix::zero(k, f);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t v = idx;
    for (int i = 0; i < cells; ++i) {
      Matrix& m = i < cells / 2 ? h.front() : h.back();
      const int j = i % (cells / 2);
      m(j / k, j % k) = static_cast<Element>(v % q);
      v /= q;
    }
    if (is_nondegenerate(h) != is_nondegenerate_oracle(h)) {
      std::ostringstream os;
      os << "disagreement on " << h;
      return os.str();
    }
  }
  return {};
}

std::string four_way(int k, int q, int jobs, bool with_action) {
  const FieldPtr f = parse_field(std::to_string(q));
  for (const auto& P : enumerate_subshapes(k)) {
    const BigInt cells = prefactor(k).evaluate(q) * cell_polynomial(P, jobs).evaluate(q);
    const BigInt conj = conjectured_polynomial(P).full.evaluate(q);
    if (BigInt(brute_force_count(P, f, jobs)) != cells) return "brute differs from cells at " + P.to_string();
    if (with_action && BigInt(action_count(P, f, jobs)) != cells) return "action differs from cells at " + P.to_string();
    if (is_proved_family(P) && conj != cells) return "proved family differs from the product at " + P.to_string();
  }
  return {};
}

std::string stabilizer(int q) {
  const FieldPtr f = Field::create(q);
  const Hypermatrix E = standard_E(2, f);
  std::uint64_t fixed = 0;
  std::set<std::vector<Element>> orbit;
  for (const auto& g1 : gl_enumerate(3, f))
    for (const auto& g2 : gl_enumerate(2, f)) {
      const Hypermatrix h = act(g1, g2, E);
      if (h == E) ++fixed;
      std::vector<Element> key(h.front().entries().begin(), h.front().entries().end());
      key.insert(key.end(), h.back().entries().begin(), h.back().entries().end());
      orbit.insert(std::move(key));
    }
  if (fixed != static_cast<std::uint64_t>(q - 1)) return "stabilizer has size " + std::to_string(fixed);
  const std::uint64_t total = brute_force_count(empty_shape(2), f);
  if (orbit.size() != total)
    return "orbit size " + std::to_string(orbit.size()) + " vs nondegenerate count " + std::to_string(total);
  return {};
}

std::string augmented_methods(int kmax, int q) {
  const FieldPtr f = Field::create(q);
  for (int k = 1; k <= kmax; ++k) {
    const auto shapes = enumerate_subshapes(k);
    for (const auto& sigma : all_permutations(k + 1))
      for (const auto& pi : all_permutations(k)) {
        const auto brute = count_augmented_brute_batch(sigma, pi, shapes, f);
        for (std::size_t s = 0; s < shapes.size(); ++s) {
          const BigInt solve = count_augmented_respecting(sigma, pi, shapes[s], f, AugmentedMethod::Solve);
          if (BigInt(brute[s]) != solve)
            return "(" + sigma.to_string() + ", " + pi.to_string() + ") at " + shapes[s].to_string();
        }
      }
  }
  return {};
}

std::string acyclic(int kmax) {
  for (int k = 1; k <= kmax; ++k)
    for (const auto& sigma : all_permutations(k + 1))
      for (const auto& pi : all_permutations(k)) DepDigraph::build(sigma, pi);
  return {};
}

std::string wc_roundtrip(int kmax) {
  for (int k = 1; k <= kmax; ++k) {
    std::set<std::pair<Permutation, Permutation>> image;
    for (const auto& sigma : all_permutations(k + 1))
      for (const auto& pi : all_permutations(k)) {
        const WCPair p = wc_from(sigma, pi);
        if (wc_inverse(p.w, p.c) != std::make_pair(sigma, pi)) return "roundtrip fails at k=" + std::to_string(k);
        image.emplace(p.w, p.c);
      }
    std::size_t expected = 1;
    for (int i = 2; i <= k + 1; ++i) expected *= static_cast<std::size_t>(i);
    for (int i = 2; i <= k; ++i) expected *= static_cast<std::size_t>(i);
    if (image.size() != expected) return "collision at k=" + std::to_string(k);
  }
  return {};
}

std::string cell_properties(int kmax, int jobs) {
  for (int k = 1; k <= kmax; ++k) {
    const auto shapes = enumerate_subshapes(k);
    const auto fs = cell_polynomials(k, shapes, jobs);
    for (std::size_t s = 0; s < shapes.size(); ++s) {
      if (!fs[s].has_nonnegative_coefficients()) return "negative coefficient at " + shapes[s].to_string();
      if (fs[s].evaluate(1) != BigInt(hyperrook_count(shapes[s]))) return "f(1) differs at " + shapes[s].to_string();
      if (hyperrook_count(shapes[s]) != hyperrook_count_brute(shapes[s]))
        return "hyperrook product differs at " + shapes[s].to_string();
      if (is_proved_family(shapes[s]) && !(fs[s] == conjectured_polynomial(shapes[s]).f_product))
        return "proved family fails at " + shapes[s].to_string();
    }
  }
  return {};
}

std::string classical(int nmax, int q) {
  const FieldPtr f = Field::create(q);
  for (int n = 1; n <= nmax; ++n) {
    // staircase-bounded: lambda_i <= n - i
    std::vector<int> cap(n);
    for (int i = 0; i < n; ++i) cap[i] = n - 1 - i;
    std::vector<std::vector<int>> lams;
    std::vector<int> cur(n, 0);
    std::function<void(int)> rec = [&](int pos) {
      if (pos == n) {
        lams.push_back(cur);
        return;
      }
      const int hi = pos == 0 ? cap[0] : std::min(cap[pos], cur[pos - 1]);
      for (int v = 0; v <= hi; ++v) {
        cur[pos] = v;
        rec(pos + 1);
      }
    };
    rec(0);
    for (const auto& parts : lams) {
      const auto lam = IntegerPartition::create(parts, n);
      if (classical_rook_count(lam) != classical_rook_count_brute(lam)) return "rook count differs for " + lam.to_string();
      if (BigInt(classical_matrix_count(lam, f)) != classical_matrix_polynomial(lam).evaluate(q))
        return "matrix count differs for " + lam.to_string();
    }
  }
  return {};
}

}  // namespace

std::vector<SelftestCheck> run_selftest(SelftestLevel level, int jobs, std::ostream* progress) {
  std::vector<std::pair<std::string, Check>> checks = {
      {"field axioms q <= 9", [] {
         for (int q : {2, 3, 4, 5, 7, 8, 9})
           if (auto e = field_axioms(q); !e.empty()) return e;
         return std::string{};
       }},
      {"nondegeneracy vs closure oracle, k=2 q=2", [] { return nondegenerate_matches_oracle(2, 2); }},
      {"k=2 shape table, q in {2,3}", [jobs] {
         if (auto e = four_way(2, 2, jobs, true); !e.empty()) return e;
         return four_way(2, 3, jobs, true);
       }},
      {"stabilizer and orbit of E, k=2 q=2", [] { return stabilizer(2); }},
      {"staircase maximality, k <= 2, q=2", [jobs] {
         for (int k : {1, 2})
           if (!max_shape_check(k, Field::create(2), jobs).holds) return "fails at k=" + std::to_string(k);
         return std::string{};
       }},
      {"(w, c) bijection, k <= 4", [] { return wc_roundtrip(4); }},
      {"dependency digraphs acyclic, k <= 4", [] { return acyclic(4); }},
      {"augmented brute = solve, k <= 2, q in {2,3}", [] {
         if (auto e = augmented_methods(2, 2); !e.empty()) return e;
         return augmented_methods(2, 3);
       }},
      {"cell polynomial properties, k <= 4", [jobs] { return cell_properties(4, jobs); }},
      {"transposition identity, k <= 4", [] {
         for (int k = 1; k <= 4; ++k)
           if (!transposition_identity_check(k)) return "fails at k=" + std::to_string(k);
         return std::string{};
       }},
      {"classical oracle, n <= 3, q in {2,3}", [] {
         if (auto e = classical(3, 2); !e.empty()) return e;
         return classical(3, 3);
       }},
  };
  if (level == SelftestLevel::Full) {
    checks.push_back({"nondegeneracy vs closure oracle, k=2 q=3", [] { return nondegenerate_matches_oracle(3, 2); }});
    checks.push_back({"stabilizer and orbit of E, k=2 q=3", [] { return stabilizer(3); }});
    checks.push_back({"k=2 shape table, q in {4,5}", [jobs] {
                        if (auto e = four_way(2, 4, jobs, true); !e.empty()) return e;
                        return four_way(2, 5, jobs, false);
                      }});
    checks.push_back({"staircase maximality, k <= 2, q=3", [jobs] {
                        for (int k : {1, 2})
                          if (!max_shape_check(k, Field::create(3), jobs).holds) return "fails at k=" + std::to_string(k);
                        return std::string{};
                      }});
    checks.push_back({"augmented brute = solve, k=3, q in {2,3}", [] {
                        if (auto e = augmented_methods(3, 2); !e.empty()) return e;
                        return augmented_methods(3, 3);
                      }});
    checks.push_back({"cell polynomial properties, k=5", [jobs] { return cell_properties(5, jobs); }});
    checks.push_back({"classical oracle, n=4, q in {2,3}", [] {
                        if (auto e = classical(4, 2); !e.empty()) return e;
                        return classical(4, 3);
                      }});
  }

  std::vector<SelftestCheck> out;
  for (auto& [name, check] : checks) {
    SelftestCheck result;
    result.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      result.detail = check();
      result.passed = result.detail.empty();
    } catch (const std::exception& e) {
      result.detail = e.what();
    }
    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (progress) {
      *progress << (result.passed ? "ok    " : "FAIL  ") << result.name;
      if (!result.passed) *progress << ": " << result.detail;
      *progress << '\n';
    }
    out.push_back(std::move(result));
  }
  return out;
}

}  // namespace hyperdet
