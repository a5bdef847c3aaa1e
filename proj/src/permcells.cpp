#include "hyperdet/permcells.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include "hyperdet/errors.hpp"

namespace hyperdet {

std::vector<Inversion> inversions(const Permutation& p) {
  std::vector<Inversion> out;
  for (int i = 1; i <= p.size(); ++i)
    for (int j = i + 1; j <= p.size(); ++j)
      if (p(i) > p(j)) out.emplace_back(i, j);
  return out;
}

Permutation extend(const Permutation& pi) {
  std::vector<int> img = pi.images();
  img.push_back(pi.size() + 1);
  return Permutation(std::move(img));
}

namespace {

void check_sizes(const Permutation& sigma, const Permutation& pi) {
  if (pi.size() < 1 || sigma.size() != pi.size() + 1)
    throw Error(Errc::SizeMismatch, "need sigma in S_{k+1} and pi in S_k, got sizes " + std::to_string(sigma.size()) +
                                        " and " + std::to_string(pi.size()));
}

}  // namespace

WCPair wc_from(const Permutation& sigma, const Permutation& pi) {
  check_sizes(sigma, pi);
  const Permutation pibar = extend(pi);
  return {sigma * pibar, pibar.inverse() * Permutation::long_cycle(sigma.size()) * pibar};
}

std::pair<Permutation, Permutation> wc_inverse(const Permutation& w, const Permutation& c) {
  if (w.size() != c.size() || w.size() < 2) throw Error(Errc::SizeMismatch, "w and c must both lie in S_{k+1}, k >= 1");
  if (!c.is_full_cycle()) throw Error(Errc::NotFullCycle, c.to_cycle_string() + " is not a single cycle");
  const int n = w.size();
  std::vector<int> pibar(n);
  pibar[n - 1] = n;
  int x = n;
  for (int t = 1; t < n; ++t) {
    x = c(x);
    pibar[x - 1] = t;
  }
  const Permutation pb(std::move(pibar));
  std::vector<int> pi(pb.images().begin(), pb.images().end() - 1);
  return {w * pb.inverse(), Permutation(std::move(pi))};
}

Hypermatrix hyperrook_pattern(const Permutation& sigma, const Permutation& pi, FieldPtr field) {
  const WCPair p = wc_from(sigma, pi);
  const Permutation wc = p.wc();
  Hypermatrix h = Hypermatrix::zero(pi.size(), std::move(field));
  for (int j = 1; j <= pi.size(); ++j) {
    h.front()(p.w(j) - 1, j - 1) = 1;
    h.back()(wc(j) - 1, j - 1) = 1;
  }
  return h;
}

bool hyperrook_respects(const WCPair& p, const PlanePartition& P) {
  const int k = P.k();
  if (p.w.size() != k + 1) throw Error(Errc::FormatMismatch, "placement and shape have different k");
  const Permutation wc = p.wc();
  for (int j = 1; j <= k; ++j) {
    if (p.w(j) > k + 1 - P.lam().part(j)) return false;
    if (wc(j) > k + 1 - P.mu().part(j)) return false;
  }
  return true;
}

std::uint64_t hyperrook_count(const PlanePartition& P) {
  const int k = P.k();
  std::uint64_t out = 1;
  for (int i = 1; i <= k; ++i) {
    const int a = k + 2 - i - P.lam().part(i);
    const int b = k + 1 - i - P.mu().part(i);
    if (a <= 0 || b <= 0) return 0;
    out *= static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(b);
  }
  return out;
}

std::vector<std::pair<Permutation, Permutation>> hyperrook_placements(const PlanePartition& P) {
  std::vector<std::pair<Permutation, Permutation>> out;
  const auto pis = all_permutations(P.k());
  for (const auto& sigma : all_permutations(P.k() + 1))
    for (const auto& pi : pis)
      if (hyperrook_respects(wc_from(sigma, pi), P)) out.emplace_back(sigma, pi);
  return out;
}

std::uint64_t hyperrook_count_brute(const PlanePartition& P) { return hyperrook_placements(P).size(); }

// ---------------------------------------------------------------- variables

std::string Variable::label() const { return std::string(1, kind) + "_" + std::to_string(i) + "_" + std::to_string(j); }

VariableSet::VariableSet(const Permutation& sigma, const Permutation& pi) : n_(sigma.size() + 1) {
  x_lookup_.assign(static_cast<std::size_t>(n_ * n_), -1);
  y_lookup_.assign(static_cast<std::size_t>(n_ * n_), -1);
  for (auto [i, j] : inversions(sigma)) {
    x_lookup_[i * n_ + j] = static_cast<int>(vars_.size());
    vars_.push_back({'x', i, j});
  }
  x_count_ = static_cast<int>(vars_.size());
  for (auto [i, j] : inversions(pi)) {
    y_lookup_[i * n_ + j] = static_cast<int>(vars_.size());
    vars_.push_back({'y', i, j});
  }
}

int VariableSet::x_id(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) return -1;
  return x_lookup_[i * n_ + j];
}

int VariableSet::y_id(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) return -1;
  return y_lookup_[i * n_ + j];
}

std::vector<int> SymbolicEntry::variables() const {
  std::vector<int> out;
  if (linear_x >= 0) out.push_back(linear_x);
  if (linear_y >= 0) out.push_back(linear_y);
  for (auto [x, y] : cross) {
    out.push_back(x);
    out.push_back(y);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string to_string(const SymbolicEntry& e, const VariableSet& vars) {
  switch (e.kind) {
    case EntryKind::Zero: return "0";
    case EntryKind::One: return "1";
    case EntryKind::Poly: break;
  }
  std::vector<std::string> terms;
  if (e.linear_x >= 0) terms.push_back(vars[e.linear_x].label());
  if (e.linear_y >= 0) terms.push_back(vars[e.linear_y].label());
  for (auto [x, y] : e.cross) terms.push_back(vars[x].label() + "*" + vars[y].label());
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) out += (i ? " + " : "") + terms[i];
  return out;
}

// ---------------------------------------------------------------- symbolic product

SymbolicHypermatrix::SymbolicHypermatrix(int k, Permutation sigma, Permutation pi, VariableSet vars,
                                         std::vector<SymbolicEntry> front, std::vector<SymbolicEntry> back)
    : k_(k),
      sigma_(std::move(sigma)),
      pi_(std::move(pi)),
      vars_(std::move(vars)),
      front_(std::move(front)),
      back_(std::move(back)) {}

const SymbolicEntry& SymbolicHypermatrix::entry(int face, int row, int col) const {
  if (face < 1 || face > 2 || row < 1 || row > k_ + 1 || col < 1 || col > k_)
    throw Error(Errc::IndexOutOfRange, "symbolic entry index out of range");
  const auto idx = static_cast<std::size_t>((row - 1) * k_ + (col - 1));
  return face == 1 ? front_[idx] : back_[idx];
}

Element SymbolicHypermatrix::evaluate(const Field& f, int face, int row, int col,
                                      std::span<const Element> values) const {
  const SymbolicEntry& e = entry(face, row, col);
  if (e.kind == EntryKind::Zero) return 0;
  if (e.kind == EntryKind::One) return 1;
  Element acc = 0;
  if (e.linear_x >= 0) acc = f.add(acc, values[e.linear_x]);
  if (e.linear_y >= 0) acc = f.add(acc, values[e.linear_y]);
  for (auto [x, y] : e.cross) acc = f.add(acc, f.mul(values[x], values[y]));
  return acc;
}

namespace {

// Entries of A and A': 0 is zero, 1 is one, 2 + id is a variable.
struct Generic {
  int k;
  std::vector<int> a;        // (k+1) x (k+1), 1-based indices mapped to 0-based storage
  std::vector<int> a_prime;  // k x k

  int A(int r, int c) const { return a[(r - 1) * (k + 1) + (c - 1)]; }
  int Ap(int r, int c) const { return a_prime[(r - 1) * k + (c - 1)]; }
};

Generic generic_factors(const Permutation& sigma, const Permutation& pi, const VariableSet& vars) {
  const int k = pi.size();
  Generic g{k, std::vector<int>((k + 1) * (k + 1), 0), std::vector<int>(k * k, 0)};
  for (int i = 1; i <= k + 1; ++i) g.a[(sigma(i) - 1) * (k + 1) + (i - 1)] = 1;
  for (auto [i, j] : inversions(sigma)) g.a[(sigma(i) - 1) * (k + 1) + (j - 1)] = 2 + vars.x_id(i, j);
  for (int i = 1; i <= k; ++i) g.a_prime[(pi(i) - 1) * k + (i - 1)] = 1;
  for (auto [i, j] : inversions(pi)) g.a_prime[(pi(j) - 1) * k + (i - 1)] = 2 + vars.y_id(i, j);
  return g;
}

SymbolicEntry classify(int ones, std::vector<int> xs, std::vector<int> ys, std::vector<std::pair<int, int>> cross) {
  SymbolicEntry e;
  if (ones == 0 && xs.empty() && ys.empty() && cross.empty()) return e;
  if (ones == 1 && xs.empty() && ys.empty() && cross.empty()) {
    e.kind = EntryKind::One;
    return e;
  }
  if (ones != 0 || xs.size() > 1 || ys.size() > 1)
    throw Error(Errc::InternalInvariant, "generic entry outside the expected linear-plus-cross shape");
  e.kind = EntryKind::Poly;
  if (!xs.empty()) e.linear_x = xs.front();
  if (!ys.empty()) e.linear_y = ys.front();
  std::sort(cross.begin(), cross.end());
  e.cross = std::move(cross);
  return e;
}

}  // namespace

SymbolicHypermatrix generic_augmented(const Permutation& sigma, const Permutation& pi) {
  check_sizes(sigma, pi);
  const int k = pi.size();
  VariableSet vars(sigma, pi);
  const Generic g = generic_factors(sigma, pi, vars);
  std::vector<SymbolicEntry> front, back;
  for (int face = 1; face <= 2; ++face) {
    auto& out = face == 1 ? front : back;
    for (int r = 1; r <= k + 1; ++r) {
      for (int c = 1; c <= k; ++c) {
        int ones = 0;
        std::vector<int> xs, ys;
        std::vector<std::pair<int, int>> cross;
        // front pairs A column l with A' row l; back shifts A' down by one.
        for (int l = 1; l <= k; ++l) {
          const int a = face == 1 ? g.A(r, l) : g.A(r, l + 1);
          const int b = g.Ap(l, c);
          if (a == 0 || b == 0) continue;
          if (a == 1 && b == 1) ++ones;
          else if (a == 1) ys.push_back(b - 2);
          else if (b == 1) xs.push_back(a - 2);
          else cross.emplace_back(a - 2, b - 2);
        }
        out.push_back(classify(ones, std::move(xs), std::move(ys), std::move(cross)));
      }
    }
  }
  return SymbolicHypermatrix(k, sigma, pi, std::move(vars), std::move(front), std::move(back));
}

Hypermatrix augmented_from_assignment(const Permutation& sigma, const Permutation& pi, const FieldPtr& field,
                                      std::span<const Element> values) {
  check_sizes(sigma, pi);
  const int k = pi.size();
  const VariableSet vars(sigma, pi);
  if (static_cast<int>(values.size()) != vars.size())
    throw Error(Errc::SizeMismatch, "assignment has the wrong number of values");
  Matrix A(field, k + 1, k + 1);
  Matrix Ap(field, k, k);
  for (int i = 1; i <= k + 1; ++i) A(sigma(i) - 1, i - 1) = 1;
  for (auto [i, j] : inversions(sigma)) A(sigma(i) - 1, j - 1) = values[vars.x_id(i, j)];
  for (int i = 1; i <= k; ++i) Ap(pi(i) - 1, i - 1) = 1;
  for (auto [i, j] : inversions(pi)) Ap(pi(j) - 1, i - 1) = values[vars.y_id(i, j)];
  const Hypermatrix E = standard_E(k, field);
  return Hypermatrix(matmul(matmul(A, E.front()), Ap), matmul(matmul(A, E.back()), Ap));
}

HCount h_count(const SymbolicHypermatrix& g, const PlanePartition& P) {
  const int k = g.k();
  if (P.k() != k) throw Error(Errc::FormatMismatch, "shape and pair have different k");
  // A generically nonzero entry inside P is either a Poly entry or one of the
  // hyperrook 1s. The 1s only land in P when the placement fails to respect it,
  // which is reported through the flag. Entries to the right of a 1 in its row
  // never reach P when the placement respects P: the shape is a weakly
  // decreasing staircase, so covering (r, c) would also cover the 1 at (r, c')
  // with c' < c.
  int h = 0;
  for (int face = 1; face <= 2; ++face)
    for (int r = 1; r <= k + 1; ++r)
      for (int c = 1; c <= k; ++c)
        if (g.entry(face, r, c).kind == EntryKind::Poly && cell_in_shape(P, face, r, c)) ++h;
  return {h, hyperrook_respects(wc_from(g.sigma(), g.pi()), P)};
}

HCount h_count(const Permutation& sigma, const Permutation& pi, const PlanePartition& P) {
  return h_count(generic_augmented(sigma, pi), P);
}

// ---------------------------------------------------------------- digraph

DepDigraph DepDigraph::build(const Permutation& sigma, const Permutation& pi) {
  check_sizes(sigma, pi);
  const int k = pi.size();
  DepDigraph d;
  d.sigma_ = sigma;
  d.pi_ = pi;
  d.vars_ = VariableSet(sigma, pi);
  const VariableSet& v = d.vars_;
  const WCPair p = wc_from(sigma, pi);
  const Permutation wc = p.wc();
  const Permutation pibar = extend(pi);
  const Permutation pc = pibar * p.c;
  auto inv_sigma = [&](int a, int b) { return a < b && sigma(a) > sigma(b); };
  auto inv_pi = [&](int a, int b) { return a < b && b <= k && pi(a) > pi(b); };
  auto arc = [&](int from, int to) {
    if (from < 0 || to < 0) throw Error(Errc::InternalInvariant, "arc rule referenced a missing variable");
    d.arcs_.emplace_back(from, to);
  };

  for (auto [i, j] : inversions(pi)) {
    if (p.w(i) >= p.w(j)) continue;
    const int target = v.y_id(i, j);
    arc(v.x_id(pi(j), pi(i)), target);  // (a)
    for (int t = 1; t <= k; ++t) {
      if (!inv_pi(i, t) || !inv_sigma(pi(j), pi(t))) continue;
      arc(v.x_id(pi(j), pi(t)), target);  // (b)
      arc(v.y_id(i, t), target);          // (c)
    }
  }
  for (auto [i, j] : inversions(pc)) {
    if (wc(i) >= wc(j)) continue;
    const int target = v.x_id(pc(j), pc(i));
    if (j <= k) arc(v.y_id(i, j), target);  // (d)
    for (int t = 1; t <= k; ++t) {
      if (!inv_pi(i, t) || !inv_sigma(pc(j), pc(t))) continue;
      arc(v.y_id(i, t), target);            // (e)
      arc(v.x_id(pc(j), pc(t)), target);    // (f)
    }
  }
  std::sort(d.arcs_.begin(), d.arcs_.end());
  d.arcs_.erase(std::unique(d.arcs_.begin(), d.arcs_.end()), d.arcs_.end());

  const int n = v.size();
  std::vector<std::vector<int>> out(n);
  std::vector<int> indegree(n, 0);
  for (auto [a, b] : d.arcs_) {
    out[a].push_back(b);
    ++indegree[b];
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push(i);
  while (!ready.empty()) {
    const int node = ready.top();
    ready.pop();
    d.order_.push_back(node);
    for (int next : out[node])
      if (--indegree[next] == 0) ready.push(next);
  }
  if (static_cast<int>(d.order_.size()) != n)
    throw Error(Errc::CycleDetected, "dependency digraph of (" + sigma.to_string() + ", " + pi.to_string() + ") has a cycle");
  return d;
}

bool DepDigraph::has_arc(int from, int to) const {
  return std::binary_search(arcs_.begin(), arcs_.end(), std::make_pair(from, to));
}

std::string DepDigraph::to_dot() const {
  std::ostringstream os;
  os << "digraph \"D_" << sigma_.to_string() << "_" << pi_.to_string() << "\" {\n";
  for (const auto& var : vars_.all()) os << "  " << var.label() << ";\n";
  for (auto [a, b] : arcs_) os << "  " << vars_[a].label() << " -> " << vars_[b].label() << ";\n";
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------- solving

SolvePlan make_solve_plan(const SymbolicHypermatrix& g, const DepDigraph& d, const PlanePartition& P) {
  SolvePlan plan;
  const HCount h = h_count(g, P);
  plan.order = d.topological_order();
  const int n = g.variables().size();
  plan.pinned_entry.assign(n, -1);
  if (!h.rook_respects) return plan;
  plan.feasible = true;
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[plan.order[i]] = i;
  const int k = g.k();
  for (int face = 1; face <= 2; ++face) {
    for (int r = 1; r <= k + 1; ++r) {
      for (int c = 1; c <= k; ++c) {
        const SymbolicEntry& e = g.entry(face, r, c);
        if (e.kind != EntryKind::Poly || !cell_in_shape(P, face, r, c)) continue;
        const auto vars = e.variables();
        const int last = *std::max_element(vars.begin(), vars.end(),
                                           [&](int a, int b) { return position[a] < position[b]; });
        if (last != e.linear_x && last != e.linear_y)
          throw Error(Errc::InternalInvariant, "last variable of a constrained entry is not linear");
        if (plan.pinned_entry[last] != -1)
          throw Error(Errc::InternalInvariant, "two constrained entries share their last variable");
        plan.pinned_entry[last] = static_cast<int>(plan.constrained.size());
        plan.constrained.push_back({face, r, c});
        plan.last_variable.push_back(last);
      }
    }
  }
  plan.free_count = n - static_cast<int>(plan.constrained.size());
  return plan;
}

std::vector<Element> materialize(const SolvePlan& plan, const SymbolicHypermatrix& g, const Field& field,
                                 std::span<const Element> free_values) {
  if (!plan.feasible) throw Error(Errc::InvalidArgument, "no augmented hypermatrix respects this shape");
  if (static_cast<int>(free_values.size()) != plan.free_count)
    throw Error(Errc::SizeMismatch, "expected " + std::to_string(plan.free_count) + " free values");
  std::vector<Element> values(static_cast<std::size_t>(g.variables().size()), 0);
  std::size_t next_free = 0;
  for (int var : plan.order) {
    const int pinned = plan.pinned_entry[var];
    if (pinned < 0) {
      values[var] = free_values[next_free++];
      continue;
    }
    // The entry is var + (terms in earlier variables); var is still 0 here.
    const auto& cell = plan.constrained[pinned];
    values[var] = field.neg(g.evaluate(field, cell[0], cell[1], cell[2], values));
  }
  return values;
}

namespace {

BigInt power(int q, int e) {
  BigInt out = 1;
  for (int i = 0; i < e; ++i) out *= q;
  return out;
}

std::uint64_t assignment_count(int q, int n, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > budget / static_cast<std::uint64_t>(q))
      throw Error(Errc::BudgetExceeded, std::to_string(q) + "^" + std::to_string(n) + " assignments exceed the budget " +
                                            std::to_string(budget));
    total *= static_cast<std::uint64_t>(q);
  }
  return total;
}

// Packs the lowest nonzero row of every column of both faces (0 when the
// column is zero) into 4-bit fields.
std::uint64_t profile_key(int k, const Element* front, const Element* back) {
  std::uint64_t key = 0;
  for (int face = 0; face < 2; ++face) {
    const Element* m = face == 0 ? front : back;
    for (int c = 0; c < k; ++c) {
      int low = 0;
      for (int r = k; r >= 0; --r) {
        if (m[r * k + c] != 0) {
          low = r + 1;
          break;
        }
      }
      key = key << 4 | static_cast<std::uint64_t>(low);
    }
  }
  return key;
}

bool profile_respects(int k, std::uint64_t key, const PlanePartition& P) {
  for (int face = 1; face >= 0; --face) {
    for (int c = k - 1; c >= 0; --c) {
      const int low = static_cast<int>(key & 0xF);
      key >>= 4;
      const int part = face == 0 ? P.lam().parts()[c] : P.mu().parts()[c];
      if (low > k + 1 - part) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::uint64_t> count_augmented_brute_batch(const Permutation& sigma, const Permutation& pi,
                                                       const std::vector<PlanePartition>& shapes,
                                                       const FieldPtr& field, std::uint64_t budget) {
  check_sizes(sigma, pi);
  const int k = pi.size();
  for (const auto& P : shapes)
    if (P.k() != k) throw Error(Errc::FormatMismatch, "shape and pair have different k");
  const Field& f = *field;
  const int q = f.size();
  const VariableSet vars(sigma, pi);
  const int n = vars.size();
  const std::uint64_t total = assignment_count(q, n, budget);

  // Positions of every variable inside A and A', so the odometer can write
  // values straight into the numeric factors.
  const int K1 = k + 1;
  std::vector<Element> A(K1 * K1, 0), Ap(k * k, 0);
  for (int i = 1; i <= K1; ++i) A[(sigma(i) - 1) * K1 + (i - 1)] = 1;
  for (int i = 1; i <= k; ++i) Ap[(pi(i) - 1) * k + (i - 1)] = 1;
  std::vector<Element*> slot(n);
  for (auto [i, j] : inversions(sigma)) slot[vars.x_id(i, j)] = &A[(sigma(i) - 1) * K1 + (j - 1)];
  for (auto [i, j] : inversions(pi)) slot[vars.y_id(i, j)] = &Ap[(pi(j) - 1) * k + (i - 1)];

  std::vector<Element> front(K1 * k), back(K1 * k);
  std::map<std::uint64_t, std::uint64_t> histogram;
  std::vector<int> digits(n, 0);
  for (std::uint64_t step = 0; step < total; ++step) {
    for (int r = 0; r < K1; ++r) {
      for (int c = 0; c < k; ++c) {
        Element fv = 0, bv = 0;
        for (int l = 0; l < k; ++l) {
          const Element t = Ap[l * k + c];
          if (t == 0) continue;
          fv = f.add(fv, f.mul(A[r * K1 + l], t));
          bv = f.add(bv, f.mul(A[r * K1 + l + 1], t));
        }
        front[r * k + c] = fv;
        back[r * k + c] = bv;
      }
    }
    ++histogram[profile_key(k, front.data(), back.data())];
    for (int pos = n - 1; pos >= 0; --pos) {
      if (++digits[pos] < q) {
        *slot[pos] = static_cast<Element>(digits[pos]);
        break;
      }
      digits[pos] = 0;
      *slot[pos] = 0;
    }
  }
  std::vector<std::uint64_t> out;
  out.reserve(shapes.size());
  for (const auto& P : shapes) {
    std::uint64_t count = 0;
    for (auto [key, times] : histogram)
      if (profile_respects(k, key, P)) count += times;
    out.push_back(count);
  }
  return out;
}

BigInt count_augmented_respecting(const Permutation& sigma, const Permutation& pi, const PlanePartition& P,
                                  const FieldPtr& field, AugmentedMethod method, std::uint64_t budget) {
  if (method == AugmentedMethod::Brute)
    return BigInt(count_augmented_brute_batch(sigma, pi, {P}, field, budget).front());
  const SymbolicHypermatrix g = generic_augmented(sigma, pi);
  const DepDigraph d = DepDigraph::build(sigma, pi);
  const SolvePlan plan = make_solve_plan(g, d, P);
  if (!plan.feasible) return 0;
  return power(field->size(), plan.free_count);
}

// ---------------------------------------------------------------- fast profile

PairProfile::PairProfile(const Permutation& sigma, const Permutation& pi) : k_(pi.size()) {
  check_sizes(sigma, pi);
  if (k_ > kMaxFormatK) throw Error(Errc::InvalidArgument, "k too large for the cell sweep");
  const int k = k_;
  nvars_ = static_cast<int>(inversions(sigma).size() + inversions(pi).size());
  // Supports only: bit l-1 of a_row[r] marks a generically nonzero A[r][l],
  // bit l-1 of ap_col[c] marks a generically nonzero A'[l][c].
  std::array<std::uint32_t, kRows + 1> a_row{};
  for (int i = 1; i <= k + 1; ++i) a_row[sigma(i)] |= 1u << (i - 1);
  for (auto [i, j] : inversions(sigma)) a_row[sigma(i)] |= 1u << (j - 1);
  std::array<std::uint32_t, kCols + 1> ap_col{};
  for (int i = 1; i <= k; ++i) ap_col[i] |= 1u << (pi(i) - 1);
  for (auto [i, j] : inversions(pi)) ap_col[i] |= 1u << (pi(j) - 1);

  const WCPair p = wc_from(sigma, pi);
  const Permutation wc = p.wc();
  for (int c = 1; c <= k; ++c) {
    rook_front_[c - 1] = p.w(c);
    rook_back_[c - 1] = wc(c);
    for (int r = 1; r <= k + 1; ++r) {
      const bool f = (a_row[r] & ap_col[c]) != 0 && r != p.w(c);
      const bool b = (a_row[r] & (ap_col[c] << 1)) != 0 && r != wc(c);
      const int bit = (r - 1) * k + (c - 1);
      if (f) poly_bits_[0] |= std::uint64_t{1} << bit;
      if (b) poly_bits_[1] |= std::uint64_t{1} << bit;
    }
    for (int t = 0; t <= k + 1; ++t) {
      std::uint8_t nf = 0, nb = 0;
      for (int r = k + 2 - t; r <= k + 1; ++r) {
        nf += is_poly(1, r, c);
        nb += is_poly(2, r, c);
      }
      bottom_front_[c - 1][t] = nf;
      bottom_back_[c - 1][t] = nb;
    }
  }
}

bool PairProfile::is_poly(int face, int row, int col) const noexcept {
  return (poly_bits_[face - 1] >> ((row - 1) * k_ + (col - 1)) & 1) != 0;
}

bool PairProfile::rook_respects(const PlanePartition& P) const noexcept {
  const auto& lam = P.lam().parts();
  const auto& mu = P.mu().parts();
  for (int c = 0; c < k_; ++c)
    if (rook_front_[c] > k_ + 1 - lam[c] || rook_back_[c] > k_ + 1 - mu[c]) return false;
  return true;
}

int PairProfile::h(const PlanePartition& P) const noexcept {
  const auto& lam = P.lam().parts();
  const auto& mu = P.mu().parts();
  int out = 0;
  for (int c = 0; c < k_; ++c) out += bottom_front_[c][lam[c]] + bottom_back_[c][mu[c]];
  return out;
}

}  // namespace hyperdet
