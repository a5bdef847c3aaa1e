#pragma once

// Hyperrook placements, the (w, c) encoding of a pair (sigma, pi), generic
// (sigma, pi)-augmented hypermatrices and the variable dependency digraph.
//
// Conventions. sigma lives in S_{k+1}, pi in S_k, and pibar is pi extended by
// pibar(k+1) = k+1. An augmented hypermatrix is
//   front = A [I_k ; 0] A',   back = A [0 ; I_k] A'
// where A is (k+1) x (k+1) with A[sigma(i)][i] = 1 and a free entry x_{i,j} at
// (sigma(i), j) for every inversion (i, j) of sigma, and A' is k x k with
// A'[pi(i)][i] = 1 and a free entry y_{i,j} at (pi(j), i) for every inversion
// (i, j) of pi. In terms of the group action this is act(A, A'^T, E).

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperdet/gf.hpp"
#include "hyperdet/hypermatrix.hpp"
#include "hyperdet/linalg.hpp"
#include "hyperdet/qpoly.hpp"
#include "hyperdet/shapes.hpp"

namespace hyperdet {

inline constexpr std::uint64_t kDefaultBruteBudget = std::uint64_t{1} << 28;

using Inversion = std::pair<int, int>;

/// All (i, j) with i < j and p(i) > p(j), in lexicographic order.
std::vector<Inversion> inversions(const Permutation& p);

/// pi extended to [k+1] by fixing k+1.
Permutation extend(const Permutation& pi);

struct WCPair {
  Permutation w;
  Permutation c;
  Permutation wc() const { return w * c; }
};

/// w = sigma * pibar, c = pibar^-1 (1 2 ... k+1) pibar. Throws SizeMismatch.
WCPair wc_from(const Permutation& sigma, const Permutation& pi);
/// Inverse of wc_from. Throws NotFullCycle or SizeMismatch.
std::pair<Permutation, Permutation> wc_inverse(const Permutation& w, const Permutation& c);

/// The 0/1 hypermatrix with front 1s at (w(j), j) and back 1s at (wc(j), j).
Hypermatrix hyperrook_pattern(const Permutation& sigma, const Permutation& pi, FieldPtr field);
/// w(j) <= k+1 - lambda_j and wc(j) <= k+1 - mu_j for every column j.
bool hyperrook_respects(const WCPair& wc, const PlanePartition& P);
/// Closed-form product; a nonpositive factor makes the count 0.
std::uint64_t hyperrook_count(const PlanePartition& P);
/// Direct count over all (sigma, pi).
std::uint64_t hyperrook_count_brute(const PlanePartition& P);
/// The respecting (sigma, pi) pairs, sigma-major in lexicographic order.
std::vector<std::pair<Permutation, Permutation>> hyperrook_placements(const PlanePartition& P);

struct Variable {
  char kind;  // 'x' or 'y'
  int i;
  int j;
  /// "x_1_2"
  std::string label() const;
};

/// The free variables of a (sigma, pi) pair: x's in lexicographic order of
/// their inversion, then y's likewise. A variable's id is its position.
class VariableSet {
 public:
  VariableSet() = default;
  VariableSet(const Permutation& sigma, const Permutation& pi);

  int size() const noexcept { return static_cast<int>(vars_.size()); }
  int x_count() const noexcept { return x_count_; }
  const Variable& operator[](int id) const { return vars_[static_cast<std::size_t>(id)]; }
  const std::vector<Variable>& all() const noexcept { return vars_; }
  /// -1 when (i, j) is not an inversion.
  int x_id(int i, int j) const;
  int y_id(int i, int j) const;

 private:
  std::vector<Variable> vars_;
  int x_count_ = 0;
  int n_ = 0;
  std::vector<int> x_lookup_;  // (k+2)^2 grid
  std::vector<int> y_lookup_;
};

enum class EntryKind { Zero, One, Poly };

/// An entry of a generic augmented hypermatrix. Poly entries carry at most one
/// linear x, at most one linear y and a sorted list of (x, y) cross terms.
/// Entries that can fall inside a respected shape always have a linear term;
/// some entries above a hyperrook 1 are pure cross terms.
struct SymbolicEntry {
  EntryKind kind = EntryKind::Zero;
  int linear_x = -1;
  int linear_y = -1;
  std::vector<std::pair<int, int>> cross;

  std::vector<int> variables() const;
  friend bool operator==(const SymbolicEntry&, const SymbolicEntry&) = default;
};

std::string to_string(const SymbolicEntry& e, const VariableSet& vars);

class SymbolicHypermatrix {
 public:
  SymbolicHypermatrix(int k, Permutation sigma, Permutation pi, VariableSet vars, std::vector<SymbolicEntry> front,
                      std::vector<SymbolicEntry> back);

  int k() const noexcept { return k_; }
  const Permutation& sigma() const noexcept { return sigma_; }
  const Permutation& pi() const noexcept { return pi_; }
  const VariableSet& variables() const noexcept { return vars_; }
  /// face 1 or 2, 1-based row and column.
  const SymbolicEntry& entry(int face, int row, int col) const;
  /// Value of an entry under a full assignment (indexed by variable id).
  Element evaluate(const Field& f, int face, int row, int col, std::span<const Element> values) const;

 private:
  int k_;
  Permutation sigma_;
  Permutation pi_;
  VariableSet vars_;
  std::vector<SymbolicEntry> front_;
  std::vector<SymbolicEntry> back_;
};

/// Symbolic product A [I;0] A', A [0;I] A'.
SymbolicHypermatrix generic_augmented(const Permutation& sigma, const Permutation& pi);

/// The augmented hypermatrix for concrete variable values (indexed by id).
Hypermatrix augmented_from_assignment(const Permutation& sigma, const Permutation& pi, const FieldPtr& field,
                                      std::span<const Element> values);

struct HCount {
  int value;
  /// False when the hyperrook placement itself fails to respect P; the value
  /// is still the number of generically nonzero entries inside P.
  bool rook_respects;
};

HCount h_count(const SymbolicHypermatrix& g, const PlanePartition& P);
HCount h_count(const Permutation& sigma, const Permutation& pi, const PlanePartition& P);

/// Dependency digraph on the variables, built from the six arc rules.
class DepDigraph {
 public:
  /// Throws CycleDetected if the rules ever produce a cycle.
  static DepDigraph build(const Permutation& sigma, const Permutation& pi);

  const VariableSet& variables() const noexcept { return vars_; }
  /// Sorted, duplicate-free (source, target) pairs of variable ids.
  const std::vector<std::pair<int, int>>& arcs() const noexcept { return arcs_; }
  bool has_arc(int from, int to) const;
  /// Kahn's algorithm, smallest id first among ready nodes.
  const std::vector<int>& topological_order() const noexcept { return order_; }
  std::string to_dot() const;

 private:
  Permutation sigma_;
  Permutation pi_;
  VariableSet vars_;
  std::vector<std::pair<int, int>> arcs_;
  std::vector<int> order_;
};

/// How to satisfy "every entry inside P is zero": walk the variables in
/// topological order; each constrained entry pins its last variable.
struct SolvePlan {
  bool feasible = false;  // false when the hyperrook fails to respect P
  std::vector<int> order;
  std::vector<std::array<int, 3>> constrained;  // (face, row, col)
  std::vector<int> last_variable;               // one per constrained entry
  std::vector<int> pinned_entry;                // per variable: index into constrained, or -1
  int free_count = 0;
};

SolvePlan make_solve_plan(const SymbolicHypermatrix& g, const DepDigraph& d, const PlanePartition& P);

/// Completes the free values (in plan order) to a full assignment whose
/// augmented hypermatrix respects P.
std::vector<Element> materialize(const SolvePlan& plan, const SymbolicHypermatrix& g, const Field& field,
                                 std::span<const Element> free_values);

enum class AugmentedMethod { Brute, Solve };

/// Number of (sigma, pi)-augmented hypermatrices over the field respecting P.
BigInt count_augmented_respecting(const Permutation& sigma, const Permutation& pi, const PlanePartition& P,
                                  const FieldPtr& field, AugmentedMethod method,
                                  std::uint64_t budget = kDefaultBruteBudget);

/// Brute counts for many shapes at once (one pass over the assignments).
std::vector<std::uint64_t> count_augmented_brute_batch(const Permutation& sigma, const Permutation& pi,
                                                       const std::vector<PlanePartition>& shapes,
                                                       const FieldPtr& field,
                                                       std::uint64_t budget = kDefaultBruteBudget);

/// Support-only summary of one (sigma, pi) pair for fast shape sweeps: which
/// cells are generically nonzero, and per column how many of them sit in the
/// bottom t rows.
class PairProfile {
 public:
  PairProfile(const Permutation& sigma, const Permutation& pi);

  int k() const noexcept { return k_; }
  int variable_count() const noexcept { return nvars_; }
  bool is_poly(int face, int row, int col) const noexcept;
  bool rook_respects(const PlanePartition& P) const noexcept;
  int h(const PlanePartition& P) const noexcept;

 private:
  static constexpr int kCols = kMaxFormatK;
  static constexpr int kRows = kMaxFormatK + 1;

  int k_;
  int nvars_;
  std::array<int, kCols> rook_front_{};
  std::array<int, kCols> rook_back_{};
  std::array<std::array<std::uint8_t, kRows + 1>, kCols> bottom_front_{};
  std::array<std::array<std::uint8_t, kRows + 1>, kCols> bottom_back_{};
  std::array<std::uint64_t, 2> poly_bits_{};  // bit (row-1)*k + (col-1)
};

}  // namespace hyperdet
