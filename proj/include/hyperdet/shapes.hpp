#pragma once

// Integer partitions and two-layer plane partitions <lambda, mu>. A plane
// partition marks forced-zero regions at the bottom of the two faces of a
// 2 x (k+1) x k hypermatrix: column c of the front face must vanish below
// row k+1 - lambda_c, and likewise for the back face with mu.

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hyperdet {

class IntegerPartition {
 public:
  IntegerPartition() = default;
  /// Throws NotDecreasing or BoxExceeded (also for negative parts).
  static IntegerPartition create(std::vector<int> parts, int box_height);
  static IntegerPartition empty(std::size_t length, int box_height);

  const std::vector<int>& parts() const noexcept { return parts_; }
  int box_height() const noexcept { return box_height_; }
  std::size_t length() const noexcept { return parts_.size(); }
  /// 1-based part lookup.
  int part(std::size_t i) const noexcept { return parts_[i - 1]; }
  int weight() const noexcept;
  bool is_empty() const noexcept { return weight() == 0; }
  std::string to_string() const;

  friend auto operator<=>(const IntegerPartition&, const IntegerPartition&) = default;
  friend bool operator==(const IntegerPartition&, const IntegerPartition&) = default;

 private:
  std::vector<int> parts_;
  int box_height_ = 0;
};

/// Conjugate partition: length box_height, parts bounded by the old length.
IntegerPartition transpose(const IntegerPartition& lam);

/// Parses "2,1,0" or "empty"; the length must be `length`.
IntegerPartition parse_partition(std::string_view text, std::size_t length, int box_height);

class PlanePartition {
 public:
  PlanePartition() = default;
  /// lam and mu must both have length k and box height k+1, with mu inside lam.
  static PlanePartition create(int k, IntegerPartition lam, IntegerPartition mu);
  static PlanePartition create(int k, const std::vector<int>& lam, const std::vector<int>& mu);

  int k() const noexcept { return k_; }
  const IntegerPartition& lam() const noexcept { return lam_; }
  const IntegerPartition& mu() const noexcept { return mu_; }
  /// Number of forced-zero cells over both faces.
  int cells() const noexcept { return lam_.weight() + mu_.weight(); }
  /// "<(2,1),(1,0)>"
  std::string to_string() const;

  friend auto operator<=>(const PlanePartition&, const PlanePartition&) = default;
  friend bool operator==(const PlanePartition&, const PlanePartition&) = default;

 private:
  int k_ = 0;
  IntegerPartition lam_;
  IntegerPartition mu_;
};

PlanePartition staircase_delta(int k);
PlanePartition empty_shape(int k);

/// True when inner fits inside outer layer by layer. Throws FormatMismatch on differing k.
bool contains(const PlanePartition& outer, const PlanePartition& inner);

/// Every plane partition inside the staircase, in lexicographic order of
/// (lambda parts, mu parts).
std::vector<PlanePartition> enumerate_subshapes(int k);

/// Shapes obtained from the staircase by growing one part by one, keeping
/// only those that are still valid plane partitions in the box.
std::vector<PlanePartition> staircase_extensions(int k);

/// True when (row, col) on face 1 (front) or 2 (back) is forced to zero by P.
/// Rows and columns are 1-based. Throws IndexOutOfRange.
bool cell_in_shape(const PlanePartition& P, int face, int row, int col);

}  // namespace hyperdet
