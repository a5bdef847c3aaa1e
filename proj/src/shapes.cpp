#include "hyperdet/shapes.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "hyperdet/errors.hpp"

namespace hyperdet {

IntegerPartition IntegerPartition::create(std::vector<int> parts, int box_height) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] < 0 || parts[i] > box_height)
      throw Error(Errc::BoxExceeded, "part " + std::to_string(parts[i]) + " outside [0, " + std::to_string(box_height) + "]");
    if (i + 1 < parts.size() && parts[i] < parts[i + 1])
      throw Error(Errc::NotDecreasing, "parts must be weakly decreasing");
  }
  IntegerPartition out;
  out.parts_ = std::move(parts);
  out.box_height_ = box_height;
  return out;
}

IntegerPartition IntegerPartition::empty(std::size_t length, int box_height) {
  return create(std::vector<int>(length, 0), box_height);
}

int IntegerPartition::weight() const noexcept { return std::accumulate(parts_.begin(), parts_.end(), 0); }

std::string IntegerPartition::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? "," : "") << parts_[i];
  return os.str();
}

IntegerPartition transpose(const IntegerPartition& lam) {
  std::vector<int> parts(static_cast<std::size_t>(lam.box_height()), 0);
  for (int i = 1; i <= lam.box_height(); ++i) {
    int count = 0;
    for (int p : lam.parts())
      if (p >= i) ++count;
    parts[i - 1] = count;
  }
  return IntegerPartition::create(std::move(parts), static_cast<int>(lam.length()));
}

IntegerPartition parse_partition(std::string_view text, std::size_t length, int box_height) {
  if (text == "empty" || text == "0") return IntegerPartition::empty(length, box_height);
  std::vector<int> parts;
  std::stringstream ss{std::string(text)};
  std::string token;
  while (std::getline(ss, token, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != token.size())
      throw Error(Errc::InvalidArgument, "bad partition '" + std::string(text) + "'");
    parts.push_back(v);
  }
  if (parts.size() != length)
    throw Error(Errc::FormatMismatch, "partition '" + std::string(text) + "' has length " + std::to_string(parts.size()) +
                                          ", expected " + std::to_string(length));
  return IntegerPartition::create(std::move(parts), box_height);
}

PlanePartition PlanePartition::create(int k, IntegerPartition lam, IntegerPartition mu) {
  if (k < 1) throw Error(Errc::InvalidArgument, "k must be at least 1");
  const auto len = static_cast<std::size_t>(k);
  if (lam.length() != len || mu.length() != len)
    throw Error(Errc::FormatMismatch, "both layers need " + std::to_string(k) + " parts");
  if (lam.box_height() != k + 1 || mu.box_height() != k + 1)
    throw Error(Errc::FormatMismatch, "layers must live in a box of height k+1");
  for (std::size_t i = 0; i < len; ++i)
    if (mu.parts()[i] > lam.parts()[i]) throw Error(Errc::NotDecreasing, "mu must fit inside lambda");
  PlanePartition out;
  out.k_ = k;
  out.lam_ = std::move(lam);
  out.mu_ = std::move(mu);
  return out;
}

PlanePartition PlanePartition::create(int k, const std::vector<int>& lam, const std::vector<int>& mu) {
  return create(k, IntegerPartition::create(lam, k + 1), IntegerPartition::create(mu, k + 1));
}

std::string PlanePartition::to_string() const { return "<(" + lam_.to_string() + "),(" + mu_.to_string() + ")>"; }

PlanePartition staircase_delta(int k) {
  std::vector<int> lam(k), mu(k);
  for (int i = 0; i < k; ++i) {
    lam[i] = k - i;
    mu[i] = k - 1 - i;
  }
  return PlanePartition::create(k, lam, mu);
}

PlanePartition empty_shape(int k) { return PlanePartition::create(k, std::vector<int>(k, 0), std::vector<int>(k, 0)); }

bool contains(const PlanePartition& outer, const PlanePartition& inner) {
  if (outer.k() != inner.k()) throw Error(Errc::FormatMismatch, "plane partitions of different k");
  for (int i = 1; i <= outer.k(); ++i) {
    if (inner.lam().part(i) > outer.lam().part(i)) return false;
    if (inner.mu().part(i) > outer.mu().part(i)) return false;
  }
  return true;
}

namespace {

// Weakly decreasing sequences bounded part by part by `cap`, lexicographic.
void partitions_under(const std::vector<int>& cap, std::size_t pos, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
  if (pos == cap.size()) {
    out.push_back(cur);
    return;
  }
  const int hi = pos == 0 ? cap[0] : std::min(cap[pos], cur[pos - 1]);
  for (int v = 0; v <= hi; ++v) {
    cur[pos] = v;
    partitions_under(cap, pos + 1, cur, out);
  }
}

}  // namespace

std::vector<PlanePartition> enumerate_subshapes(int k) {
  if (k < 1) throw Error(Errc::InvalidArgument, "k must be at least 1");
  const PlanePartition delta = staircase_delta(k);
  std::vector<std::vector<int>> lams;
  std::vector<int> cur(k, 0);
  partitions_under(delta.lam().parts(), 0, cur, lams);
  std::vector<PlanePartition> out;
  for (const auto& lam : lams) {
    std::vector<int> cap = delta.mu().parts();
    for (int i = 0; i < k; ++i) cap[i] = std::min(cap[i], lam[i]);
    std::vector<std::vector<int>> mus;
    partitions_under(cap, 0, cur, mus);
    for (const auto& mu : mus) out.push_back(PlanePartition::create(k, lam, mu));
  }
  return out;
}

std::vector<PlanePartition> staircase_extensions(int k) {
  const PlanePartition delta = staircase_delta(k);
  std::vector<PlanePartition> out;
  for (int layer = 0; layer < 2; ++layer) {
    for (int i = 0; i < k; ++i) {
      std::vector<int> lam = delta.lam().parts();
      std::vector<int> mu = delta.mu().parts();
      (layer == 0 ? lam : mu)[i] += 1;
      try {
        out.push_back(PlanePartition::create(k, lam, mu));
      } catch (const Error&) {
        // outside the box or no longer nested; not a plane partition
      }
    }
  }
  return out;
}

bool cell_in_shape(const PlanePartition& P, int face, int row, int col) {
  const int k = P.k();
  if (face < 1 || face > 2 || row < 1 || row > k + 1 || col < 1 || col > k)
    throw Error(Errc::IndexOutOfRange, "cell (" + std::to_string(face) + "," + std::to_string(row) + "," +
                                           std::to_string(col) + ") outside the 2x" + std::to_string(k + 1) + "x" +
                                           std::to_string(k) + " format");
  const int part = face == 1 ? P.lam().part(col) : P.mu().part(col);
  return row > k + 1 - part;
}

}  // namespace hyperdet
