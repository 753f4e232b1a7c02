#pragma once

// Partitions, Young diagrams and tableaux.
//
// Partitions are stored without trailing zeros. Tableau indices are
// zero-based and follow last-letter order: tableaux are grouped by the row
// holding p (rows ascending), then recursively by p-1, and so on.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace wbalg {

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (std::size_t r = 0; r < parts_.size(); ++r) {
      if (parts_[r] < 0 || (r > 0 && parts_[r] > parts_[r - 1]))
        throw std::invalid_argument("partition parts must be nonincreasing and nonnegative");
    }
  }
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

  const std::vector<int>& parts() const { return parts_; }
  int height() const { return static_cast<int>(parts_.size()); }
  int total() const {
    int s = 0;
    for (int x : parts_) s += x;
    return s;
  }
  // Row length with zero padding beyond the height.
  int row(int r) const { return r < height() ? parts_[r] : 0; }
  bool empty() const { return parts_.empty(); }

  std::string str() const {
    std::string s = "(";
    for (std::size_t r = 0; r < parts_.size(); ++r) {
      if (r) s += ",";
      s += std::to_string(parts_[r]);
    }
    return s + ")";
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<int> parts_;
};

namespace detail {

inline void partitions_rec(int remaining, int max_part, std::vector<int>& cur,
                           std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int k = std::min(remaining, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions_rec(remaining - k, k, cur, out);
    cur.pop_back();
  }
}

inline std::int64_t to_int64(const boost::multiprecision::cpp_int& v) {
  if (v > std::numeric_limits<std::int64_t>::max())
    throw std::overflow_error("combinatorial value exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

}  // namespace detail

// All partitions of p in reverse-lexicographic order; p = 0 gives ().
inline std::vector<Partition> enumerate_partitions(int p) {
  if (p < 0) throw std::invalid_argument("p must be nonnegative");
  std::vector<Partition> out;
  std::vector<int> cur;
  detail::partitions_rec(p, p, cur, out);
  return out;
}

inline int hook_length(const Partition& mu, int r, int c) {
  int arm = mu.row(r) - c - 1;
  int leg = 0;
  for (int rr = r + 1; rr < mu.height() && mu.row(rr) > c; ++rr) ++leg;
  return arm + leg + 1;
}

// d_mu by the hook-length formula.
inline std::int64_t dim_irrep(const Partition& mu) {
  using boost::multiprecision::cpp_int;
  cpp_int num = 1, den = 1;
  for (int k = 2; k <= mu.total(); ++k) num *= k;
  for (int r = 0; r < mu.height(); ++r)
    for (int c = 0; c < mu.row(r); ++c) den *= hook_length(mu, r, c);
  return detail::to_int64(num / den);
}

// m_mu = prod_{i<j<=d} (mu_i - mu_j + j - i)/(j - i); zero when ht(mu) > d.
inline std::int64_t multiplicity(const Partition& mu, int d) {
  if (d < 1) throw std::invalid_argument("local dimension must be positive");
  if (mu.height() > d) return 0;
  using boost::multiprecision::cpp_int;
  cpp_int num = 1, den = 1;
  for (int i = 1; i <= d; ++i)
    for (int j = i + 1; j <= d; ++j) {
      num *= mu.row(i - 1) - mu.row(j - 1) + j - i;
      den *= j - i;
    }
  return detail::to_int64(num / den);
}

// Shapes mu - box, removable corners taken in ascending row order.
inline std::vector<Partition> remove_box(const Partition& mu) {
  if (mu.total() < 1) throw std::invalid_argument("cannot remove a box from the empty partition");
  std::vector<Partition> out;
  for (int r = 0; r < mu.height(); ++r) {
    if (mu.row(r) > mu.row(r + 1)) {
      std::vector<int> parts = mu.parts();
      --parts[r];
      out.emplace_back(parts);
    }
  }
  return out;
}

// Shapes alpha + box, addable cells taken in ascending row order.
inline std::vector<Partition> add_box(const Partition& alpha) {
  std::vector<Partition> out;
  for (int r = 0; r <= alpha.height(); ++r) {
    if (r == 0 || alpha.row(r - 1) > alpha.row(r)) {
      std::vector<int> parts = alpha.parts();
      if (r == alpha.height()) parts.push_back(0);
      ++parts[r];
      out.emplace_back(parts);
    }
  }
  return out;
}

// Common remove-box shapes of mu and nu, in the remove_box order of mu.
inline std::vector<Partition> common_removals(const Partition& mu, const Partition& nu) {
  std::vector<Partition> out;
  if (mu.total() < 1 || nu.total() != mu.total()) return out;
  const auto rn = remove_box(nu);
  for (const auto& a : remove_box(mu))
    if (std::find(rn.begin(), rn.end(), a) != rn.end()) out.push_back(a);
  return out;
}

class StandardTableau {
 public:
  StandardTableau() = default;
  StandardTableau(Partition shape, std::vector<std::vector<int>> rows)
      : shape_(std::move(shape)), rows_(std::move(rows)) {}

  const Partition& shape() const { return shape_; }
  const std::vector<std::vector<int>>& rows() const { return rows_; }
  int size() const { return shape_.total(); }

  // Zero-based (row, column) of entry k in 1..p.
  std::pair<int, int> position(int k) const {
    for (int r = 0; r < static_cast<int>(rows_.size()); ++r)
      for (int c = 0; c < static_cast<int>(rows_[r].size()); ++c)
        if (rows_[r][c] == k) return {r, c};
    throw std::out_of_range("entry not present in tableau");
  }
  int content(int k) const {
    auto [r, c] = position(k);
    return c - r;
  }

  // Tableau of shape alpha obtained by deleting the box holding p.
  StandardTableau remove_largest() const {
    const int p = size();
    auto [r, c] = position(p);
    auto rows = rows_;
    rows[r].pop_back();
    if (rows[r].empty()) rows.pop_back();
    std::vector<int> parts = shape_.parts();
    --parts[r];
    (void)c;
    return StandardTableau(Partition(parts), rows);
  }

  bool valid() const {
    for (std::size_t r = 0; r < rows_.size(); ++r)
      for (std::size_t c = 0; c < rows_[r].size(); ++c) {
        if (c > 0 && rows_[r][c] <= rows_[r][c - 1]) return false;
        if (r > 0 && rows_[r][c] <= rows_[r - 1][c]) return false;
      }
    return true;
  }

  friend bool operator==(const StandardTableau&, const StandardTableau&) = default;

 private:
  Partition shape_;
  std::vector<std::vector<int>> rows_;
};

// All SYT of shape mu in last-letter order.
inline std::vector<StandardTableau> enumerate_standard_tableaux(const Partition& mu) {
  if (mu.total() == 0) return {StandardTableau(mu, {})};
  std::vector<StandardTableau> out;
  const int p = mu.total();
  for (int r = 0; r < mu.height(); ++r) {
    if (mu.row(r) <= mu.row(r + 1)) continue;
    std::vector<int> parts = mu.parts();
    --parts[r];
    for (const auto& t : enumerate_standard_tableaux(Partition(parts))) {
      auto rows = t.rows();
      if (static_cast<int>(rows.size()) <= r) rows.resize(r + 1);
      rows[r].push_back(p);
      out.emplace_back(mu, rows);
    }
  }
  return out;
}

// Chain of shapes (1) c ... c mu, one box per step.
class BratteliPath {
 public:
  explicit BratteliPath(std::vector<Partition> chain) : chain_(std::move(chain)) {
    for (std::size_t k = 0; k < chain_.size(); ++k) {
      if (chain_[k].total() != static_cast<int>(k) + 1)
        throw std::invalid_argument("Bratteli path must grow by one box per step");
      if (k > 0) {
        const auto up = add_box(chain_[k - 1]);
        if (std::find(up.begin(), up.end(), chain_[k]) == up.end())
          throw std::invalid_argument("Bratteli path step is not a box addition");
      }
    }
  }

  static BratteliPath from_tableau(const StandardTableau& t) {
    std::vector<Partition> chain(t.size());
    StandardTableau cur = t;
    for (int k = t.size(); k >= 1; --k) {
      chain[k - 1] = cur.shape();
      if (k > 1) cur = cur.remove_largest();
    }
    return BratteliPath(chain);
  }

  StandardTableau to_tableau() const {
    std::vector<std::vector<int>> rows;
    Partition prev;
    for (std::size_t k = 0; k < chain_.size(); ++k) {
      const auto& cur = chain_[k];
      for (int r = 0; r < cur.height(); ++r) {
        if (cur.row(r) != prev.row(r)) {
          if (static_cast<int>(rows.size()) <= r) rows.resize(r + 1);
          rows[r].push_back(static_cast<int>(k) + 1);
          break;
        }
      }
      prev = cur;
    }
    return StandardTableau(chain_.empty() ? Partition() : chain_.back(), rows);
  }

  const std::vector<Partition>& chain() const { return chain_; }

 private:
  std::vector<Partition> chain_;
};

// Exhaustive count of semistandard fillings with entries 1..d.
inline std::int64_t count_semistandard_tableaux(const Partition& mu, int d) {
  if (d < 1) throw std::invalid_argument("local dimension must be positive");
  std::vector<std::pair<int, int>> cells;
  for (int r = 0; r < mu.height(); ++r)
    for (int c = 0; c < mu.row(r); ++c) cells.emplace_back(r, c);
  std::vector<std::vector<int>> fill(mu.height());
  for (int r = 0; r < mu.height(); ++r) fill[r].assign(mu.row(r), 0);

  std::int64_t count = 0;
  auto rec = [&](auto&& self, std::size_t idx) -> void {
    if (idx == cells.size()) {
      ++count;
      return;
    }
    auto [r, c] = cells[idx];
    int lo = 1;
    if (c > 0) lo = std::max(lo, fill[r][c - 1]);
    if (r > 0) lo = std::max(lo, fill[r - 1][c] + 1);
    for (int v = lo; v <= d; ++v) {
      fill[r][c] = v;
      self(self, idx + 1);
    }
  };
  rec(rec, 0);
  return count;
}

}  // namespace wbalg
