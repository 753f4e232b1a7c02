#pragma once

// Symmetric group arithmetic and Young's orthogonal form.
//
// Permutations act on {0..p-1} internally; serialization uses 1-based image
// lists. Composition is (a*b)(x) = a(b(x)), so that phi(a*b) = phi(a)phi(b).

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "wbalg/errors.hpp"
#include "wbalg/partitions.hpp"

namespace wbalg {

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (int x : img_) {
      if (x < 0 || x >= static_cast<int>(img_.size()) || seen[x])
        throw std::invalid_argument("image list is not a bijection");
      seen[x] = true;
    }
  }

  static Permutation identity(int p) {
    std::vector<int> v(p);
    std::iota(v.begin(), v.end(), 0);
    return Permutation(std::move(v));
  }
  static Permutation from_one_based(const std::vector<int>& images) {
    std::vector<int> v(images);
    for (int& x : v) --x;
    return Permutation(std::move(v));
  }
  // Transposition of zero-based points a and b.
  static Permutation transposition(int p, int a, int b) {
    auto s = identity(p);
    std::swap(s.img_[a], s.img_[b]);
    return s;
  }

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int x) const { return img_[x]; }
  const std::vector<int>& images() const { return img_; }
  std::vector<int> one_based() const {
    std::vector<int> v(img_);
    for (int& x : v) ++x;
    return v;
  }

  Permutation inverse() const {
    std::vector<int> v(img_.size());
    for (int x = 0; x < size(); ++x) v[img_[x]] = x;
    return Permutation(std::move(v));
  }
  bool is_identity() const {
    for (int x = 0; x < size(); ++x)
      if (img_[x] != x) return false;
    return true;
  }
  bool fixes_last() const { return !img_.empty() && img_.back() == size() - 1; }
  // Restriction to S_{p-1}; requires fixes_last().
  Permutation restricted() const {
    if (!fixes_last()) throw std::invalid_argument("permutation does not fix p");
    return Permutation(std::vector<int>(img_.begin(), img_.end() - 1));
  }

  // Adjacent transpositions s_k (zero-based, swapping k and k+1) whose
  // product s_{k_m} ... s_{k_1} equals this permutation, k_1 listed first.
  std::vector<int> bubble_factorization() const {
    std::vector<int> a(img_), swaps;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i + 1 < size(); ++i)
        if (a[i] > a[i + 1]) {
          std::swap(a[i], a[i + 1]);
          swaps.push_back(i);
          changed = true;
        }
    }
    return swaps;
  }

  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw std::invalid_argument("permutation sizes differ");
    std::vector<int> v(a.size());
    for (int x = 0; x < a.size(); ++x) v[x] = a.img_[b.img_[x]];
    return Permutation(std::move(v));
  }
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) { return a.img_ <=> b.img_; }

 private:
  std::vector<int> img_;
};

inline constexpr int kMaxGroupDegree = 6;

inline long factorial(int n) {
  long f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Lexicographic rank of a permutation; matches enumerate_group order.
inline int permutation_rank(const Permutation& s) {
  const int p = s.size();
  int rank = 0;
  for (int i = 0; i < p; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < p; ++j)
      if (s(j) < s(i)) ++smaller;
    rank += smaller * static_cast<int>(factorial(p - 1 - i));
  }
  return rank;
}

// All of S_p in lexicographic order, identity first.
inline std::vector<Permutation> enumerate_group(int p) {
  if (p < 1) throw std::invalid_argument("group degree must be at least 1");
  if (p > kMaxGroupDegree) throw resource_error("S_p enumeration limited to p <= 6");
  std::vector<Permutation> out;
  std::vector<int> v(p);
  std::iota(v.begin(), v.end(), 0);
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

struct IrrepMatrix {
  Partition shape;
  Eigen::MatrixXd matrix;
};

struct PrirIndex {
  Partition mu;
  Partition alpha;
  int i_alpha = 0;
  friend bool operator==(const PrirIndex&, const PrirIndex&) = default;
};

// Irrep data of one shape: tableaux, PRIR map and phi(sigma) for all of S_p.
class IrrepTable {
 public:
  explicit IrrepTable(const Partition& mu) : mu_(mu), tableaux_(enumerate_standard_tableaux(mu)) {
    const int p = mu.total();
    const int n = static_cast<int>(tableaux_.size());
    std::map<std::vector<std::vector<int>>, int> lookup;
    for (int t = 0; t < n; ++t) lookup[tableaux_[t].rows()] = t;

    generators_.resize(std::max(p - 1, 0));
    for (int k = 0; k + 1 < p; ++k) {
      Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n, n);
      for (int t = 0; t < n; ++t) {
        const auto& tab = tableaux_[t];
        const double r = tab.content(k + 2) - tab.content(k + 1);
        g(t, t) = 1.0 / r;
        if (std::abs(r) > 1.0) {
          auto rows = tab.rows();
          auto [r1, c1] = tab.position(k + 1);
          auto [r2, c2] = tab.position(k + 2);
          std::swap(rows[r1][c1], rows[r2][c2]);
          g(lookup.at(rows), t) = std::sqrt(1.0 - 1.0 / (r * r));
        }
      }
      generators_[k] = std::move(g);
    }

    if (p <= kMaxGroupDegree && p >= 1) {
      for (const auto& s : enumerate_group(p)) matrices_.push_back(compose(s));
    }

    if (p >= 1) {
      for (const auto& t : tableaux_) {
        const auto reduced = t.remove_largest();
        const auto sub = enumerate_standard_tableaux(reduced.shape());
        const int ia = static_cast<int>(std::find(sub.begin(), sub.end(), reduced) - sub.begin());
        prir_.push_back(PrirIndex{mu, reduced.shape(), ia});
      }
    }
  }

  const Partition& shape() const { return mu_; }
  int dim() const { return static_cast<int>(tableaux_.size()); }
  const std::vector<StandardTableau>& tableaux() const { return tableaux_; }
  const std::vector<PrirIndex>& prir() const { return prir_; }
  const Eigen::MatrixXd& generator(int k) const { return generators_.at(k); }

  // phi^mu(sigma); cached for p <= 6, composed on demand otherwise.
  Eigen::MatrixXd rep(const Permutation& s) const {
    if (s.size() != mu_.total()) throw std::invalid_argument("permutation degree differs from |mu|");
    if (!matrices_.empty()) return matrices_[permutation_rank(s)];
    return compose(s);
  }

  // Zero-based basis index of the PRIR label (alpha, i_alpha).
  int position(const Partition& alpha, int i_alpha) const {
    for (int i = 0; i < dim(); ++i)
      if (prir_[i].alpha == alpha && prir_[i].i_alpha == i_alpha) return i;
    throw std::out_of_range("PRIR label not present in " + mu_.str());
  }
  // First basis index of the alpha block (the label 1_alpha).
  int block_start(const Partition& alpha) const { return position(alpha, 0); }

 private:
  Eigen::MatrixXd compose(const Permutation& s) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(dim(), dim());
    for (int k : s.bubble_factorization()) m = generators_[k] * m;
    return m;
  }

  Partition mu_;
  std::vector<StandardTableau> tableaux_;
  std::vector<Eigen::MatrixXd> generators_;
  std::vector<Eigen::MatrixXd> matrices_;
  std::vector<PrirIndex> prir_;
};

// Process-wide, write-once cache of irrep tables.
inline std::shared_ptr<const IrrepTable> irrep_table(const Partition& mu) {
  static std::mutex mtx;
  static std::map<Partition, std::shared_ptr<const IrrepTable>> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(mu);
  if (it != cache.end()) return it->second;
  auto t = std::make_shared<const IrrepTable>(mu);
  cache.emplace(mu, t);
  return t;
}

inline IrrepMatrix young_orthogonal_rep(const Partition& mu, const Permutation& sigma) {
  return IrrepMatrix{mu, irrep_table(mu)->rep(sigma)};
}

inline std::vector<PrirIndex> prir_map(const Partition& mu) {
  if (mu.total() < 1) throw std::invalid_argument("PRIR map needs |mu| >= 1");
  return irrep_table(mu)->prir();
}

// True iff phi^mu(sigma) is block diagonal over the PRIR blocks and each
// block equals phi^alpha of the restriction of sigma.
inline bool restriction_block_check(const Partition& mu, const Permutation& sigma,
                                    double tol = 1e-10) {
  if (!sigma.fixes_last()) throw std::invalid_argument("sigma must fix p");
  const auto tab = irrep_table(mu);
  const Eigen::MatrixXd m = tab->rep(sigma);
  const auto& prir = tab->prir();
  const Permutation rest = sigma.restricted();
  for (int a = 0; a < tab->dim(); ++a)
    for (int b = 0; b < tab->dim(); ++b) {
      double expected = 0.0;
      if (prir[a].alpha == prir[b].alpha) {
        if (prir[a].alpha.total() == 0) {
          expected = 1.0;
        } else {
          expected = irrep_table(prir[a].alpha)->rep(rest)(prir[a].i_alpha, prir[b].i_alpha);
        }
      }
      if (std::abs(m(a, b) - expected) > tol) return false;
    }
  return true;
}

}  // namespace wbalg
