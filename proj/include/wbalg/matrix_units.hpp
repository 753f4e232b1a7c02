#pragma once

// Irreducible matrix units E^mu_ij of C[S_p] in the natural representation.
//
// Left-wall embedding conjugates by the register reversal, so tableau entry k
// sits on register p+1-k; right-wall embedding keeps the natural order on
// registers p+1..2p. Under this pair of embeddings
//   (E^mu_ij (x) E^nu_kl) V^(p) = delta^{mu nu} delta_{jl} (E^mu_ik (x) 1) V^(p).

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "wbalg/partitions.hpp"
#include "wbalg/symgroup.hpp"
#include "wbalg/tensorspace.hpp"

namespace wbalg {

struct MatrixUnitE {
  Partition mu;
  int i = 0;
  int j = 0;
  int d = 1;
  bool vanishing = false;
  DenseOperator op;
};

// Register reversal k -> p+1-k on p registers.
inline Permutation reversal(int p) {
  std::vector<int> v(p);
  for (int k = 0; k < p; ++k) v[k] = p - 1 - k;
  return Permutation(std::move(v));
}

// All E^mu_ij for one (mu, d), natural order and reversal-conjugated.
class UnitBank {
 public:
  UnitBank(const Partition& mu, int d) : mu_(mu), d_(d), table_(irrep_table(mu)) {
    const int p = mu.total();
    const int dim = checked_dimension(d, p);
    const int n = table_->dim();
    vanishing_ = multiplicity(mu, d) == 0;
    natural_.assign(n * n, Eigen::MatrixXd::Zero(dim, dim));
    if (!vanishing_) {
      const auto group = enumerate_group(p);
      const double scale = static_cast<double>(n) / static_cast<double>(factorial(p));
      for (const auto& s : group) {
        const auto map = register_permutation_map(s, d);
        const Eigen::MatrixXd phi_inv = table_->rep(s.inverse());
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            const double c = scale * phi_inv(j, i);
            if (c == 0.0) continue;
            auto& m = natural_[i * n + j];
            for (int x = 0; x < dim; ++x) m(map[x], x) += c;
          }
      }
    }
    const auto rev = register_permutation_map(reversal(p), d);
    reversed_.reserve(natural_.size());
    for (const auto& m : natural_) {
      Eigen::MatrixXd r(dim, dim);
      for (int c = 0; c < dim; ++c)
        for (int x = 0; x < dim; ++x) r(rev[x], rev[c]) = m(x, c);
      reversed_.push_back(std::move(r));
    }
  }

  const Partition& shape() const { return mu_; }
  int d() const { return d_; }
  int dim_irrep() const { return table_->dim(); }
  bool vanishing() const { return vanishing_; }
  const IrrepTable& table() const { return *table_; }

  const Eigen::MatrixXd& natural(int i, int j) const { return natural_.at(check(i, j)); }
  // Reversal-conjugated unit: the block placed on registers 1..p by embed_left.
  const Eigen::MatrixXd& left(int i, int j) const { return reversed_.at(check(i, j)); }

 private:
  int check(int i, int j) const {
    const int n = table_->dim();
    if (i < 0 || j < 0 || i >= n || j >= n) throw std::out_of_range("matrix unit index out of range");
    return i * n + j;
  }

  Partition mu_;
  int d_;
  std::shared_ptr<const IrrepTable> table_;
  bool vanishing_ = false;
  std::vector<Eigen::MatrixXd> natural_;
  std::vector<Eigen::MatrixXd> reversed_;
};

inline std::shared_ptr<const UnitBank> unit_bank(const Partition& mu, int d) {
  static std::mutex mtx;
  static std::map<std::pair<Partition, int>, std::shared_ptr<const UnitBank>> cache;
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find({mu, d});
    if (it != cache.end()) return it->second;
  }
  auto bank = std::make_shared<const UnitBank>(mu, d);
  std::lock_guard<std::mutex> lock(mtx);
  return cache.emplace(std::make_pair(mu, d), bank).first->second;
}

// E^mu_ij = (d_mu/p!) sum_sigma phi^mu_ji(sigma^-1) V_sigma; indices zero-based.
inline MatrixUnitE E_unit(const Partition& mu, int i, int j, int d) {
  const auto bank = unit_bank(mu, d);
  return MatrixUnitE{mu, i, j, d, bank->vanishing(), DenseOperator(d, mu.total(), bank->natural(i, j))};
}

inline MatrixUnitE E_unit(const PrirIndex& a, const PrirIndex& b, int d) {
  if (!(a.mu == b.mu)) throw std::invalid_argument("PRIR labels belong to different irreps");
  const auto tab = irrep_table(a.mu);
  return E_unit(a.mu, tab->position(a.alpha, a.i_alpha), tab->position(b.alpha, b.i_alpha), d);
}

inline DenseOperator young_projector(const Partition& mu, int d) {
  const auto bank = unit_bank(mu, d);
  DenseOperator out(d, mu.total());
  for (int i = 0; i < bank->dim_irrep(); ++i) out.matrix() += bank->natural(i, i);
  return out;
}

inline DenseOperator embed_left(const DenseOperator& e, int p) {
  if (e.n() != p) throw std::invalid_argument("embed_left expects an operator on p registers");
  const auto rev = register_permutation_map(reversal(p), e.d());
  return kron(conjugate_by_map(e, rev), DenseOperator::identity(e.d(), p));
}
inline DenseOperator embed_left(const MatrixUnitE& e, int p) { return embed_left(e.op, p); }

inline DenseOperator embed_right(const DenseOperator& e, int p) {
  if (e.n() != p) throw std::invalid_argument("embed_right expects an operator on p registers");
  return kron(DenseOperator::identity(e.d(), p), e);
}
inline DenseOperator embed_right(const MatrixUnitE& e, int p) { return embed_right(e.op, p); }

struct IdentityCheck {
  DenseOperator lhs;
  DenseOperator rhs;
  double residual = 0.0;
};

// E^alpha_{ij} (x) 1 against sum_{mu = alpha + box} E^mu_{(alpha,i),(alpha,j)}.
inline IdentityCheck branching_expand(const Partition& alpha, int i, int j, int p, int d) {
  if (alpha.total() != p - 1 || p < 2) throw std::invalid_argument("alpha must partition p-1 >= 1");
  IdentityCheck out;
  out.lhs = kron(E_unit(alpha, i, j, d).op, DenseOperator::identity(d, 1));
  out.rhs = DenseOperator(d, p);
  for (const auto& mu : add_box(alpha)) {
    const auto tab = irrep_table(mu);
    out.rhs += E_unit(mu, tab->position(alpha, i), tab->position(alpha, j), d).op;
  }
  out.residual = max_abs_diff(out.lhs, out.rhs);
  return out;
}

// tr_p E^mu_{i_alpha j_alpha'} against (m_mu/m_alpha) E^alpha_{i_alpha j_alpha} delta^{alpha alpha'}.
inline IdentityCheck partial_trace_E(const Partition& mu, const PrirIndex& a, const PrirIndex& b, int d) {
  const int p = mu.total();
  if (p < 2) throw std::invalid_argument("partial_trace_E needs |mu| >= 2");
  IdentityCheck out;
  out.lhs = partial_trace(E_unit(a, b, d).op, {p});
  out.rhs = DenseOperator(d, p - 1);
  const auto ma = multiplicity(a.alpha, d);
  if (a.alpha == b.alpha && ma > 0) {
    const double ratio = static_cast<double>(multiplicity(mu, d)) / static_cast<double>(ma);
    out.rhs = ratio * E_unit(a.alpha, a.i_alpha, b.i_alpha, d).op;
  }
  out.residual = max_abs_diff(out.lhs, out.rhs);
  return out;
}

}  // namespace wbalg
