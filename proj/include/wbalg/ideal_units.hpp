#pragma once

// Spanning operators and irreducible matrix units of the two highest ideals
// of the walled Brauer algebra: M^(p) ("top") and M^(p-1) ("sub").
//
// Both generators have low rank: V^(p) = Phi Phi^T and V^(p-1) = K K^T, where
// column (a,c) of K is e_a (x) Phi' (x) e_c with e_a on register 1, e_c on
// register 2p and Phi' the maximally entangled vector on the inner pairs.
// F, H and G operators are formed from these factors; a dense operator is
// only materialized on request.

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <boost/multiprecision/cpp_int.hpp>

#include "wbalg/errors.hpp"
#include "wbalg/lowrank.hpp"
#include "wbalg/matrix_units.hpp"
#include "wbalg/partitions.hpp"
#include "wbalg/symgroup.hpp"
#include "wbalg/tensorspace.hpp"

namespace wbalg {

using Rational = boost::multiprecision::cpp_rational;

enum class Ideal { top, sub };

inline std::string ideal_name(Ideal x) { return x == Ideal::top ? "p" : "p-1"; }

namespace detail {

inline void require_local_dim(int d) {
  if (d < 2) throw std::invalid_argument("ideal units need d >= 2");
}

inline void require_index(const Partition& mu, int i, int p) {
  if (mu.total() != p) throw std::invalid_argument("partition " + mu.str() + " is not a partition of p");
  if (i < 0 || i >= dim_irrep(mu)) throw std::out_of_range("index out of range for " + mu.str());
}

inline bool contains(const std::vector<Partition>& v, const Partition& a) {
  return std::find(v.begin(), v.end(), a) != v.end();
}

}  // namespace detail

// Factors of V^(p) and V^(p-1) on 2p registers, plus the per-label factors
// of the spanning operators.
class WallContext {
 public:
  WallContext(int p, int d) : p_(p), d_(d) {
    if (p < 1) throw std::invalid_argument("p must be at least 1");
    detail::require_local_dim(d);
    const int n = 2 * p;
    dim_ = checked_dimension(d, n);
    side_ = checked_dimension(d, p);
    k_ = Eigen::MatrixXd::Zero(dim_, d * d);
    phi_ = Eigen::VectorXd::Zero(dim_);
    std::vector<int> g(n + 1);
    for (int idx = 0; idx < dim_; ++idx) {
      for (int k = 1; k <= n; ++k) g[k] = register_digit(idx, k, d, n);
      bool inner = true;
      for (int j = 1; j < p && inner; ++j) inner = g[p + j] == g[p - j + 1];
      if (!inner) continue;
      k_(idx, g[1] * d + g[n]) = 1.0;
      if (g[1] == g[n]) phi_(idx) = 1.0;
    }
    u_ = Eigen::VectorXd::Zero(d * d);
    for (int a = 0; a < d; ++a) u_(a * d + a) = 1.0;
    id_ = Eigen::MatrixXd::Identity(side_, side_);
  }

  int p() const { return p_; }
  int d() const { return d_; }
  int dim() const { return dim_; }
  int side() const { return side_; }
  const Eigen::MatrixXd& K() const { return k_; }
  const Eigen::VectorXd& phi() const { return phi_; }
  // vec of the d x d identity in the (a,c) column labelling of K.
  const Eigen::VectorXd& u() const { return u_; }

  // (E^mu_ij (x) 1) Phi with the left-wall embedding.
  Eigen::VectorXd top_vector(const Partition& mu, int i, int j) const {
    detail::require_index(mu, i, p_);
    detail::require_index(mu, j, p_);
    return kron_apply(unit_bank(mu, d_)->left(i, j), id_, phi_);
  }

  // (E^mu_{i,1_alpha} (x) E^nu_{j,1_alpha}) K.
  Eigen::MatrixXd sub_factor(const Partition& mu, const Partition& nu, int i, int j,
                             const Partition& alpha) const {
    detail::require_index(mu, i, p_);
    detail::require_index(nu, j, p_);
    const int a = irrep_table(mu)->block_start(alpha);
    const int b = irrep_table(nu)->block_start(alpha);
    return kron_apply(unit_bank(mu, d_)->left(i, a), unit_bank(nu, d_)->natural(j, b), k_);
  }

 private:
  int p_, d_;
  int dim_ = 0, side_ = 0;
  Eigen::MatrixXd k_;
  Eigen::VectorXd phi_;
  Eigen::VectorXd u_;
  Eigen::MatrixXd id_;
};

inline std::shared_ptr<const WallContext> wall_context(int p, int d) {
  static std::mutex mtx;
  static std::map<std::pair<int, int>, std::shared_ptr<const WallContext>> cache;
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find({p, d});
    if (it != cache.end()) return it->second;
  }
  auto ctx = std::make_shared<const WallContext>(p, d);
  std::lock_guard<std::mutex> lock(mtx);
  return cache.emplace(std::make_pair(p, d), ctx).first->second;
}

// ---------------------------------------------------------------------------
// F operators

struct FOperator {
  Ideal kind = Ideal::top;
  Partition mu, nu, mup, nup;
  int i = 0, j = 0, ip = 0, jp = 0;
  Partition alpha, alphap;
  bool labelled_zero = false;
  DenseOperator op;
};

// (E^mu_ij (x) 1) V^(p) (E^nu_{jp ip} (x) 1).
inline FOperator F_top(const Partition& mu, int i, int j, const Partition& nu, int ip, int jp, int p, int d) {
  const auto ctx = wall_context(p, d);
  const Eigen::VectorXd a = ctx->top_vector(mu, i, j);
  const Eigen::VectorXd b = ctx->top_vector(nu, ip, jp);
  FOperator f;
  f.kind = Ideal::top;
  f.mu = mu;
  f.nu = nu;
  f.i = i;
  f.j = j;
  f.ip = ip;
  f.jp = jp;
  f.op = DenseOperator(d, 2 * p, a * b.transpose());
  return f;
}

// (E^mu_{i,1_alpha} (x) E^nu_{j,1_alpha}) V^(p-1) (E^mup_{1_alphap,ip} (x) E^nup_{1_alphap,jp}).
inline FOperator F_sub(const Partition& mu, const Partition& nu, const Partition& mup, const Partition& nup,
                       int i, int j, int ip, int jp, const Partition& alpha, const Partition& alphap, int p,
                       int d) {
  const auto ctx = wall_context(p, d);
  FOperator f;
  f.kind = Ideal::sub;
  f.mu = mu;
  f.nu = nu;
  f.mup = mup;
  f.nup = nup;
  f.i = i;
  f.j = j;
  f.ip = ip;
  f.jp = jp;
  f.alpha = alpha;
  f.alphap = alphap;
  if (!detail::contains(common_removals(mu, nu), alpha) || !detail::contains(common_removals(mup, nup), alphap)) {
    f.labelled_zero = true;
    f.op = DenseOperator(d, 2 * p);
    return f;
  }
  const Eigen::MatrixXd wx = ctx->sub_factor(mu, nu, i, j, alpha);
  const Eigen::MatrixXd wy = ctx->sub_factor(mup, nup, ip, jp, alphap);
  f.op = DenseOperator(d, 2 * p, wx * wy.transpose());
  return f;
}

// d F(p-1) - F(p) delta^{mu nu} delta^{mup nup}.
inline DenseOperator H_operator(const Partition& mu, const Partition& nu, const Partition& mup,
                                const Partition& nup, int i, int j, int ip, int jp, const Partition& alpha,
                                const Partition& alphap, int p, int d) {
  auto f = F_sub(mu, nu, mup, nup, i, j, ip, jp, alpha, alphap, p, d);
  if (f.labelled_zero) throw std::invalid_argument("H needs alpha in mu^nu and alphap in mup^nup");
  DenseOperator h = static_cast<double>(d) * f.op;
  if (mu == nu && mup == nup) h -= F_top(mu, i, j, mup, ip, jp, p, d).op;
  return h;
}

// ---------------------------------------------------------------------------
// (a, b) coefficients

struct ABCoefficients {
  Rational a, b;
  Rational x;  // tr((E (x) E) V^(p-1))
  Rational y;  // tr((E (x) E) V^(p))
  int d = 2;
  double a_value() const { return a.convert_to<double>(); }
  double b_value() const { return b.convert_to<double>(); }
};

// V^(p-1) (E^mu_ij (x) E^nu_kl) V^(p-1) = a V^(p) + b V^(p-1), indices zero-based.
inline ABCoefficients ab_coefficients(const Partition& mu, int i, int j, const Partition& nu, int k, int l,
                                      int d) {
  detail::require_local_dim(d);
  const int p = mu.total();
  for (auto [s, x] : {std::pair{&mu, i}, {&mu, j}, {&nu, k}, {&nu, l}}) detail::require_index(*s, x, p);
  const auto& pm = irrep_table(mu)->prir();
  const auto& pn = irrep_table(nu)->prir();
  const Rational mm(multiplicity(mu, d)), mn(multiplicity(nu, d));

  ABCoefficients c;
  c.d = d;
  const bool same_alpha = pm[i].alpha == pm[j].alpha && pm[i].alpha == pn[k].alpha && pn[k].alpha == pn[l].alpha;
  if (same_alpha && pm[i].i_alpha == pn[k].i_alpha && pm[j].i_alpha == pn[l].i_alpha && mm * mn != 0)
    c.x = mm * mn / Rational(multiplicity(pm[i].alpha, d));
  if (mu == nu && i == k && j == l) c.y = mm;
  const Rational dd(d);
  const Rational den = dd * (dd * dd - 1);
  c.a = (dd * c.y - c.x) / den;
  c.b = (dd * c.x - c.y) / den;
  return c;
}

// Fixed-index form: E^mup_{1_alphap,1_beta} (x) E^nup_{1_alphap,1_beta}.
inline ABCoefficients ab_coefficients_fixed(const Partition& mup, const Partition& nup, const Partition& alphap,
                                            const Partition& beta, int d) {
  const auto tm = irrep_table(mup);
  const auto tn = irrep_table(nup);
  return ab_coefficients(mup, tm->block_start(alphap), tm->block_start(beta), nup, tn->block_start(alphap),
                         tn->block_start(beta), d);
}

struct SandwichFit {
  double a = 0.0;
  double b = 0.0;
  double residual = 0.0;
};

// Least-squares projection of V^(p-1) (E (x) E) V^(p-1) onto {V^(p), V^(p-1)}.
inline SandwichFit sandwich_fit(const Partition& mu, int i, int j, const Partition& nu, int k, int l, int p,
                                int d) {
  const Eigen::MatrixXd x =
      Eigen::kroneckerProduct(unit_bank(mu, d)->left(i, j), unit_bank(nu, d)->natural(k, l)).eval();
  const Eigen::SparseMatrix<double> vs = V_generator_sparse(p, p - 1, d);
  const Eigen::SparseMatrix<double> vp = V_generator_sparse(p, p, d);
  Eigen::MatrixXd s = vs * x;
  s = (s * vs).eval();
  auto inner = [](const Eigen::MatrixXd& m, const Eigen::SparseMatrix<double>& v) {
    double acc = 0.0;
    for (int c = 0; c < v.outerSize(); ++c)
      for (Eigen::SparseMatrix<double>::InnerIterator it(v, c); it; ++it) acc += m(it.row(), c) * it.value();
    return acc;
  };
  Eigen::Matrix2d gram;
  gram(0, 0) = vp.squaredNorm();
  gram(1, 1) = vs.squaredNorm();
  gram(0, 1) = gram(1, 0) = inner(Eigen::MatrixXd(vp), vs);
  const Eigen::Vector2d rhs(inner(s, vp), inner(s, vs));
  const Eigen::Vector2d ab = gram.ldlt().solve(rhs);
  SandwichFit fit{ab(0), ab(1), 0.0};
  s -= ab(0) * Eigen::MatrixXd(vp);
  s -= ab(1) * Eigen::MatrixXd(vs);
  fit.residual = s.cwiseAbs().maxCoeff();
  return fit;
}

// ---------------------------------------------------------------------------
// Labels and G units

struct UnitLabel {
  Ideal ideal = Ideal::top;
  Partition mu, nu;  // nu == mu for the top ideal
  int i = 0, j = 0;
  int beta = 0;  // eigen-index of B^{mu nu}; unused for the top ideal

  std::string str() const {
    if (ideal == Ideal::top) return mu.str() + " " + std::to_string(i + 1) + "," + std::to_string(j + 1);
    return mu.str() + nu.str() + " " + std::to_string(i + 1) + "," + std::to_string(j + 1) + " b" +
           std::to_string(beta + 1);
  }
  friend bool operator==(const UnitLabel&, const UnitLabel&) = default;
};

struct GUnit {
  UnitLabel row, col;
  DenseOperator op;
};

inline GUnit G_top(const Partition& mu, int i, int j, const Partition& nu, int ip, int jp, int p, int d) {
  const auto mm = multiplicity(mu, d), mn = multiplicity(nu, d);
  if (mm == 0 || mn == 0) throw unit_error("G(p) unit undefined: zero multiplicity for " + (mm ? nu : mu).str());
  auto f = F_top(mu, i, j, nu, ip, jp, p, d);
  GUnit g;
  g.row = UnitLabel{Ideal::top, mu, mu, i, j, 0};
  g.col = UnitLabel{Ideal::top, nu, nu, ip, jp, 0};
  g.op = (1.0 / std::sqrt(static_cast<double>(mm) * static_cast<double>(mn))) * f.op;
  return g;
}

// ---------------------------------------------------------------------------
// B matrix

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns
};

// Cyclic Jacobi rotations; first nonzero component of each vector positive.
inline SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& a, int max_sweeps = 100) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("jacobi_eigen needs a square matrix");
  Eigen::MatrixXd m = 0.5 * (a + a.transpose());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double scale = m.norm();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += m(p, q) * m(p, q);
    if (off <= 1e-32 * scale * scale || off == 0.0) break;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (m(p, q) == 0.0) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * m(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double mkp = m(k, p), mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double mpk = m(p, k), mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  std::vector<Eigen::Index> order(n);
  for (Eigen::Index k = 0; k < n; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return m(x, x) < m(y, y); });
  SymmetricEigen out{Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = m(order[k], order[k]);
    Eigen::VectorXd col = v.col(order[k]);
    for (Eigen::Index r = 0; r < n; ++r)
      if (std::abs(col(r)) > 1e-12) {
        if (col(r) < 0) col = -col;
        break;
      }
    out.vectors.col(k) = col;
  }
  return out;
}

// d m_mu = sum of m_alpha over alpha = mu - box, or m_mu = 0.
inline bool singularity_condition(const Partition& mu, int d) {
  const auto m = multiplicity(mu, d);
  if (m == 0) return true;
  std::int64_t s = 0;
  for (const auto& a : remove_box(mu)) s += multiplicity(a, d);
  return d * m == s;
}

struct BMatrix {
  Partition mu, nu;
  int d = 2;
  std::vector<Partition> alphas;  // remove_box order of mu
  std::vector<std::vector<Rational>> exact;
  Eigen::MatrixXd entries;
  Eigen::VectorXd eig;  // b_diag(beta); ascending for mu == nu, alpha order otherwise
  Eigen::MatrixXd U;    // U(beta, alpha): rows are eigenvectors
  bool singular = false;
  int nullity = 0;
  std::vector<int> live;  // beta with b_diag(beta) > 0
  Rational determinant;

  int size() const { return static_cast<int>(alphas.size()); }
  int alpha_index(const Partition& a) const {
    for (int k = 0; k < size(); ++k)
      if (alphas[k] == a) return k;
    throw std::out_of_range(a.str() + " is not a common remove-box shape");
  }
  bool is_live(int beta) const { return std::find(live.begin(), live.end(), beta) != live.end(); }
};

inline BMatrix compute_B_matrix(const Partition& mu, const Partition& nu, int d) {
  detail::require_local_dim(d);
  if (mu.total() != nu.total() || mu.total() < 1) throw std::invalid_argument("B matrix needs mu, nu of the same p >= 1");
  BMatrix B;
  B.mu = mu;
  B.nu = nu;
  B.d = d;
  B.alphas = common_removals(mu, nu);
  const int k = B.size();
  const Rational dd(d), den = dd * (dd * dd - 1);
  const Rational mm(multiplicity(mu, d)), mn(multiplicity(nu, d));
  B.exact.assign(k, std::vector<Rational>(k, Rational(0)));
  B.entries = Eigen::MatrixXd::Zero(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) {
      Rational v = 0;
      const Rational ma(multiplicity(B.alphas[r], d));
      if (r == c && ma != 0) v += dd * mm * mn / ma;
      if (mu == nu) v -= mm;
      B.exact[r][c] = v / den;
      B.entries(r, c) = B.exact[r][c].convert_to<double>();
    }

  int predicted = 0;
  if (mm * mn == 0) {
    predicted = k;
  } else if (mu == nu && singularity_condition(mu, d)) {
    predicted = 1;
  }
  B.nullity = predicted;

  if (mu == nu) {
    // det(c (diag(x) - 1 1^T)) = c^k (prod x - sum_i prod_{j != i} x_j)
    if (mm == 0) {
      B.determinant = k ? Rational(0) : Rational(1);
    } else {
      std::vector<Rational> x;
      for (const auto& a : B.alphas) x.push_back(dd * mm / Rational(multiplicity(a, d)));
      Rational prod = 1, sum = 0;
      for (const auto& xi : x) prod *= xi;
      for (int i = 0; i < k; ++i) {
        Rational t = 1;
        for (int j = 0; j < k; ++j)
          if (j != i) t *= x[j];
        sum += t;
      }
      Rational c = 1;
      for (int i = 0; i < k; ++i) c *= mm / den;
      B.determinant = c * (prod - sum);
    }
    const auto es = jacobi_eigen(B.entries);
    B.eig = es.values;
    B.U = es.vectors.transpose();
  } else {
    B.determinant = 1;
    for (int r = 0; r < k; ++r) B.determinant *= B.exact[r][r];
    B.eig = B.entries.diagonal();
    B.U = Eigen::MatrixXd::Identity(k, k);
  }
  B.singular = (B.determinant == 0);

  const double top = k ? B.eig.cwiseAbs().maxCoeff() : 0.0;
  int numeric_null = 0;
  for (int b = 0; b < k; ++b) {
    if (top == 0.0 || std::abs(B.eig(b)) <= 1e-10 * top) {
      ++numeric_null;
    } else {
      B.live.push_back(b);
    }
  }
  if (numeric_null != predicted)
    throw std::runtime_error("B matrix " + mu.str() + nu.str() + ": numeric nullity " +
                             std::to_string(numeric_null) + " disagrees with exact condition " +
                             std::to_string(predicted));
  return B;
}

// Write-once cache per (mu, nu, d).
inline std::shared_ptr<const BMatrix> b_matrix(const Partition& mu, const Partition& nu, int d) {
  static std::mutex mtx;
  static std::map<std::tuple<Partition, Partition, int>, std::shared_ptr<const BMatrix>> cache;
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find({mu, nu, d});
    if (it != cache.end()) return it->second;
  }
  auto b = std::make_shared<const BMatrix>(compute_B_matrix(mu, nu, d));
  std::lock_guard<std::mutex> lock(mtx);
  return cache.emplace(std::make_tuple(mu, nu, d), b).first->second;
}

inline BMatrix B_matrix(const Partition& mu, const Partition& nu, int d) { return *b_matrix(mu, nu, d); }

// ---------------------------------------------------------------------------
// Reduction of a spanning set with singular structure matrix

template <typename Op>
struct ReducedBasis {
  Eigen::VectorXd lambda;  // eigenvalues of A, ascending
  Eigen::MatrixXd Z;       // eigenvectors in columns
  std::vector<int> kept;
  std::vector<std::vector<Op>> units;  // f_st over kept x kept
  double discarded_norm = 0.0;
};

// Given x_ij with x_ij x_kl = A_jk x_il, returns f_st with f_st f_uv = delta_tu f_sv.
template <typename Op>
ReducedBasis<Op> reduce_singular_basis(const Eigen::MatrixXd& a, const std::vector<std::vector<Op>>& x,
                                       double tol = 1e-9) {
  const int n = static_cast<int>(a.rows());
  if (static_cast<int>(x.size()) != n) throw std::invalid_argument("generator grid does not match A");
  for (const auto& row : x)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("generator grid does not match A");
  ReducedBasis<Op> out;
  const auto es = jacobi_eigen(a);
  out.lambda = es.values;
  out.Z = es.vectors;
  const double top = n ? out.lambda.cwiseAbs().maxCoeff() : 0.0;
  for (int s = 0; s < n; ++s) {
    if (top > 0.0 && std::abs(out.lambda(s)) > 1e-10 * top) {
      if (out.lambda(s) < 0) throw semisimplicity_error("structure matrix has a negative eigenvalue", out.lambda(s));
      out.kept.push_back(s);
    }
  }
  double scale = 1.0;
  for (const auto& row : x)
    for (const auto& op : row) scale = std::max(scale, operator_norm(op));

  auto y = [&](int s, int t) {
    Op acc = zero_like(x[0][0]);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double c = out.Z(j, s) * out.Z(k, t);
        if (c != 0.0) acc += c * x[j][k];
      }
    return acc;
  };
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t) {
      const bool ks = std::find(out.kept.begin(), out.kept.end(), s) != out.kept.end();
      const bool kt = std::find(out.kept.begin(), out.kept.end(), t) != out.kept.end();
      if (ks && kt) continue;
      out.discarded_norm = std::max(out.discarded_norm, operator_norm(y(s, t)));
    }
  if (out.discarded_norm > tol * scale)
    throw semisimplicity_error("discarded direction is not the zero operator", out.discarded_norm);

  for (int s : out.kept) {
    std::vector<Op> row;
    for (int t : out.kept) row.push_back((1.0 / std::sqrt(out.lambda(s) * out.lambda(t))) * y(s, t));
    out.units.push_back(std::move(row));
  }
  return out;
}

// Structure matrix d B for x_{alpha alpha'} = H(alpha, alpha').
template <typename Op>
ReducedBasis<Op> reduce_singular_basis(const BMatrix& b, const std::vector<std::vector<Op>>& x, double tol = 1e-9) {
  return reduce_singular_basis(static_cast<double>(b.d) * b.entries, x, tol);
}

// sum_{alpha,alphap} U(beta,alpha) U'(betap,alphap) H(alpha,alphap) / (d sqrt(b_beta b'_betap)).
inline GUnit G_sub(const Partition& mu, const Partition& nu, const Partition& mup, const Partition& nup, int i,
                   int j, int ip, int jp, int beta, int betap, int p, int d) {
  const auto b1 = b_matrix(mu, nu, d);
  const auto b2 = b_matrix(mup, nup, d);
  if (beta < 0 || beta >= b1->size() || !b1->is_live(beta))
    throw unit_error("G(p-1) unit undefined: B" + mu.str() + nu.str() + " eigenvalue " + std::to_string(beta + 1) +
                     " is zero or absent");
  if (betap < 0 || betap >= b2->size() || !b2->is_live(betap))
    throw unit_error("G(p-1) unit undefined: B" + mup.str() + nup.str() + " eigenvalue " +
                     std::to_string(betap + 1) + " is zero or absent");
  GUnit g;
  g.row = UnitLabel{Ideal::sub, mu, nu, i, j, beta};
  g.col = UnitLabel{Ideal::sub, mup, nup, ip, jp, betap};
  g.op = DenseOperator(d, 2 * p);
  const double norm = d * std::sqrt(b1->eig(beta) * b2->eig(betap));
  for (int a = 0; a < b1->size(); ++a)
    for (int ap = 0; ap < b2->size(); ++ap) {
      const double c = b1->U(beta, a) * b2->U(betap, ap) / norm;
      if (c == 0.0) continue;
      g.op += c * H_operator(mu, nu, mup, nup, i, j, ip, jp, b1->alphas[a], b2->alphas[ap], p, d);
    }
  return g;
}

// ---------------------------------------------------------------------------
// Factored unit families

// Every unit of one or both ideals as G^{XY} = P_X P_Y^T.
class UnitFamily {
 public:
  UnitFamily(int p, int d, bool top = true, bool sub = true) : ctx_(wall_context(p, d)) {
    if (top) {
      for (const auto& mu : enumerate_partitions(p)) {
        const auto m = multiplicity(mu, d);
        if (m == 0) continue;
        const int n = static_cast<int>(dim_irrep(mu));
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            labels_.push_back(UnitLabel{Ideal::top, mu, mu, i, j, 0});
            factors_.push_back(ctx_->top_vector(mu, i, j) / std::sqrt(static_cast<double>(m)));
          }
      }
    }
    if (sub && p >= 1) {
      const int dd = d * d;
      const Eigen::MatrixXd proj =
          Eigen::MatrixXd::Identity(dd, dd) - ctx_->u() * ctx_->u().transpose() / static_cast<double>(d);
      for (const auto& mu : enumerate_partitions(p))
        for (const auto& nu : enumerate_partitions(p)) {
          const auto b = b_matrix(mu, nu, d);
          if (b->live.empty()) continue;
          const int nm = static_cast<int>(dim_irrep(mu)), nn = static_cast<int>(dim_irrep(nu));
          for (int beta : b->live)
            for (int i = 0; i < nm; ++i)
              for (int j = 0; j < nn; ++j) {
                Eigen::MatrixXd s = Eigen::MatrixXd::Zero(ctx_->dim(), dd);
                for (int a = 0; a < b->size(); ++a)
                  if (b->U(beta, a) != 0.0) s += b->U(beta, a) * ctx_->sub_factor(mu, nu, i, j, b->alphas[a]);
                labels_.push_back(UnitLabel{Ideal::sub, mu, nu, i, j, beta});
                factors_.push_back(s * proj / std::sqrt(b->eig(beta)));
              }
        }
    }
  }

  int p() const { return ctx_->p(); }
  int d() const { return ctx_->d(); }
  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<UnitLabel>& labels() const { return labels_; }
  const UnitLabel& label(int x) const { return labels_.at(x); }
  const Eigen::MatrixXd& factor(int x) const { return factors_.at(x); }
  int find(const UnitLabel& l) const {
    for (int x = 0; x < size(); ++x)
      if (labels_[x] == l) return x;
    return -1;
  }

  LowRankOperator unit(int x, int y) const { return LowRankOperator(d(), 2 * p(), factor(x), factor(y)); }
  DenseOperator dense_unit(int x, int y) const {
    return DenseOperator(d(), 2 * p(), factor(x) * factor(y).transpose());
  }
  // tr G^{xx}: 1 in M^(p), d^2 - 1 in M^(p-1).
  double unit_trace(int x) const { return factor(x).squaredNorm(); }

 private:
  std::shared_ptr<const WallContext> ctx_;
  std::vector<UnitLabel> labels_;
  std::vector<Eigen::MatrixXd> factors_;
};

struct CompositionReport {
  double max_residual = 0.0;
  long products = 0;
  UnitLabel worst[4];
};

// Units pair labels of the same ideal; cross-ideal products must vanish.
// max over X,Y,Y',Z of || G^{XY} G^{Y'Z} - delta_{YY'} G^{XZ} ||_F, evaluated
// exactly as || T_X (P_Y^T P_Y' - delta I) T_Z^T || with P = Q T.
inline CompositionReport composition_residual(const UnitFamily& f) {
  const int n = f.size();
  std::vector<Eigen::MatrixXd> t(n);
  for (int x = 0; x < n; ++x) t[x] = LowRankOperator::triangular(f.factor(x));
  CompositionReport rep;
  for (int y = 0; y < n; ++y)
    for (int yp = 0; yp < n; ++yp) {
      Eigen::MatrixXd c = f.factor(y).transpose() * f.factor(yp);
      if (y == yp) c -= Eigen::MatrixXd::Identity(c.rows(), c.cols());
      for (int x = 0; x < n; ++x) {
        if (f.label(x).ideal != f.label(y).ideal) continue;
        const Eigen::MatrixXd left = t[x] * c;
        for (int z = 0; z < n; ++z) {
          if (f.label(z).ideal != f.label(yp).ideal) continue;
          const double r = (left * t[z].transpose()).norm();
          ++rep.products;
          if (r > rep.max_residual) {
            rep.max_residual = r;
            rep.worst[0] = f.label(x);
            rep.worst[1] = f.label(y);
            rep.worst[2] = f.label(yp);
            rep.worst[3] = f.label(z);
          }
        }
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Generator decompositions

struct VTerm {
  double coefficient = 0.0;
  Ideal kind = Ideal::top;  // top: G(p) unit, sub: H operator
  Partition mu, nu, mup, nup;
  int i = 0, j = 0, ip = 0, jp = 0;
  Partition alpha, alphap;
};

struct VDecomposition {
  std::vector<VTerm> terms;
  DenseOperator sum;
  double residual = 0.0;
};

// V^(p) = sum_{mu,nu} sum_{i,j} sqrt(m_mu m_nu) G^{mu nu}_{ii,jj}(p).
inline VDecomposition decompose_Vp(int p, int d) {
  VDecomposition out;
  out.sum = DenseOperator(d, 2 * p);
  for (const auto& mu : enumerate_partitions(p))
    for (const auto& nu : enumerate_partitions(p)) {
      const auto mm = multiplicity(mu, d), mn = multiplicity(nu, d);
      if (mm == 0 || mn == 0) continue;
      for (int i = 0; i < dim_irrep(mu); ++i)
        for (int j = 0; j < dim_irrep(nu); ++j) {
          VTerm t;
          t.coefficient = std::sqrt(static_cast<double>(mm) * static_cast<double>(mn));
          t.kind = Ideal::top;
          t.mu = mu;
          t.nu = mu;
          t.mup = nu;
          t.nup = nu;
          t.i = t.j = i;
          t.ip = t.jp = j;
          out.sum += t.coefficient * G_top(mu, i, i, nu, j, j, p, d).op;
          out.terms.push_back(std::move(t));
        }
    }
  out.residual = max_abs_diff(out.sum, V_generator(p, p, d));
  return out;
}

// V^(p-1) = (1/d) sum_{alpha,beta} sum_{mu,nu > alpha; mup,nup > beta} sum_{i_alpha,j_beta}
//   [ H(alpha,beta) + sqrt(m_mu m_mup) G^{mu mup}(p) delta^{mu nu} delta^{mup nup} ],
// i = j = (alpha,i_alpha), ip = jp = (beta,j_beta).
inline VDecomposition decompose_Vpm1(int p, int d) {
  VDecomposition out;
  if (p == 1) {
    out.sum = DenseOperator::identity(d, 2);
    out.residual = max_abs_diff(out.sum, V_generator(1, 0, d));
    return out;
  }
  out.sum = DenseOperator(d, 2 * p);
  const double inv_d = 1.0 / d;
  const auto shapes = enumerate_partitions(p - 1);
  for (const auto& alpha : shapes)
    for (const auto& beta : shapes) {
      const auto up_a = add_box(alpha), up_b = add_box(beta);
      for (const auto& mu : up_a)
        for (const auto& nu : up_a)
          for (const auto& mup : up_b)
            for (const auto& nup : up_b) {
              const auto ms = multiplicity(mu, d) * multiplicity(nu, d) * multiplicity(mup, d) * multiplicity(nup, d);
              if (ms == 0) continue;
              const auto tm = irrep_table(mu), tn = irrep_table(nu), tmp = irrep_table(mup), tnp = irrep_table(nup);
              for (int ia = 0; ia < dim_irrep(alpha); ++ia)
                for (int jb = 0; jb < dim_irrep(beta); ++jb) {
                  VTerm h;
                  h.coefficient = inv_d;
                  h.kind = Ideal::sub;
                  h.mu = mu;
                  h.nu = nu;
                  h.mup = mup;
                  h.nup = nup;
                  h.i = tm->position(alpha, ia);
                  h.j = tn->position(alpha, ia);
                  h.ip = tmp->position(beta, jb);
                  h.jp = tnp->position(beta, jb);
                  h.alpha = alpha;
                  h.alphap = beta;
                  out.sum += inv_d * H_operator(mu, nu, mup, nup, h.i, h.j, h.ip, h.jp, alpha, beta, p, d);
                  if (mu == nu && mup == nup) {
                    VTerm g = h;
                    g.kind = Ideal::top;
                    g.coefficient = inv_d * std::sqrt(static_cast<double>(multiplicity(mu, d)) *
                                                      static_cast<double>(multiplicity(mup, d)));
                    out.sum += g.coefficient * G_top(mu, g.i, g.i, mup, g.ip, g.ip, p, d).op;
                    out.terms.push_back(std::move(g));
                  }
                  out.terms.push_back(std::move(h));
                }
            }
    }
  out.residual = max_abs_diff(out.sum, V_generator(p, p - 1, d));
  return out;
}

}  // namespace wbalg
