#pragma once

// Dense operators on (C^d)^{\otimes n}.
//
// Registers are numbered 1..n; register 1 is the most significant digit of
// the computational-basis index. Permutations passed here act on zero-based
// register positions.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>

#include "wbalg/errors.hpp"
#include "wbalg/symgroup.hpp"

namespace wbalg {

inline constexpr std::int64_t kMaxDimension = std::int64_t{1} << 14;

// d^n, rejecting anything beyond the dense desk-scale guard.
inline int checked_dimension(int d, int n) {
  if (d < 1 || n < 0) throw std::invalid_argument("invalid register layout");
  std::int64_t dim = 1;
  for (int k = 0; k < n; ++k) {
    dim *= d;
    if (dim > kMaxDimension)
      throw resource_error("operator dimension d^n exceeds 2^14 (d=" + std::to_string(d) +
                           ", n=" + std::to_string(n) + ")");
  }
  return static_cast<int>(dim);
}

template <typename Scalar>
class BasicOperator {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  BasicOperator() = default;
  BasicOperator(int d, int n) : d_(d), n_(n) {
    const int dim = checked_dimension(d, n);
    m_ = Matrix::Zero(dim, dim);
  }
  BasicOperator(int d, int n, Matrix m) : d_(d), n_(n), m_(std::move(m)) {
    const int dim = checked_dimension(d, n);
    if (m_.rows() != dim || m_.cols() != dim)
      throw std::invalid_argument("matrix side does not match d^n");
  }

  static BasicOperator identity(int d, int n) {
    const int dim = checked_dimension(d, n);
    return BasicOperator(d, n, Matrix::Identity(dim, dim));
  }

  int d() const { return d_; }
  int n() const { return n_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Matrix& matrix() { return m_; }

  Scalar trace() const { return m_.trace(); }
  double max_abs() const { return m_.size() ? m_.cwiseAbs().maxCoeff() : 0.0; }

  BasicOperator& operator+=(const BasicOperator& o) {
    check_layout(o);
    m_ += o.m_;
    return *this;
  }
  BasicOperator& operator-=(const BasicOperator& o) {
    check_layout(o);
    m_ -= o.m_;
    return *this;
  }
  BasicOperator& operator*=(Scalar s) {
    m_ *= s;
    return *this;
  }

  friend BasicOperator operator+(BasicOperator a, const BasicOperator& b) { return a += b; }
  friend BasicOperator operator-(BasicOperator a, const BasicOperator& b) { return a -= b; }
  friend BasicOperator operator*(BasicOperator a, Scalar s) { return a *= s; }
  friend BasicOperator operator*(Scalar s, BasicOperator a) { return a *= s; }
  friend BasicOperator operator*(const BasicOperator& a, const BasicOperator& b) {
    a.check_layout(b);
    return BasicOperator(a.d_, a.n_, a.m_ * b.m_);
  }

  BasicOperator transpose() const { return BasicOperator(d_, n_, m_.transpose()); }

 private:
  void check_layout(const BasicOperator& o) const {
    if (o.d_ != d_ || o.n_ != n_) throw std::invalid_argument("operator layouts differ");
  }

  int d_ = 1;
  int n_ = 0;
  Matrix m_ = Matrix::Identity(1, 1);
};

using DenseOperator = BasicOperator<double>;
using ComplexOperator = BasicOperator<std::complex<double>>;

template <typename Scalar>
double max_abs_diff(const BasicOperator<Scalar>& a, const BasicOperator<Scalar>& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

// Digit of register k (1-based) in a basis index.
inline int register_digit(int index, int k, int d, int n) {
  for (int j = n; j > k; --j) index /= d;
  return index % d;
}

inline int register_stride(int k, int d, int n) {
  int s = 1;
  for (int j = n; j > k; --j) s *= d;
  return s;
}

// map[i] = j such that V_sigma |i> = |j>, with V_sigma|v_1..v_n> = |v_{sigma^-1(1)}..>.
inline std::vector<int> register_permutation_map(const Permutation& sigma, int d) {
  const int n = sigma.size();
  const int dim = checked_dimension(d, n);
  std::vector<int> stride(n);
  for (int k = 0; k < n; ++k) stride[k] = register_stride(k + 1, d, n);
  std::vector<int> map(dim);
  for (int i = 0; i < dim; ++i) {
    int j = 0;
    for (int k = 0; k < n; ++k) j += ((i / stride[k]) % d) * stride[sigma(k)];
    map[i] = j;
  }
  return map;
}

template <typename Scalar = double>
BasicOperator<Scalar> permutation_operator(const Permutation& sigma, int d, int n) {
  if (sigma.size() != n) throw std::invalid_argument("permutation degree differs from n");
  BasicOperator<Scalar> out(d, n);
  const auto map = register_permutation_map(sigma, d);
  for (int i = 0; i < out.dim(); ++i) out.matrix()(map[i], i) = Scalar(1);
  return out;
}

// V X V^T for the register permutation given by its index map.
template <typename Scalar>
BasicOperator<Scalar> conjugate_by_map(const BasicOperator<Scalar>& x, const std::vector<int>& map) {
  BasicOperator<Scalar> out(x.d(), x.n());
  const int dim = x.dim();
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r) out.matrix()(map[r], map[c]) = x.matrix()(r, c);
  return out;
}

template <typename Scalar>
BasicOperator<Scalar> partial_transpose(const BasicOperator<Scalar>& x, const std::set<int>& legs) {
  const int d = x.d(), n = x.n(), dim = x.dim();
  std::vector<int> strides;
  for (int k : legs) {
    if (k < 1 || k > n) throw std::out_of_range("leg outside 1..n");
    strides.push_back(register_stride(k, d, n));
  }
  BasicOperator<Scalar> out(d, n);
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r) {
      int r2 = r, c2 = c;
      for (int s : strides) {
        const int dr = (r / s) % d, dc = (c / s) % d;
        r2 += (dc - dr) * s;
        c2 += (dr - dc) * s;
      }
      out.matrix()(r2, c2) = x.matrix()(r, c);
    }
  return out;
}

namespace detail {

// Offsets of every basis value of the listed registers inside the full index.
inline std::vector<int> register_offsets(const std::vector<int>& regs, int d, int n) {
  std::vector<int> offs{0};
  for (int k : regs) {
    const int s = register_stride(k, d, n);
    std::vector<int> next;
    next.reserve(offs.size() * d);
    for (int o : offs)
      for (int v = 0; v < d; ++v) next.push_back(o + v * s);
    offs = std::move(next);
  }
  return offs;
}

}  // namespace detail

// Trace over the listed registers; the result keeps the remaining registers in order.
template <typename Scalar>
BasicOperator<Scalar> partial_trace(const BasicOperator<Scalar>& x, const std::set<int>& legs) {
  const int d = x.d(), n = x.n();
  std::vector<int> kept, traced;
  for (int k = 1; k <= n; ++k) (legs.count(k) ? traced : kept).push_back(k);
  for (int k : legs)
    if (k < 1 || k > n) throw std::out_of_range("leg outside 1..n");
  const auto ko = detail::register_offsets(kept, d, n);
  const auto to = detail::register_offsets(traced, d, n);
  BasicOperator<Scalar> out(d, static_cast<int>(kept.size()));
  for (std::size_t b = 0; b < ko.size(); ++b)
    for (std::size_t a = 0; a < ko.size(); ++a) {
      Scalar s(0);
      for (int t : to) s += x.matrix()(ko[a] + t, ko[b] + t);
      out.matrix()(a, b) = s;
    }
  return out;
}

// A acting on the listed registers (in that order), identity elsewhere.
template <typename Scalar>
BasicOperator<Scalar> place_on_registers(const BasicOperator<Scalar>& a, const std::vector<int>& regs,
                                         int n) {
  const int d = a.d();
  if (static_cast<int>(regs.size()) != a.n()) throw std::invalid_argument("register count mismatch");
  std::vector<int> rest;
  for (int k = 1; k <= n; ++k)
    if (std::find(regs.begin(), regs.end(), k) == regs.end()) rest.push_back(k);
  const auto ao = detail::register_offsets(regs, d, n);
  const auto ro = detail::register_offsets(rest, d, n);
  BasicOperator<Scalar> out(d, n);
  for (int t : ro)
    for (std::size_t c = 0; c < ao.size(); ++c)
      for (std::size_t r = 0; r < ao.size(); ++r) out.matrix()(ao[r] + t, ao[c] + t) = a.matrix()(r, c);
  return out;
}

template <typename Scalar>
BasicOperator<Scalar> kron(const BasicOperator<Scalar>& a, const BasicOperator<Scalar>& b) {
  if (a.d() != b.d()) throw std::invalid_argument("local dimensions differ");
  checked_dimension(a.d(), a.n() + b.n());
  return BasicOperator<Scalar>(a.d(), a.n() + b.n(),
                               Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval());
}

// (A (x) B) M without forming the Kronecker product; each column of M is
// read as a row-major A.cols() x B.cols() array.
inline Eigen::MatrixXd kron_apply(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, const Eigen::MatrixXd& m) {
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  if (m.rows() != a.cols() * b.cols()) throw std::invalid_argument("kron_apply: size mismatch");
  Eigen::MatrixXd out(a.rows() * b.rows(), m.cols());
  RowMajor tmp;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Eigen::Map<const RowMajor> in(m.col(c).data(), a.cols(), b.cols());
    tmp.noalias() = a * in * b.transpose();
    out.col(c) = Eigen::Map<const Eigen::VectorXd>(tmp.data(), tmp.size());
  }
  return out;
}

// Register pairs (p-j+1, p+j), j = 1..k, joined by a partially transposed swap.
inline std::vector<std::pair<int, int>> generator_pairs(int p, int k) {
  std::vector<std::pair<int, int>> pairs;
  for (int j = 1; j <= k; ++j) pairs.emplace_back(p - j + 1, p + j);
  return pairs;
}

// V^(k) on 2p registers: sum over equal digits on each pair, identity elsewhere.
inline DenseOperator V_generator(int p, int k, int d) {
  if (p < 1 || k < 0 || k > p) throw std::invalid_argument("need 0 <= k <= p and p >= 1");
  const int n = 2 * p;
  DenseOperator out(d, n);
  const auto pairs = generator_pairs(p, k);
  std::vector<int> pair_stride;
  for (auto [x, y] : pairs) pair_stride.push_back(register_stride(x, d, n) + register_stride(y, d, n));
  std::vector<std::pair<int, int>> strides;
  for (auto [x, y] : pairs) strides.emplace_back(register_stride(x, d, n), register_stride(y, d, n));
  const auto col_offsets = [&] {
    std::vector<int> offs{0};
    for (int s : pair_stride) {
      std::vector<int> next;
      for (int o : offs)
        for (int v = 0; v < d; ++v) next.push_back(o + v * s);
      offs = std::move(next);
    }
    return offs;
  }();
  for (int r = 0; r < out.dim(); ++r) {
    int base = r;
    bool ok = true;
    for (auto [sx, sy] : strides) {
      const int a = (r / sx) % d, b = (r / sy) % d;
      if (a != b) {
        ok = false;
        break;
      }
      base -= a * (sx + sy);
    }
    if (!ok) continue;
    for (int o : col_offsets) out.matrix()(r, base + o) = 1.0;
  }
  return out;
}

// Sparse V^(k); same entries as V_generator.
inline Eigen::SparseMatrix<double> V_generator_sparse(int p, int k, int d) {
  if (p < 1 || k < 0 || k > p) throw std::invalid_argument("need 0 <= k <= p and p >= 1");
  const int n = 2 * p;
  const int dim = checked_dimension(d, n);
  const auto pairs = generator_pairs(p, k);
  std::vector<std::pair<int, int>> strides;
  for (auto [x, y] : pairs) strides.emplace_back(register_stride(x, d, n), register_stride(y, d, n));
  std::vector<int> offs{0};
  for (auto [sx, sy] : strides) {
    std::vector<int> next;
    for (int o : offs)
      for (int v = 0; v < d; ++v) next.push_back(o + v * (sx + sy));
    offs = std::move(next);
  }
  std::vector<Eigen::Triplet<double>> trips;
  for (int r = 0; r < dim; ++r) {
    int base = r;
    bool ok = true;
    for (auto [sx, sy] : strides) {
      const int a = (r / sx) % d;
      if (a != (r / sy) % d) {
        ok = false;
        break;
      }
      base -= a * (sx + sy);
    }
    if (!ok) continue;
    for (int o : offs) trips.emplace_back(r, base + o, 1.0);
  }
  Eigen::SparseMatrix<double> v(dim, dim);
  v.setFromTriplets(trips.begin(), trips.end());
  return v;
}

// X~ = tr_{2..2p-1}(X V^(p-1)), so that V^(p-1) X V^(p-1) = (X~ on registers 1,2p) V^(p-1).
inline DenseOperator sandwich_reduce(const DenseOperator& x) {
  if (x.n() % 2 != 0 || x.n() < 2) throw std::invalid_argument("sandwich_reduce needs 2p registers");
  const int p = x.n() / 2;
  std::set<int> middle;
  for (int k = 2; k <= 2 * p - 1; ++k) middle.insert(k);
  return partial_trace(x * V_generator(p, p - 1, x.d()), middle);
}

}  // namespace wbalg
