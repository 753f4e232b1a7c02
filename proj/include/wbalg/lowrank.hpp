#pragma once

// Operators stored as L R^T with thin factors. Ideal units have rank 1 or
// d^2 - 1, so products and norms stay cheap where the dense form is not.

#include <stdexcept>

#include <Eigen/Dense>

#include "wbalg/tensorspace.hpp"

namespace wbalg {

class LowRankOperator {
 public:
  LowRankOperator() = default;
  LowRankOperator(int d, int n, Eigen::MatrixXd left, Eigen::MatrixXd right)
      : d_(d), n_(n), l_(std::move(left)), r_(std::move(right)) {
    const int dim = checked_dimension(d, n);
    if (l_.rows() != dim || r_.rows() != dim || l_.cols() != r_.cols())
      throw std::invalid_argument("low-rank factors have inconsistent shapes");
  }
  static LowRankOperator zero(int d, int n) {
    const int dim = checked_dimension(d, n);
    return LowRankOperator(d, n, Eigen::MatrixXd(dim, 0), Eigen::MatrixXd(dim, 0));
  }

  int d() const { return d_; }
  int n() const { return n_; }
  int rank_bound() const { return static_cast<int>(l_.cols()); }
  const Eigen::MatrixXd& left() const { return l_; }
  const Eigen::MatrixXd& right() const { return r_; }

  DenseOperator dense() const { return DenseOperator(d_, n_, l_ * r_.transpose()); }
  double trace() const { return (r_.transpose() * l_).trace(); }

  // Frobenius norm through the triangular factors of thin QR decompositions.
  double frobenius() const {
    if (l_.cols() == 0) return 0.0;
    return (triangular(l_) * triangular(r_).transpose()).norm();
  }

  LowRankOperator& operator+=(const LowRankOperator& o) {
    check(o);
    Eigen::MatrixXd l(l_.rows(), l_.cols() + o.l_.cols()), r(r_.rows(), r_.cols() + o.r_.cols());
    l << l_, o.l_;
    r << r_, o.r_;
    l_ = std::move(l);
    r_ = std::move(r);
    return *this;
  }
  LowRankOperator& operator*=(double s) {
    l_ *= s;
    return *this;
  }
  friend LowRankOperator operator+(LowRankOperator a, const LowRankOperator& b) { return a += b; }
  friend LowRankOperator operator-(LowRankOperator a, const LowRankOperator& b) { return a += (-1.0) * b; }
  friend LowRankOperator operator*(double s, LowRankOperator a) { return a *= s; }
  friend LowRankOperator operator*(LowRankOperator a, double s) { return a *= s; }
  friend LowRankOperator operator*(const LowRankOperator& a, const LowRankOperator& b) {
    a.check(b);
    return LowRankOperator(a.d_, a.n_, a.l_ * (a.r_.transpose() * b.l_), b.r_);
  }
  // Dense operator applied on the left.
  friend LowRankOperator operator*(const DenseOperator& x, const LowRankOperator& b) {
    return LowRankOperator(b.d_, b.n_, x.matrix() * b.l_, b.r_);
  }

  static Eigen::MatrixXd triangular(const Eigen::MatrixXd& m) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    const Eigen::Index k = std::min(m.rows(), m.cols());
    return qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  }

 private:
  void check(const LowRankOperator& o) const {
    if (o.d_ != d_ || o.n_ != n_) throw std::invalid_argument("operator layouts differ");
  }

  int d_ = 1;
  int n_ = 0;
  Eigen::MatrixXd l_;
  Eigen::MatrixXd r_;
};

inline double operator_norm(const DenseOperator& x) { return x.max_abs(); }
inline double operator_norm(const LowRankOperator& x) { return x.frobenius(); }

inline DenseOperator zero_like(const DenseOperator& x) { return DenseOperator(x.d(), x.n()); }
inline LowRankOperator zero_like(const LowRankOperator& x) { return LowRankOperator::zero(x.d(), x.n()); }

}  // namespace wbalg
