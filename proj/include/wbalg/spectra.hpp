#pragma once

// Twirled generators rho(k) = twirl(V^(k)), their spectra from the ideal
// units, and brute-force diagonalization for comparison.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "wbalg/ideal_units.hpp"
#include "wbalg/matrix_units.hpp"
#include "wbalg/symgroup.hpp"
#include "wbalg/tensorspace.hpp"

namespace wbalg {

// (1/(p!)^2) sum (V_s1 (x) V_s2) X (V_s1 (x) V_s2)^T, s2 acting on registers p+1..2p.
inline DenseOperator twirl(const DenseOperator& x, int p, int d) {
  if (x.n() != 2 * p || x.d() != d) throw std::invalid_argument("twirl expects an operator on 2p registers");
  const auto group = enumerate_group(p);
  const int dim = x.dim();
  DenseOperator out(d, 2 * p);
  std::vector<int> img(2 * p);
  for (const auto& s1 : group)
    for (const auto& s2 : group) {
      for (int k = 0; k < p; ++k) {
        img[k] = s1(k);
        img[p + k] = p + s2(k);
      }
      const auto map = register_permutation_map(Permutation(img), d);
      for (int c = 0; c < dim; ++c)
        for (int r = 0; r < dim; ++r) out.matrix()(map[r], map[c]) += x.matrix()(r, c);
    }
  out *= 1.0 / static_cast<double>(group.size() * group.size());
  return out;
}

// rho(k) = twirl(V^(k)); k = p and k = p-1 are the operators with analytic spectra.
inline DenseOperator rho(int k, int p, int d) { return twirl(V_generator(p, k, d), p, d); }

struct TwirlIndices {
  Partition mu, nu, mup, nup;
  int i = 0, j = 0, k = 0, l = 0;      // E^mu_ij (x) E^nu_kl
  int ip = 0, jp = 0, kp = 0, lp = 0;  // E^mup_{ip jp} (x) E^nup_{kp lp}
};

namespace detail {

// (E^mu_ij embedded left) (x) (E^nu_kl on the right wall), as a dense block pair.
inline std::pair<const Eigen::MatrixXd*, const Eigen::MatrixXd*> wall_pair(const Partition& mu, int i, int j,
                                                                         const Partition& nu, int k, int l,
                                                                         int d) {
  return {&unit_bank(mu, d)->left(i, j), &unit_bank(nu, d)->natural(k, l)};
}

// tr(X (A (x) B) Y (C (x) D)).
inline double sandwich_trace(const Eigen::MatrixXd& x, std::pair<const Eigen::MatrixXd*, const Eigen::MatrixXd*> ab,
                             const Eigen::MatrixXd& y, std::pair<const Eigen::MatrixXd*, const Eigen::MatrixXd*> cd) {
  // Z = (A (x) B) Y (C (x) D); (C (x) D) acts on the right through transposes.
  const Eigen::MatrixXd left = kron_apply(*ab.first, *ab.second, y);
  const Eigen::MatrixXd z =
      kron_apply(cd.first->transpose(), cd.second->transpose(), left.transpose()).transpose();
  return x.cwiseProduct(z.transpose()).sum();
}

}  // namespace detail

// Both sides of
//   tr(twirl(X) (E (x) E) Y (E' (x) E'))
//     = delta^{mu mup} delta^{nu nup} delta_{i jp} delta_{k lp}
//       sum_{r,s} tr(X (E^mu_rj (x) E^nu_sl) Y (E^mu_{ip r} (x) E^nu_{kp s})) / (d_mu d_nu).
inline std::pair<double, double> twirl_trace_identity(const DenseOperator& x, const DenseOperator& y,
                                                      const TwirlIndices& t, int p, int d) {
  const DenseOperator tx = twirl(x, p, d);
  const double lhs = detail::sandwich_trace(tx.matrix(), detail::wall_pair(t.mu, t.i, t.j, t.nu, t.k, t.l, d),
                                            y.matrix(),
                                            detail::wall_pair(t.mup, t.ip, t.jp, t.nup, t.kp, t.lp, d));
  double rhs = 0.0;
  if (t.mu == t.mup && t.nu == t.nup && t.i == t.jp && t.k == t.lp) {
    const int dm = static_cast<int>(dim_irrep(t.mu)), dn = static_cast<int>(dim_irrep(t.nu));
    for (int r = 0; r < dm; ++r)
      for (int s = 0; s < dn; ++s)
        rhs += detail::sandwich_trace(x.matrix(), detail::wall_pair(t.mu, r, t.j, t.nu, s, t.l, d), y.matrix(),
                                      detail::wall_pair(t.mu, t.ip, r, t.nu, t.kp, s, d));
    rhs /= static_cast<double>(dm * dn);
  }
  return {lhs, rhs};
}

// ---------------------------------------------------------------------------
// Spectrum tables

struct SpectrumRow {
  Ideal ideal = Ideal::top;
  Partition mu, nu;
  int beta = 0;
  std::string interior;  // alpha label for mu != nu, eigen-index otherwise
  double overlap = 0.0;     // tr(rho G) for one diagonal unit
  double unit_trace = 0.0;  // tr G
  double eigenvalue = 0.0;
  long multiplicity = 0;
};

struct SpectrumTable {
  int p = 0, d = 0, arcs = 0;
  std::string method;
  std::vector<SpectrumRow> rows;       // nonzero eigenvalues
  std::vector<SpectrumRow> zero_rows;  // unit groups annihilated by rho
  long kernel_dimension = 0;

  long total_multiplicity() const {
    long s = 0;
    for (const auto& r : rows) s += r.multiplicity;
    return s;
  }

  // Distinct eigenvalues merged within tol, ascending.
  std::vector<std::pair<double, long>> binned(double tol = 1e-6) const {
    std::vector<std::pair<double, long>> v;
    for (const auto& r : rows) v.emplace_back(r.eigenvalue, r.multiplicity);
    std::sort(v.begin(), v.end());
    std::vector<std::pair<double, long>> out;
    for (const auto& [e, m] : v) {
      if (!out.empty() && std::abs(e - out.back().first) <= tol) {
        out.back().second += m;
      } else {
        out.emplace_back(e, m);
      }
    }
    return out;
  }
};

namespace detail {

// tr(rho(p-1) H^{mu nu mu nu}_{ij,ij}(alpha, alphap)); independent of i, j.
inline double overlap_H(const Partition& mu, const Partition& nu, const Partition& a, const Partition& ap, int d) {
  const double mm = multiplicity(mu, d), mn = multiplicity(nu, d);
  const double dm = dim_irrep(mu), dn = dim_irrep(nu);
  const double ma = multiplicity(a, d), map = multiplicity(ap, d);
  const double da = dim_irrep(a), dap = dim_irrep(ap);
  const double same = mu == nu ? 1.0 : 0.0;
  double bracket = same * (d * mm * mm * dm - mm * mm * mm * da / ma - mm * mm * mm * dap / map);
  if (a == ap) bracket += d * (mm * mn) * (mm * mn) * da / (ma * ma);
  return bracket / ((d * d - 1.0) * dm * dn) - same * mm * mm / (d * dm);
}

}  // namespace detail

// Closed-form overlaps tr(rho(arcs) G) for diagonal units of both ideals,
// arcs in {p, p-1}; eigenvalue = overlap / tr G.
inline SpectrumTable analytic_overlaps(int p, int d, int arcs) {
  if (p < 2) throw std::invalid_argument("analytic spectra need p >= 2");
  if (arcs != p && arcs != p - 1) throw std::invalid_argument("analytic spectra exist for arcs = p and p-1 only");
  SpectrumTable t;
  t.p = p;
  t.d = d;
  t.arcs = arcs;
  t.method = "analytic";
  const auto shapes = enumerate_partitions(p);
  for (const auto& mu : shapes) {
    const auto m = multiplicity(mu, d);
    if (m == 0) continue;
    SpectrumRow r;
    r.ideal = Ideal::top;
    r.mu = r.nu = mu;
    const double dm = dim_irrep(mu);
    r.overlap = arcs == p ? m / dm : m / (d * dm);
    r.unit_trace = 1.0;
    r.eigenvalue = r.overlap;
    r.multiplicity = static_cast<long>(dm * dm);
    t.rows.push_back(r);
  }
  for (const auto& mu : shapes)
    for (const auto& nu : shapes) {
      const auto b = b_matrix(mu, nu, d);
      for (int beta : b->live) {
        SpectrumRow r;
        r.ideal = Ideal::sub;
        r.mu = mu;
        r.nu = nu;
        r.beta = beta;
        r.interior = mu == nu ? "b" + std::to_string(beta + 1) : b->alphas[beta].str();
        double ov = 0.0, tr = 0.0;
        for (int a = 0; a < b->size(); ++a)
          for (int ap = 0; ap < b->size(); ++ap) {
            const double w = b->U(beta, a) * b->U(beta, ap);
            if (w == 0.0) continue;
            if (arcs == p - 1) ov += w * detail::overlap_H(mu, nu, b->alphas[a], b->alphas[ap], d);
            tr += w * static_cast<double>(d) * (d * d - 1.0) * b->entries(a, ap);
          }
        r.overlap = ov / (d * b->eig(beta));
        r.unit_trace = tr / (d * b->eig(beta));
        r.eigenvalue = r.overlap / r.unit_trace;
        r.multiplicity = static_cast<long>(dim_irrep(mu) * dim_irrep(nu) * (d * d - 1));
        (arcs == p ? t.zero_rows : t.rows).push_back(r);
      }
    }
  long dim = 1;
  for (int k = 0; k < 2 * p; ++k) dim *= d;
  t.kernel_dimension = dim - t.total_multiplicity();
  return t;
}

// Dense symmetric eigensolver on rho(arcs); eigenvalues binned at tol.
inline SpectrumTable brute_spectrum(int p, int d, int arcs, double tol = 1e-6) {
  SpectrumTable t;
  t.p = p;
  t.d = d;
  t.arcs = arcs;
  t.method = "brute";
  const DenseOperator r = rho(arcs, p, d);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r.matrix(), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double zero = 1e-9 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  long kernel = 0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (std::abs(ev(k)) <= zero) {
      ++kernel;
      continue;
    }
    if (!t.rows.empty() && std::abs(ev(k) - t.rows.back().eigenvalue) <= tol) {
      ++t.rows.back().multiplicity;
      continue;
    }
    SpectrumRow row;
    row.eigenvalue = ev(k);
    row.multiplicity = 1;
    t.rows.push_back(row);
  }
  t.kernel_dimension = kernel;
  return t;
}

enum class SpectrumMethod { analytic, brute };

inline SpectrumTable spectrum_table(int p, int d, SpectrumMethod method, int arcs) {
  if (method == SpectrumMethod::brute) return brute_spectrum(p, d, arcs);
  SpectrumTable t = analytic_overlaps(p, d, arcs);
  std::stable_sort(t.rows.begin(), t.rows.end(),
                   [](const SpectrumRow& a, const SpectrumRow& b) { return a.eigenvalue < b.eigenvalue; });
  return t;
}

// Largest |a - b| between matched bins, or infinity if the bin structure differs.
inline double compare_spectra(const SpectrumTable& a, const SpectrumTable& b, double tol = 1e-6) {
  const auto x = a.binned(tol), y = b.binned(tol);
  if (x.size() != y.size() || a.kernel_dimension != b.kernel_dimension) return INFINITY;
  double worst = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k].second != y[k].second) return INFINITY;
    worst = std::max(worst, std::abs(x[k].first - y[k].first));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Matrix elements of rho(p-1) in the unit basis

struct Fig7Layout {
  std::vector<UnitLabel> labels;
  std::vector<double> unit_traces;
  Eigen::MatrixXd elements;  // c_XY = tr(rho G^{YX}) / tr G^{XX}
  double off_diagonal = 0.0;
  std::string text;
};

inline Fig7Layout fig7_layout(int p, int d) {
  const UnitFamily fam(p, d);
  const DenseOperator r = rho(p - 1, p, d);
  const int n = fam.size();
  Fig7Layout out;
  out.labels = fam.labels();
  out.elements = Eigen::MatrixXd::Zero(n, n);
  std::vector<Eigen::MatrixXd> rp(n);
  for (int y = 0; y < n; ++y) rp[y] = r.matrix() * fam.factor(y);
  for (int x = 0; x < n; ++x) {
    out.unit_traces.push_back(fam.unit_trace(x));
    for (int y = 0; y < n; ++y) {
      // tr(rho P_Y P_X^T) = tr(P_X^T rho P_Y); only same-ideal pairs are units.
      if (fam.label(x).ideal != fam.label(y).ideal) continue;
      out.elements(x, y) = (fam.factor(x).transpose() * rp[y]).trace() / out.unit_traces[x];
      if (x != y) out.off_diagonal = std::max(out.off_diagonal, std::abs(out.elements(x, y)));
    }
  }

  std::size_t width = 0;
  for (const auto& l : out.labels) width = std::max(width, l.str().size());
  char buf[64];
  for (int x = 0; x < n; ++x) {
    std::string line = out.labels[x].str();
    line.resize(width + 2, ' ');
    for (int y = 0; y < n; ++y) {
      const double v = out.elements(x, y);
      if (std::abs(v) < 1e-9) {
        line += "      .";
      } else {
        std::snprintf(buf, sizeof buf, " %6.4f", v);
        line += buf;
      }
    }
    std::snprintf(buf, sizeof buf, "   x%ld", std::lround(out.unit_traces[x]));
    out.text += line + buf + "\n";
  }
  return out;
}

}  // namespace wbalg
