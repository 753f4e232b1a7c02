#include "cli/verify.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

#include "wbalg/wbalg.hpp"

namespace wbalg::cli {

namespace {

Check make_check(std::string name, double residual, double tol, std::string detail = {}) {
  return Check{std::move(name), residual, tol, residual <= tol, std::move(detail)};
}

Check exact_check(std::string name, bool ok, std::string detail = {}) {
  return Check{std::move(name), ok ? 0.0 : 1.0, 0.0, ok, std::move(detail)};
}

std::int64_t ipow(int d, int n) {
  std::int64_t r = 1;
  for (int k = 0; k < n; ++k) r *= d;
  return r;
}

// ---------------------------------------------------------------------------

SuiteResult combinatorics(int p, int d) {
  SuiteResult s;
  s.suite = "combinatorics";
  bool syt = true, ssyt = true;
  std::int64_t sum = 0;
  for (const auto& mu : enumerate_partitions(p)) {
    syt &= dim_irrep(mu) == static_cast<std::int64_t>(enumerate_standard_tableaux(mu).size());
    ssyt &= multiplicity(mu, d) == count_semistandard_tableaux(mu, d);
    sum += dim_irrep(mu) * multiplicity(mu, d);
  }
  s.checks.push_back(exact_check("hook_length_vs_syt", syt));
  s.checks.push_back(exact_check("hook_content_vs_ssyt", ssyt));
  s.checks.push_back(exact_check("schur_weyl_dimension", sum == ipow(d, p),
                                 fmt::format("sum d_mu m_mu = {}, d^p = {}", sum, ipow(d, p))));
  return s;
}

SuiteResult representation(int p, double tol) {
  SuiteResult s;
  s.suite = "representation";
  const auto group = enumerate_group(p);
  double orth = 0.0, hom = 0.0;
  bool adapted = true;
  for (const auto& mu : enumerate_partitions(p)) {
    const auto tab = irrep_table(mu);
    const int n = tab->dim();
    for (const auto& g : group) {
      const Eigen::MatrixXd m = tab->rep(g);
      orth = std::max(orth, (m * m.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff());
      // phi(g s_k) = phi(g) phi(s_k) for all generators determines a homomorphism.
      for (int k = 0; k + 1 < p; ++k) {
        const auto sk = Permutation::transposition(p, k, k + 1);
        hom = std::max(hom, (tab->rep(g * sk) - m * tab->generator(k)).cwiseAbs().maxCoeff());
      }
      if (p >= 2 && g.fixes_last()) adapted &= restriction_block_check(mu, g, tol);
    }
  }
  s.checks.push_back(make_check("orthogonality", orth, tol));
  s.checks.push_back(make_check("homomorphism", hom, tol));
  s.checks.push_back(exact_check("subgroup_adaptation", adapted));
  return s;
}

SuiteResult matrix_units(int p, int d, double tol) {
  SuiteResult s;
  s.suite = "matrix_units";
  const int side = checked_dimension(d, p);
  double comp = 0.0, trace = 0.0;
  Eigen::MatrixXd resolution = Eigen::MatrixXd::Zero(side, side);
  for (const auto& mu : enumerate_partitions(p)) {
    const auto bank = unit_bank(mu, d);
    const int n = bank->dim_irrep();
    for (int i = 0; i < n; ++i) {
      resolution += bank->natural(i, i);
      trace = std::max(trace, std::abs(bank->natural(i, i).trace() - static_cast<double>(multiplicity(mu, d))));
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            Eigen::MatrixXd x = bank->natural(i, j) * bank->natural(k, l);
            if (j == k) x -= bank->natural(i, l);
            comp = std::max(comp, x.cwiseAbs().maxCoeff());
          }
    }
  }
  s.checks.push_back(make_check("composition", comp, tol));
  s.checks.push_back(make_check("trace_equals_multiplicity", trace, tol));
  s.checks.push_back(
      make_check("resolution_of_identity", (resolution - Eigen::MatrixXd::Identity(side, side)).cwiseAbs().maxCoeff(), tol));
  if (p >= 2) {
    double branch = 0.0, ptrace = 0.0;
    for (const auto& alpha : enumerate_partitions(p - 1))
      for (int i = 0; i < dim_irrep(alpha); ++i)
        for (int j = 0; j < dim_irrep(alpha); ++j) branch = std::max(branch, branching_expand(alpha, i, j, p, d).residual);
    for (const auto& mu : enumerate_partitions(p)) {
      const auto& prir = irrep_table(mu)->prir();
      for (const auto& a : prir)
        for (const auto& b : prir) ptrace = std::max(ptrace, partial_trace_E(mu, a, b, d).residual);
    }
    s.checks.push_back(make_check("branching_rule", branch, tol));
    s.checks.push_back(make_check("partial_trace_rule", ptrace, tol));
  }
  return s;
}

SuiteResult composition(int p, int d, double tol) {
  SuiteResult s;
  s.suite = "composition";
  const UnitFamily fam(p, d);
  const auto rep = composition_residual(fam);
  s.checks.push_back(make_check("unit_composition_all_pairs", rep.max_residual, tol,
                                fmt::format("{} products over {} units", rep.products, fam.size())));
  // Dense units from the defining formulas against the factored family.
  double g = 0.0;
  int compared = 0;
  for (int x = 0; x < fam.size() && compared < 12; ++x)
    for (int y = 0; y < fam.size() && compared < 12; ++y) {
      const auto& a = fam.label(x);
      const auto& b = fam.label(y);
      if (a.ideal != b.ideal) continue;
      if (x != y && (x + y) % 3 != 0) continue;
      const GUnit u = a.ideal == Ideal::top ? G_top(a.mu, a.i, a.j, b.mu, b.i, b.j, p, d)
                                            : G_sub(a.mu, a.nu, b.mu, b.nu, a.i, a.j, b.i, b.j, a.beta, b.beta, p, d);
      g = std::max(g, max_abs_diff(u.op, fam.dense_unit(x, y)));
      ++compared;
    }
  s.checks.push_back(make_check("defining_formula_vs_factored", g, tol, fmt::format("{} units compared", compared)));
  return s;
}

SuiteResult coefficients(int p, int d, double tol) {
  SuiteResult s;
  s.suite = "coefficients";
  const auto shapes = enumerate_partitions(p);
  bool exact = true;
  long count = 0;
  for (const auto& mu : shapes)
    for (const auto& nu : shapes) {
      const int n = dim_irrep(mu), m = dim_irrep(nu);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < m; ++k)
            for (int l = 0; l < m; ++l) {
              const auto c = ab_coefficients(mu, i, j, nu, k, l, d);
              const Rational y = (mu == nu && i == k && j == l) ? Rational(multiplicity(mu, d)) : Rational(0);
              exact &= c.a * d + c.b == y / d;
              ++count;
            }
    }
  s.checks.push_back(exact_check("ad_plus_b", exact, fmt::format("{} index choices, exact rationals", count)));

  std::mt19937 rng(20240601u);
  double fit = 0.0, coef = 0.0;
  for (int t = 0; t < 10; ++t) {
    const auto& mu = shapes[rng() % shapes.size()];
    const auto& nu = shapes[rng() % shapes.size()];
    const int n = dim_irrep(mu), m = dim_irrep(nu);
    const int i = rng() % n, j = rng() % n, k = rng() % m, l = rng() % m;
    const auto f = sandwich_fit(mu, i, j, nu, k, l, p, d);
    const auto c = ab_coefficients(mu, i, j, nu, k, l, d);
    fit = std::max(fit, f.residual);
    coef = std::max({coef, std::abs(f.a - c.a_value()), std::abs(f.b - c.b_value())});
  }
  s.checks.push_back(make_check("sandwich_fit_residual", fit, tol));
  s.checks.push_back(make_check("sandwich_fit_vs_closed_form", coef, tol));
  return s;
}

SuiteResult decomposition(int p, int d, double tol) {
  SuiteResult s;
  s.suite = "decomposition";
  s.checks.push_back(make_check("V_p_from_top_units", decompose_Vp(p, d).residual, tol));
  const auto v = decompose_Vpm1(p, d);
  s.checks.push_back(make_check("V_pm1_from_H_and_top_units", v.residual, tol, fmt::format("{} terms", v.terms.size())));
  return s;
}

SuiteResult bmatrix(int p, int d, double tol) {
  SuiteResult s;
  s.suite = "bmatrix";
  bool agree = true;
  double det = 0.0, eig = 0.0;
  for (const auto& mu : enumerate_partitions(p)) {
    const auto b = b_matrix(mu, mu, d);
    const double numeric = b->size() ? b->entries.determinant() : 1.0;
    const double exact = b->determinant.convert_to<double>();
    det = std::max(det, std::abs(numeric - exact) / std::max(1.0, std::abs(exact)));
    agree &= singularity_condition(mu, d) == (b->determinant == 0);
    if (b->size()) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b->entries);
      eig = std::max(eig, (es.eigenvalues() - b->eig).cwiseAbs().maxCoeff());
    }
  }
  s.checks.push_back(exact_check("exact_condition_vs_determinant", agree));
  s.checks.push_back(make_check("determinant_formula", det, tol));
  s.checks.push_back(make_check("jacobi_vs_reference_eigensolver", eig, tol));
  return s;
}

SuiteResult spectra(int p, int d, double tol) {
  SuiteResult s;
  s.suite = "spectra";
  if (p < 2) {
    s.skipped = true;
    s.reason = "analytic spectra need p >= 2";
    return s;
  }
  for (int arcs : {p - 1, p}) {
    const auto a = spectrum_table(p, d, SpectrumMethod::analytic, arcs);
    const auto b = spectrum_table(p, d, SpectrumMethod::brute, arcs);
    s.checks.push_back(make_check(fmt::format("analytic_vs_brute_rho{}", arcs), compare_spectra(a, b), 1e-6));
  }
  const UnitFamily fam(p, d);
  const DenseOperator r1 = rho(p - 1, p, d), r0 = rho(p, p, d);
  const auto table = analytic_overlaps(p, d, p - 1);
  double eig = 0.0, annihilated = 0.0;
  for (int x = 0; x < fam.size(); ++x) {
    const auto& l = fam.label(x);
    double lambda = 0.0;
    for (const auto& row : table.rows)
      if (row.ideal == l.ideal && row.mu == l.mu && row.nu == l.nu && row.beta == l.beta) lambda = row.eigenvalue;
    const Eigen::MatrixXd& f = fam.factor(x);
    const Eigen::MatrixXd t = LowRankOperator::triangular(f);
    eig = std::max(eig, ((r1.matrix() * f - lambda * f) * t.transpose()).norm());
    if (l.ideal == Ideal::sub) annihilated = std::max(annihilated, std::abs((f.transpose() * r0.matrix() * f).trace()));
  }
  s.checks.push_back(make_check("eigen_operator_rho_pm1", eig, tol));
  s.checks.push_back(make_check("rho_p_annihilates_sub_ideal", annihilated, tol));
  const double tr = std::abs(r1.trace() - V_generator(p, p - 1, d).trace());
  s.checks.push_back(make_check("trace_conservation", tr, tol));
  return s;
}

SuiteResult table1(int p, int d) {
  SuiteResult s;
  s.suite = "table1";
  if (p != 3 || d != 3) {
    s.skipped = true;
    s.reason = "the reference spectrum is defined for p = d = 3 only";
    return s;
  }
  const std::vector<std::pair<double, long>> two = {{0.1667, 32}, {0.2303, 32}, {0.3333, 1}, {0.6030, 32},
                                                    {0.8333, 32}, {1.3333, 4},  {1.6667, 8}, {3.3333, 1}};
  const std::vector<std::pair<double, long>> three = {{1.0, 1}, {4.0, 4}, {10.0, 1}};
  auto match = [&](int arcs, const std::vector<std::pair<double, long>>& want) {
    const auto got = brute_spectrum(3, 3, arcs).binned();
    double worst = got.size() == want.size() ? 0.0 : INFINITY;
    std::string detail;
    for (std::size_t k = 0; k < std::min(got.size(), want.size()); ++k) {
      if (got[k].second != want[k].second) worst = INFINITY;
      worst = std::max(worst, std::abs(got[k].first - want[k].first));
      detail += fmt::format("{}{:.4f}x{}", k ? " " : "", got[k].first, got[k].second);
    }
    s.checks.push_back(make_check(fmt::format("rho{}_multiset", arcs), worst, 1e-4, detail));
  };
  match(2, two);
  match(3, three);
  return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"combinatorics", "representation", "matrix_units", "composition",
                                                 "coefficients",  "decomposition",  "bmatrix",      "spectra",
                                                 "table1"};
  return names;
}

std::vector<SuiteResult> run_verify(const std::string& suite, int p, int d, double tol) {
  const double scale = tol / 1e-9;
  const std::map<std::string, std::function<SuiteResult()>> table = {
      {"combinatorics", [&] { return combinatorics(p, d); }},
      {"representation", [&] { return representation(p, 1e-12 * scale); }},
      {"matrix_units", [&] { return matrix_units(p, d, 1e-10 * scale); }},
      {"composition", [&] { return composition(p, d, tol); }},
      {"coefficients", [&] { return coefficients(p, d, 1e-10 * scale); }},
      {"decomposition", [&] { return decomposition(p, d, tol); }},
      {"bmatrix", [&] { return bmatrix(p, d, 1e-10 * scale); }},
      {"spectra", [&] { return spectra(p, d, tol); }},
      {"table1", [&] { return table1(p, d); }},
  };
  std::vector<SuiteResult> out;
  if (suite == "all") {
    for (const auto& name : suite_names()) out.push_back(table.at(name)());
    return out;
  }
  auto it = table.find(suite);
  if (it == table.end()) throw std::invalid_argument("unknown suite '" + suite + "'");
  out.push_back(it->second());
  return out;
}

Json suite_json(const SuiteResult& s) {
  Json j;
  j["suite"] = s.suite;
  j["passed"] = s.passed();
  if (s.skipped) {
    j["skipped"] = true;
    j["reason"] = s.reason;
  }
  Json checks = Json::array();
  for (const auto& c : s.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["passed"] = c.passed;
    cj["residual"] = std::isfinite(c.residual) ? Json(json_number(c.residual)) : Json("inf");
    cj["tolerance"] = json_number(c.tolerance);
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  return j;
}

}  // namespace wbalg::cli
