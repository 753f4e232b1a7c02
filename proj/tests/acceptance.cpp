// One pass/fail line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "cli/commands.hpp"
#include "oracles.hpp"

using namespace wbalg;
using oracle::Rational;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double worst_of(double a, double b) { return std::max(a, b); }

// 1. reference spectra at p = d = 3 through the CLI command path
Outcome criterion_spectra() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  cli::RunConfig cfg;
  cfg.p = cfg.d = 3;
  cli::SpectrumOptions opt;
  opt.method = "both";
  std::ostringstream os;
  const int rc = cli::cmd_spectrum(cfg, opt, os);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto j = cli::Json::parse(os.str());
  double gap = 0.0, agree = 0.0;
  for (const auto& t : j["tables"]) {
    if (t.contains("agreement")) {
      agree = worst_of(agree, t["agreement"].is_number() ? t["agreement"].get<double>() : INFINITY);
      continue;
    }
    if (t["method"] != "brute") continue;
    std::vector<std::pair<double, long>> got;
    for (const auto& b : t["binned"]) got.emplace_back(b["eigenvalue"].get<double>(), b["multiplicity"].get<long>());
    const auto& want = t["arcs"] == 3 ? oracle::table1_rho3() : oracle::table1_rho2();
    gap = worst_of(gap, oracle::multiset_gap(got, want));
  }
  o.pass = rc == 0 && gap <= 1e-4 && agree <= 1e-6 && seconds < 60.0;
  o.detail = fmt::format("max gap to printed values {:.2e}, analytic vs brute {:.2e}, {:.2f} s", gap, agree, seconds);
  return o;
}

// 2. B-matrix fixtures and singularity verdicts
Outcome criterion_bmatrix() {
  Outcome o;
  const int d = 3;
  const auto b = B_matrix(Partition{2, 1}, Partition{2, 1}, d);
  const int r = b.alpha_index(Partition{2}), s = b.alpha_index(Partition{1, 1});
  bool ok = b.exact[r][r] == Rational(1) && b.exact[s][s] == Rational(7, 3) && b.exact[r][s] == Rational(-1, 3);
  const double e1 = std::abs(b.eig(0) - (5.0 - std::sqrt(5.0)) / 3.0), e2 = std::abs(b.eig(1) - (5.0 + std::sqrt(5.0)) / 3.0);
  ok &= e1 < 1e-12 && e2 < 1e-12 && std::abs(b.entries.determinant() - 2.2222) < 1e-4;

  auto singular = [&](const Partition& mu) { return B_matrix(mu, mu, d).singular; };
  bool verdicts = singular(Partition{1, 1, 1}) && singular(Partition{2, 1, 1}) &&
                  B_matrix(Partition{2, 2}, Partition{2, 2}, d).determinant == Rational(5, 16) &&
                  singular(Partition{2, 2, 1}) && singular(Partition{3, 1, 1}) &&
                  B_matrix(Partition{3, 2}, Partition{3, 2}, d).determinant == Rational(75, 16);
  const std::set<Partition> p6{Partition{2, 2, 2}, Partition{3, 2, 1}, Partition{4, 1, 1}};
  for (const auto& mu : enumerate_partitions(6))
    if (multiplicity(mu, d) > 0) verdicts &= singular(mu) == (p6.count(mu) > 0);

  int shapes = 0, mismatches = 0;
  for (int p = 1; p <= 6; ++p)
    for (int dd = 2; dd <= 4; ++dd)
      for (const auto& mu : enumerate_partitions(p)) {
        const auto bm = B_matrix(mu, mu, dd);
        const double numeric = bm.entries.determinant();
        const double scale = std::pow(std::max(1.0, bm.entries.cwiseAbs().maxCoeff()), bm.size());
        const bool numeric_zero = std::abs(numeric) <= 1e-10 * scale;
        if (singularity_condition(mu, dd) != numeric_zero || bm.singular != numeric_zero) ++mismatches;
        if (std::abs(numeric - bm.determinant.convert_to<double>()) > 1e-10 * std::max(1.0, std::abs(numeric)))
          ++mismatches;
        ++shapes;
      }
  o.pass = ok && verdicts && mismatches == 0;
  o.detail = fmt::format("(2,1) fixture {}, listed verdicts {}, exact vs numeric {} mismatches over {} shapes",
                         ok ? "ok" : "wrong", verdicts ? "ok" : "wrong", mismatches, shapes);
  return o;
}

// 3. unit composition in both ideals
Outcome criterion_composition() {
  Outcome o;
  double worst = 0.0;
  long products = 0;
  for (auto [p, d] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}})
    for (bool top : {true, false}) {
      const UnitFamily fam(p, d, top, !top);
      const auto rep = composition_residual(fam);
      worst = worst_of(worst, rep.max_residual);
      products += rep.products;
    }
  o.pass = worst <= 1e-9;
  o.detail = fmt::format("max residual {:.2e} over {} products", worst, products);
  return o;
}

// 4. coefficient identities
Outcome criterion_coefficients() {
  Outcome o;
  const int p = 3, d = 3;
  const auto shapes = enumerate_partitions(p);
  int exact_fail = 0, count = 0;
  for (const auto& mu : shapes)
    for (const auto& nu : shapes)
      for (int i = 0; i < dim_irrep(mu); ++i)
        for (int j = 0; j < dim_irrep(mu); ++j)
          for (int k = 0; k < dim_irrep(nu); ++k)
            for (int l = 0; l < dim_irrep(nu); ++l) {
              const auto c = ab_coefficients(mu, i, j, nu, k, l, d);
              const Rational target =
                  (mu == nu && i == k && j == l) ? Rational(multiplicity(mu, d)) / Rational(d) : Rational(0);
              if (c.a * d + c.b != target) ++exact_fail;
              const auto lit = oracle::literal_coefficients(mu, i, j, nu, k, l, d);
              if (lit.a != c.a || lit.b != c.b) ++exact_fail;
              ++count;
            }
  const Eigen::SparseMatrix<double> vs = oracle::literal_V(p, p - 1, d).matrix().sparseView();
  const Eigen::MatrixXd vp = oracle::literal_V(p, p, d).matrix();
  std::mt19937 rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto& mu = shapes[rng() % shapes.size()];
    const auto& nu = shapes[rng() % shapes.size()];
    const int nm = static_cast<int>(dim_irrep(mu)), nn = static_cast<int>(dim_irrep(nu));
    const int i = rng() % nm, j = rng() % nm, k = rng() % nn, l = rng() % nn;
    const auto x = oracle::sandwich_operand(mu, i, j, nu, k, l, d);
    const Eigen::MatrixXd lhs = (vs * (vs * x.matrix()).transpose()).transpose();
    const auto c = ab_coefficients(mu, i, j, nu, k, l, d);
    worst = worst_of(worst, (lhs - c.a_value() * vp - c.b_value() * Eigen::MatrixXd(vs)).cwiseAbs().maxCoeff());
  }
  o.pass = exact_fail == 0 && worst <= 1e-10;
  o.detail = fmt::format("{} exact failures over {} index choices, sandwich residual {:.2e} on 50 draws", exact_fail,
                         count, worst);
  return o;
}

// 5. generator decompositions against literal generators
Outcome criterion_decompositions() {
  Outcome o;
  double worst = 0.0;
  for (auto [p, d] : {std::pair{3, 3}, std::pair{2, 2}}) {
    worst = worst_of(worst, max_abs_diff(decompose_Vp(p, d).sum, oracle::literal_V(p, p, d)));
    worst = worst_of(worst, max_abs_diff(decompose_Vpm1(p, d).sum, oracle::literal_V(p, p - 1, d)));
  }
  o.pass = worst <= 1e-9;
  o.detail = fmt::format("max reconstruction residual {:.2e}", worst);
  return o;
}

// 6. units diagonalize rho(p-1); rho(p) annihilates the sub ideal
Outcome criterion_eigen_operators() {
  Outcome o;
  const int p = 3, d = 3;
  const UnitFamily fam(p, d);
  const auto r2 = twirl(oracle::literal_V(p, p - 1, d), p, d);
  const auto r3 = twirl(oracle::literal_V(p, p, d), p, d);
  const auto table = analytic_overlaps(p, d, p - 1);
  double eig = 0.0, trace = 0.0;
  int missing = 0;
  for (int x = 0; x < fam.size(); ++x) {
    const auto& l = fam.label(x);
    double lambda = NAN;
    for (const auto& row : table.rows)
      if (row.ideal == l.ideal && row.mu == l.mu && (l.ideal == Ideal::top || (row.nu == l.nu && row.beta == l.beta)))
        lambda = row.eigenvalue;
    if (std::isnan(lambda)) {
      ++missing;
      continue;
    }
    const auto g = fam.dense_unit(x, x);
    eig = worst_of(eig, max_abs_diff(r2 * g, lambda * g));
    if (l.ideal == Ideal::sub) trace = worst_of(trace, std::abs((r3 * g).trace()));
  }
  o.pass = missing == 0 && eig <= 1e-9 && trace <= 1e-10;
  o.detail = fmt::format("{} diagonal units, eigen residual {:.2e}, max |tr(rho(3) G)| {:.2e}", fam.size(), eig, trace);
  return o;
}

// 7. combinatorial oracles
Outcome criterion_combinatorics() {
  Outcome o;
  int bad = 0, checks = 0;
  for (int p = 1; p <= 6; ++p)
    for (const auto& mu : enumerate_partitions(p)) {
      bad += dim_irrep(mu) != oracle::syt_count(mu.parts());
      bad += static_cast<std::int64_t>(enumerate_standard_tableaux(mu).size()) != dim_irrep(mu);
      ++checks;
    }
  for (int p = 1; p <= 5; ++p)
    for (int d = 1; d <= 4; ++d) {
      std::int64_t sum = 0;
      for (const auto& mu : enumerate_partitions(p)) {
        bad += multiplicity(mu, d) != oracle::ssyt_count(mu.parts(), d);
        sum += dim_irrep(mu) * multiplicity(mu, d);
        ++checks;
      }
      bad += sum != oracle::ipow(d, p);
    }
  o.pass = bad == 0;
  o.detail = fmt::format("{} mismatches over {} shape checks", bad, checks);
  return o;
}

// 8. representation suite
Outcome criterion_representation() {
  Outcome o;
  double orth = 0.0, hom = 0.0;
  int adapted_fail = 0;
  for (int p = 1; p <= 4; ++p) {
    const auto g = enumerate_group(p);
    for (const auto& mu : enumerate_partitions(p)) {
      const auto tab = irrep_table(mu);
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(tab->dim(), tab->dim());
      for (const auto& a : g) {
        const Eigen::MatrixXd ra = tab->rep(a);
        orth = worst_of(orth, (ra * ra.transpose() - id).cwiseAbs().maxCoeff());
        for (const auto& b : g) hom = worst_of(hom, (tab->rep(a * b) - ra * tab->rep(b)).cwiseAbs().maxCoeff());
        if (p >= 2 && a.fixes_last() && !restriction_block_check(mu, a, 1e-12)) ++adapted_fail;
      }
    }
  }
  o.pass = orth <= 1e-12 && hom <= 1e-12 && adapted_fail == 0;
  o.detail = fmt::format("orthogonality {:.2e}, homomorphism {:.2e}, {} adaptation failures", orth, hom, adapted_fail);
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, Outcome (*)()> criteria[] = {
      {"reference spectra at p=d=3", criterion_spectra},
      {"B-matrix fixtures and singularity", criterion_bmatrix},
      {"unit composition", criterion_composition},
      {"coefficient identities", criterion_coefficients},
      {"generator decompositions", criterion_decompositions},
      {"eigen-operator property", criterion_eigen_operators},
      {"combinatorial oracles", criterion_combinatorics},
      {"representation suite", criterion_representation},
  };
  bool all = true;
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    all &= o.pass;
    std::printf("criterion %d: %s  %s: %s\n", n, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  std::fflush(stdout);
  return all ? 0 : 1;
}
