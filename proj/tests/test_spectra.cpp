#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace wbalg;

namespace {

DenseOperator random_operator(int d, int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int dim = checked_dimension(d, n);
  Eigen::MatrixXd m(dim, dim);
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r) m(r, c) = u(rng);
  return DenseOperator(d, n, m);
}

DenseOperator wall_permutation(const Permutation& s1, const Permutation& s2, int d) {
  return kron(permutation_operator(s1, d, s1.size()), permutation_operator(s2, d, s2.size()));
}

}  // namespace

TEST(Twirl, IsTracePreservingIdempotentAndInvariant) {
  for (int d : {2, 3}) {
    const int p = 2;
    const auto x = random_operator(d, 2 * p, 17 + d);
    const auto t = twirl(x, p, d);
    EXPECT_NEAR(t.trace(), x.trace(), 1e-12);
    EXPECT_LE(max_abs_diff(twirl(t, p, d), t), 1e-12);
    for (const auto& s1 : enumerate_group(p))
      for (const auto& s2 : enumerate_group(p)) {
        const auto v = wall_permutation(s1, s2, d);
        EXPECT_LE(max_abs_diff(v * t, t * v), 1e-12);
        EXPECT_LE(max_abs_diff(twirl(v * x * v.transpose(), p, d), t), 1e-12);
      }
  }
  EXPECT_THROW(twirl(random_operator(2, 3, 1), 2, 2), std::invalid_argument);
}

TEST(Twirl, RhoMatchesTwirlOfLiteralGenerator) {
  for (int k = 0; k <= 3; ++k) EXPECT_LE(max_abs_diff(rho(k, 3, 2), twirl(oracle::literal_V(3, k, 2), 3, 2)), 1e-14);
}

TEST(Twirl, TraceIdentityAgainstUnits) {
  const int p = 2, d = 2;
  const auto x = random_operator(d, 2 * p, 5), y = random_operator(d, 2 * p, 6);
  const auto shapes = enumerate_partitions(p);
  int checked = 0;
  for (const auto& mu : shapes)
    for (const auto& nu : shapes) {
      TwirlIndices t;
      t.mu = t.mup = mu;
      t.nu = t.nup = nu;
      const auto [lhs, rhs] = twirl_trace_identity(x, y, t, p, d);
      EXPECT_NEAR(lhs, rhs, 1e-12) << mu.str() << nu.str();
      ++checked;
      t.mup = nu;
      t.nup = mu;
      const auto [l2, r2] = twirl_trace_identity(x, y, t, p, d);
      EXPECT_NEAR(l2, r2, 1e-12);
      if (!(mu == nu)) {
        EXPECT_EQ(r2, 0.0);
      }
    }
  EXPECT_EQ(checked, 4);
}

TEST(Spectrum, TopGeneratorEigenvaluesAreMultiplicityRatios) {
  for (auto [p, d] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}, std::pair{3, 3}}) {
    std::vector<oracle::Bin> want;
    for (const auto& mu : enumerate_partitions(p)) {
      const auto m = oracle::ssyt_count(mu.parts(), d);
      const auto f = oracle::syt_count(mu.parts());
      if (m > 0) want.push_back({static_cast<double>(m) / f, static_cast<long>(f * f)});
    }
    std::sort(want.begin(), want.end(), [](auto& a, auto& b) { return a.value < b.value; });
    // merge equal ratios
    std::vector<oracle::Bin> merged;
    for (const auto& w : want) {
      if (!merged.empty() && std::abs(merged.back().value - w.value) < 1e-12) {
        merged.back().multiplicity += w.multiplicity;
      } else {
        merged.push_back(w);
      }
    }
    const auto t = brute_spectrum(p, d, p);
    EXPECT_LE(oracle::multiset_gap(t.binned(), merged), 1e-10) << "p=" << p << " d=" << d;
  }
}

TEST(Spectrum, ReferenceValuesAtP3D3) {
  const int p = 3, d = 3;
  for (int arcs : {3, 2}) {
    const auto& want = arcs == 3 ? oracle::table1_rho3() : oracle::table1_rho2();
    const auto brute = spectrum_table(p, d, SpectrumMethod::brute, arcs);
    const auto analytic = spectrum_table(p, d, SpectrumMethod::analytic, arcs);
    EXPECT_LE(oracle::multiset_gap(brute.binned(), want), 1e-4) << "arcs=" << arcs;
    EXPECT_LE(oracle::multiset_gap(analytic.binned(), want), 1e-4) << "arcs=" << arcs;
    EXPECT_LE(compare_spectra(analytic, brute), 1e-6);
    EXPECT_EQ(brute.kernel_dimension + brute.total_multiplicity(), oracle::ipow(d, 2 * p));
  }
  EXPECT_EQ(brute_spectrum(p, d, 2).kernel_dimension, 587);
  EXPECT_EQ(brute_spectrum(p, d, 3).kernel_dimension, 723);
}

TEST(Spectrum, ClosedFormValuesAtP3D3) {
  const auto t = analytic_overlaps(3, 3, 2);
  std::vector<double> got;
  for (const auto& [e, m] : t.binned()) got.push_back(e);
  ASSERT_EQ(got.size(), 8u);
  EXPECT_NEAR(got[0], 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(got[1], (5.0 - std::sqrt(5.0)) / 12.0, 1e-12);
  EXPECT_NEAR(got[3], (5.0 + std::sqrt(5.0)) / 12.0, 1e-12);
  EXPECT_NEAR(got[2], 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(got[4], 5.0 / 6.0, 1e-12);
  EXPECT_NEAR(got[5], 4.0 / 3.0, 1e-12);
  EXPECT_NEAR(got[6], 5.0 / 3.0, 1e-12);
  EXPECT_NEAR(got[7], 10.0 / 3.0, 1e-12);
}

class SpectraAgree : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(SpectraAgree, AnalyticMatchesBrute) {
  const auto [p, d] = GetParam();
  for (int arcs : {p, p - 1}) {
    const auto a = spectrum_table(p, d, SpectrumMethod::analytic, arcs);
    const auto b = spectrum_table(p, d, SpectrumMethod::brute, arcs);
    EXPECT_LE(compare_spectra(a, b), 1e-6) << "p=" << p << " d=" << d << " arcs=" << arcs;
  }
}

INSTANTIATE_TEST_SUITE_P(Layouts, SpectraAgree,
                         ::testing::Values(std::pair{2, 2}, std::pair{2, 3}, std::pair{2, 4}, std::pair{3, 2},
                                           std::pair{4, 2}));

TEST(Spectrum, UnitsAreEigenOperators) {
  const int p = 3, d = 3;
  const UnitFamily fam(p, d);
  const auto r2 = rho(p - 1, p, d), r3 = rho(p, p, d);
  const auto table = analytic_overlaps(p, d, p - 1);
  for (int x = 0; x < fam.size(); ++x) {
    const auto& l = fam.label(x);
    double lambda = NAN;
    for (const auto& row : table.rows)
      if (row.ideal == l.ideal && row.mu == l.mu && (l.ideal == Ideal::top || (row.nu == l.nu && row.beta == l.beta)))
        lambda = row.eigenvalue;
    ASSERT_FALSE(std::isnan(lambda)) << l.str();
    const auto g = fam.dense_unit(x, x);
    EXPECT_LE(max_abs_diff(r2 * g, lambda * g), 1e-9) << l.str();
    if (l.ideal == Ideal::sub) {
      EXPECT_NEAR((r3 * g).trace(), 0.0, 1e-10) << l.str();
    }
  }
}

TEST(Spectrum, ArcsBelowPMinusOneAreBruteOnly) {
  EXPECT_THROW(analytic_overlaps(3, 3, 1), std::invalid_argument);
  const auto t = brute_spectrum(3, 2, 1);
  EXPECT_EQ(t.kernel_dimension + t.total_multiplicity(), 64);
  const auto id = brute_spectrum(2, 2, 0);
  ASSERT_EQ(id.rows.size(), 1u);
  EXPECT_NEAR(id.rows[0].eigenvalue, 1.0, 1e-12);
}

TEST(UnitBasisLayout, RhoIsDiagonal) {
  const auto f = fig7_layout(3, 3);
  EXPECT_EQ(f.labels.size(), 23u);
  EXPECT_LE(f.off_diagonal, 1e-9);
  const auto table = analytic_overlaps(3, 3, 2);
  for (std::size_t x = 0; x < f.labels.size(); ++x) {
    bool found = false;
    for (const auto& [e, m] : table.binned())
      if (std::abs(e - f.elements(x, x)) < 1e-9) found = true;
    EXPECT_TRUE(found) << f.labels[x].str();
  }
  EXPECT_NE(f.text.find("3.3333"), std::string::npos);
}
