#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace wbalg;

class UnitsAtLayout : public ::testing::TestWithParam<std::pair<int, int>> {};

TEST_P(UnitsAtLayout, CompositionRule) {
  const auto [p, d] = GetParam();
  const auto shapes = enumerate_partitions(p);
  for (const auto& mu : shapes)
    for (const auto& nu : shapes) {
      const int nm = static_cast<int>(dim_irrep(mu)), nn = static_cast<int>(dim_irrep(nu));
      for (int i = 0; i < nm; ++i)
        for (int j = 0; j < nm; ++j)
          for (int k = 0; k < nn; ++k)
            for (int l = 0; l < nn; ++l) {
              const auto prod = E_unit(mu, i, j, d).op * E_unit(nu, k, l, d).op;
              const auto expected =
                  (mu == nu && j == k) ? E_unit(mu, i, l, d).op : DenseOperator(d, p);
              EXPECT_LE(max_abs_diff(prod, expected), 1e-12) << mu.str() << nu.str();
            }
    }
}

TEST_P(UnitsAtLayout, ProjectorsResolveIdentityAndTraceToMultiplicity) {
  const auto [p, d] = GetParam();
  DenseOperator sum(d, p);
  for (const auto& mu : enumerate_partitions(p)) {
    const auto proj = young_projector(mu, d);
    sum += proj;
    for (int i = 0; i < dim_irrep(mu); ++i)
      EXPECT_NEAR(E_unit(mu, i, i, d).op.trace(), static_cast<double>(multiplicity(mu, d)), 1e-12);
    EXPECT_LE(max_abs_diff(proj * proj, proj), 1e-12);
  }
  EXPECT_LE(max_abs_diff(sum, DenseOperator::identity(d, p)), 1e-12);
}

// V_tau E_ij = sum_k phi_ki(tau) E_kj and E_ij V_tau = sum_k phi_jk(tau) E_ik.
TEST_P(UnitsAtLayout, PermutationsActOnUnitIndices) {
  const auto [p, d] = GetParam();
  for (const auto& mu : enumerate_partitions(p)) {
    const int n = static_cast<int>(dim_irrep(mu));
    for (const auto& tau : enumerate_group(p)) {
      const auto v = permutation_operator(tau, d, p);
      const Eigen::MatrixXd phi = irrep_table(mu)->rep(tau);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          DenseOperator left(d, p), right(d, p);
          for (int k = 0; k < n; ++k) {
            left += phi(k, i) * E_unit(mu, k, j, d).op;
            right += phi(j, k) * E_unit(mu, i, k, d).op;
          }
          EXPECT_LE(max_abs_diff(v * E_unit(mu, i, j, d).op, left), 1e-12);
          EXPECT_LE(max_abs_diff(E_unit(mu, i, j, d).op * v, right), 1e-12);
        }
    }
  }
}

TEST_P(UnitsAtLayout, BranchingAndPartialTrace) {
  const auto [p, d] = GetParam();
  if (p < 2) GTEST_SKIP();
  for (const auto& alpha : enumerate_partitions(p - 1))
    for (int i = 0; i < dim_irrep(alpha); ++i)
      for (int j = 0; j < dim_irrep(alpha); ++j) EXPECT_LE(branching_expand(alpha, i, j, p, d).residual, 1e-12);
  for (const auto& mu : enumerate_partitions(p)) {
    const auto& prir = irrep_table(mu)->prir();
    for (const auto& a : prir)
      for (const auto& b : prir) EXPECT_LE(partial_trace_E(mu, a, b, d).residual, 1e-12) << mu.str();
  }
}

TEST_P(UnitsAtLayout, WallEmbeddingsMatchLiteralConstruction) {
  const auto [p, d] = GetParam();
  for (const auto& mu : enumerate_partitions(p)) {
    const auto e = E_unit(mu, 0, static_cast<int>(dim_irrep(mu)) - 1, d);
    EXPECT_EQ(max_abs_diff(embed_left(e, p), oracle::literal_left(e.op, p)), 0.0);
    EXPECT_EQ(max_abs_diff(embed_right(e, p), oracle::literal_right(e.op, p)), 0.0);
    const auto bank = unit_bank(mu, d);
    const auto r = permutation_operator(reversal(p), d, p);
    EXPECT_LE((bank->left(0, 0) - (r * E_unit(mu, 0, 0, d).op * r.transpose()).matrix()).cwiseAbs().maxCoeff(),
              1e-15);
  }
}

INSTANTIATE_TEST_SUITE_P(Layouts, UnitsAtLayout,
                         ::testing::Values(std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}, std::pair{3, 3},
                                           std::pair{4, 2}));

TEST(MatrixUnits, VanishWhenHeightExceedsD) {
  const auto e = E_unit(Partition{1, 1, 1}, 0, 0, 2);
  EXPECT_TRUE(e.vanishing);
  EXPECT_EQ(e.op.max_abs(), 0.0);
  EXPECT_FALSE(E_unit(Partition{2, 1}, 0, 0, 2).vanishing);
}

TEST(MatrixUnits, IndexChecks) {
  EXPECT_THROW(E_unit(Partition{2, 1}, 2, 0, 2), std::out_of_range);
  EXPECT_THROW(embed_left(E_unit(Partition{2, 1}, 0, 0, 2), 2), std::invalid_argument);
  const PrirIndex a{Partition{2, 1}, Partition{2}, 0};
  const PrirIndex b{Partition{3}, Partition{2}, 0};
  EXPECT_THROW(E_unit(a, b, 2), std::invalid_argument);
}

TEST(MatrixUnits, ReversalIsInvolution) {
  for (int p = 1; p <= 5; ++p) {
    EXPECT_TRUE((reversal(p) * reversal(p)).is_identity());
    if (p > 1) {
      EXPECT_EQ(reversal(p)(0), p - 1);
    }
  }
}
