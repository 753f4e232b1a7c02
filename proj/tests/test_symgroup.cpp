#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"

using namespace wbalg;

namespace {

int fixed_points(const Permutation& s) {
  int f = 0;
  for (int x = 0; x < s.size(); ++x) f += s(x) == x;
  return f;
}

}  // namespace

TEST(Permutation, CompositionAppliesRightFactorFirst) {
  const auto a = Permutation::from_one_based({2, 3, 1});
  const auto b = Permutation::transposition(3, 0, 1);
  const auto ab = a * b;
  for (int x = 0; x < 3; ++x) EXPECT_EQ(ab(x), a(b(x)));
  EXPECT_TRUE((a * a.inverse()).is_identity());
}

TEST(Permutation, RejectsNonBijections) {
  EXPECT_THROW(Permutation(std::vector<int>{0, 0, 1}), std::invalid_argument);
  EXPECT_THROW(Permutation(std::vector<int>{0, 3}), std::invalid_argument);
}

TEST(Permutation, BubbleFactorizationRebuildsPermutation) {
  for (const auto& s : enumerate_group(4)) {
    auto acc = Permutation::identity(4);
    for (int k : s.bubble_factorization()) acc = Permutation::transposition(4, k, k + 1) * acc;
    EXPECT_EQ(acc, s);
  }
}

TEST(Permutation, RankMatchesEnumerationOrder) {
  const auto g = enumerate_group(5);
  ASSERT_EQ(g.size(), 120u);
  EXPECT_TRUE(g.front().is_identity());
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_EQ(permutation_rank(g[k]), static_cast<int>(k));
  EXPECT_THROW(enumerate_group(7), resource_error);
}

TEST(YoungOrthogonal, OrthogonalAndHomomorphic) {
  for (int p = 1; p <= 4; ++p) {
    const auto g = enumerate_group(p);
    for (const auto& mu : enumerate_partitions(p)) {
      const auto tab = irrep_table(mu);
      const int n = tab->dim();
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
      EXPECT_LE((tab->rep(Permutation::identity(p)) - id).cwiseAbs().maxCoeff(), 1e-12);
      for (const auto& a : g) {
        const Eigen::MatrixXd ra = tab->rep(a);
        EXPECT_LE((ra * ra.transpose() - id).cwiseAbs().maxCoeff(), 1e-12) << mu.str();
        for (const auto& b : g)
          EXPECT_LE((tab->rep(a * b) - ra * tab->rep(b)).cwiseAbs().maxCoeff(), 1e-12) << mu.str();
      }
    }
  }
}

TEST(YoungOrthogonal, GeneratorsAreSymmetricInvolutions) {
  for (int p = 2; p <= 6; ++p)
    for (const auto& mu : enumerate_partitions(p)) {
      const auto tab = irrep_table(mu);
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(tab->dim(), tab->dim());
      for (int k = 0; k + 1 < p; ++k) {
        const auto& s = tab->generator(k);
        EXPECT_LE((s - s.transpose()).cwiseAbs().maxCoeff(), 1e-14);
        EXPECT_LE((s * s - id).cwiseAbs().maxCoeff(), 1e-12);
      }
      // braid relation s_k s_{k+1} s_k = s_{k+1} s_k s_{k+1}
      for (int k = 0; k + 2 < p; ++k) {
        const auto& a = tab->generator(k);
        const auto& b = tab->generator(k + 1);
        EXPECT_LE((a * b * a - b * a * b).cwiseAbs().maxCoeff(), 1e-12);
      }
    }
}

// Frobenius: chi_mu(transposition) / d_mu = 2 * (sum of contents) / (p (p-1)).
TEST(YoungOrthogonal, TranspositionCharacterMatchesContentSum) {
  for (int p = 2; p <= 6; ++p)
    for (const auto& mu : enumerate_partitions(p)) {
      int contents = 0;
      for (int r = 0; r < mu.height(); ++r)
        for (int c = 0; c < mu.row(r); ++c) contents += c - r;
      const double expected = static_cast<double>(dim_irrep(mu)) * 2.0 * contents / (p * (p - 1));
      const double chi = irrep_table(mu)->rep(Permutation::transposition(p, 0, 1)).trace();
      EXPECT_NEAR(chi, expected, 1e-12) << mu.str();
    }
}

TEST(YoungOrthogonal, CharacterOrthogonality) {
  for (int p = 2; p <= 5; ++p) {
    const auto g = enumerate_group(p);
    const auto shapes = enumerate_partitions(p);
    for (const auto& mu : shapes)
      for (const auto& nu : shapes) {
        double s = 0.0;
        for (const auto& x : g) s += irrep_table(mu)->rep(x).trace() * irrep_table(nu)->rep(x).trace();
        EXPECT_NEAR(s / static_cast<double>(g.size()), mu == nu ? 1.0 : 0.0, 1e-10) << mu.str() << nu.str();
      }
  }
}

TEST(YoungOrthogonal, S3CharacterTable) {
  // classes by fixed points: 3 (identity), 1 (transposition), 0 (3-cycle)
  const std::map<int, double> standard{{3, 2.0}, {1, 0.0}, {0, -1.0}};
  const std::map<int, double> sign{{3, 1.0}, {1, -1.0}, {0, 1.0}};
  for (const auto& s : enumerate_group(3)) {
    EXPECT_NEAR(young_orthogonal_rep(Partition{2, 1}, s).matrix.trace(), standard.at(fixed_points(s)), 1e-12);
    EXPECT_NEAR(young_orthogonal_rep(Partition{1, 1, 1}, s).matrix.trace(), sign.at(fixed_points(s)), 1e-12);
    EXPECT_NEAR(young_orthogonal_rep(Partition{3}, s).matrix.trace(), 1.0, 1e-12);
  }
}

TEST(YoungOrthogonal, SubgroupAdapted) {
  for (int p = 2; p <= 5; ++p)
    for (const auto& mu : enumerate_partitions(p))
      for (const auto& s : enumerate_group(p))
        if (s.fixes_last()) {
          EXPECT_TRUE(restriction_block_check(mu, s, 1e-12)) << mu.str();
        }
  EXPECT_THROW(restriction_block_check(Partition{2, 1}, Permutation::transposition(3, 1, 2)),
               std::invalid_argument);
}

TEST(Prir, LabelsCoverBranchingBlocks) {
  for (int p = 2; p <= 6; ++p)
    for (const auto& mu : enumerate_partitions(p)) {
      const auto prir = prir_map(mu);
      const auto tab = irrep_table(mu);
      std::set<std::pair<Partition, int>> seen;
      for (int i = 0; i < tab->dim(); ++i) {
        EXPECT_EQ(tab->position(prir[i].alpha, prir[i].i_alpha), i);
        seen.insert({prir[i].alpha, prir[i].i_alpha});
      }
      std::size_t expected = 0;
      for (const auto& a : remove_box(mu)) expected += static_cast<std::size_t>(dim_irrep(a));
      EXPECT_EQ(seen.size(), expected) << mu.str();
      // blocks are contiguous
      for (const auto& a : remove_box(mu))
        for (int k = 0; k < dim_irrep(a); ++k) EXPECT_EQ(tab->position(a, k), tab->block_start(a) + k);
    }
}
