#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "specdis/chain_model.hpp"
#include "support/oracles.hpp"

using namespace specdis;

TEST(BuildChain, FreeChainHasUniformHopping) {
  const auto h = build_chain({1.0, 1.0, 0.0, 4});
  EXPECT_EQ(h.diag, (std::vector<double>{0, 0, 0, 0}));
  EXPECT_EQ(h.offdiag, (std::vector<double>{1, 1, 1}));
}

TEST(BuildChain, ImpurityAndBoundaryHopping) {
  const auto h = build_chain({1.0, 0.5, 0.5, 3});
  EXPECT_EQ(h.diag, (std::vector<double>{0.5, 0, 0}));
  EXPECT_EQ(h.offdiag, (std::vector<double>{0.5, 1}));

  const auto h2 = build_chain({2.0, 1.0, 0.0, 5});
  EXPECT_EQ(h2.offdiag, (std::vector<double>{1, 2, 2, 2}));
}

TEST(BuildChain, RejectsInvalidSpecs) {
  EXPECT_THROW(build_chain({1.0, 1.0, 0.0, 1}), InvalidSpec);
  EXPECT_THROW(build_chain({0.0, 1.0, 0.0, 4}), InvalidSpec);
  EXPECT_THROW(build_chain({-1.0, 1.0, 0.0, 4}), InvalidSpec);
  EXPECT_THROW(build_chain({1.0, -0.1, 0.0, 4}), InvalidSpec);
  EXPECT_THROW(build_chain({1.0, 1.0, std::nan(""), 4}), InvalidSpec);
}

TEST(BuildChain, ApplyMatchesDenseMatrix) {
  const ChainSpec spec{1.3, 0.4, -0.7, 7};
  const auto h = build_chain(spec);
  const Eigen::MatrixXd dense = oracle::dense_chain(spec);
  EXPECT_TRUE(dense.isApprox(dense.transpose(), 0.0));
  std::vector<std::complex<double>> in(7), out(7);
  for (int j = 0; j < 7; ++j) in[j] = {0.1 * j, -0.3 + j};
  h.apply(in, out);
  for (int i = 0; i < 7; ++i) {
    std::complex<double> ref = 0.0;
    for (int j = 0; j < 7; ++j) ref += dense(i, j) * in[j];
    EXPECT_NEAR(std::abs(out[i] - ref), 0.0, 1e-14);
  }
}

TEST(BuildChain, FreeChainSpectrumInsideBand) {
  for (std::size_t n : {2u, 3u, 10u, 64u, 500u}) {
    for (double b : {0.5, 1.0, 3.0}) {
      const auto ev = oracle::chain_eigenvalues({b, b, 0.0, n});
      EXPECT_LE(ev.maxCoeff(), 2.0 * b + 1e-12);
      EXPECT_GE(ev.minCoeff(), -2.0 * b - 1e-12);
    }
  }
}

TEST(DecomposeBlock, ExampleEnergiesGiveOneChainEach) {
  const auto chains = decompose_block({1.0, 0.5, {0, 1, 2, 3}, 10});
  ASSERT_EQ(chains.size(), 4u);
  for (std::size_t m = 0; m < 4; ++m) {
    EXPECT_EQ(chains[m].mu, static_cast<double>(m));
    EXPECT_EQ(chains[m].B, 1.0);
    EXPECT_EQ(chains[m].C, 0.5);
    EXPECT_EQ(chains[m].n_sites, 10u);
  }
}

TEST(DecomposeBlock, SingleLevelIsThePlainChain) {
  const auto chains = decompose_block({1.0, 1.0, {0.0}, 6});
  ASSERT_EQ(chains.size(), 1u);
  const auto a = build_chain(chains[0]);
  const auto b = build_chain({1.0, 1.0, 0.0, 6});
  EXPECT_EQ(a.diag, b.diag);
  EXPECT_EQ(a.offdiag, b.offdiag);
}

TEST(DecomposeBlock, RejectsEmptyEnergies) {
  EXPECT_THROW(decompose_block({1.0, 1.0, {}, 6}), InvalidSpec);
}

namespace {

std::vector<double> sorted_union_of_chain_spectra(const BlockSpec& spec) {
  std::vector<double> all;
  for (const auto& c : decompose_block(spec)) {
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(oracle::dense_chain(c)).eigenvalues();
    all.insert(all.end(), ev.data(), ev.data() + ev.size());
  }
  std::sort(all.begin(), all.end());
  return all;
}

void expect_block_spectrum_matches(const BlockSpec& spec) {
  const Eigen::VectorXd block =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(oracle::dense_block(spec)).eigenvalues();
  const auto chains = sorted_union_of_chain_spectra(spec);
  ASSERT_EQ(static_cast<std::size_t>(block.size()), chains.size());
  for (std::size_t i = 0; i < chains.size(); ++i) {
    EXPECT_NEAR(block(static_cast<Eigen::Index>(i)), chains[i], 1e-12);
  }
}

}  // namespace

TEST(DecomposeBlock, BlockSpectrumIsUnionOfChainSpectra) {
  expect_block_spectrum_matches({1.0, 1.0, {0.3, -0.3}, 6});
}

TEST(DecomposeBlock, BlockSpectrumPropertyRandom) {
  std::mt19937 rng(20261016);
  std::uniform_real_distribution<double> hop(0.2, 2.0);
  std::uniform_real_distribution<double> energy(-3.0, 3.0);
  std::uniform_int_distribution<int> levels(1, 4);
  for (int trial = 0; trial < 50; ++trial) {
    BlockSpec spec;
    spec.B = hop(rng);
    spec.C = hop(rng);
    const int m = levels(rng);
    for (int k = 0; k < m; ++k) spec.energies.push_back(energy(rng));
    spec.n_sites = static_cast<std::size_t>(std::uniform_int_distribution<int>(2, 64 / m)(rng));
    expect_block_spectrum_matches(spec);
  }
}

TEST(BasisIndex, FlatIndexExamples) {
  EXPECT_EQ(basis_index(0, 0, 4), 0u);
  EXPECT_EQ(basis_index(2, 3, 4), 14u);
  EXPECT_EQ(basis_index(3, 1, 4), 7u);
}

TEST(BasisIndex, RejectsOutOfRange) {
  EXPECT_THROW(basis_index(4, 0, 4), std::out_of_range);
  EXPECT_THROW(basis_index(0, 0, 0), std::out_of_range);
}

TEST(BasisIndex, BijectiveOnFiniteBlock) {
  const std::size_t m = 5;
  const std::size_t n = 13;
  std::vector<int> hits(m * n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t a = 0; a < m; ++a) {
      const auto flat = basis_index(a, j, m);
      ASSERT_LT(flat, m * n);
      ++hits[flat];
      EXPECT_EQ(split_basis_index(flat, m), std::make_pair(a, j));
    }
  }
  EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
}
