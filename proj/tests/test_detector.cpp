#include <gtest/gtest.h>

#include <cmath>

#include "heraldkit/detector.hpp"
#include "heraldkit/errors.hpp"
#include "oracles.hpp"

namespace {

using namespace heraldkit;

TEST(PovmWeight, NoClicksWithoutDarkCountsIsTransmissionLoss) {
  for (double mu : {0.0, 0.3, 0.8, 1.0}) {
    const ClickDetectorArray det(4, mu, 0.0);
    for (std::size_t n : {0u, 1u, 5u, 17u}) {
      EXPECT_NEAR(povm_weight(det, 0, n), std::pow(1.0 - mu, static_cast<double>(n)), 1e-15);
    }
  }
}

TEST(PovmWeight, DarkNoLightNeverClicks) {
  const ClickDetectorArray det(4, 0.0, 0.0);
  for (int k = 1; k <= 4; ++k) {
    for (std::size_t n : {0u, 1u, 3u, 40u}) EXPECT_EQ(povm_weight(det, k, n), 0.0);
  }
}

TEST(PovmWeight, TwoPhotonsInOneOfFourDetectors) {
  // Balls in bins: both photons land in the same detector with probability 1/4.
  const ClickDetectorArray det(4, 1.0, 0.0);
  EXPECT_NEAR(povm_weight(det, 1, 2), 0.25, 1e-15);
  EXPECT_NEAR(oracle::click_probability(4, 1, 1.0, 0.0, 2), 0.25, 1e-15);
}

TEST(PovmWeight, RejectsInvalidClickCount) {
  const ClickDetectorArray det(4, 0.5, 0.0);
  EXPECT_THROW(povm_weight(det, 5, 1), DomainError);
  EXPECT_THROW(povm_weight(det, -1, 1), DomainError);
  EXPECT_THROW(povm_diagonal(det, 7, 3), DomainError);
}

TEST(ClickDetectorArrayType, ValidatesParameters) {
  EXPECT_THROW(ClickDetectorArray(0, 0.5), DomainError);
  EXPECT_THROW(ClickDetectorArray(4, 1.2), DomainError);
  EXPECT_THROW(ClickDetectorArray(4, -0.1), DomainError);
  EXPECT_THROW(ClickDetectorArray(4, 0.5, -1e-3), DomainError);
  const ClickDetectorArray det(4, 0.5);
  EXPECT_EQ(det.dark_count(), 5e-4);
}

TEST(PovmDiagonal, CompletenessAtDefaultParameters) {
  const ClickDetectorArray det(4, 0.6, 5e-4);
  const std::size_t n_max = 60;
  std::vector<PovmDiagonal> family;
  for (int k = 0; k <= 4; ++k) family.push_back(povm_diagonal(det, k, n_max));
  for (std::size_t n = 0; n <= n_max; ++n) {
    double sum = 0.0;
    for (const auto& d : family) sum += d.weights[n];
    EXPECT_NEAR(sum, 1.0, 1e-12) << "n = " << n;
  }
}

TEST(PovmDiagonal, SingleDetectorIsComplementOfVacuum) {
  for (double mu : {0.1, 0.5, 0.9}) {
    const auto d = povm_diagonal(ClickDetectorArray(1, mu, 0.0), 1, 30);
    ASSERT_EQ(d.clicks, 1);
    ASSERT_EQ(d.weights.size(), 31u);
    for (std::size_t n = 0; n <= 30; ++n) {
      EXPECT_NEAR(d.weights[n], 1.0 - std::pow(1.0 - mu, static_cast<double>(n)), 1e-14);
    }
  }
}

TEST(PovmDiagonal, MatchesExhaustiveEnumeration) {
  // 2 photons, survival 0.5, 4 bins, exactly 2 occupied.
  const auto d = povm_diagonal(ClickDetectorArray(4, 0.5, 0.0), 2, 2);
  EXPECT_NEAR(d.weights[2], oracle::click_probability(4, 2, 0.5, 0.0, 2), 1e-15);
  EXPECT_NEAR(d.weights[2], 0.25 * 0.75, 1e-15);

  for (int N : {1, 2, 3, 4}) {
    for (double mu : {0.2, 0.65, 1.0}) {
      for (double nu : {0.0, 5e-4, 0.3}) {
        const ClickDetectorArray det(N, mu, nu);
        for (int k = 0; k <= N; ++k) {
          for (int n = 0; n <= 5; ++n) {
            EXPECT_NEAR(povm_weight(det, k, n), oracle::click_probability(N, k, mu, nu, n), 1e-13)
                << "N=" << N << " k=" << k << " mu=" << mu << " nu=" << nu << " n=" << n;
          }
        }
      }
    }
  }
}

TEST(PovmProperties, CompletenessAndRangeOnGrid) {
  for (int N : {1, 4, 8}) {
    for (double mu : {0.0, 0.01, 0.3, 0.6, 0.99, 1.0}) {
      for (double nu : {0.0, 5e-4, 0.1, 2.0}) {
        const ClickDetectorArray det(N, mu, nu);
        for (std::size_t n = 0; n <= 200; ++n) {
          double sum = 0.0;
          for (int k = 0; k <= N; ++k) {
            const double w = povm_weight(det, k, n);
            EXPECT_GE(w, 0.0);
            EXPECT_LE(w, 1.0);
            sum += w;
          }
          ASSERT_NEAR(sum, 1.0, 1e-12) << "N=" << N << " mu=" << mu << " nu=" << nu << " n=" << n;
        }
      }
    }
  }
}

TEST(PovmProperties, DarkCountsOnVacuumFollowBinomialLaw) {
  for (double nu : {5e-4, 0.05, 1.0, 7.0}) {
    const ClickDetectorArray det(4, 0.7, nu);
    const double fire = 1.0 - std::exp(-nu / 4);
    for (int k = 0; k <= 4; ++k) {
      const double expected =
          oracle::binomial(4, k) * std::pow(fire, k) * std::pow(1.0 - fire, 4 - k);
      EXPECT_NEAR(povm_weight(det, k, 0), expected, 1e-12) << "nu=" << nu << " k=" << k;
    }
  }
}

TEST(PovmProperties, MonteCarloClickExperiment) {
  constexpr int kTrials = 1'000'000;
  std::uint64_t seed = 0x5eed;
  for (double mu : {0.3, 0.7}) {
    const ClickDetectorArray det(4, mu, 0.0);
    for (int n = 0; n <= 5; ++n) {
      const auto mc = oracle::simulate_clicks(4, mu, n, kTrials, seed++);
      for (int k = 0; k <= 4; ++k) {
        EXPECT_NEAR(povm_weight(det, k, n), mc[k].probability, 3.0 * mc[k].standard_error)
            << "mu=" << mu << " n=" << n << " k=" << k;
      }
    }
  }
}

}  // namespace
