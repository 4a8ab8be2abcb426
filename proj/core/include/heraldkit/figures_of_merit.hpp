#pragma once

#include <optional>
#include <utility>

#include "heraldkit/fock.hpp"
#include "heraldkit/heralding.hpp"
#include "heraldkit/loss_channel.hpp"

namespace heraldkit {

// Overlap with the Fock target |m>, i.e. p_m of the (lossy) statistics.
double fidelity(const PhotonStatistics& lossy_stats, int target);

// Normalized factorial moment g^(m) = <n!/(n-m)!> / <n>^m. Throws DomainError
// when the mean photon number vanishes.
double g_factorial(const PhotonStatistics& stats, int order);

// <Pi> = sum_n (-1)^n p_n
double parity_direct(const PhotonStatistics& lossy_stats);

// <Pi> from the factorial-moment series sum_m g^(m)/m! (-2<n>)^m, evaluated up
// to max_order. Throws SeriesNonConvergent when the terms keep growing.
double parity_from_moments(const PhotonStatistics& stats, int max_order);

// Cross-correlation g^(n,m) of the single-mode twin beam; g^(1,1) is the CAR.
// High orders weight the thermal tail by j^(n+m), hence the tighter default.
inline constexpr double kCrossCorrelationTail = 1e-30;
double cross_correlation(const TwinBeamSource& source, std::pair<int, int> orders,
                         const Truncation& trunc = Truncation::adaptive(kCrossCorrelationTail));

// Closed-form p_1/p_0 of the single-click heralded state. Returns +infinity
// without dark counts.
double dark_count_ratio(const HeraldConfig& config);

struct FigureOfMeritReport {
  int target = 0;
  double fidelity = 0.0;
  std::optional<double> g2;  // undefined for zero mean photon number
  std::optional<double> g3;
  double success_probability = 0.0;
  double parity = 0.0;
  double mean_lossy = 0.0;
  std::optional<double> mean_loss_corrected;  // undefined for mu_s = 0
};

FigureOfMeritReport report(const HeraldConfig& config, const LossChannel& signal, int target);

}  // namespace heraldkit
