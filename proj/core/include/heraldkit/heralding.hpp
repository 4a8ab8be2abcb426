#pragma once

#include <span>

#include "heraldkit/detector.hpp"
#include "heraldkit/fock.hpp"

namespace heraldkit {

struct HeraldConfig {
  TwinBeamSource source;
  ClickDetectorArray detector;
  int clicks;
  Truncation truncation = Truncation::adaptive();
};

struct HeraldedState {
  PhotonStatistics statistics;  // lossless signal statistics p^s_n
  double success_probability;
  HeraldConfig config;
};

// Conditions the signal beam on `clicks` clicks in the idler detector array.
// Throws ImpossibleHerald when the outcome has zero probability.
HeraldedState herald(const HeraldConfig& config);

// Same projection with a precomputed POVM diagonal; `weights` must cover
// every photon number of `source_stats`.
PhotonStatistics herald_statistics(const PhotonStatistics& source_stats,
                                   std::span<const double> weights);

// Probability of the k-click outcome (0 for impossible heralds). Does not
// depend on the signal arm.
double success_probability(const HeraldConfig& config);

}  // namespace heraldkit
