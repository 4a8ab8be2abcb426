#include "heraldkit/heralding.hpp"

#include <string>
#include <vector>

#include "heraldkit/errors.hpp"

namespace heraldkit {
namespace {

std::vector<double> unnormalized(const PhotonStatistics& source_stats,
                                 std::span<const double> weights) {
  if (weights.size() < source_stats.size()) {
    throw DomainError("POVM diagonal shorter than the source truncation");
  }
  std::vector<double> u(source_stats.size());
  for (std::size_t n = 0; n < u.size(); ++n) u[n] = weights[n] * source_stats[n];
  return u;
}

double total(const std::vector<double>& u) {
  double s = 0.0;
  for (double x : u) s += x;
  return s;
}

}  // namespace

PhotonStatistics herald_statistics(const PhotonStatistics& source_stats,
                                   std::span<const double> weights) {
  auto u = unnormalized(source_stats, weights);
  if (!(total(u) > 0.0)) {
    throw ImpossibleHerald("herald outcome has zero probability; state cannot be normalized");
  }
  return PhotonStatistics(std::move(u), source_stats.tail_bound());
}

HeraldedState herald(const HeraldConfig& config) {
  const auto thermal = thermal_distribution(config.source, config.truncation);
  const auto povm = povm_diagonal(config.detector, config.clicks, thermal.n_max());
  auto u = unnormalized(thermal, povm.weights);
  const double success = total(u);
  if (!(success > 0.0)) {
    throw ImpossibleHerald("impossible herald: " + std::to_string(config.clicks) +
                           " clicks have zero probability for this source and detector");
  }
  return HeraldedState{PhotonStatistics(std::move(u), thermal.tail_bound()), success, config};
}

double success_probability(const HeraldConfig& config) {
  const auto thermal = thermal_distribution(config.source, config.truncation);
  const auto povm = povm_diagonal(config.detector, config.clicks, thermal.n_max());
  return total(unnormalized(thermal, povm.weights));
}

}  // namespace heraldkit
