#include "heraldkit/figures_of_merit.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "heraldkit/errors.hpp"

namespace heraldkit {
namespace {

double falling_factorial(std::size_t n, int order) {
  double f = 1.0;
  for (int j = 0; j < order; ++j) f *= static_cast<double>(n) - j;
  return f;
}

constexpr int kDivergenceWindow = 5;

}  // namespace

double fidelity(const PhotonStatistics& lossy_stats, int target) {
  if (target < 0 || static_cast<std::size_t>(target) > lossy_stats.n_max()) {
    throw DomainError("target |" + std::to_string(target) + "> outside truncation N_max = " +
                      std::to_string(lossy_stats.n_max()));
  }
  return lossy_stats[static_cast<std::size_t>(target)];
}

double g_factorial(const PhotonStatistics& stats, int order) {
  const double avg = mean(stats);
  if (!(avg > 0.0)) throw DomainError("undefined moment: mean photon number is zero");
  return factorial_moment(stats, order) / std::pow(avg, order);
}

double parity_direct(const PhotonStatistics& lossy_stats) {
  double even = 0.0;
  double odd = 0.0;
  for (std::size_t n = 0; n < lossy_stats.size(); ++n) {
    (n % 2 == 0 ? even : odd) += lossy_stats[n];
  }
  return even - odd;
}

double parity_from_moments(const PhotonStatistics& stats, int max_order) {
  if (max_order < 0) throw DomainError("series order must be >= 0");
  const double avg = mean(stats);

  // g^(m)/m! <n>^m equals the binomial moment sum_n C(n,m) p_n, so each term
  // is (-2)^m times that; binom[n] holds C(n,m) p_n for the current m.
  std::vector<double> binom(stats.probabilities().begin(), stats.probabilities().end());
  std::vector<double> partial_sums;
  double sum = 0.0;
  double previous = 0.0;
  int growth_run = 0;
  double scale = 1.0;  // (-2)^m

  for (int m = 0; m <= max_order; ++m) {
    if (m > 0) {
      scale *= -2.0;
      for (std::size_t n = 0; n < binom.size(); ++n) {
        binom[n] = (n >= static_cast<std::size_t>(m))
                       ? binom[n] * static_cast<double>(n - m + 1) / static_cast<double>(m)
                       : 0.0;
      }
    }
    double moment = 0.0;
    for (double b : binom) moment += b;
    const double term = scale * moment;
    sum += term;
    partial_sums.push_back(sum);

    // A finite |n> produces growing terms up to m ~ 2n/3, so growth only
    // counts as divergence once the order exceeds twice the mean.
    const bool growing = term != 0.0 && std::abs(term) >= std::abs(previous);
    growth_run = (m > 0 && growing && m > 2.0 * avg) ? growth_run + 1 : 0;
    if (growth_run >= kDivergenceWindow) {
      throw SeriesNonConvergent("series non-convergent: parity moment terms grew for " +
                                    std::to_string(kDivergenceWindow) +
                                    " consecutive orders up to m = " + std::to_string(m),
                                std::move(partial_sums));
    }
    previous = term;
  }
  return sum;
}

double cross_correlation(const TwinBeamSource& source, std::pair<int, int> orders,
                         const Truncation& trunc) {
  const auto [n, m] = orders;
  if (n < 1 || m < 1) throw DomainError("cross-correlation orders must be >= 1");
  if (source.mean_photon_number() == 0.0) {
    throw DomainError("cross-correlation undefined for a vacuum source");
  }
  const auto thermal = thermal_distribution(source, trunc);
  double numerator = 0.0;
  for (std::size_t j = 0; j < thermal.size(); ++j) {
    numerator += falling_factorial(j, n) * falling_factorial(j, m) * thermal[j];
  }
  return numerator / std::pow(mean(thermal), n + m);
}

double dark_count_ratio(const HeraldConfig& config) {
  if (config.clicks != 1) throw DomainError("dark-count ratio is defined for single-click heralds");
  const auto& det = config.detector;
  const double nu = det.dark_count();
  if (nu == 0.0) return std::numeric_limits<double>::infinity();

  const double N = det.num_detectors();
  const double mu = det.efficiency();
  const double nbar = config.source.mean_photon_number();
  const double thermal_ratio = nbar / (1.0 + nbar);  // P_1 / P_0

  // [(1 - mu (N-1)/N) e^{nu/N} - (1 - mu)] / (e^{nu/N} - 1), divided through
  // by e^{nu/N} so large nu stays finite.
  const double decay = std::exp(-nu / N);
  const double numerator = (1.0 - mu * (N - 1.0) / N) - (1.0 - mu) * decay;
  const double denominator = -std::expm1(-nu / N);
  return thermal_ratio * numerator / denominator;
}

FigureOfMeritReport report(const HeraldConfig& config, const LossChannel& signal, int target) {
  const auto heralded = herald(config);
  const auto lossy = apply_loss(signal, heralded.statistics);

  FigureOfMeritReport out;
  out.target = target;
  out.fidelity = fidelity(lossy, target);
  if (mean(heralded.statistics) > 0.0) {
    out.g2 = g_factorial(heralded.statistics, 2);
    out.g3 = g_factorial(heralded.statistics, 3);
  }
  out.success_probability = heralded.success_probability;
  out.parity = parity_direct(lossy);
  out.mean_lossy = mean(lossy);
  if (signal.efficiency() > 0.0) out.mean_loss_corrected = out.mean_lossy / signal.efficiency();
  return out;
}

}  // namespace heraldkit
