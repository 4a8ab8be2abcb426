#include "heraldkit/fock.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "heraldkit/errors.hpp"

namespace heraldkit {

TwinBeamSource::TwinBeamSource(double mean_photon_number) : nbar_(mean_photon_number) {
  if (!(mean_photon_number >= 0.0) || !std::isfinite(mean_photon_number)) {
    throw DomainError("mean photon number must be finite and >= 0, got " +
                      std::to_string(mean_photon_number));
  }
}

TwinBeamSource TwinBeamSource::from_car(double car) { return nbar_from_car(car); }

double TwinBeamSource::car() const { return car_from_source(*this); }

TwinBeamSource nbar_from_car(double car) {
  // Single-mode thermal twin beams have CAR = 2 + 1/nbar > 2.
  if (!(car > 2.0)) {
    throw DomainError("CAR must exceed 2 for single-mode twin beams, got " +
                      std::to_string(car));
  }
  if (std::isinf(car)) return TwinBeamSource(0.0);
  return TwinBeamSource(1.0 / (car - 2.0));
}

double car_from_source(const TwinBeamSource& source) {
  const double nbar = source.mean_photon_number();
  if (nbar == 0.0) throw DomainError("CAR is undefined for a vacuum source");
  return 2.0 + 1.0 / nbar;
}

Truncation Truncation::fixed(std::size_t n_max, std::size_t cap) {
  if (cap < 1) throw DomainError("truncation cap must be >= 1");
  if (n_max > cap) throw TruncationError(n_max, cap);
  return Truncation(Mode::Fixed, n_max, 0.0, cap);
}

Truncation Truncation::adaptive(double tail_epsilon, std::size_t cap) {
  if (cap < 1) throw DomainError("truncation cap must be >= 1");
  if (!(tail_epsilon > 0.0 && tail_epsilon < 1.0)) {
    throw DomainError("tail epsilon must lie in (0, 1), got " + std::to_string(tail_epsilon));
  }
  return Truncation(Mode::Adaptive, 0, tail_epsilon, cap);
}

PhotonStatistics::PhotonStatistics(std::vector<double> probabilities, double tail_bound)
    : p_(std::move(probabilities)), tail_bound_(tail_bound) {
  if (p_.empty()) throw DomainError("photon statistics need at least one entry");
  for (std::size_t n = 0; n < p_.size(); ++n) {
    if (!(p_[n] >= 0.0) || !std::isfinite(p_[n])) {
      throw DomainError("photon-number probability p_" + std::to_string(n) +
                        " is negative or not finite");
    }
  }
  const double total = std::accumulate(p_.begin(), p_.end(), 0.0);
  if (!(total > 0.0)) throw DomainError("photon statistics carry no probability mass");
  for (double& p : p_) p /= total;
}

PhotonStatistics PhotonStatistics::fock(std::size_t n, std::size_t n_max) {
  if (n > n_max) throw DomainError("Fock state |" + std::to_string(n) + "> exceeds N_max");
  std::vector<double> p(n_max + 1, 0.0);
  p[n] = 1.0;
  return PhotonStatistics(std::move(p));
}

std::size_t thermal_cutoff(double nbar, double tail_epsilon) {
  if (nbar == 0.0) return 0;
  const double ratio = nbar / (1.0 + nbar);
  const double estimate = std::floor(std::log(tail_epsilon) / std::log(ratio));
  if (!(estimate < static_cast<double>(std::numeric_limits<std::size_t>::max() / 2))) {
    return std::numeric_limits<std::size_t>::max() / 2;
  }
  auto n_max = static_cast<std::size_t>(std::max(0.0, estimate));
  // The logarithm quotient can land one off either way.
  while (n_max > 0 && std::pow(ratio, static_cast<double>(n_max)) < tail_epsilon) --n_max;
  while (!(std::pow(ratio, static_cast<double>(n_max + 1)) < tail_epsilon)) ++n_max;
  return n_max;
}

PhotonStatistics thermal_distribution(const TwinBeamSource& source, const Truncation& trunc) {
  const double nbar = source.mean_photon_number();
  std::size_t n_max = trunc.n_max();
  if (trunc.mode() == Truncation::Mode::Adaptive) {
    n_max = thermal_cutoff(nbar, trunc.tail_epsilon());
    if (n_max > trunc.cap()) throw TruncationError(n_max, trunc.cap());
  }

  const double ratio = nbar / (1.0 + nbar);
  std::vector<double> p(n_max + 1);
  p[0] = 1.0 / (1.0 + nbar);
  for (std::size_t n = 1; n <= n_max; ++n) p[n] = p[n - 1] * ratio;
  const double tail = std::pow(ratio, static_cast<double>(n_max + 1));
  return PhotonStatistics(std::move(p), tail);
}

double mean(const PhotonStatistics& stats) {
  double sum = 0.0;
  for (std::size_t n = 1; n < stats.size(); ++n) sum += static_cast<double>(n) * stats[n];
  return sum;
}

double factorial_moment(const PhotonStatistics& stats, int order) {
  if (order < 1) throw DomainError("factorial moment order must be >= 1");
  const auto m = static_cast<std::size_t>(order);
  double sum = 0.0;
  for (std::size_t n = m; n < stats.size(); ++n) {
    double falling = 1.0;
    for (std::size_t j = 0; j < m; ++j) falling *= static_cast<double>(n - j);
    sum += falling * stats[n];
  }
  return sum;
}

}  // namespace heraldkit
