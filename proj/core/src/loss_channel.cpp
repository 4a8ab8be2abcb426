#include "heraldkit/loss_channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "heraldkit/errors.hpp"

namespace heraldkit {

LossChannel::LossChannel(double efficiency) : efficiency_(efficiency) {
  if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
    throw DomainError("signal efficiency must lie in [0, 1], got " + std::to_string(efficiency));
  }
}

PhotonStatistics apply_loss(const LossChannel& channel, const PhotonStatistics& stats) {
  const double mu = channel.efficiency();
  if (mu == 1.0) return stats;

  const std::size_t size = stats.size();
  std::vector<double> out(size, 0.0);
  // row[m] = C(n,m) mu^m (1-mu)^(n-m), advanced one n at a time with the
  // Pascal recurrence so every step is a convex combination.
  std::vector<double> row(size, 0.0);
  row[0] = 1.0;
  for (std::size_t n = 0; n < size; ++n) {
    if (n > 0) {
      for (std::size_t m = n; m > 0; --m) row[m] = (1.0 - mu) * row[m] + mu * row[m - 1];
      row[0] *= (1.0 - mu);
    }
    const double pn = stats[n];
    if (pn == 0.0) continue;
    for (std::size_t m = 0; m <= n; ++m) out[m] += row[m] * pn;
  }
  return PhotonStatistics(std::move(out), stats.tail_bound());
}

LossInversion invert_loss_detailed(const LossChannel& channel, const PhotonStatistics& stats) {
  const double mu = channel.efficiency();
  if (mu == 0.0) throw DomainError("loss channel with zero efficiency is not invertible");
  if (mu == 1.0) return {stats, 0.0};

  const std::size_t size = stats.size();
  std::vector<double> q(size, 0.0);
  // Upper-triangular system: s_m = mu^m * sum_{n>=m} C(n,m) (1-mu)^(n-m) q_n.
  for (std::size_t i = size; i-- > 0;) {
    const std::size_t m = i;
    double rest = 0.0;
    double coeff = 1.0;  // C(n,m) (1-mu)^(n-m)
    for (std::size_t n = m + 1; n < size; ++n) {
      coeff *= static_cast<double>(n) / static_cast<double>(n - m) * (1.0 - mu);
      rest += coeff * q[n];
    }
    q[m] = stats[m] / std::pow(mu, static_cast<double>(m)) - rest;
    if (!std::isfinite(q[m])) {
      throw UnphysicalInversion("loss inversion overflowed at n = " + std::to_string(m) +
                                    "; truncation too large for this efficiency",
                                q);
    }
  }

  double worst = 0.0;
  for (double x : q) {
    if (x < -kMaxNegativity) {
      throw UnphysicalInversion("unphysical inversion: loss-inverted probability " +
                                    std::to_string(x) + " is negative",
                                q);
    }
    if (x < 0.0 && -x >= kSilentNegativity) worst = std::max(worst, -x);
  }
  for (double& x : q) x = std::max(x, 0.0);
  return {PhotonStatistics(std::move(q), stats.tail_bound()), worst};
}

PhotonStatistics invert_loss(const LossChannel& channel, const PhotonStatistics& stats) {
  return invert_loss_detailed(channel, stats).statistics;
}

}  // namespace heraldkit
