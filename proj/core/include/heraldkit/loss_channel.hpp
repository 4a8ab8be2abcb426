#pragma once

#include "heraldkit/fock.hpp"

namespace heraldkit {

// Binomial loss (beam splitter of transmission `efficiency`) on the signal arm.
class LossChannel {
 public:
  explicit LossChannel(double efficiency);

  double efficiency() const { return efficiency_; }

 private:
  double efficiency_;
};

// p_{m,L} = sum_{n>=m} C(n,m) mu^m (1-mu)^{n-m} p_n, same N_max as the input.
PhotonStatistics apply_loss(const LossChannel& channel, const PhotonStatistics& stats);

struct LossInversion {
  PhotonStatistics statistics;
  // Largest |q_n| of a negative entry that was clamped to zero beyond the
  // silent 1e-9 noise floor (0 when none).
  double max_clamped_negativity;
};

inline constexpr double kSilentNegativity = 1e-9;
inline constexpr double kMaxNegativity = 1e-6;

// Solves apply_loss(channel, q) = stats for q by back-substitution.
// Throws DomainError for efficiency 0 and UnphysicalInversion when some q_n
// falls below -kMaxNegativity.
LossInversion invert_loss_detailed(const LossChannel& channel, const PhotonStatistics& stats);

PhotonStatistics invert_loss(const LossChannel& channel, const PhotonStatistics& stats);

}  // namespace heraldkit
