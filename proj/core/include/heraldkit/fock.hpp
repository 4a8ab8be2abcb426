#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace heraldkit {

// Single-mode twin beam, fully described (for photon-number diagonal
// quantities) by its mean photon number per pulse.
class TwinBeamSource {
 public:
  explicit TwinBeamSource(double mean_photon_number);

  static TwinBeamSource from_car(double car);

  double mean_photon_number() const { return nbar_; }

  // |lambda|^2 = nbar / (1 + nbar), in [0, 1).
  double squeezing() const { return nbar_ / (1.0 + nbar_); }

  double car() const;

 private:
  double nbar_;
};

TwinBeamSource nbar_from_car(double car);
double car_from_source(const TwinBeamSource& source);

class Truncation {
 public:
  enum class Mode { Fixed, Adaptive };

  static constexpr double kDefaultTailEpsilon = 1e-14;
  static constexpr std::size_t kDefaultCap = 4096;

  static Truncation fixed(std::size_t n_max, std::size_t cap = kDefaultCap);
  static Truncation adaptive(double tail_epsilon = kDefaultTailEpsilon,
                             std::size_t cap = kDefaultCap);

  Mode mode() const { return mode_; }
  std::size_t n_max() const { return n_max_; }
  double tail_epsilon() const { return tail_epsilon_; }
  std::size_t cap() const { return cap_; }

 private:
  Truncation(Mode mode, std::size_t n_max, double tail_epsilon, std::size_t cap)
      : mode_(mode), n_max_(n_max), tail_epsilon_(tail_epsilon), cap_(cap) {}

  Mode mode_;
  std::size_t n_max_;
  double tail_epsilon_;
  std::size_t cap_;
};

// Normalized photon-number distribution p_0..p_{N_max}.
//
// Construction renormalizes the input so that the entries sum to one;
// tail_bound() records the probability mass that was cut off beyond
// N_max before renormalization (zero when the input was exact).
class PhotonStatistics {
 public:
  explicit PhotonStatistics(std::vector<double> probabilities,
                            double tail_bound = 0.0);

  static PhotonStatistics fock(std::size_t n, std::size_t n_max);
  static PhotonStatistics fock(std::size_t n) { return fock(n, n); }
  static PhotonStatistics vacuum(std::size_t n_max = 0) { return fock(0, n_max); }

  std::size_t n_max() const { return p_.size() - 1; }
  std::size_t size() const { return p_.size(); }
  // Zero beyond the truncation.
  double operator[](std::size_t n) const { return n < p_.size() ? p_[n] : 0.0; }
  std::span<const double> probabilities() const { return p_; }
  double tail_bound() const { return tail_bound_; }

 private:
  std::vector<double> p_;
  double tail_bound_;
};

PhotonStatistics thermal_distribution(const TwinBeamSource& source,
                                      const Truncation& trunc = Truncation::adaptive());

// Smallest N_max whose thermal tail (nbar/(1+nbar))^(N_max+1) falls below eps.
std::size_t thermal_cutoff(double nbar, double tail_epsilon);

double mean(const PhotonStatistics& stats);

// sum_{n>=m} n!/(n-m)! p_n
double factorial_moment(const PhotonStatistics& stats, int order);

}  // namespace heraldkit
