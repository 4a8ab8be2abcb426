#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace heraldkit {

// Argument outside the mathematical domain of an operation (CAR <= 2,
// k > N, zero mean photon number, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class TruncationError : public std::runtime_error {
 public:
  TruncationError(std::size_t required_n_max, std::size_t cap);

  std::size_t required_n_max() const { return required_n_max_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t required_n_max_;
  std::size_t cap_;
};

// Requested herald outcome has zero probability, so the conditional
// state cannot be normalized.
class ImpossibleHerald : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Loss inversion produced probabilities more negative than the tolerated
// rounding noise.
class UnphysicalInversion : public std::runtime_error {
 public:
  UnphysicalInversion(const std::string& what, std::vector<double> values)
      : std::runtime_error(what), values_(std::move(values)) {}

  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

class SeriesNonConvergent : public std::runtime_error {
 public:
  SeriesNonConvergent(const std::string& what, std::vector<double> partial_sums)
      : std::runtime_error(what), partial_sums_(std::move(partial_sums)) {}

  const std::vector<double>& partial_sums() const { return partial_sums_; }

 private:
  std::vector<double> partial_sums_;
};

}  // namespace heraldkit
