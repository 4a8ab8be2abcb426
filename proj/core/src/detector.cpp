#include "heraldkit/detector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heraldkit/errors.hpp"

namespace heraldkit {
namespace {

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return std::round(c);
}

// Neumaier summation; the POVM terms alternate in sign.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

void check_clicks(const ClickDetectorArray& detector, int clicks) {
  if (clicks < 0 || clicks > detector.num_detectors()) {
    throw DomainError("click count " + std::to_string(clicks) + " outside [0, " +
                      std::to_string(detector.num_detectors()) + "]");
  }
}

}  // namespace

ClickDetectorArray::ClickDetectorArray(int num_detectors, double efficiency, double dark_count)
    : num_detectors_(num_detectors), efficiency_(efficiency), dark_count_(dark_count) {
  if (num_detectors < 1) throw DomainError("detector array needs N >= 1");
  if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
    throw DomainError("heralding efficiency must lie in [0, 1], got " + std::to_string(efficiency));
  }
  if (!(dark_count >= 0.0) || !std::isfinite(dark_count)) {
    throw DomainError("dark count parameter must be finite and >= 0");
  }
}

double povm_weight(const ClickDetectorArray& detector, int clicks, std::size_t n) {
  check_clicks(detector, clicks);
  const int N = detector.num_detectors();
  const double per_detector_dark = detector.dark_count() / N;
  const double per_detector_eff = detector.efficiency() / N;
  const double prefactor = binomial(N, clicks);

  CompensatedSum sum;
  for (int m = 0; m <= clicks; ++m) {
    const int dark = N + m - clicks;  // detectors forced to stay silent
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    const double base = 1.0 - per_detector_eff * dark;
    sum.add(sign * prefactor * binomial(clicks, m) * std::exp(-per_detector_dark * dark) *
            std::pow(base, static_cast<double>(n)));
  }
  return std::clamp(sum.value(), 0.0, 1.0);
}

PovmDiagonal povm_diagonal(const ClickDetectorArray& detector, int clicks, std::size_t n_max) {
  check_clicks(detector, clicks);
  PovmDiagonal diag{clicks, std::vector<double>(n_max + 1)};
  for (std::size_t n = 0; n <= n_max; ++n) diag.weights[n] = povm_weight(detector, clicks, n);
  return diag;
}

}  // namespace heraldkit
