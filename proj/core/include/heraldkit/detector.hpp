#pragma once

#include <cstddef>
#include <vector>

namespace heraldkit {

// Array of N click (on/off) detectors sharing the incoming light uniformly.
// dark_count enters per array, i.e. each detector sees dark_count / N.
class ClickDetectorArray {
 public:
  static constexpr int kDefaultDetectors = 4;
  static constexpr double kDefaultDarkCount = 5e-4;

  ClickDetectorArray(int num_detectors, double efficiency,
                     double dark_count = kDefaultDarkCount);

  int num_detectors() const { return num_detectors_; }
  double efficiency() const { return efficiency_; }
  double dark_count() const { return dark_count_; }

 private:
  int num_detectors_;
  double efficiency_;
  double dark_count_;
};

// Diagonal of the k-click POVM element in the photon-number basis.
struct PovmDiagonal {
  int clicks;
  std::vector<double> weights;
};

// <n| O_k |n> for the N-detector click array:
//   sum_{m=0}^{k} C(N,k) C(k,m) (-1)^m exp(-nu/N (N+m-k)) (1 - mu/N (N+m-k))^n
double povm_weight(const ClickDetectorArray& detector, int clicks, std::size_t n);

PovmDiagonal povm_diagonal(const ClickDetectorArray& detector, int clicks, std::size_t n_max);

}  // namespace heraldkit
