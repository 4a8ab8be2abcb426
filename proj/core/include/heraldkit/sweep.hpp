#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "heraldkit/detector.hpp"
#include "heraldkit/figures_of_merit.hpp"
#include "heraldkit/fock.hpp"

namespace heraldkit {

enum class Parameter { Car, MuH, MuS };
enum class AxisScale { Linear, Logarithmic };

std::string_view parameter_name(Parameter p);
std::optional<Parameter> parse_parameter(std::string_view name);

struct SweepAxis {
  Parameter parameter;
  double min;
  double max;
  int steps;
  AxisScale scale = AxisScale::Linear;

  void validate() const;
  std::vector<double> values() const;
};

// CAR axes default to logarithmic spacing.
SweepAxis car_axis(double min, double max, int steps,
                   AxisScale scale = AxisScale::Logarithmic);

// Parameters not covered by an axis. The source may be given as CAR or
// mean photon number through TwinBeamSource.
struct SweepFixed {
  std::optional<TwinBeamSource> source;
  std::optional<double> mu_h;
  std::optional<double> mu_s;
  int num_detectors = ClickDetectorArray::kDefaultDetectors;
  double dark_count = ClickDetectorArray::kDefaultDarkCount;
  int clicks = 1;
  int target = 1;
  Truncation truncation = Truncation::adaptive();
};

struct SweepPlan {
  std::vector<SweepAxis> axes;  // 0 to 3 axes, row-major with the first slowest
  SweepFixed fixed;

  // Each of car/mu_h/mu_s must appear exactly once, as an axis or fixed.
  void validate() const;
  std::size_t size() const;
};

struct SweepRecord {
  std::vector<std::size_t> index;  // grid index per declared axis
  double nbar = 0.0;
  double car = 0.0;  // +inf for a vacuum source
  double mu_h = 0.0;
  double mu_s = 0.0;
  int clicks = 0;
  int target = 0;
  std::optional<FigureOfMeritReport> report;
  std::string status = "ok";

  bool ok() const { return report.has_value(); }
};

// Evaluates every grid point. Points are independent and may run on
// `threads` workers (0 = hardware concurrency); output order is the grid
// order regardless. Failing points keep their coordinates and carry the
// error text in `status`.
std::vector<SweepRecord> run_sweep(const SweepPlan& plan, unsigned threads = 0);

enum class Fom {
  Fidelity,
  G2,
  G3,
  SuccessProbability,
  Parity,
  SignedParity,  // parity * (-1)^target, +1 for a perfect target state
  MeanLossy,
  MeanCorrected,
};

std::string_view fom_name(Fom fom);
std::optional<Fom> parse_fom(std::string_view name);
std::optional<double> fom_value(const SweepRecord& record, Fom fom);

enum class Comparator { Less, LessEqual, Greater, GreaterEqual };

struct Predicate {
  Fom fom;
  Comparator comparator;
  double level;

  bool holds(const SweepRecord& record) const;
  std::string describe() const;
};

struct AxisExtent {
  Parameter parameter;
  double min;
  double max;
};

struct RegionMask {
  Predicate predicate;
  std::vector<std::size_t> indices;  // positions in the record list
  std::vector<AxisExtent> extents;   // car, mu_h, mu_s; empty when no point matches

  bool empty() const { return indices.empty(); }
  std::optional<AxisExtent> extent(Parameter p) const;
};

RegionMask threshold_region(std::span<const SweepRecord> records, const Predicate& predicate);
RegionMask threshold_region(std::span<const SweepRecord> records, std::string_view fom,
                            Comparator comparator, double level);

enum class Direction { Maximize, Minimize };

struct Objective {
  Fom fom;
  Direction direction = Direction::Maximize;
};

// Best feasible record; ties go to lower CAR, then higher mu_h, then higher
// mu_s. Throws DomainError when no record satisfies the constraints.
const SweepRecord& find_optimum(std::span<const SweepRecord> records, const Objective& objective,
                                std::span<const Predicate> constraints = {});

struct MeanCurvePoint {
  double car;
  double mu_h;
  double mean_corrected;
};

// Loss-corrected heralded mean photon number over a CAR axis for each
// heralding efficiency. Independent of mu_s, so the lossless state is used.
std::vector<MeanCurvePoint> mean_vs_car_curve(int clicks, std::span<const double> mu_h_values,
                                              const SweepAxis& car_axis,
                                              int num_detectors = ClickDetectorArray::kDefaultDetectors,
                                              double dark_count = ClickDetectorArray::kDefaultDarkCount,
                                              const Truncation& trunc = Truncation::adaptive());

}  // namespace heraldkit
