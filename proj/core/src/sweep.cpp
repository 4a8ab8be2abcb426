#include "heraldkit/sweep.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <string>
#include <thread>

#include "heraldkit/errors.hpp"
#include "heraldkit/heralding.hpp"
#include "heraldkit/loss_channel.hpp"

namespace heraldkit {
namespace {

constexpr std::array kParameters = {Parameter::Car, Parameter::MuH, Parameter::MuS};

constexpr std::array<std::pair<Fom, std::string_view>, 8> kFomNames = {{
    {Fom::Fidelity, "fidelity"},
    {Fom::G2, "g2"},
    {Fom::G3, "g3"},
    {Fom::SuccessProbability, "success_prob"},
    {Fom::Parity, "parity"},
    {Fom::SignedParity, "signed_parity"},
    {Fom::MeanLossy, "mean_lossy"},
    {Fom::MeanCorrected, "mean_corrected"},
}};

double coordinate(const SweepRecord& r, Parameter p) {
  switch (p) {
    case Parameter::Car:
      return r.car;
    case Parameter::MuH:
      return r.mu_h;
    case Parameter::MuS:
      return r.mu_s;
  }
  return 0.0;
}

// Grid point evaluation; every failure becomes a status string.
void evaluate(const SweepPlan& plan, SweepRecord& record) {
  try {
    const HeraldConfig config{
        TwinBeamSource(record.nbar),
        ClickDetectorArray(plan.fixed.num_detectors, record.mu_h, plan.fixed.dark_count),
        plan.fixed.clicks, plan.fixed.truncation};
    record.report = report(config, LossChannel(record.mu_s), plan.fixed.target);
  } catch (const std::exception& e) {
    record.report.reset();
    record.status = e.what();
  }
}

bool better_tiebreak(const SweepRecord& a, const SweepRecord& b) {
  if (a.car != b.car) return a.car < b.car;
  if (a.mu_h != b.mu_h) return a.mu_h > b.mu_h;
  return a.mu_s > b.mu_s;
}

}  // namespace

std::string_view parameter_name(Parameter p) {
  switch (p) {
    case Parameter::Car:
      return "car";
    case Parameter::MuH:
      return "mu_h";
    case Parameter::MuS:
      return "mu_s";
  }
  return "";
}

std::optional<Parameter> parse_parameter(std::string_view name) {
  for (auto p : kParameters) {
    if (parameter_name(p) == name) return p;
  }
  return std::nullopt;
}

void SweepAxis::validate() const {
  const std::string name(parameter_name(parameter));
  if (steps < 1) throw DomainError("axis " + name + " needs at least one step");
  if (!(min < max)) throw DomainError("axis " + name + " needs min < max");
  if (parameter == Parameter::Car && !(min > 2.0)) {
    throw DomainError("car axis must start above 2");
  }
  if (parameter != Parameter::Car && (min < 0.0 || max > 1.0)) {
    throw DomainError("efficiency axis " + name + " must lie within [0, 1]");
  }
  if (scale == AxisScale::Logarithmic && !(min > 0.0)) {
    throw DomainError("logarithmic axis " + name + " needs min > 0");
  }
}

std::vector<double> SweepAxis::values() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(steps));
  if (steps == 1) {
    out[0] = min;
    return out;
  }
  const double last = steps - 1;
  for (int i = 0; i < steps; ++i) {
    const double t = i / last;
    out[i] = scale == AxisScale::Linear
                 ? min + t * (max - min)
                 : std::exp(std::log(min) + t * (std::log(max) - std::log(min)));
  }
  out.front() = min;
  out.back() = max;
  return out;
}

SweepAxis car_axis(double min, double max, int steps, AxisScale scale) {
  return SweepAxis{Parameter::Car, min, max, steps, scale};
}

void SweepPlan::validate() const {
  if (axes.size() > 3) throw DomainError("a sweep takes at most three axes");
  for (auto p : kParameters) {
    const auto swept = std::count_if(axes.begin(), axes.end(),
                                     [p](const SweepAxis& a) { return a.parameter == p; });
    bool fixed_set = false;
    switch (p) {
      case Parameter::Car:
        fixed_set = fixed.source.has_value();
        break;
      case Parameter::MuH:
        fixed_set = fixed.mu_h.has_value();
        break;
      case Parameter::MuS:
        fixed_set = fixed.mu_s.has_value();
        break;
    }
    const std::string name(parameter_name(p));
    if (swept + (fixed_set ? 1 : 0) != 1) {
      throw DomainError("parameter " + name + " must be given exactly once, as an axis or fixed");
    }
  }
  for (const auto& a : axes) a.validate();
  if (fixed.clicks < 0 || fixed.clicks > fixed.num_detectors) {
    throw DomainError("click count must lie in [0, N]");
  }
  if (fixed.target < 0) throw DomainError("target photon number must be >= 0");
}

std::size_t SweepPlan::size() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= static_cast<std::size_t>(a.steps);
  return n;
}

std::vector<SweepRecord> run_sweep(const SweepPlan& plan, unsigned threads) {
  plan.validate();

  std::vector<std::vector<double>> grid;
  for (const auto& a : plan.axes) grid.push_back(a.values());

  const std::size_t total = plan.size();
  std::vector<SweepRecord> records(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    SweepRecord& r = records[flat];
    r.index.assign(grid.size(), 0);
    std::size_t rest = flat;
    for (std::size_t a = grid.size(); a-- > 0;) {
      r.index[a] = rest % grid[a].size();
      rest /= grid[a].size();
    }
    if (plan.fixed.source) {
      r.nbar = plan.fixed.source->mean_photon_number();
      r.car = r.nbar > 0.0 ? car_from_source(*plan.fixed.source)
                           : std::numeric_limits<double>::infinity();
    }
    if (plan.fixed.mu_h) r.mu_h = *plan.fixed.mu_h;
    if (plan.fixed.mu_s) r.mu_s = *plan.fixed.mu_s;
    for (std::size_t a = 0; a < grid.size(); ++a) {
      const double v = grid[a][r.index[a]];
      switch (plan.axes[a].parameter) {
        case Parameter::Car:
          r.car = v;
          r.nbar = nbar_from_car(v).mean_photon_number();
          break;
        case Parameter::MuH:
          r.mu_h = v;
          break;
        case Parameter::MuS:
          r.mu_s = v;
          break;
      }
    }
    r.clicks = plan.fixed.clicks;
    r.target = plan.fixed.target;
  }

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  if (threads <= 1) {
    for (auto& r : records) evaluate(plan, r);
    return records;
  }

  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < total; i = next++) evaluate(plan, records[i]);
      });
    }
  }
  return records;
}

std::string_view fom_name(Fom fom) {
  for (const auto& [f, name] : kFomNames) {
    if (f == fom) return name;
  }
  return "";
}

std::optional<Fom> parse_fom(std::string_view name) {
  for (const auto& [f, n] : kFomNames) {
    if (n == name) return f;
  }
  return std::nullopt;
}

std::optional<double> fom_value(const SweepRecord& record, Fom fom) {
  if (!record.report) return std::nullopt;
  const auto& r = *record.report;
  switch (fom) {
    case Fom::Fidelity:
      return r.fidelity;
    case Fom::G2:
      return r.g2;
    case Fom::G3:
      return r.g3;
    case Fom::SuccessProbability:
      return r.success_probability;
    case Fom::Parity:
      return r.parity;
    case Fom::SignedParity:
      return record.target % 2 == 0 ? r.parity : -r.parity;
    case Fom::MeanLossy:
      return r.mean_lossy;
    case Fom::MeanCorrected:
      return r.mean_loss_corrected;
  }
  return std::nullopt;
}

bool Predicate::holds(const SweepRecord& record) const {
  const auto v = fom_value(record, fom);
  if (!v) return false;
  switch (comparator) {
    case Comparator::Less:
      return *v < level;
    case Comparator::LessEqual:
      return *v <= level;
    case Comparator::Greater:
      return *v > level;
    case Comparator::GreaterEqual:
      return *v >= level;
  }
  return false;
}

std::string Predicate::describe() const {
  static constexpr std::array<std::string_view, 4> symbols = {"<", "<=", ">", ">="};
  std::ostringstream os;
  os << fom_name(fom) << ' ' << symbols[static_cast<int>(comparator)] << ' ' << level;
  return os.str();
}

std::optional<AxisExtent> RegionMask::extent(Parameter p) const {
  for (const auto& e : extents) {
    if (e.parameter == p) return e;
  }
  return std::nullopt;
}

RegionMask threshold_region(std::span<const SweepRecord> records, const Predicate& predicate) {
  RegionMask mask{predicate, {}, {}};
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (predicate.holds(records[i])) mask.indices.push_back(i);
  }
  if (mask.empty()) return mask;
  for (auto p : kParameters) {
    AxisExtent e{p, std::numeric_limits<double>::infinity(),
                 -std::numeric_limits<double>::infinity()};
    for (auto i : mask.indices) {
      e.min = std::min(e.min, coordinate(records[i], p));
      e.max = std::max(e.max, coordinate(records[i], p));
    }
    mask.extents.push_back(e);
  }
  return mask;
}

RegionMask threshold_region(std::span<const SweepRecord> records, std::string_view fom,
                            Comparator comparator, double level) {
  const auto parsed = parse_fom(fom);
  if (!parsed) throw DomainError("unknown figure of merit '" + std::string(fom) + "'");
  return threshold_region(records, Predicate{*parsed, comparator, level});
}

const SweepRecord& find_optimum(std::span<const SweepRecord> records, const Objective& objective,
                                std::span<const Predicate> constraints) {
  const SweepRecord* best = nullptr;
  double best_value = 0.0;
  for (const auto& r : records) {
    const auto v = fom_value(r, objective.fom);
    if (!v || std::isnan(*v)) continue;
    if (!std::all_of(constraints.begin(), constraints.end(),
                     [&](const Predicate& c) { return c.holds(r); })) {
      continue;
    }
    const double value = objective.direction == Direction::Maximize ? *v : -*v;
    if (!best || value > best_value || (value == best_value && better_tiebreak(r, *best))) {
      best = &r;
      best_value = value;
    }
  }
  if (!best) throw DomainError("no grid point satisfies the optimum constraints");
  return *best;
}

std::vector<MeanCurvePoint> mean_vs_car_curve(int clicks, std::span<const double> mu_h_values,
                                              const SweepAxis& car_axis, int num_detectors,
                                              double dark_count, const Truncation& trunc) {
  if (car_axis.parameter != Parameter::Car) throw DomainError("mean curve needs a car axis");
  const auto cars = car_axis.values();
  std::vector<MeanCurvePoint> out;
  out.reserve(cars.size() * mu_h_values.size());
  for (double mu_h : mu_h_values) {
    const ClickDetectorArray det(num_detectors, mu_h, dark_count);
    for (double car : cars) {
      const auto state = herald(HeraldConfig{nbar_from_car(car), det, clicks, trunc});
      out.push_back({car, mu_h, mean(state.statistics)});
    }
  }
  return out;
}

}  // namespace heraldkit
