// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "heraldkit/errors.hpp"
#include "heraldkit/figures_of_merit.hpp"
#include "heraldkit/sweep.hpp"
#include "oracles.hpp"

namespace {

using namespace heraldkit;

// Collects individual checks for one criterion; the first few failures are
// echoed under the verdict line.
class Checks {
 public:
  void near(const std::string& what, double got, double want, double tol) {
    record(what, got, std::abs(got - want) <= tol, "want " + num(want) + " +/- " + num(tol));
  }
  void within(const std::string& what, double got, double lo, double hi) {
    record(what, got, got >= lo && got <= hi, "want [" + num(lo) + ", " + num(hi) + "]");
  }
  void expect(const std::string& what, bool ok) {
    ++count_;
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  std::size_t count() const { return count_; }
  const std::vector<std::string>& failures() const { return failures_; }

  static std::string num(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
  }

 private:
  void record(const std::string& what, double got, bool ok, const std::string& want) {
    ++count_;
    if (!ok) failures_.push_back(what + " = " + num(got) + ", " + want);
  }

  std::size_t count_ = 0;
  std::vector<std::string> failures_;
};

HeraldConfig standard(double car, int k, double mu_h = 1.0) {
  return HeraldConfig{nbar_from_car(car), ClickDetectorArray(4, mu_h, 5e-4), k};
}

// Log-CAR x mu_h landscape; the CAR axis starts at 3 (see README).
SweepPlan landscape(int k, double mu_s) {
  SweepPlan plan;
  plan.axes = {car_axis(3.0, 500.0, 200), SweepAxis{Parameter::MuH, 0.01, 1.0, 200}};
  plan.fixed.mu_s = mu_s;
  plan.fixed.clicks = k;
  plan.fixed.target = k;
  return plan;
}

const double kCarCell = std::pow(500.0 / 3.0, 1.0 / 199.0);

void table_row(Checks& c, int k, double car, double fid, double g2, double g2_tol, double success,
               double success_tol, double parity_lo, double parity_hi) {
  const auto r = report(standard(car, k), LossChannel(1.0), k);
  c.near("fidelity", r.fidelity, fid, 0.01);
  c.near("g2", *r.g2, g2, g2_tol);
  c.near("success probability", r.success_probability, success, success_tol);
  c.within("parity", r.parity, parity_lo, parity_hi);
}

void criterion_1(Checks& c) { table_row(c, 1, 15.0, 0.98, 0.04, 0.01, 0.068, 0.003, -0.96, -0.94); }
void criterion_2(Checks& c) { table_row(c, 2, 23.0, 0.96, 0.52, 0.01, 0.0015, 0.0003, 0.89, 0.93); }
void criterion_3(Checks& c) {
  table_row(c, 3, 43.0, 0.95, 0.675, 0.015, 5e-6, 2.5e-6, -0.92, -0.84);
}

void criterion_4(Checks& c) {
  const std::vector<double> mu_h = {0.4, 0.5, 0.6};
  const struct {
    int k;
    double car, lo, hi;
  } rows[] = {{1, 15.0, 1.06, 1.08}, {2, 23.0, 2.06, 2.07}, {3, 43.0, 3.02, 3.03}};
  for (const auto& row : rows) {
    for (const auto& p :
         mean_vs_car_curve(row.k, mu_h, SweepAxis{Parameter::Car, row.car, row.car + 1.0, 1})) {
      c.within("k=" + std::to_string(row.k) + " mu_h=" + Checks::num(p.mu_h) + " mean",
               p.mean_corrected, row.lo - 0.01, row.hi + 0.01);
    }
  }
}

void criterion_5(Checks& c) {
  const auto records = run_sweep(landscape(1, 1.0));
  const auto& best = find_optimum(records, Objective{Fom::Fidelity});
  c.near("max fidelity", best.report->fidelity, 0.98, 0.01);
  c.expect("max fidelity at mu_h = 1", best.mu_h == 1.0);

  // Points within 0.005 of the nominal 0.98 maximum.
  const auto top = threshold_region(records, "fidelity", Comparator::GreaterEqual, 0.975);
  c.expect("fidelity >= 0.975 region non-empty", !top.empty());
  if (!top.empty()) {
    c.within("fidelity >= 0.975 car min", top.extent(Parameter::Car)->min, 15.0 / kCarCell, 38.0);
    c.within("fidelity >= 0.975 car max", top.extent(Parameter::Car)->max, 15.0, 38.0 * kCarCell);
  }

  const auto good = threshold_region(records, "fidelity", Comparator::GreaterEqual, 0.90);
  c.expect("fidelity >= 0.90 region non-empty", !good.empty());
  if (!good.empty()) {
    c.near("fidelity >= 0.90 car min", good.extent(Parameter::Car)->min, 4.0, 0.15 * 4.0);
    c.near("fidelity >= 0.90 car max", good.extent(Parameter::Car)->max, 230.0, 0.15 * 230.0);
    c.near("fidelity >= 0.90 mu_h min", good.extent(Parameter::MuH)->min, 0.3, 0.05);
  }

  const auto& fastest = find_optimum(records, Objective{Fom::SuccessProbability});
  c.near("max success probability", fastest.report->success_probability, 0.29, 0.01);

  const Predicate constraint{Fom::Fidelity, Comparator::GreaterEqual, 0.90};
  const auto& constrained =
      find_optimum(records, Objective{Fom::SuccessProbability}, std::span(&constraint, 1));
  c.near("success probability with fidelity >= 0.90", constrained.report->success_probability,
         0.26, 0.01);
}

void criterion_6(Checks& c) {
  const double expected[] = {0.68, 0.48, 0.34};
  for (int k = 1; k <= 3; ++k) {
    const auto records = run_sweep(landscape(k, 0.7));
    c.near("k=" + std::to_string(k) + " max fidelity at mu_s = 0.7",
           find_optimum(records, Objective{Fom::Fidelity}).report->fidelity, expected[k - 1], 0.02);
  }
}

void criterion_7(Checks& c) {
  const double expected[] = {0.14, 0.057};
  for (int k = 2; k <= 3; ++k) {
    const auto records = run_sweep(landscape(k, 1.0));
    const auto& best = find_optimum(records, Objective{Fom::SuccessProbability});
    c.near("k=" + std::to_string(k) + " max success probability", best.report->success_probability,
           expected[k - 2], 0.005);
    c.expect("k=" + std::to_string(k) + " optimum at the low-CAR edge", best.car < 4.0);
  }
}

void criterion_8(Checks& c) {
  // Detector completeness and range.
  for (int N : {1, 4, 8}) {
    for (double mu : {0.1, 0.6, 1.0}) {
      for (double nu : {0.0, 5e-4, 0.1}) {
        const ClickDetectorArray det(N, mu, nu);
        std::vector<std::vector<double>> w;
        for (int k = 0; k <= N; ++k) w.push_back(povm_diagonal(det, k, 200).weights);
        bool range = true;
        double worst = 0.0;
        for (std::size_t n = 0; n <= 200; ++n) {
          double sum = 0.0;
          for (const auto& row : w) {
            range = range && row[n] >= 0.0 && row[n] <= 1.0;
            sum += row[n];
          }
          worst = std::max(worst, std::abs(sum - 1.0));
        }
        c.expect("POVM weights in [0,1]", range);
        c.near("POVM completeness", worst, 0.0, 1e-12);
      }
    }
  }

  // Monte Carlo click experiment.
  std::uint64_t seed = 0x5eed;
  for (double mu : {0.3, 0.7}) {
    const ClickDetectorArray det(4, mu, 0.0);
    for (int n = 0; n <= 5; ++n) {
      const auto mc = oracle::simulate_clicks(4, mu, n, 1'000'000, seed++);
      for (int k = 0; k <= 4; ++k) {
        c.near("Monte Carlo k=" + std::to_string(k) + " n=" + std::to_string(n),
               povm_weight(det, k, n), mc[k].probability, 3.0 * mc[k].standard_error);
      }
    }
  }

  // Loss channel.
  const auto state = herald(standard(15.0, 2, 0.7)).statistics;
  for (double mu : {0.2, 0.55, 0.9}) {
    const LossChannel loss(mu);
    for (std::size_t n : {0u, 3u, 17u}) {
      const auto out = apply_loss(loss, PhotonStatistics::fock(n, 20));
      double sum = 0.0;
      for (auto p : out.probabilities()) sum += p;
      c.near("loss column sum", sum, 1.0, 1e-12);
      double worst = 0.0;
      for (std::size_t m = 0; m <= n; ++m) {
        const double binom = oracle::binomial(static_cast<int>(n), static_cast<int>(m)) *
                             std::pow(mu, m) * std::pow(1.0 - mu, n - m);
        worst = std::max(worst, std::abs(out[m] - binom));
      }
      c.near("loss matches binomial", worst, 0.0, 1e-12);
    }
    const auto lossy = apply_loss(loss, state);
    const auto twice = apply_loss(LossChannel(0.8), lossy);
    const auto once = apply_loss(LossChannel(0.8 * mu), state);
    double worst = 0.0;
    for (std::size_t n = 0; n < once.size(); ++n) worst = std::max(worst, std::abs(once[n] - twice[n]));
    c.near("loss semigroup", worst, 0.0, 1e-12);
    c.near("mean scales with efficiency", mean(lossy), mu * mean(state), 1e-10);
    for (int m = 2; m <= 3; ++m) {
      const double want = std::pow(mu, m) * factorial_moment(state, m);
      c.near("factorial moment scaling", factorial_moment(lossy, m), want, 1e-10 * std::max(1.0, want));
      const double g = g_factorial(state, m);
      c.near("g" + std::to_string(m) + " loss invariance", g_factorial(lossy, m), g, 1e-8 * g);
    }
  }

  // Parity two ways.
  int converged = 0;
  for (int k = 1; k <= 3; ++k) {
    for (double car : {5.0, 15.0, 43.0, 200.0}) {
      for (double mu_s : {0.3, 0.7, 1.0}) {
        const auto lossy = apply_loss(LossChannel(mu_s), herald(standard(car, k, 0.6)).statistics);
        try {
          c.near("parity series", parity_from_moments(lossy, static_cast<int>(lossy.n_max())),
                 parity_direct(lossy), 1e-6);
          ++converged;
        } catch (const SeriesNonConvergent&) {
        }
      }
    }
  }
  c.expect("parity series converges on most heralded states", converged >= 30);
  bool divergence_reported = false;
  try {
    parity_from_moments(thermal_distribution(TwinBeamSource(5.0)), 60);
  } catch (const SeriesNonConvergent& e) {
    divergence_reported = e.partial_sums().size() > 5;
  }
  c.expect("bright thermal parity series reported divergent", divergence_reported);

  for (double lg = -3.0; lg <= 1.0 + 1e-9; lg += 0.125) {
    const double nbar = std::pow(10.0, lg);
    c.near("g(1,1) at nbar=" + Checks::num(nbar), cross_correlation(TwinBeamSource(nbar), {1, 1}),
           2.0 + 1.0 / nbar, 1e-8);
  }

  for (double mu : {0.2, 0.6, 1.0}) {
    for (double nu : {1e-5, 5e-4, 0.05}) {
      for (double nbar : {0.01, 0.1, 0.5}) {
        const HeraldConfig cfg{TwinBeamSource(nbar), ClickDetectorArray(4, mu, nu), 1};
        const auto s = herald(cfg).statistics;
        const double ratio = dark_count_ratio(cfg);
        c.near("dark-count ratio", ratio, s[1] / s[0], 1e-8 * ratio);
      }
    }
  }

  for (double car : {3.0, 15.0, 500.0}) {
    for (double mu_h : {0.1, 0.9}) {
      double total = 0.0;
      for (int k = 0; k <= 4; ++k) total += success_probability(standard(car, k, mu_h));
      c.near("herald outcomes sum", total, 1.0, 1e-10);
    }
  }
}

void criterion_9(Checks& c) {
  c.near("g3 of |3>", g_factorial(PhotonStatistics::fock(3), 3), 2.0 / 9.0, 1e-15);
  const auto records = run_sweep(landscape(3, 1.0));
  std::size_t finite = 0;
  for (const auto& r : records) {
    if (r.ok() && r.report->g3 && std::isfinite(*r.report->g3)) ++finite;
  }
  c.expect("k=3 g3 surface finite at every grid point", finite == records.size());
}

}  // namespace

int main() {
  const struct {
    int id;
    const char* title;
    std::function<void(Checks&)> run;
  } criteria[] = {
      {1, "single-photon herald at CAR 15", criterion_1},
      {2, "two-photon herald at CAR 23", criterion_2},
      {3, "three-photon herald at CAR 43", criterion_3},
      {4, "loss-corrected heralded means", criterion_4},
      {5, "single-photon landscape", criterion_5},
      {6, "fidelity at signal efficiency 0.7", criterion_6},
      {7, "multi-photon success at low CAR", criterion_7},
      {8, "property suite", criterion_8},
      {9, "three-photon g3 reference and surface", criterion_9},
  };
  int failed = 0;
  for (const auto& criterion : criteria) {
    Checks checks;
    std::string error;
    try {
      criterion.run(checks);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const bool ok = error.empty() && checks.ok();
    failed += ok ? 0 : 1;
    std::printf("%s  criterion %d: %s (%zu checks)\n", ok ? "PASS" : "FAIL", criterion.id,
                criterion.title, checks.count());
    if (!error.empty()) std::printf("      exception: %s\n", error.c_str());
    for (std::size_t i = 0; i < checks.failures().size() && i < 5; ++i) {
      std::printf("      %s\n", checks.failures()[i].c_str());
    }
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
