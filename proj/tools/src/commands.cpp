#include "commands.hpp"

#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "export.hpp"
#include "heraldkit/errors.hpp"
#include "heraldkit/figures_of_merit.hpp"
#include "heraldkit/sweep.hpp"
#include "sweep_spec.hpp"

namespace heraldkit::cli {
namespace {

struct GlobalOptions {
  std::optional<std::size_t> truncation;
  std::optional<double> tail_eps;
  std::optional<std::string> format;
  std::optional<std::string> out;
};

struct ReportOptions {
  std::optional<double> car;
  std::optional<double> nbar;
  int clicks = 0;
  std::optional<int> target;
  double mu_h = 1.0;
  double mu_s = 1.0;
  int detectors = ClickDetectorArray::kDefaultDetectors;
  double nu = ClickDetectorArray::kDefaultDarkCount;
};

struct SweepOptions {
  std::string spec_path;
  unsigned threads = 0;
};

struct CalibrateOptions {
  std::optional<double> car;
  std::optional<double> nbar;
  double mu_h = 0.5;
  int detectors = ClickDetectorArray::kDefaultDetectors;
  double nu = ClickDetectorArray::kDefaultDarkCount;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::optional<Truncation> truncation_override(const GlobalOptions& g) {
  if (g.truncation && g.tail_eps) throw UsageError("--truncation and --tail-eps are exclusive");
  if (g.truncation) return Truncation::fixed(*g.truncation, std::max(*g.truncation, Truncation::kDefaultCap));
  if (g.tail_eps) return Truncation::adaptive(*g.tail_eps);
  return std::nullopt;
}

OutputFormat resolve_format(const GlobalOptions& g, OutputFormat fallback) {
  if (!g.format) return fallback;
  const auto f = parse_format(*g.format);
  if (!f) throw UsageError("--format must be csv or json");
  return *f;
}

void emit(std::span<const SweepRecord> records, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Json) {
    write_json(out, records);
  } else {
    write_csv(out, records);
  }
}

void write_to_path(const std::string& path, std::span<const SweepRecord> records,
                   OutputFormat format) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + path + "'");
  emit(records, format, file);
}

int cmd_report(const ReportOptions& o, const GlobalOptions& g, std::ostream& out) {
  if (o.car.has_value() == o.nbar.has_value()) {
    throw UsageError("report needs exactly one of --car or --nbar");
  }
  SweepPlan plan;
  plan.fixed.source = o.car ? nbar_from_car(*o.car) : TwinBeamSource(*o.nbar);
  plan.fixed.mu_h = o.mu_h;
  plan.fixed.mu_s = o.mu_s;
  plan.fixed.num_detectors = o.detectors;
  plan.fixed.dark_count = o.nu;
  plan.fixed.clicks = o.clicks;
  plan.fixed.target = o.target.value_or(o.clicks);
  if (auto t = truncation_override(g)) plan.fixed.truncation = *t;

  // Validate physics up front so domain errors are reported, not recorded.
  ClickDetectorArray(o.detectors, o.mu_h, o.nu);
  LossChannel{o.mu_s};
  const auto records = run_sweep(plan, 1);
  const auto& record = records.front();
  if (!record.ok()) throw DomainError(record.status);

  write_text(out, record);
  if (g.out) write_to_path(*g.out, records, resolve_format(g, OutputFormat::Csv));
  return kExitOk;
}

int cmd_sweep(const SweepOptions& o, const GlobalOptions& g, std::ostream& out,
              std::ostream& err) {
  auto spec = load_sweep_spec(o.spec_path);
  if (auto t = truncation_override(g)) spec.plan.fixed.truncation = *t;
  const auto format = resolve_format(g, spec.outputs.format);
  const auto path = g.out ? g.out : spec.outputs.path;

  const auto records = run_sweep(spec.plan, o.threads);
  if (path) {
    write_to_path(*path, records, format);
  } else {
    emit(records, format, out);
  }

  std::size_t failed = 0;
  for (const auto& r : records) failed += r.ok() ? 0 : 1;
  if (failed) err << failed << " of " << records.size() << " grid points failed; see status column\n";
  for (auto fom : spec.outputs.foms) {
    try {
      const auto& best = find_optimum(records, Objective{fom, Direction::Maximize});
      err << "max " << fom_name(fom) << " = " << format_number(*fom_value(best, fom))
          << " at car=" << format_number(best.car) << " mu_h=" << format_number(best.mu_h)
          << " mu_s=" << format_number(best.mu_s) << '\n';
    } catch (const DomainError&) {
      err << "max " << fom_name(fom) << ": no defined values\n";
    }
  }
  return kExitOk;
}

int cmd_calibrate(const CalibrateOptions& o, const GlobalOptions& g, std::ostream& out) {
  if (o.car.has_value() == o.nbar.has_value()) {
    throw UsageError("calibrate needs exactly one of --car or --nbar");
  }
  if (o.nbar && !(*o.nbar > 0.0)) throw DomainError("calibrate needs nbar > 0");
  const TwinBeamSource source = o.car ? nbar_from_car(*o.car) : TwinBeamSource(*o.nbar);
  const Truncation trunc = truncation_override(g).value_or(Truncation::adaptive());
  const ClickDetectorArray det(o.detectors, o.mu_h, o.nu);

  nlohmann::ordered_json doc;
  doc["car"] = round_significant(source.car());
  doc["nbar"] = round_significant(source.mean_photon_number());
  doc["squeezing"] = round_significant(source.squeezing());
  doc["mu_h"] = o.mu_h;
  doc["mean_corrected"] = nlohmann::ordered_json::object();
  std::vector<std::pair<int, std::optional<double>>> means;
  for (int k = 1; k <= std::min(3, o.detectors); ++k) {
    std::optional<double> m;
    try {
      m = mean(herald(HeraldConfig{source, det, k, trunc}).statistics);
    } catch (const ImpossibleHerald&) {
    }
    means.emplace_back(k, m);
    doc["mean_corrected"][std::to_string(k)] =
        m ? nlohmann::ordered_json(round_significant(*m)) : nlohmann::ordered_json(nullptr);
  }

  if (resolve_format(g, OutputFormat::Csv) == OutputFormat::Json && g.format) {
    out << doc.dump(2) << '\n';
  } else {
    auto line = [&](const std::string& name, const std::string& value) {
      out << std::left << std::setw(22) << name << value << '\n';
    };
    line("car", format_number(source.car()));
    line("nbar", format_number(source.mean_photon_number()));
    line("squeezing |lambda|^2", format_number(source.squeezing()));
    line("mu_h", format_number(o.mu_h));
    for (const auto& [k, m] : means) {
      line("mean_corrected k=" + std::to_string(k), m ? format_number(*m) : "impossible herald");
    }
  }
  if (g.out) {
    std::ofstream file(*g.out, std::ios::binary);
    if (!file) throw UsageError("cannot open output file '" + *g.out + "'");
    file << doc.dump(2) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heralded photon-number state preparation from single-mode twin beams",
               "heraldkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--truncation", global.truncation, "Fixed photon-number truncation N_max");
  app.add_option("--tail-eps", global.tail_eps, "Adaptive truncation tail bound (default 1e-14)");
  app.add_option("--format", global.format, "Structured output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", global.out, "Write structured output to PATH");

  ReportOptions report_opts;
  auto* report_cmd = app.add_subcommand("report", "Figures of merit for one parameter point");
  auto* r_car = report_cmd->add_option("--car", report_opts.car, "Coincidences-to-accidentals ratio (> 2)");
  auto* r_nbar = report_cmd->add_option("--nbar", report_opts.nbar, "Twin-beam mean photon number");
  r_car->excludes(r_nbar);
  report_cmd->add_option("--clicks,-k", report_opts.clicks, "Herald click count k")->required();
  report_cmd->add_option("--target,-m", report_opts.target, "Target Fock state (default k)");
  report_cmd->add_option("--mu-h", report_opts.mu_h, "Heralding efficiency")->capture_default_str();
  report_cmd->add_option("--mu-s", report_opts.mu_s, "Signal efficiency")->capture_default_str();
  report_cmd->add_option("--detectors,-N", report_opts.detectors, "Click detectors in the herald array")
      ->capture_default_str();
  report_cmd->add_option("--nu", report_opts.nu, "Dark count parameter")->capture_default_str();

  SweepOptions sweep_opts;
  auto* sweep_cmd = app.add_subcommand("sweep", "Grid sweep from a JSON SweepSpec");
  sweep_cmd->add_option("spec", sweep_opts.spec_path, "SweepSpec JSON document")->required();
  sweep_cmd->add_option("--threads", sweep_opts.threads, "Worker threads (0 = all cores)");

  CalibrateOptions cal_opts;
  auto* cal_cmd = app.add_subcommand("calibrate", "Convert between CAR and mean photon number");
  auto* c_car = cal_cmd->add_option("--car", cal_opts.car, "Coincidences-to-accidentals ratio");
  auto* c_nbar = cal_cmd->add_option("--nbar", cal_opts.nbar, "Twin-beam mean photon number");
  c_car->excludes(c_nbar);
  cal_cmd->add_option("--mu-h", cal_opts.mu_h, "Heralding efficiency")->capture_default_str();
  cal_cmd->add_option("--detectors,-N", cal_opts.detectors, "Click detectors")->capture_default_str();
  cal_cmd->add_option("--nu", cal_opts.nu, "Dark count parameter")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    if (report_cmd->parsed()) return cmd_report(report_opts, global, out);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_opts, global, out, err);
    if (cal_cmd->parsed()) return cmd_calibrate(cal_opts, global, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SpecError& e) {
    err << "spec error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace heraldkit::cli
