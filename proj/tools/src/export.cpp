#include "export.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <optional>
#include <system_error>
#include <vector>

#include <json.hpp>

namespace heraldkit::cli {
namespace {

using nlohmann::ordered_json;

std::optional<double> as_optional(double v) { return v; }

// Numeric columns of a record in kColumns order (status excluded).
std::vector<std::optional<double>> numeric_fields(const SweepRecord& r) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::optional<double>> f = {r.car, r.nbar, r.mu_h, r.mu_s,
                                          static_cast<double>(r.clicks),
                                          static_cast<double>(r.target)};
  if (r.report) {
    const auto& rep = *r.report;
    f.insert(f.end(), {as_optional(rep.fidelity), rep.g2, rep.g3,
                       as_optional(rep.success_probability), as_optional(rep.parity),
                       as_optional(rep.mean_lossy), rep.mean_loss_corrected});
  } else {
    f.insert(f.end(), 7, std::optional<double>(nan));
  }
  return f;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, kSignificantDigits);
  if (ec != std::errc{}) return "nan";
  // Reprint the rounded value in its shortest form (drops trailing zeros).
  double rounded = 0.0;
  std::from_chars(buf.data(), end, rounded);
  auto [end2, ec2] = std::to_chars(buf.data(), buf.data() + buf.size(), rounded);
  if (ec2 != std::errc{}) return "nan";
  return std::string(buf.data(), end2);
}

double round_significant(double value) {
  if (!std::isfinite(value)) return value;
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::general, kSignificantDigits);
  double rounded = value;
  if (ec == std::errc{}) std::from_chars(buf.data(), end, rounded);
  return rounded;
}

void write_csv(std::ostream& out, std::span<const SweepRecord> records) {
  for (std::size_t c = 0; c < kColumns.size(); ++c) out << (c ? "," : "") << kColumns[c];
  out << '\n';
  for (const auto& r : records) {
    for (const auto& field : numeric_fields(r)) {
      out << (field ? format_number(*field) : "nan") << ',';
    }
    out << csv_escape(r.status) << '\n';
  }
}

void write_json(std::ostream& out, std::span<const SweepRecord> records) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : records) {
    ordered_json row;
    const auto fields = numeric_fields(r);
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const std::string key(kColumns[c]);
      if (key == "k") {
        row[key] = r.clicks;
      } else if (key == "target") {
        row[key] = r.target;
      } else if (fields[c] && std::isfinite(*fields[c])) {
        row[key] = round_significant(*fields[c]);
      } else {
        row[key] = nullptr;
      }
    }
    row["status"] = r.status;
    rows.push_back(std::move(row));
  }
  out << rows.dump(2) << '\n';
}

void write_text(std::ostream& out, const SweepRecord& record) {
  const auto fields = numeric_fields(record);
  for (std::size_t c = 0; c < fields.size(); ++c) {
    out << std::left << std::setw(16) << kColumns[c]
        << (fields[c] ? format_number(*fields[c]) : "undefined") << '\n';
  }
  out << std::left << std::setw(16) << "status" << record.status << '\n';
}

}  // namespace heraldkit::cli
