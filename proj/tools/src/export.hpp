#pragma once

#include <array>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "heraldkit/sweep.hpp"

namespace heraldkit::cli {

inline constexpr std::array<std::string_view, 14> kColumns = {
    "car",    "nbar", "mu_h",   "mu_s",       "k",         "target",         "fidelity",
    "g2",     "g3",   "success_prob", "parity", "mean_lossy", "mean_corrected", "status"};

inline constexpr int kSignificantDigits = 12;

// Shortest text for `value` rounded to 12 significant digits; "nan", "inf"
// and "-inf" for non-finite values. Independent of the global locale.
std::string format_number(double value);

// `value` rounded to 12 significant digits.
double round_significant(double value);

void write_csv(std::ostream& out, std::span<const SweepRecord> records);
void write_json(std::ostream& out, std::span<const SweepRecord> records);

// Aligned "name  value" listing of a single record.
void write_text(std::ostream& out, const SweepRecord& record);

}  // namespace heraldkit::cli
