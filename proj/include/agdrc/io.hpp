#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "agdrc/analytic.hpp"
#include "agdrc/lmi.hpp"

namespace agdrc {

inline constexpr const char* kSchema = "agd-rc/1";

/// Parses "lo:hi:step" (inclusive grid, index arithmetic on the decimal
/// digits), a comma list "a,b,c", or a single value.
std::vector<double> parse_grid(std::string_view text);

/// Parses "lo:hi" into its two endpoints.
std::pair<double, double> parse_interval(std::string_view text);

std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Columns: alpha, beta, stable, margin, route, detail.
void write_region_csv(std::ostream& os, const ScanGrid& grid);

/// Minimal heatmap: one filled rect per stable cell, α along x and β up y.
void write_region_svg(std::ostream& os, const ScanGrid& grid, std::string_view title);

nlohmann::json to_json(const RegionVerdict& v);
nlohmann::json to_json(const DeltaInterval& d);
nlohmann::json to_json(const KypcReport& k);
nlohmann::json to_json(const PWitness& w);

/// Shortest round-trip formatting, used for CSV cells.
std::string format_double(double x);

}  // namespace agdrc
