#include "agdrc/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>

namespace agdrc {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double parse_number(std::string_view s) {
  const std::string t = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(v))
    throw std::invalid_argument("not a number: '" + t + "'");
  return v;
}

// Plain decimal "−12.345" as (mantissa, digits after the point).
bool as_decimal(std::string_view s, std::int64_t& mantissa, int& places) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  std::size_t i = 0;
  bool neg = false;
  if (t[0] == '-' || t[0] == '+') {
    neg = t[0] == '-';
    i = 1;
  }
  std::int64_t m = 0;
  int p = 0;
  bool seen_point = false, seen_digit = false;
  for (; i < t.size(); ++i) {
    const char c = t[i];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      if (m > (INT64_MAX - 9) / 10) return false;
      m = m * 10 + (c - '0');
      if (seen_point) ++p;
      seen_digit = true;
    } else {
      return false;
    }
  }
  if (!seen_digit || p > 15) return false;
  mantissa = neg ? -m : m;
  places = p;
  return true;
}

std::int64_t pow10(int n) {
  std::int64_t r = 1;
  while (n-- > 0) r *= 10;
  return r;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::vector<double> parse_grid(std::string_view text) {
  const std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty grid specification");

  if (s.find(':') != std::string::npos) {
    const auto c1 = s.find(':');
    const auto c2 = s.find(':', c1 + 1);
    if (c2 == std::string::npos || s.find(':', c2 + 1) != std::string::npos)
      throw std::invalid_argument("range must be lo:hi:step, got '" + s + "'");
    const std::string lo_s = s.substr(0, c1), hi_s = s.substr(c1 + 1, c2 - c1 - 1), st_s = s.substr(c2 + 1);
    const double lo = parse_number(lo_s), hi = parse_number(hi_s), step = parse_number(st_s);
    if (!(step > 0.0)) throw std::invalid_argument("range step must be positive");
    if (hi < lo) throw std::invalid_argument("range must satisfy lo <= hi");

    std::int64_t ml, mh, ms;
    int pl, ph, ps;
    std::vector<double> out;
    if (as_decimal(lo_s, ml, pl) && as_decimal(hi_s, mh, ph) && as_decimal(st_s, ms, ps)) {
      // Common decimal scale: every grid value is an exact integer over 10^places.
      const int places = std::max({pl, ph, ps});
      const std::int64_t scale = pow10(places);
      const std::int64_t lo_i = ml * pow10(places - pl), hi_i = mh * pow10(places - ph),
                         st_i = ms * pow10(places - ps);
      const std::int64_t count = (hi_i - lo_i + st_i / 2) / st_i + 1;
      for (std::int64_t i = 0; i < count; ++i) out.push_back(static_cast<double>(lo_i + i * st_i) / scale);
    } else {
      const auto count = static_cast<std::int64_t>(std::floor((hi - lo) / step + 0.5)) + 1;
      for (std::int64_t i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
    }
    if (out.size() > 10'000'000) throw std::invalid_argument("grid too large");
    return out;
  }

  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    out.push_back(parse_number(std::string_view(s).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::pair<double, double> parse_interval(std::string_view text) {
  const std::string s = trim(text);
  const auto c = s.find(':');
  if (c == std::string::npos || s.find(':', c + 1) != std::string::npos)
    throw std::invalid_argument("interval must be lo:hi, got '" + s + "'");
  const double lo = parse_number(s.substr(0, c)), hi = parse_number(s.substr(c + 1));
  if (hi < lo) throw std::invalid_argument("interval must satisfy lo <= hi");
  return {lo, hi};
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  out.back() = hi;
  return out;
}

void write_region_csv(std::ostream& os, const ScanGrid& grid) {
  os << "alpha,beta,stable,margin,route,detail\n";
  for (std::size_t bi = 0; bi < grid.betas.size(); ++bi) {
    for (std::size_t ai = 0; ai < grid.alphas.size(); ++ai) {
      const RegionVerdict& v = grid.at(bi, ai);
      std::string detail = v.detail;
      if (v.boundary) detail += "; boundary";
      for (char& c : detail)
        if (c == '"') c = '\'';
      os << format_double(grid.alphas[ai]) << ',' << format_double(grid.betas[bi]) << ',' << (v.stable ? 1 : 0)
         << ',' << format_double(v.margin) << ',' << to_string(v.route) << ",\"" << detail << "\"\n";
    }
  }
}

void write_region_svg(std::ostream& os, const ScanGrid& grid, std::string_view title) {
  constexpr int kCell = 4, kPad = 40;
  const auto na = static_cast<int>(grid.alphas.size()), nb = static_cast<int>(grid.betas.size());
  const int w = na * kCell, h = nb * kCell;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w + 2 * kPad << "\" height=\"" << h + 2 * kPad
     << "\">\n";
  os << "<title>" << title << "</title>\n";
  os << "<rect x=\"" << kPad << "\" y=\"" << kPad << "\" width=\"" << w << "\" height=\"" << h
     << "\" fill=\"white\" stroke=\"black\"/>\n";
  for (int bi = 0; bi < nb; ++bi) {
    for (int ai = 0; ai < na; ++ai) {
      if (!grid.at(static_cast<std::size_t>(bi), static_cast<std::size_t>(ai)).stable) continue;
      // β increases upward.
      os << "<rect x=\"" << kPad + ai * kCell << "\" y=\"" << kPad + (nb - 1 - bi) * kCell << "\" width=\"" << kCell
         << "\" height=\"" << kCell << "\" fill=\"steelblue\"/>\n";
    }
  }
  os << "<text x=\"" << kPad << "\" y=\"" << h + kPad + 16 << "\" font-size=\"12\">alpha "
     << format_double(grid.alphas.front()) << " .. " << format_double(grid.alphas.back()) << "</text>\n";
  os << "<text x=\"4\" y=\"" << kPad - 8 << "\" font-size=\"12\">beta " << format_double(grid.betas.front())
     << " .. " << format_double(grid.betas.back()) << " (bottom to top)</text>\n";
  os << "</svg>\n";
}

nlohmann::json to_json(const RegionVerdict& v) {
  return {{"stable", v.stable},
          {"route", std::string(to_string(v.route))},
          {"margin", v.margin},
          {"detail", v.detail},
          {"boundary", v.boundary}};
}

nlohmann::json to_json(const DeltaInterval& d) {
  return {{"lo", d.lo}, {"hi", d.hi}, {"nonempty", d.nonempty}};
}

nlohmann::json to_json(const KypcReport& k) {
  return {{"no_unit_circle_eigenvalue", k.no_unit_circle_eig},
          {"schur_stable", k.schur_stable},
          {"spectral_radius", k.spectral_radius},
          {"corner_psd", k.corner_psd},
          {"ok", k.ok()}};
}

nlohmann::json to_json(const PWitness& w) {
  return {{"p", {{w.p(0, 0), w.p(0, 1)}, {w.p(1, 0), w.p(1, 1)}}},
          {"max_eig_lhs", w.max_eig_lhs},
          {"min_eig_p", w.min_eig_p},
          {"cond_p", w.cond_p}};
}

}  // namespace agdrc
