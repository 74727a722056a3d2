#pragma once

// Point CSV ingestion and signature CSV output.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sigcurve/affine2.hpp"
#include "sigcurve/euclid2.hpp"
#include "sigcurve/euclid3.hpp"
#include "sigcurve/format.hpp"
#include "sigcurve/geom.hpp"

namespace sigcurve::io {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline bool parse_number(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace detail

/// Rows of `dim` comma-separated numbers. Blank lines and lines starting
/// with '#' are ignored; a first data line that does not parse as numbers
/// is taken as a header.
inline std::vector<std::vector<double>> read_rows(std::istream& in, std::size_t dim) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;

    std::vector<double> row;
    bool ok = true;
    std::size_t start = 0;
    for (;;) {
      const auto comma = body.find(',', start);
      const auto field = body.substr(start, comma == std::string_view::npos ? body.npos
                                                                            : comma - start);
      double v = 0.0;
      if (!detail::parse_number(field, v)) {
        ok = false;
        break;
      }
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!ok) {
      if (!seen_data) {
        seen_data = true;  // header
        continue;
      }
      throw ParseError(lineno, "malformed number in '" + std::string(body) + "'");
    }
    if (row.size() != dim) {
      throw ParseError(lineno, "expected " + std::to_string(dim) + " fields, got " +
                                   std::to_string(row.size()));
    }
    for (const double v : row) {
      if (!std::isfinite(v)) throw ParseError(lineno, "non-finite coordinate");
    }
    seen_data = true;
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::vector<Point2> read_points2(std::istream& in) {
  std::vector<Point2> pts;
  for (const auto& r : read_rows(in, 2)) pts.emplace_back(r[0], r[1]);
  return pts;
}

inline std::vector<Point3> read_points3(std::istream& in) {
  std::vector<Point3> pts;
  for (const auto& r : read_rows(in, 3)) pts.emplace_back(r[0], r[1], r[2]);
  return pts;
}

inline void write_points(std::ostream& os, const std::vector<Point2>& pts) {
  os << "x,y\n";
  for (const auto& p : pts) os << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

inline void write_points(std::ostream& os, const std::vector<Point3>& pts) {
  os << "x,y,z\n";
  for (const auto& p : pts) {
    os << format_double(p.x) << ',' << format_double(p.y) << ',' << format_double(p.z) << '\n';
  }
}

inline void write_signature(std::ostream& os, const euclid2::SignatureCurve2& sig) {
  os << "index,t,kappa,kappa_s\n";
  for (const auto& s : sig.samples) {
    os << s.index << ',' << format_double(s.t) << ',' << format_double(s.kappa) << ','
       << format_double(s.kappa_s) << '\n';
  }
}

inline void write_signature(std::ostream& os, const affine2::AffineSignatureCurve& sig) {
  os << "index,t,kappa,kappa_s\n";
  for (const auto& s : sig.samples) {
    os << s.index << ',' << format_double(s.t) << ',' << format_double(s.kappa) << ','
       << format_double(s.kappa_s) << '\n';
  }
}

inline void write_signature(std::ostream& os, const euclid3::SignatureCurve3& sig) {
  os << "index,t,kappa,kappa_s,tau,tau_s\n";
  for (const auto& s : sig.samples) {
    os << s.index << ',' << format_double(s.t) << ',' << format_double(s.kappa) << ','
       << format_double(s.kappa_s) << ',' << format_double(s.tau) << ','
       << format_double(s.tau_s) << '\n';
  }
}

}  // namespace sigcurve::io
