#include "implreg/dataio.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "implreg/error.hpp"
#include "implreg/fitcore.hpp"

namespace implreg {

namespace detail {
extern const std::string_view kBoyleCsv;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_integer(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  const char* begin = s.data();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Both the whole part and the fraction are integers: w + n/d is evaluated
// as (w*d + n)/d with one rounding.
bool parse_mixed(std::string_view s, double& out) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return false;
  std::string_view head = trim(s.substr(0, slash));
  const std::string_view den_text = trim(s.substr(slash + 1));
  std::int64_t whole = 0;
  bool has_whole = false;
  const auto space = head.find_first_of(" \t");
  if (space != std::string_view::npos) {
    if (!parse_integer(trim(head.substr(0, space)), whole)) return false;
    head = trim(head.substr(space));
    has_whole = true;
  }
  std::int64_t num = 0;
  std::int64_t den = 0;
  if (!parse_integer(head, num) || !parse_integer(den_text, den)) return false;
  if (den <= 0 || num < 0) return false;
  const bool negative = has_whole && whole < 0;
  const std::int64_t magnitude = (negative ? -whole : whole) * den + num;
  out = static_cast<double>(negative ? -magnitude : magnitude) / static_cast<double>(den);
  return true;
}

}  // namespace

double parse_field(std::string_view field) {
  const std::string_view s = trim(field);
  if (s.empty()) throw std::invalid_argument("empty field");
  if (s.find('/') != std::string_view::npos) {
    double v = 0.0;
    if (!parse_mixed(s, v)) throw std::invalid_argument("malformed fraction '" + std::string(s) + "'");
    return v;
  }
  double v = 0.0;
  const char* begin = s.data();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), v);
  if (ec == std::errc::result_out_of_range) return HUGE_VAL;
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed number '" + std::string(s) + "'");
  }
  return v;
}

Dataset read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::string x_label;
  std::string y_label;
  bool have_header = false;
  std::vector<Observation> rows;

  auto split = [&](std::string_view text, std::string_view& a, std::string_view& b) {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected exactly two fields",
                       ParseError::Where::kLine, line_no);
    }
    a = trim(text.substr(0, comma));
    b = trim(text.substr(comma + 1));
  };

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    std::string_view a;
    std::string_view b;
    split(text, a, b);
    if (!have_header) {
      if (a.empty() || b.empty()) {
        throw ParseError("line 1: empty header field", ParseError::Where::kLine, line_no);
      }
      x_label = a;
      y_label = b;
      have_header = true;
      continue;
    }
    Observation obs;
    try {
      obs.x = parse_field(a);
      obs.y = parse_field(b);
    } catch (const std::invalid_argument& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what(),
                       ParseError::Where::kLine, line_no);
    }
    if (!std::isfinite(obs.x) || !std::isfinite(obs.y)) {
      throw RangeError("line " + std::to_string(line_no) + ": non-finite value");
    }
    rows.push_back(obs);
  }
  if (!have_header) throw ParseError("missing header", ParseError::Where::kLine, 1);
  if (rows.size() < 3) {
    throw InsufficientDataError("need at least 3 rows, found " + std::to_string(rows.size()));
  }
  return Dataset(std::move(x_label), std::move(y_label), std::move(rows));
}

Dataset read_csv_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_csv(in);
}

Dataset read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_csv(in);
}

void write_csv(std::ostream& out, const Dataset& data, int decimals) {
  if (decimals < 0 || decimals > 17) throw std::invalid_argument("decimals must be in [0, 17]");
  out << data.x_label() << ',' << data.y_label() << '\n';
  char buf[128];
  for (const auto& r : data.rows()) {
    std::snprintf(buf, sizeof buf, "%.*f,%.*f\n", decimals, r.x, decimals, r.y);
    out << buf;
  }
}

std::string write_csv_string(const Dataset& data, int decimals) {
  std::ostringstream out;
  write_csv(out, data, decimals);
  return out.str();
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string_view boyle_csv() { return detail::kBoyleCsv; }

Dataset boyle_dataset() {
  const std::string_view text = boyle_csv();
  if (fnv1a64(text) != kBoyleChecksum) {
    throw IntegrityError("bundled Boyle table failed its checksum");
  }
  Dataset data;
  try {
    data = read_csv_string(text);
  } catch (const Error& e) {
    throw IntegrityError(std::string("bundled Boyle table is corrupt: ") + e.what());
  }
  if (data.size() != 25) throw IntegrityError("bundled Boyle table must have 25 rows");

  struct Anchor {
    const char* name;
    std::vector<double> values;
    double expected;
    double tolerance;
  };
  const Anchor anchors[] = {
      {"volume", data.xs(), 0.8595, 3e-3},
      {"pressure", data.ys(), 0.8551, 3e-3},
      {"volume*pressure", data.products(), 0.9999878, 1e-4},
  };
  for (const auto& a : anchors) {
    const double ci = constancy_index(a.values);
    if (std::abs(ci - a.expected) > a.tolerance) {
      throw IntegrityError(std::string("Boyle constancy anchor failed for ") + a.name);
    }
  }
  return data;
}

}  // namespace implreg
