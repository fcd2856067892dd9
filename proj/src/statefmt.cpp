#include "skq/statefmt.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string_view>

#include "skq/errors.hpp"

namespace skq {
namespace {

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.16e", v);
  return buffer;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Yields the meaningful lines of a stream with their 1-based line numbers.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next() {
    while (std::getline(in_, raw_)) {
      ++number_;
      text_ = trim(raw_);
      if (text_.empty() || text_.front() == '#') continue;
      return true;
    }
    return false;
  }

  std::string_view text() const { return text_; }
  std::size_t number() const { return number_; }

 private:
  std::istream& in_;
  std::string raw_;
  std::string_view text_;
  std::size_t number_ = 0;
};

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> fields;
  for (;;) {
    const std::size_t comma = s.find(',');
    fields.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) return fields;
    s.remove_prefix(comma + 1);
  }
}

std::int64_t parse_int(std::string_view s, std::size_t line) {
  std::int64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
    throw ParseError(line, "expected integer, got '" + std::string(s) + "'");
  }
  return v;
}

double parse_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty() ||
      !std::isfinite(v)) {
    throw ParseError(line, "expected number, got '" + std::string(s) + "'");
  }
  return v;
}

// Reads `key=value` lines until the column header line; returns the headers.
std::map<std::string, std::string, std::less<>> read_headers(
    LineReader& reader, std::string_view columns) {
  std::map<std::string, std::string, std::less<>> headers;
  while (reader.next()) {
    const std::string_view t = reader.text();
    if (t == columns) return headers;
    const std::size_t eq = t.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(reader.number(),
                       "expected header or '" + std::string(columns) + "'");
    }
    headers.emplace(std::string(trim(t.substr(0, eq))),
                    std::string(trim(t.substr(eq + 1))));
  }
  throw MissingHeader(reader.number() + 1, std::string(columns));
}

const std::string& header(
    const std::map<std::string, std::string, std::less<>>& headers,
    std::string_view key, std::size_t line) {
  const auto it = headers.find(key);
  if (it == headers.end()) throw MissingHeader(line, std::string(key));
  return it->second;
}

}  // namespace

void write_state(std::ostream& out, const StateVector& x) {
  out << "N=" << x.dim() << "\nindex,re,im\n";
  for (std::size_t i = 0; i < x.dim(); ++i) {
    out << i << ',' << format_double(x[i].real()) << ','
        << format_double(x[i].imag()) << '\n';
  }
}

StateVector read_state(std::istream& in) {
  LineReader reader(in);
  const auto headers = read_headers(reader, "index,re,im");
  const std::size_t header_line = reader.number();
  const std::int64_t n = parse_int(header(headers, "N", header_line), header_line);
  if (n < 1) throw ParseError(header_line, "N must be positive");

  std::vector<Complex> amps(static_cast<std::size_t>(n));
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::size_t count = 0;
  while (reader.next()) {
    const auto f = split(reader.text());
    if (f.size() != 3) throw ParseError(reader.number(), "expected index,re,im");
    const std::int64_t i = parse_int(f[0], reader.number());
    if (i < 0 || i >= n) {
      throw ParseError(reader.number(), "index " + std::to_string(i) + " out of range");
    }
    const auto at = static_cast<std::size_t>(i);
    if (seen[at]) throw DuplicateIndex(reader.number(), i);
    seen[at] = true;
    amps[at] = {parse_double(f[1], reader.number()),
                parse_double(f[2], reader.number())};
    ++count;
  }
  if (count != static_cast<std::size_t>(n)) {
    throw ParseError(reader.number(), "expected " + std::to_string(n) +
                                          " rows, got " + std::to_string(count));
  }
  return StateVector(std::move(amps));
}

// ---------------------------------------------------------------------------

std::string_view to_string(TableKind kind) {
  return kind == TableKind::Position ? "position" : "momentum";
}

TableKind parse_table_kind(std::string_view text) {
  if (text == "position") return TableKind::Position;
  if (text == "momentum") return TableKind::Momentum;
  throw std::invalid_argument("unknown table kind '" + std::string(text) + "'");
}

TableFile make_table(const FactorizationPlan& plan, TableKind kind) {
  TableFile t;
  t.kind = kind;
  t.n1 = plan.pair().n1();
  t.n2 = plan.pair().n2();
  t.orientation = plan.orientation();
  const auto& map =
      kind == TableKind::Position ? plan.position_map() : plan.momentum_map();
  t.rows.reserve(map.size());
  for (std::size_t j = 0; j < map.size(); ++j) {
    t.rows.push_back({static_cast<std::int64_t>(j), map[j].first, map[j].second});
  }
  return t;
}

bool table_is_bijection(const TableFile& table) {
  if (table.n1 < 1 || table.n2 < 1) return false;
  const std::int64_t n = table.n1 * table.n2;
  if (static_cast<std::int64_t>(table.rows.size()) != n) return false;
  std::set<std::int64_t> indices;
  std::set<std::pair<std::int64_t, std::int64_t>> cells;
  for (const TableRow& r : table.rows) {
    if (r.j < 0 || r.j >= n || r.j1 < 0 || r.j1 >= table.n1 || r.j2 < 0 ||
        r.j2 >= table.n2) {
      return false;
    }
    if (!indices.insert(r.j).second) return false;
    if (!cells.insert({r.j1, r.j2}).second) return false;
  }
  return true;
}

void write_table(std::ostream& out, const TableFile& table) {
  out << "kind=" << to_string(table.kind) << "\nn1=" << table.n1
      << "\nn2=" << table.n2 << "\norientation=" << to_string(table.orientation)
      << "\nj,j1,j2\n";
  for (const TableRow& r : table.rows) {
    out << r.j << ',' << r.j1 << ',' << r.j2 << '\n';
  }
}

TableFile read_table(std::istream& in) {
  LineReader reader(in);
  const auto headers = read_headers(reader, "j,j1,j2");
  const std::size_t line = reader.number();
  TableFile t;
  try {
    t.kind = parse_table_kind(header(headers, "kind", line));
    t.orientation = parse_orientation(header(headers, "orientation", line));
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
  t.n1 = parse_int(header(headers, "n1", line), line);
  t.n2 = parse_int(header(headers, "n2", line), line);

  std::set<std::int64_t> seen;
  while (reader.next()) {
    const auto f = split(reader.text());
    if (f.size() != 3) throw ParseError(reader.number(), "expected j,j1,j2");
    TableRow r{parse_int(f[0], reader.number()), parse_int(f[1], reader.number()),
               parse_int(f[2], reader.number())};
    if (!seen.insert(r.j).second) throw DuplicateIndex(reader.number(), r.j);
    t.rows.push_back(r);
  }
  return t;
}

// ---------------------------------------------------------------------------

void write_report(std::ostream& out, const std::vector<Check>& checks) {
  out << "check,value,tolerance,status\n";
  for (const Check& c : checks) {
    out << c.name << ',' << format_double(c.value) << ','
        << format_double(c.tolerance) << ',' << (c.passed() ? "pass" : "fail")
        << '\n';
  }
}

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report) {
  out << "N,overlap_dev,gaussian_dev,gram_dev\n";
  for (const ConvergenceRow& row : report.rows) {
    out << row.n << ',' << format_double(row.overlap_dev) << ','
        << (row.gaussian ? row.gaussian->text : "na") << ','
        << format_double(row.gram_dev) << '\n';
  }
}

void write_potential(std::ostream& out, const KickPotential& pot) {
  out << "period=" << pot.period << '\n';
  for (double v : pot.samples) out << format_double(v) << '\n';
}

KickPotential read_potential(std::istream& in) {
  LineReader reader(in);
  if (!reader.next()) throw MissingHeader(reader.number() + 1, "period");
  const std::string_view first = reader.text();
  if (first.substr(0, 7) != "period=") throw MissingHeader(reader.number(), "period");
  const std::int64_t period = parse_int(trim(first.substr(7)), reader.number());
  if (period < 1) throw ParseError(reader.number(), "period must be positive");

  KickPotential pot;
  pot.period = static_cast<std::size_t>(period);
  while (reader.next()) {
    pot.samples.push_back(parse_double(reader.text(), reader.number()));
  }
  if (pot.samples.size() != pot.period) {
    throw ParseError(reader.number(), "expected " + std::to_string(period) +
                                          " samples, got " +
                                          std::to_string(pot.samples.size()));
  }
  return pot;
}

}  // namespace skq
