#pragma once

// Plain-text codecs. Every format is comma-separated with `key=value` header
// lines; lines starting with '#' and blank lines are ignored on read.
//
//   state:      N=<n> / index,re,im / one row per index (%.16e)
//   table:      kind=, n1=, n2=, orientation= / j,j1,j2 / rows
//   report:     check,value,tolerance,status
//   potential:  period=<p> / one sample per line

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "skq/algebra.hpp"
#include "skq/continuum.hpp"
#include "skq/factorization.hpp"
#include "skq/modvar.hpp"
#include "skq/report.hpp"

namespace skq {

void write_state(std::ostream& out, const StateVector& x);
StateVector read_state(std::istream& in);

enum class TableKind { Position, Momentum };

std::string_view to_string(TableKind kind);
TableKind parse_table_kind(std::string_view text);

struct TableRow {
  std::int64_t j = 0;
  std::int64_t j1 = 0;
  std::int64_t j2 = 0;

  friend bool operator==(const TableRow&, const TableRow&) = default;
};

struct TableFile {
  TableKind kind = TableKind::Position;
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  Orientation orientation = Orientation::PaperTables;
  std::vector<TableRow> rows;

  friend bool operator==(const TableFile&, const TableFile&) = default;
};

TableFile make_table(const FactorizationPlan& plan, TableKind kind);
/// Rows cover Z_N once and the (j1, j2) cells cover Z_N1 × Z_N2 once.
bool table_is_bijection(const TableFile& table);

void write_table(std::ostream& out, const TableFile& table);
TableFile read_table(std::istream& in);

void write_report(std::ostream& out, const std::vector<Check>& checks);
void write_convergence_csv(std::ostream& out, const ConvergenceReport& report);

void write_potential(std::ostream& out, const KickPotential& pot);
KickPotential read_potential(std::istream& in);

}  // namespace skq
