#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "skq/algebra.hpp"
#include "skq/continuum.hpp"
#include "skq/errors.hpp"
#include "skq/factorization.hpp"
#include "skq/kinematics.hpp"
#include "skq/modvar.hpp"
#include "skq/numtheory.hpp"
#include "skq/statefmt.hpp"

namespace skq::cli {
namespace {

struct Options {
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  std::size_t n = 0;
  std::vector<std::size_t> n_list;
  std::string orientation = "paper-tables";
  std::string format = "csv";
  std::string output;
  std::size_t dim_cap = 0;
  double tol = kDefaultTolerance;
  std::string state;
  std::string potential;
  std::string mode = "symmetric";
  double xi = 1.0;

  double phase_tol() const { return std::min(tol, kPhaseTolerance); }
};

// Thrown for bad input that CLI11 cannot catch by itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.6e", v);
  return buffer;
}

void banner(std::ostream& out) { out << "# skq " << SKQ_VERSION << '\n'; }

// Writes to --output when given, else to stdout after the banner.
void emit(const Options& o, std::ostream& out,
          const std::function<void(std::ostream&)>& body) {
  if (o.output.empty()) {
    banner(out);
    body(out);
    return;
  }
  std::ofstream file(o.output);
  if (!file) throw UsageError("cannot write " + o.output);
  body(file);
  out << "wrote " << o.output << '\n';
}

FactorizationPlan make_plan(const Options& o, bool cross_check = true) {
  PlanOptions po;
  po.dim_cap = o.dim_cap;
  po.cross_check = cross_check;
  return plan(o.n1, o.n2, parse_orientation(o.orientation), po);
}

// ---------------------------------------------------------------------------

void write_table_txt(std::ostream& out, const TableFile& t) {
  const bool pos = t.kind == TableKind::Position;
  const char ket = pos ? 'u' : 'v';
  out << to_string(t.kind) << " states, N=" << t.n1 * t.n2 << " (" << t.n1
      << " x " << t.n2 << "), " << to_string(t.orientation) << '\n';
  for (const TableRow& r : t.rows) {
    out << '|' << ket << '_' << r.j << "> = |" << ket << '_' << r.j1 << "> (x) |"
        << ket << '_' << r.j2 << ">\n";
  }
}

int cmd_factor(const Options& o, std::ostream& out) {
  if (o.format == "svg") throw UsageError("factor supports --format csv|txt");
  const FactorizationPlan p = make_plan(o);
  const TableFile pos = make_table(p, TableKind::Position);
  const TableFile mom = make_table(p, TableKind::Momentum);

  banner(out);
  out << "# r1=" << p.residues().r1 << " r2=" << p.residues().r2 << '\n';
  if (o.format == "txt") {
    write_table_txt(out, pos);
    write_table_txt(out, mom);
  } else {
    write_table(out, pos);
    write_table(out, mom);
  }
  if (!o.output.empty()) {
    for (const TableFile* t : {&pos, &mom}) {
      const std::string path =
          o.output + "_" + std::string(to_string(t->kind)) + ".csv";
      std::ofstream file(path);
      if (!file) throw UsageError("cannot write " + path);
      write_table(file, *t);
    }
  }
  const PlanVerification v = verify_plan(p);
  if (!v.passed(o.tol, o.phase_tol())) {
    out << "# verification failed\n";
    write_report(out, v.checks(o.tol, o.phase_tol()));
    return kExitFailed;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

std::vector<Check> kinematics_checks(std::size_t n, const Options& o) {
  const KinematicsSpace space(n, o.dim_cap);
  std::vector<Check> checks;
  checks.push_back({"shift_unitarity", unitarity_residual(space.shift()), o.tol});
  checks.push_back({"clock_unitarity", unitarity_residual(space.clock()), o.tol});
  checks.push_back({"dft_unitarity", unitarity_residual(space.dft()), o.tol});
  if (n <= 128) {
    checks.push_back({"weyl_all_jk", weyl_max_residual(space), o.tol});
  } else {
    checks.push_back({"weyl_generator", weyl_residual(space, 1, 1), o.tol});
  }
  const auto ni = static_cast<std::int64_t>(n);
  const UnitaryOperator id = UnitaryOperator::identity(n);
  checks.push_back({"order",
                    std::max(max_abs_diff(mat_power(space.shift(), ni), id),
                             max_abs_diff(mat_power(space.clock(), ni), id)),
                    o.tol});
  double mub = 0.0;
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      mub = std::max(mub, std::abs(std::norm(space.dft()(j, k)) - inv));
    }
  }
  checks.push_back({"mub_overlap", mub, o.phase_tol()});

  // Each spectrum must be all N roots of unity, once each.
  double defects = 0.0;
  try {
    for (const auto& spectrum : {shift_spectrum(space), clock_spectrum(space)}) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!(spectrum[i] == PhaseExponent(static_cast<std::int64_t>(i), ni))) {
          defects += 1.0;
        }
      }
    }
  } catch (const std::runtime_error&) {
    defects = static_cast<double>(2 * n);
  }
  checks.push_back({"spectrum_defects", defects, 0.0});
  return checks;
}

std::vector<Check> pair_checks(const Options& o) {
  const FactorizationPlan p = make_plan(o);
  std::vector<Check> checks = verify_plan(p).checks(o.tol, o.phase_tol());

  const auto walk = single_line_walk(p);
  checks.push_back(
      {"walk_short_by",
       static_cast<double>(p.dim() - std::min(p.dim(), walk.size())), 0.0});

  const ModularPair pair(p);
  checks.push_back({"modular_commutator", pair.commutator(), o.tol});

  double az_residual = 0.0;
  double az_mismatch = 0.0;
  for (const AZEigenReport& r : az_states(pair)) {
    az_residual = std::max({az_residual, r.shift_residual, r.clock_residual});
    if (!r.matches_prediction()) az_mismatch += 1.0;
  }
  checks.push_back({"az_eigen_residual", az_residual, o.tol});
  checks.push_back({"az_exponent_mismatches", az_mismatch, 0.0});

  const CombExpansion comb = dirac_comb(p);
  double spread = 0.0;
  const double m = 1.0 / std::sqrt(static_cast<double>(p.pair().n2()));
  const double q = 1.0 / std::sqrt(static_cast<double>(p.pair().n1()));
  for (const Complex& c : comb.momentum_coefficients) {
    spread = std::max(spread, std::abs(std::abs(c) - m));
  }
  for (const Complex& c : comb.position_coefficients) {
    spread = std::max(spread, std::abs(std::abs(c) - q));
  }
  checks.push_back({"comb_magnitude_spread", spread, o.phase_tol()});
  return checks;
}

int cmd_verify(const Options& o, std::ostream& out) {
  std::vector<Check> checks;
  if (o.n > 0) {
    checks = kinematics_checks(o.n, o);
  } else {
    checks = kinematics_checks(static_cast<std::size_t>(CoprimePair(o.n1, o.n2).product()), o);
    const std::vector<Check> more = pair_checks(o);
    checks.insert(checks.end(), more.begin(), more.end());
  }
  banner(out);
  write_report(out, checks);
  return all_passed(checks) ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------

std::pair<std::int64_t, std::int64_t> parse_state_spec(std::string_view s) {
  // "v:<j1>,u:<k2>"
  const std::size_t comma = s.find(',');
  if (comma == std::string_view::npos || s.substr(0, 2) != "v:" ||
      s.substr(comma + 1, 2) != "u:") {
    throw UsageError("--state must look like v:<j1>,u:<k2>");
  }
  auto number = [&](std::string_view t) {
    std::int64_t v = 0;
    const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || end != t.data() + t.size() || t.empty()) {
      throw UsageError("bad index in --state: '" + std::string(t) + "'");
    }
    return v;
  };
  return {number(s.substr(2, comma - 2)), number(s.substr(comma + 3))};
}

struct Cell {
  std::int64_t j1;
  std::int64_t j2;
  std::int64_t j;
  double magnitude;
  bool marked;
};

std::vector<Cell> lattice_cells(const FactorizationPlan& p, const StateVector& x,
                                double tol) {
  const std::int64_t n1 = p.pair().n1();
  const std::int64_t n2 = p.pair().n2();
  std::vector<Cell> cells;
  cells.reserve(p.dim());
  for (std::int64_t a = 0; a < n1; ++a) {
    for (std::int64_t b = 0; b < n2; ++b) {
      const double mag = std::abs(x[static_cast<std::size_t>(a * n2 + b)]);
      cells.push_back({a, b, crt_join(a, b, p.pair(), p.orientation()), mag,
                       mag > tol});
    }
  }
  return cells;
}

void write_cells_csv(std::ostream& out, const std::vector<Cell>& cells) {
  out << "j1,j2,j,magnitude,marked\n";
  for (const Cell& c : cells) {
    out << c.j1 << ',' << c.j2 << ',' << c.j << ',' << fmt(c.magnitude) << ','
        << (c.marked ? 1 : 0) << '\n';
  }
}

// First factor runs along x, second along y (origin at the bottom left).
void write_cells_svg(std::ostream& out, const std::vector<Cell>& cells,
                     std::int64_t n1, std::int64_t n2, const std::string& title) {
  constexpr int kStep = 40;
  constexpr int kMargin = 50;
  const std::int64_t w = 2 * kMargin + kStep * n1;
  const std::int64_t h = 2 * kMargin + kStep * n2;
  auto cx = [&](std::int64_t a) { return kMargin + kStep * a + kStep / 2; };
  auto cy = [&](std::int64_t b) { return h - kMargin - kStep * b - kStep / 2; };
  double peak = 0.0;
  for (const Cell& c : cells) peak = std::max(peak, c.magnitude);

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  out << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << w / 2 << "\" y=\"20\" text-anchor=\"middle\" "
      << "font-family=\"monospace\" font-size=\"12\">" << title << "</text>\n";
  out << "<g stroke=\"#999\" stroke-width=\"1\">\n";
  for (std::int64_t a = 0; a <= n1; ++a) {
    const std::int64_t x = kMargin + kStep * a;
    out << "<line x1=\"" << x << "\" y1=\"" << kMargin << "\" x2=\"" << x
        << "\" y2=\"" << h - kMargin << "\"/>\n";
  }
  for (std::int64_t b = 0; b <= n2; ++b) {
    const std::int64_t y = kMargin + kStep * b;
    out << "<line x1=\"" << kMargin << "\" y1=\"" << y << "\" x2=\"" << w - kMargin
        << "\" y2=\"" << y << "\"/>\n";
  }
  out << "</g>\n<g font-family=\"monospace\" font-size=\"10\" text-anchor=\"middle\">\n";
  for (std::int64_t a = 0; a < n1; ++a) {
    out << "<text x=\"" << cx(a) << "\" y=\"" << h - kMargin + 14 << "\">" << a
        << "</text>\n";
  }
  for (std::int64_t b = 0; b < n2; ++b) {
    out << "<text x=\"" << kMargin - 12 << "\" y=\"" << cy(b) + 4 << "\">" << b
        << "</text>\n";
  }
  out << "<text x=\"" << w / 2 << "\" y=\"" << h - 12 << "\">j1</text>\n";
  out << "<text x=\"14\" y=\"" << h / 2 << "\">j2</text>\n</g>\n";
  out << "<g fill=\"black\">\n";
  for (const Cell& c : cells) {
    if (!c.marked) continue;
    char r[16];
    std::snprintf(r, sizeof r, "%.2f", 14.0 * c.magnitude / peak);
    out << "<circle cx=\"" << cx(c.j1) << "\" cy=\"" << cy(c.j2) << "\" r=\""
        << r << "\"/>\n";
  }
  out << "</g>\n</svg>\n";
}

int cmd_phase_space(const Options& o, std::ostream& out) {
  if (o.format == "txt") throw UsageError("phase-space supports --format csv|svg");
  const auto [j1, k2] = parse_state_spec(o.state);
  const FactorizationPlan p = make_plan(o, false);
  const AZState az = make_az_state(p, j1, k2);
  const std::vector<Cell> cells = lattice_cells(p, az.ket, o.tol);
  emit(o, out, [&](std::ostream& s) {
    if (o.format == "svg") {
      write_cells_svg(s, cells, p.pair().n1(), p.pair().n2(),
                      "|v_" + std::to_string(j1) + "> (x) |u_" +
                          std::to_string(k2) + ">");
    } else {
      write_cells_csv(s, cells);
    }
  });
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_comb(const Options& o, std::ostream& out) {
  const FactorizationPlan p = make_plan(o, false);
  const CombExpansion comb = dirac_comb(p);
  const double m = 1.0 / std::sqrt(static_cast<double>(p.pair().n2()));
  const double q = 1.0 / std::sqrt(static_cast<double>(p.pair().n1()));
  double spread = 0.0;

  banner(out);
  out << "# state |v_0> (x) |u_0>\n";
  out << "expansion,index,re,im,magnitude\n";
  for (std::size_t j = 0; j < comb.momentum_coefficients.size(); ++j) {
    const Complex c = comb.momentum_coefficients[j];
    spread = std::max(spread, std::abs(std::abs(c) - m));
    out << "momentum," << j << ',' << fmt(c.real()) << ',' << fmt(c.imag()) << ','
        << fmt(std::abs(c)) << '\n';
  }
  for (std::size_t j = 0; j < comb.position_coefficients.size(); ++j) {
    const Complex c = comb.position_coefficients[j];
    spread = std::max(spread, std::abs(std::abs(c) - q));
    out << "position," << j << ',' << fmt(c.real()) << ',' << fmt(c.imag()) << ','
        << fmt(std::abs(c)) << '\n';
  }
  out << "# momentum magnitude 1/sqrt(" << p.pair().n2() << "), position magnitude 1/sqrt("
      << p.pair().n1() << "), spread " << fmt(spread) << '\n';
  return spread <= o.phase_tol() ? kExitOk : kExitFailed;
}

int cmd_kick(const Options& o, std::ostream& out) {
  std::ifstream file(o.potential);
  if (!file) throw UsageError("cannot read potential file " + o.potential);
  const KickPotential pot = read_potential(file);
  pot.validate();
  if (o.n % pot.period != 0) {
    throw PeriodMismatch("period " + std::to_string(pot.period) +
                         " does not divide N=" + std::to_string(o.n));
  }
  // The lattice period is the second factor; the cell count is the first.
  Options po = o;
  po.n2 = static_cast<std::int64_t>(pot.period);
  po.n1 = static_cast<std::int64_t>(o.n / pot.period);
  const FactorizationPlan p = make_plan(po, false);
  const ModularPair pair(p);

  const KinematicsSpace space(o.n, o.dim_cap);
  const UnitaryOperator kick = kick_operator(space, pot);
  const UnitaryOperator rebuilt =
      kick_from_fourier(space, kick_fourier_coefficients(pot));
  const StateVector kicked =
      apply(embed_operator(p, kick), p.momentum_state(0));

  const auto ni = static_cast<std::int64_t>(o.n);
  const EigenMeasurement shift = measure_eigenphase(pair.shift_mod(), kicked, ni, o.tol);
  const EigenMeasurement clock = measure_eigenphase(pair.clock_mod(), kicked, ni, o.tol);

  banner(out);
  out << "# kicked |v_0>, N=" << o.n << " = " << po.n1 << " x " << po.n2
      << ", period " << pot.period << '\n';
  out << "operator,exponent,modulus,residual,eigenstate\n";
  auto row = [&](const char* name, const EigenMeasurement& m) {
    out << name << ',';
    if (m.exponent && m.is_eigenvector(o.tol)) {
      out << m.exponent->rescaled(ni).numerator();
    } else {
      out << "na";
    }
    out << ',' << ni << ',' << fmt(m.residual) << ','
        << (m.is_eigenvector(o.tol) ? "yes" : "no") << '\n';
  };
  row("shift_mod", shift);
  row("clock_mod", clock);
  const double fourier = max_abs_diff(kick, rebuilt);
  out << "# fourier reconstruction residual " << fmt(fourier) << '\n';
  const bool ok = shift.is_eigenvector(o.tol) && shift.exponent.has_value() &&
                  fourier <= o.tol;
  return ok ? kExitOk : kExitFailed;
}

int cmd_converge(const Options& o, std::ostream& out) {
  ConvergenceMode mode = ConvergenceMode::Symmetric;
  if (o.mode == "periodic") mode = ConvergenceMode::Periodic;
  for (std::size_t n : o.n_list) {
    if (n > o.dim_cap) {
      throw DimensionCap("dimension " + std::to_string(n) + " exceeds cap " +
                         std::to_string(o.dim_cap));
    }
  }
  const ConvergenceReport report =
      mode == ConvergenceMode::Symmetric
          ? gaussian_convergence(o.n_list)
          : convergence_sweep(o.n_list, mode, o.xi);
  emit(o, out, [&](std::ostream& s) { write_convergence_csv(s, report); });

  bool ok = true;
  for (const ConvergenceRow& r : report.rows) {
    ok = ok && r.overlap_dev <= o.tol && r.gram_dev <= o.tol;
  }
  if (mode == ConvergenceMode::Symmetric) {
    ok = ok && report.gaussian_strictly_decreasing();
  }
  return ok ? kExitOk : kExitFailed;
}

}  // namespace

std::size_t dim_cap_from_env() {
  const char* raw = std::getenv("SKQ_DIM_CAP");
  if (raw == nullptr || *raw == '\0') return kDefaultDimCap;
  std::size_t v = 0;
  const std::string_view s(raw);
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || v == 0) {
    throw std::invalid_argument("SKQ_DIM_CAP must be a positive integer");
  }
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Finite quantum kinematics and modular variables", "skq"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(SKQ_VERSION));

  std::size_t cap_flag = 0;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--dim-cap", cap_flag, "Dimension cap (overrides SKQ_DIM_CAP)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tol", o.tol, "Residual tolerance")->check(CLI::NonNegativeNumber);
  };
  auto pair_opts = [&](CLI::App* sub, bool required) {
    auto* a = sub->add_option("--n1", o.n1, "First factor")->check(CLI::PositiveNumber);
    auto* b = sub->add_option("--n2", o.n2, "Second factor")->check(CLI::PositiveNumber);
    a->needs(b);
    b->needs(a);
    if (required) {
      a->required();
      b->required();
    }
    return std::pair{a, b};
  };
  auto orientation = [&](CLI::App* sub) {
    sub->add_option("--orientation", o.orientation, "paper-tables or plane-wave")
        ->check(CLI::IsMember({"paper-tables", "plane-wave"}));
  };
  auto format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "svg", "txt"}));
  };

  auto* factor = app.add_subcommand("factor", "Position/momentum index tables");
  pair_opts(factor, true);
  orientation(factor);
  format(factor);
  factor->add_option("--output", o.output, "Also write PREFIX_position.csv and PREFIX_momentum.csv");
  common(factor);

  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  auto [vn1, vn2] = pair_opts(verify, false);
  auto* vn = verify->add_option("--N", o.n, "Dimension")->check(CLI::PositiveNumber);
  vn->excludes(vn1)->excludes(vn2);
  orientation(verify);
  common(verify);

  auto* phase = app.add_subcommand("phase-space", "Mark an AZ state on the N1 x N2 lattice");
  pair_opts(phase, true);
  phase->add_option("--state", o.state, "v:<j1>,u:<k2>")->required();
  orientation(phase);
  format(phase);
  phase->add_option("--output", o.output, "Output file");
  common(phase);

  auto* comb = app.add_subcommand("comb", "Dual expansions of the finite Dirac comb");
  pair_opts(comb, true);
  common(comb);

  auto* kick = app.add_subcommand("kick", "Kick |v_0> with a periodic potential");
  kick->add_option("--N", o.n, "Dimension")->required()->check(CLI::PositiveNumber);
  kick->add_option("--potential", o.potential, "Potential file")->required();
  common(kick);

  auto* converge = app.add_subcommand("converge", "Continuum convergence sweep");
  converge->add_option("--N", o.n_list, "Comma-separated dimensions")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  converge->add_option("--mode", o.mode, "symmetric or periodic")
      ->check(CLI::IsMember({"symmetric", "periodic"}));
  converge->add_option("--xi", o.xi, "Period for the periodic scaling")
      ->check(CLI::PositiveNumber);
  converge->add_option("--output", o.output, "Output file");
  common(converge);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    o.dim_cap = cap_flag > 0 ? cap_flag : dim_cap_from_env();
    if (*factor) return cmd_factor(o, out);
    if (*verify) {
      if (o.n == 0 && o.n1 == 0) throw UsageError("verify needs --N or --n1/--n2");
      return cmd_verify(o, out);
    }
    if (*phase) return cmd_phase_space(o, out);
    if (*comb) return cmd_comb(o, out);
    if (*kick) return cmd_kick(o, out);
    if (*converge) return cmd_converge(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace skq::cli
