#include "skq/continuum.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "skq/errors.hpp"
#include "skq/kinematics.hpp"

namespace skq {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t reduce(std::int64_t value, std::int64_t m) {
  const std::int64_t r = value % m;
  return r < 0 ? r + m : r;
}

void require_normalized(const StateVector& psi) {
  if (std::abs(psi.norm() - 1.0) > kDefaultTolerance) {
    throw std::invalid_argument("completeness_check: state is not normalized");
  }
}

// Owning mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t precision) {
    mpfr_init2(value_, precision);
    mpfr_set_zero(value_, 1);
  }
  ~BigFloat() { mpfr_clear(value_); }
  BigFloat(const BigFloat&) = delete;
  BigFloat& operator=(const BigFloat&) = delete;
  BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_swap(value_, other.value_);
  }

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }

 private:
  mpfr_t value_;
};

NormCheck gram_check(const UnitaryOperator& dft, double scale_squared) {
  const UnitaryOperator gram = compose(adjoint(dft), dft);
  NormCheck out;
  for (std::size_t j = 0; j < gram.dim(); ++j) {
    for (std::size_t k = 0; k < gram.dim(); ++k) {
      const Complex g = scale_squared * gram(j, k);
      if (j == k) {
        out.diag_deviation = std::max(out.diag_deviation, std::abs(g - scale_squared));
      } else {
        out.max_offdiag = std::max(out.max_offdiag, std::abs(g));
      }
    }
  }
  return out;
}

}  // namespace

SymmetricScaling::SymmetricScaling(std::size_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("SymmetricScaling: N must be >= 1");
  if (n % 2 == 0) {
    throw EvenN("symmetric scaling needs odd N, got " + std::to_string(n));
  }
  spacing_ = std::sqrt(kTwoPi / static_cast<double>(n));
  ket_scale_ = std::pow(static_cast<double>(n) / kTwoPi, 0.25);
}

std::size_t SymmetricScaling::index(std::int64_t label) const {
  if (label < -half() || label > half()) {
    throw IndexOutOfRange("label " + std::to_string(label) + " outside [-" +
                          std::to_string(half()) + ", " +
                          std::to_string(half()) + "]");
  }
  return static_cast<std::size_t>(reduce(label, static_cast<std::int64_t>(n_)));
}

StateVector SymmetricScaling::position_ket(std::int64_t j) const {
  return StateVector::basis(n_, index(j)).scaled(ket_scale_);
}

StateVector SymmetricScaling::momentum_ket(std::int64_t k) const {
  std::vector<Complex> amps(n_);
  const auto n = static_cast<std::int64_t>(n_);
  const auto kk = static_cast<std::int64_t>(index(k));
  const double amp = ket_scale_ / std::sqrt(static_cast<double>(n_));
  for (std::int64_t j = 0; j < n; ++j) {
    amps[static_cast<std::size_t>(j)] = amp * root_of_unity(j * kk, n);
  }
  return StateVector(std::move(amps));
}

PeriodicScaling::PeriodicScaling(std::size_t n, double xi) : n_(n), xi_(xi) {
  if (n == 0) throw std::invalid_argument("PeriodicScaling: N must be >= 1");
  if (!(xi > 0.0) || !std::isfinite(xi)) {
    throw std::invalid_argument("PeriodicScaling: period must be positive");
  }
}

double PeriodicScaling::position_spacing() const noexcept {
  return xi_ / static_cast<double>(n_);
}
double PeriodicScaling::momentum_spacing() const noexcept { return kTwoPi / xi_; }
double PeriodicScaling::position_scale() const noexcept {
  return std::sqrt(static_cast<double>(n_) / xi_);
}
double PeriodicScaling::momentum_scale() const noexcept {
  return std::sqrt(xi_ / kTwoPi);
}

StateVector PeriodicScaling::position_ket(std::size_t j) const {
  return StateVector::basis(n_, j).scaled(position_scale());
}

StateVector PeriodicScaling::momentum_ket(std::size_t k) const {
  if (k >= n_) throw IndexOutOfRange("momentum label outside Z_N");
  const auto n = static_cast<std::int64_t>(n_);
  const double amp = momentum_scale() / std::sqrt(static_cast<double>(n_));
  std::vector<Complex> amps(n_);
  for (std::int64_t j = 0; j < n; ++j) {
    amps[static_cast<std::size_t>(j)] =
        amp * root_of_unity(j * static_cast<std::int64_t>(k), n);
  }
  return StateVector(std::move(amps));
}

// ---------------------------------------------------------------------------

double overlap_check_symmetric(std::size_t n) {
  const SymmetricScaling s(n);
  const UnitaryOperator f = dft_matrix(n);
  const double ket_norm = s.ket_scale() * s.ket_scale();
  const double plane = 1.0 / std::sqrt(kTwoPi);
  double worst = 0.0;
  for (std::int64_t j = -s.half(); j <= s.half(); ++j) {
    for (std::int64_t k = -s.half(); k <= s.half(); ++k) {
      const Complex lhs = ket_norm * f(s.index(j), s.index(k));
      const Complex rhs = std::polar(plane, s.position(j) * s.momentum(k));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

double overlap_check_periodic(std::size_t n, double xi) {
  const PeriodicScaling s(n, xi);
  const UnitaryOperator f = dft_matrix(n);
  const double ket_norm = s.position_scale() * s.momentum_scale();
  const double plane = 1.0 / std::sqrt(kTwoPi);
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex lhs = ket_norm * f(j, k);
      const Complex rhs = std::polar(
          plane, s.position(static_cast<std::int64_t>(j)) *
                     s.momentum(static_cast<std::int64_t>(k)));
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

double completeness_check(const SymmetricScaling& scaling,
                          const StateVector& psi) {
  require_normalized(psi);
  if (psi.dim() != scaling.dim()) {
    throw DimensionMismatch("completeness_check: dimension mismatch");
  }
  double pos = 0.0;
  double mom = 0.0;
  for (std::int64_t j = -scaling.half(); j <= scaling.half(); ++j) {
    pos += std::norm(inner(scaling.position_ket(j), psi)) * scaling.spacing();
    mom += std::norm(inner(scaling.momentum_ket(j), psi)) * scaling.spacing();
  }
  return std::max(std::abs(pos - 1.0), std::abs(mom - 1.0));
}

double completeness_check(const PeriodicScaling& scaling,
                          const StateVector& psi) {
  require_normalized(psi);
  if (psi.dim() != scaling.dim()) {
    throw DimensionMismatch("completeness_check: dimension mismatch");
  }
  // The momentum sum carries Δy/(ξ/2π)·... = 2π/ξ against the (ξ/2π) norm.
  double pos = 0.0;
  double mom = 0.0;
  for (std::size_t j = 0; j < scaling.dim(); ++j) {
    pos += std::norm(inner(scaling.position_ket(j), psi)) *
           scaling.position_spacing();
    mom += std::norm(inner(scaling.momentum_ket(j), psi)) *
           scaling.momentum_spacing();
  }
  return std::max(std::abs(pos - 1.0), std::abs(mom - 1.0));
}

StateVector discrete_gaussian(const SymmetricScaling& scaling) {
  std::vector<Complex> amps(scaling.dim());
  for (std::int64_t j = -scaling.half(); j <= scaling.half(); ++j) {
    const double x = scaling.position(j);
    amps[scaling.index(j)] = std::exp(-0.5 * x * x);
  }
  return StateVector(std::move(amps)).normalized();
}

GaussianDeviation gaussian_deviation(std::size_t n) {
  const SymmetricScaling scaling(n);
  const auto prec = static_cast<mpfr_prec_t>(64 + 2 * n);
  const auto ni = static_cast<long>(n);
  const std::int64_t h = scaling.half();
  const std::size_t count = n;

  BigFloat pi(prec), t(prec), u(prec);
  mpfr_const_pi(pi.get(), MPFR_RNDN);

  // dx² = 2π/N
  BigFloat dx2(prec);
  mpfr_mul_ui(dx2.get(), pi.get(), 2, MPFR_RNDN);
  mpfr_div_si(dx2.get(), dx2.get(), ni, MPFR_RNDN);

  // c_j = e^{−j²·dx²/2}, normalized; stored at offset j + h.
  std::vector<BigFloat> c;
  c.reserve(count);
  BigFloat norm2(prec);
  for (std::int64_t j = -h; j <= h; ++j) {
    c.emplace_back(prec);
    mpfr_mul_si(t.get(), dx2.get(), static_cast<long>(j * j), MPFR_RNDN);
    mpfr_div_si(t.get(), t.get(), -2, MPFR_RNDN);
    mpfr_exp(c.back().get(), t.get(), MPFR_RNDN);
    mpfr_sqr(t.get(), c.back().get(), MPFR_RNDN);
    mpfr_add(norm2.get(), norm2.get(), t.get(), MPFR_RNDN);
  }
  mpfr_sqrt(norm2.get(), norm2.get(), MPFR_RNDN);
  for (BigFloat& v : c) mpfr_div(v.get(), v.get(), norm2.get(), MPFR_RNDN);

  // e^{−2πi·m/N} for m in Z_N.
  std::vector<BigFloat> cosines;
  std::vector<BigFloat> sines;
  cosines.reserve(count);
  sines.reserve(count);
  for (std::size_t m = 0; m < count; ++m) {
    cosines.emplace_back(prec);
    sines.emplace_back(prec);
    mpfr_mul_ui(t.get(), pi.get(), 2 * m, MPFR_RNDN);
    mpfr_div_si(t.get(), t.get(), ni, MPFR_RNDN);
    mpfr_sin_cos(sines.back().get(), cosines.back().get(), t.get(), MPFR_RNDN);
    mpfr_neg(sines.back().get(), sines.back().get(), MPFR_RNDN);
  }

  BigFloat inv_sqrt_n(prec), re(prec), im(prec), worst(prec);
  mpfr_set_si(inv_sqrt_n.get(), ni, MPFR_RNDN);
  mpfr_rec_sqrt(inv_sqrt_n.get(), inv_sqrt_n.get(), MPFR_RNDN);
  for (std::int64_t k = -h; k <= h; ++k) {
    mpfr_set_zero(re.get(), 1);
    mpfr_set_zero(im.get(), 1);
    for (std::int64_t j = -h; j <= h; ++j) {
      const auto m = static_cast<std::size_t>(reduce(j * k, ni));
      const BigFloat& cj = c[static_cast<std::size_t>(j + h)];
      mpfr_fma(re.get(), cosines[m].get(), cj.get(), re.get(), MPFR_RNDN);
      mpfr_fma(im.get(), sines[m].get(), cj.get(), im.get(), MPFR_RNDN);
    }
    mpfr_mul(re.get(), re.get(), inv_sqrt_n.get(), MPFR_RNDN);
    mpfr_mul(im.get(), im.get(), inv_sqrt_n.get(), MPFR_RNDN);
    mpfr_sub(re.get(), re.get(), c[static_cast<std::size_t>(k + h)].get(), MPFR_RNDN);
    mpfr_hypot(t.get(), re.get(), im.get(), MPFR_RNDN);
    mpfr_max(worst.get(), worst.get(), t.get(), MPFR_RNDN);
  }

  // Scale by (N/2π)^{1/4}.
  mpfr_ui_div(u.get(), 1, dx2.get(), MPFR_RNDN);
  mpfr_sqrt(u.get(), u.get(), MPFR_RNDN);
  mpfr_sqrt(u.get(), u.get(), MPFR_RNDN);
  mpfr_mul(worst.get(), worst.get(), u.get(), MPFR_RNDN);

  GaussianDeviation out;
  out.n = n;
  if (mpfr_zero_p(worst.get())) {
    out.log10_value = -std::numeric_limits<double>::infinity();
    out.text = "0";
    return out;
  }
  mpfr_log10(t.get(), worst.get(), MPFR_RNDN);
  out.log10_value = mpfr_get_d(t.get(), MPFR_RNDN);
  char* buffer = nullptr;
  if (mpfr_asprintf(&buffer, "%.12Re", worst.get()) < 0) {
    throw std::runtime_error("gaussian_deviation: formatting failed");
  }
  out.text = buffer;
  mpfr_free_str(buffer);
  return out;
}

NormCheck periodic_norm_check(std::size_t n, double xi) {
  const PeriodicScaling s(n, xi);
  return gram_check(dft_matrix(n), s.momentum_scale() * s.momentum_scale());
}

NormCheck symmetric_norm_check(std::size_t n) {
  const SymmetricScaling s(n);
  return gram_check(dft_matrix(n), s.ket_scale() * s.ket_scale());
}

bool ConvergenceReport::gaussian_strictly_decreasing() const {
  std::optional<double> previous;
  for (const ConvergenceRow& row : rows) {
    if (!row.gaussian) continue;
    if (previous && !(row.gaussian->log10_value < *previous)) return false;
    previous = row.gaussian->log10_value;
  }
  return previous.has_value();
}

ConvergenceReport gaussian_convergence(std::span<const std::size_t> ns) {
  for (std::size_t i = 1; i < ns.size(); ++i) {
    if (ns[i] <= ns[i - 1]) {
      throw std::invalid_argument("gaussian_convergence: N must increase");
    }
  }
  for (std::size_t n : ns) {
    if (n % 2 == 0) throw EvenN("gaussian_convergence: N must be odd");
  }
  return convergence_sweep(ns, ConvergenceMode::Symmetric);
}

ConvergenceReport convergence_sweep(std::span<const std::size_t> ns,
                                    ConvergenceMode mode, double xi) {
  ConvergenceReport report;
  report.mode = mode;
  report.xi = xi;
  for (std::size_t n : ns) {
    ConvergenceRow row;
    row.n = n;
    if (mode == ConvergenceMode::Symmetric) {
      row.overlap_dev = overlap_check_symmetric(n);
      const NormCheck g = symmetric_norm_check(n);
      row.gram_dev = std::max(g.max_offdiag, g.diag_deviation);
    } else {
      row.overlap_dev = overlap_check_periodic(n, xi);
      const NormCheck g = periodic_norm_check(n, xi);
      row.gram_dev = std::max(g.max_offdiag, g.diag_deviation);
    }
    if (n % 2 == 1) row.gaussian = gaussian_deviation(n);
    report.rows.push_back(std::move(row));
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

ScaledGrid make_grid(std::int64_t numerator, std::int64_t denominator,
                     bool two_pi, int length_power, double L,
                     std::size_t count, double ket_scale) {
  ScaledGrid g;
  g.spacing.numerator = numerator;
  g.spacing.denominator = denominator;
  g.spacing.two_pi = two_pi;
  g.spacing.length_power = length_power;
  g.spacing.value = static_cast<double>(numerator) /
                    static_cast<double>(denominator) * (two_pi ? kTwoPi : 1.0) *
                    std::pow(L, length_power);
  g.points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    g.points.push_back(g.spacing.value * static_cast<double>(i));
  }
  g.ket_scale = ket_scale;
  return g;
}

double grid_overlap_deviation(const ScaledGrid& x, const ScaledGrid& y) {
  const std::size_t n = x.points.size();
  const UnitaryOperator f = dft_matrix(n);
  const double plane = 1.0 / std::sqrt(kTwoPi);
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex lhs = x.ket_scale * y.ket_scale * f(j, k);
      const Complex rhs = std::polar(plane, x.points[j] * y.points[k]);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

}  // namespace

AZSubsystemGrids az_subsystem_scaling(const FactorizationPlan& plan, double L) {
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw std::invalid_argument("az_subsystem_scaling: L must be positive");
  }
  const std::int64_t na = plan.pair().n1();
  const std::int64_t nb = plan.pair().n2();
  const auto ca = static_cast<std::size_t>(na);
  const auto cb = static_cast<std::size_t>(nb);
  const double dna = static_cast<double>(na);
  const double dnb = static_cast<double>(nb);
  AZSubsystemGrids g;
  g.position_a = make_grid(1, 1, false, 1, L, ca, std::sqrt(1.0 / L));
  g.momentum_a = make_grid(1, na, true, -1, L, ca, std::sqrt(dna * L / kTwoPi));
  g.position_b = make_grid(1, nb, false, 1, L, cb, std::sqrt(dnb / L));
  g.momentum_b = make_grid(1, 1, true, -1, L, cb, std::sqrt(L / kTwoPi));
  return g;
}

double az_subsystem_overlap_deviation(const FactorizationPlan& plan, double L) {
  const AZSubsystemGrids g = az_subsystem_scaling(plan, L);
  return std::max(grid_overlap_deviation(g.position_a, g.momentum_a),
                  grid_overlap_deviation(g.position_b, g.momentum_b));
}

}  // namespace skq
