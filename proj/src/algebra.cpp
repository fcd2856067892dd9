#include "skq/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "skq/errors.hpp"

namespace skq {

__extension__ using wide_int = __int128;
namespace {

std::int64_t reduce(std::int64_t value, std::int64_t modulus) {
  const std::int64_t r = value % modulus;
  return r < 0 ? r + modulus : r;
}

void require_finite(std::span<const Complex> values, const char* what) {
  for (const Complex& z : values) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument(std::string(what) + ": non-finite entry");
    }
  }
}

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension " +
                            std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

PhaseExponent::PhaseExponent(std::int64_t numerator, std::int64_t modulus) {
  if (modulus <= 0) {
    throw std::invalid_argument("PhaseExponent: modulus must be positive");
  }
  modulus_ = modulus;
  numerator_ = reduce(numerator, modulus);
}

Complex PhaseExponent::to_complex() const {
  return root_of_unity(numerator_, modulus_);
}

PhaseExponent PhaseExponent::rescaled(std::int64_t modulus) const {
  const wide_int scaled = static_cast<wide_int>(numerator_) * modulus;
  if (scaled % modulus_ != 0) {
    throw std::domain_error("PhaseExponent: phase is not a " +
                            std::to_string(modulus) + "-th root of unity");
  }
  return {static_cast<std::int64_t>(scaled / modulus_), modulus};
}

PhaseExponent PhaseExponent::operator+(const PhaseExponent& other) const {
  const std::int64_t m = std::lcm(modulus_, other.modulus_);
  return {numerator_ * (m / modulus_) + other.numerator_ * (m / other.modulus_),
          m};
}

PhaseExponent PhaseExponent::operator-() const {
  return {-numerator_, modulus_};
}

PhaseExponent PhaseExponent::operator*(std::int64_t k) const {
  const wide_int n = static_cast<wide_int>(numerator_) * reduce(k, modulus_);
  return {static_cast<std::int64_t>(n % modulus_), modulus_};
}

bool PhaseExponent::operator==(const PhaseExponent& other) const {
  return static_cast<wide_int>(numerator_) * other.modulus_ ==
         static_cast<wide_int>(other.numerator_) * modulus_;
}

Complex root_of_unity(std::int64_t numerator, std::int64_t modulus) {
  const std::int64_t n = reduce(numerator, modulus);
  // Quarter turns are exact.
  if ((4 * n) % modulus == 0) {
    switch ((4 * n) / modulus) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(n) /
                       static_cast<double>(modulus);
  return {std::cos(angle), std::sin(angle)};
}

// ---------------------------------------------------------------------------

StateVector::StateVector(std::size_t dim) : amps_(dim) {}

StateVector::StateVector(std::vector<Complex> amps) : amps_(std::move(amps)) {
  require_finite(amps_, "StateVector");
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) {
    throw IndexOutOfRange("basis index " + std::to_string(index) +
                          " outside dimension " + std::to_string(dim));
  }
  StateVector e(dim);
  e.amps_[index] = 1.0;
  return e;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const Complex& z : amps_) s += std::norm(z);
  return std::sqrt(s);
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
  return scaled(1.0 / n);
}

StateVector StateVector::scaled(Complex factor) const {
  std::vector<Complex> out(amps_);
  for (Complex& z : out) z *= factor;
  return StateVector(std::move(out));
}

// ---------------------------------------------------------------------------

UnitaryOperator::UnitaryOperator(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != dim_ * dim_) {
    throw DimensionMismatch("UnitaryOperator: expected " +
                            std::to_string(dim_ * dim_) + " entries, got " +
                            std::to_string(entries_.size()));
  }
  require_finite(entries_, "UnitaryOperator");
}

UnitaryOperator UnitaryOperator::identity(std::size_t dim) {
  std::vector<Complex> e(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0;
  return {dim, std::move(e)};
}

UnitaryOperator UnitaryOperator::diagonal(std::span<const Complex> diag) {
  const std::size_t n = diag.size();
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = diag[i];
  return {n, std::move(e)};
}

UnitaryOperator UnitaryOperator::permutation(
    std::span<const std::size_t> target) {
  const std::size_t n = target.size();
  std::vector<Complex> e(n * n);
  std::vector<bool> hit(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    if (target[j] >= n || hit[target[j]]) {
      throw std::invalid_argument("permutation: target is not a bijection");
    }
    hit[target[j]] = true;
    e[target[j] * n + j] = 1.0;
  }
  return {n, std::move(e)};
}

UnitaryOperator UnitaryOperator::from_columns(
    std::span<const StateVector> columns) {
  const std::size_t n = columns.size();
  std::vector<Complex> e(n * n);
  for (std::size_t c = 0; c < n; ++c) {
    require_same_dim(columns[c].dim(), n, "from_columns");
    for (std::size_t r = 0; r < n; ++r) e[r * n + c] = columns[c][r];
  }
  return {n, std::move(e)};
}

StateVector UnitaryOperator::column(std::size_t col) const {
  if (col >= dim_) {
    throw IndexOutOfRange("column " + std::to_string(col) +
                          " outside dimension " + std::to_string(dim_));
  }
  std::vector<Complex> out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) out[r] = entries_[r * dim_ + col];
  return StateVector(std::move(out));
}

// ---------------------------------------------------------------------------

StateVector tensor_state(const StateVector& a, const StateVector& b) {
  std::vector<Complex> out(a.dim() * b.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) {
    for (std::size_t s = 0; s < b.dim(); ++s) {
      out[j * b.dim() + s] = a[j] * b[s];
    }
  }
  return StateVector(std::move(out));
}

UnitaryOperator tensor_op(const UnitaryOperator& a, const UnitaryOperator& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  const std::size_t n = na * nb;
  std::vector<Complex> e(n * n);
  for (std::size_t i1 = 0; i1 < na; ++i1) {
    for (std::size_t j1 = 0; j1 < na; ++j1) {
      const Complex x = a(i1, j1);
      if (x == Complex{}) continue;
      for (std::size_t i2 = 0; i2 < nb; ++i2) {
        Complex* row = &e[(i1 * nb + i2) * n + j1 * nb];
        for (std::size_t j2 = 0; j2 < nb; ++j2) row[j2] = x * b(i2, j2);
      }
    }
  }
  return {n, std::move(e)};
}

Complex inner(const StateVector& a, const StateVector& b) {
  require_same_dim(a.dim(), b.dim(), "inner");
  Complex s{};
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

StateVector apply(const UnitaryOperator& op, const StateVector& x) {
  require_same_dim(op.dim(), x.dim(), "apply");
  const std::size_t n = op.dim();
  std::vector<Complex> out(n);
  for (std::size_t r = 0; r < n; ++r) {
    Complex s{};
    const Complex* row = &op.entries()[r * n];
    for (std::size_t c = 0; c < n; ++c) s += row[c] * x[c];
    out[r] = s;
  }
  return StateVector(std::move(out));
}

UnitaryOperator compose(const UnitaryOperator& a, const UnitaryOperator& b) {
  require_same_dim(a.dim(), b.dim(), "compose");
  const std::size_t n = a.dim();
  std::vector<Complex> out(n * n);
  const auto be = b.entries();
  // i-k-j order; zero entries of `a` contribute nothing and are skipped.
  for (std::size_t i = 0; i < n; ++i) {
    Complex* row = &out[i * n];
    for (std::size_t k = 0; k < n; ++k) {
      const Complex x = a(i, k);
      if (x == Complex{}) continue;
      const Complex* brow = &be[k * n];
      for (std::size_t j = 0; j < n; ++j) row[j] += x * brow[j];
    }
  }
  return {n, std::move(out)};
}

UnitaryOperator adjoint(const UnitaryOperator& a) {
  const std::size_t n = a.dim();
  std::vector<Complex> out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[j * n + i] = std::conj(a(i, j));
  }
  return {n, std::move(out)};
}

UnitaryOperator mat_power(const UnitaryOperator& a, std::int64_t k) {
  if (k < 0) return mat_power(adjoint(a), -k);
  UnitaryOperator result = UnitaryOperator::identity(a.dim());
  UnitaryOperator base = a;
  while (k > 0) {
    if (k & 1) result = compose(result, base);
    k >>= 1;
    if (k > 0) base = compose(base, base);
  }
  return result;
}

UnitaryOperator scaled(const UnitaryOperator& a, Complex factor) {
  std::vector<Complex> out(a.entries().begin(), a.entries().end());
  for (Complex& z : out) z *= factor;
  return {a.dim(), std::move(out)};
}

double max_abs_diff(const UnitaryOperator& a, const UnitaryOperator& b) {
  require_same_dim(a.dim(), b.dim(), "max_abs_diff");
  double m = 0.0;
  const auto ae = a.entries();
  const auto be = b.entries();
  for (std::size_t i = 0; i < ae.size(); ++i) {
    m = std::max(m, std::abs(ae[i] - be[i]));
  }
  return m;
}

double max_abs_diff(const StateVector& a, const StateVector& b) {
  require_same_dim(a.dim(), b.dim(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

double unitarity_residual(const UnitaryOperator& a) {
  return max_abs_diff(compose(a, adjoint(a)),
                      UnitaryOperator::identity(a.dim()));
}

double commutator_norm(const UnitaryOperator& a, const UnitaryOperator& b) {
  return max_abs_diff(compose(a, b), compose(b, a));
}

// ---------------------------------------------------------------------------

MonomialOperator MonomialOperator::identity(std::size_t dim) {
  MonomialOperator m;
  m.rows_.resize(dim);
  std::iota(m.rows_.begin(), m.rows_.end(), std::size_t{0});
  m.values_.assign(dim, Complex{1.0, 0.0});
  return m;
}

std::optional<MonomialOperator> MonomialOperator::from_dense(
    const UnitaryOperator& a) {
  const std::size_t n = a.dim();
  MonomialOperator m;
  m.rows_.assign(n, n);
  m.values_.assign(n, Complex{});
  std::vector<bool> hit(n, false);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const Complex x = a(r, c);
      if (x == Complex{}) continue;
      if (m.rows_[c] != n || hit[r]) return std::nullopt;
      m.rows_[c] = r;
      m.values_[c] = x;
      hit[r] = true;
    }
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (m.rows_[c] == n) return std::nullopt;
  }
  return m;
}

UnitaryOperator MonomialOperator::to_dense() const {
  const std::size_t n = dim();
  std::vector<Complex> out(n * n);
  for (std::size_t c = 0; c < n; ++c) out[rows_[c] * n + c] = values_[c];
  return {n, std::move(out)};
}

MonomialOperator compose(const MonomialOperator& a, const MonomialOperator& b) {
  require_same_dim(a.dim(), b.dim(), "compose");
  MonomialOperator out;
  out.rows_.resize(b.dim());
  out.values_.resize(b.dim());
  for (std::size_t c = 0; c < b.dim(); ++c) {
    const std::size_t mid = b.rows_[c];
    out.rows_[c] = a.rows_[mid];
    out.values_[c] = a.values_[mid] * b.values_[c];
  }
  return out;
}

MonomialOperator scaled(const MonomialOperator& a, Complex factor) {
  MonomialOperator out = a;
  for (Complex& v : out.values_) v *= factor;
  return out;
}

double max_abs_diff(const MonomialOperator& a, const MonomialOperator& b) {
  require_same_dim(a.dim(), b.dim(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t c = 0; c < a.dim(); ++c) {
    if (a.row(c) == b.row(c)) {
      m = std::max(m, std::abs(a.value(c) - b.value(c)));
    } else {
      m = std::max({m, std::abs(a.value(c)), std::abs(b.value(c))});
    }
  }
  return m;
}

}  // namespace skq
