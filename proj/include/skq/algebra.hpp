#pragma once

// Dense complex linear algebra for finite-dimensional state spaces.
//
// Composite index convention: for a ⊗ b the first factor is the slow index,
// J = j * b.dim() + s.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace skq {

using Complex = std::complex<double>;

inline constexpr std::size_t kDefaultDimCap = 4096;
inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr double kPhaseTolerance = 1e-12;

/// Exact root-of-unity phase e^{2πi·numerator/modulus}, stored with
/// 0 <= numerator < modulus.
class PhaseExponent {
 public:
  PhaseExponent() = default;
  PhaseExponent(std::int64_t numerator, std::int64_t modulus);

  std::int64_t numerator() const noexcept { return numerator_; }
  std::int64_t modulus() const noexcept { return modulus_; }

  Complex to_complex() const;

  /// Same phase expressed over `modulus`; requires the phase to be a
  /// `modulus`-th root of unity.
  PhaseExponent rescaled(std::int64_t modulus) const;

  PhaseExponent operator+(const PhaseExponent& other) const;
  PhaseExponent operator-() const;
  PhaseExponent operator*(std::int64_t k) const;

  /// Equality of the phases, not of the representations: 2/6 == 1/3.
  bool operator==(const PhaseExponent& other) const;

 private:
  std::int64_t numerator_ = 0;
  std::int64_t modulus_ = 1;
};

/// e^{2πi·numerator/modulus} with the exponent reduced before evaluation.
Complex root_of_unity(std::int64_t numerator, std::int64_t modulus);

class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t dim);
  explicit StateVector(std::vector<Complex> amps);

  /// Unit vector e_index.
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Complex> amps() const noexcept { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;
  StateVector normalized() const;
  StateVector scaled(Complex factor) const;

 private:
  std::vector<Complex> amps_;
};

/// Dense N×N complex matrix, row-major. Every factory in this library
/// returns a unitary operator (‖MM† − I‖_max <= 1e-10); the class itself
/// does not re-check that on construction.
class UnitaryOperator {
 public:
  UnitaryOperator() = default;
  UnitaryOperator(std::size_t dim, std::vector<Complex> entries);

  static UnitaryOperator identity(std::size_t dim);
  static UnitaryOperator diagonal(std::span<const Complex> diag);
  /// Permutation matrix sending e_j to e_{target[j]}.
  static UnitaryOperator permutation(std::span<const std::size_t> target);
  /// Matrix whose columns are the given states.
  static UnitaryOperator from_columns(std::span<const StateVector> columns);

  std::size_t dim() const noexcept { return dim_; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }
  std::span<const Complex> entries() const noexcept { return entries_; }

  StateVector column(std::size_t col) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> entries_;
};

StateVector tensor_state(const StateVector& a, const StateVector& b);
UnitaryOperator tensor_op(const UnitaryOperator& a, const UnitaryOperator& b);

/// ⟨a|b⟩, conjugate-linear in a.
Complex inner(const StateVector& a, const StateVector& b);

StateVector apply(const UnitaryOperator& op, const StateVector& x);
UnitaryOperator compose(const UnitaryOperator& a, const UnitaryOperator& b);
UnitaryOperator adjoint(const UnitaryOperator& a);
UnitaryOperator mat_power(const UnitaryOperator& a, std::int64_t k);
UnitaryOperator scaled(const UnitaryOperator& a, Complex factor);

double max_abs_diff(const UnitaryOperator& a, const UnitaryOperator& b);
double max_abs_diff(const StateVector& a, const StateVector& b);

/// Generalized permutation matrix: column c holds its only nonzero entry,
/// value(c), in row row(c). Products cost O(N) instead of O(N²).
class MonomialOperator {
 public:
  static MonomialOperator identity(std::size_t dim);
  /// Empty unless every column of `a` has exactly one nonzero entry and
  /// every row is hit once.
  static std::optional<MonomialOperator> from_dense(const UnitaryOperator& a);

  std::size_t dim() const noexcept { return rows_.size(); }
  std::size_t row(std::size_t col) const { return rows_[col]; }
  Complex value(std::size_t col) const { return values_[col]; }

  UnitaryOperator to_dense() const;

 private:
  friend MonomialOperator compose(const MonomialOperator& a,
                                  const MonomialOperator& b);
  friend MonomialOperator scaled(const MonomialOperator& a, Complex factor);
  std::vector<std::size_t> rows_;
  std::vector<Complex> values_;
};

MonomialOperator compose(const MonomialOperator& a, const MonomialOperator& b);
MonomialOperator scaled(const MonomialOperator& a, Complex factor);
/// Same value as max_abs_diff on the dense forms.
double max_abs_diff(const MonomialOperator& a, const MonomialOperator& b);

/// ‖a·a† − I‖_max.
double unitarity_residual(const UnitaryOperator& a);
/// ‖ab − ba‖_max.
double commutator_norm(const UnitaryOperator& a, const UnitaryOperator& b);

}  // namespace skq
