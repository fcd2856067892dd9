#pragma once

// Finite-N realizations of the two continuum scalings.
//
// Symmetric (N odd, labels j = −(N−1)/2 … (N−1)/2):
//   x_j = (2π/N)^{1/2} j,  y_k = (2π/N)^{1/2} k,
//   |q(x_j)⟩ = (N/2π)^{1/4}|u_j⟩,  |p(y_k)⟩ = (N/2π)^{1/4}|v_k⟩,
//   ⟨q(x_j)|p(y_k)⟩ = (2π)^{-1/2} e^{i x_j y_k}  exactly.
//
// Periodic (period ξ):
//   x_j = (ξ/N) j,  y_k = (2π/ξ) k,
//   |q(x_j)⟩ = (N/ξ)^{1/2}|u_j⟩,  |p(y_k)⟩ = (ξ/2π)^{1/2}|v_k⟩,
//   ⟨p(y_j)|p(y_k)⟩ = (ξ/2π) δ_jk.
//
// ℏ = 1 throughout.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skq/algebra.hpp"
#include "skq/factorization.hpp"

namespace skq {

class SymmetricScaling {
 public:
  /// Throws EvenN for even n, std::invalid_argument for n == 0.
  explicit SymmetricScaling(std::size_t n);

  std::size_t dim() const noexcept { return n_; }
  std::int64_t half() const noexcept { return static_cast<std::int64_t>(n_ - 1) / 2; }
  double spacing() const noexcept { return spacing_; }
  double ket_scale() const noexcept { return ket_scale_; }
  double position(std::int64_t j) const noexcept { return spacing_ * static_cast<double>(j); }
  double momentum(std::int64_t k) const noexcept { return spacing_ * static_cast<double>(k); }

  /// Basis index of the symmetric label j, i.e. j mod N.
  std::size_t index(std::int64_t label) const;
  StateVector position_ket(std::int64_t j) const;
  StateVector momentum_ket(std::int64_t k) const;

 private:
  std::size_t n_;
  double spacing_;
  double ket_scale_;
};

class PeriodicScaling {
 public:
  /// Throws std::invalid_argument unless n >= 1 and xi > 0.
  PeriodicScaling(std::size_t n, double xi);

  std::size_t dim() const noexcept { return n_; }
  double period() const noexcept { return xi_; }
  double position_spacing() const noexcept;
  double momentum_spacing() const noexcept;
  double position_scale() const noexcept;
  double momentum_scale() const noexcept;
  double position(std::int64_t j) const noexcept { return position_spacing() * static_cast<double>(j); }
  double momentum(std::int64_t k) const noexcept { return momentum_spacing() * static_cast<double>(k); }

  StateVector position_ket(std::size_t j) const;
  StateVector momentum_ket(std::size_t k) const;

 private:
  std::size_t n_;
  double xi_;
};

/// max_{j,k} |⟨q(x_j)|p(y_k)⟩ − (2π)^{-1/2} e^{i x_j y_k}|. Throws EvenN.
double overlap_check_symmetric(std::size_t n);
/// Same identity under the periodic scaling.
double overlap_check_periodic(std::size_t n, double xi);

/// Largest of |Σ_j |⟨q(x_j)|ψ⟩|² Δx − 1| and |Σ_k |⟨p(y_k)|ψ⟩|² Δy − 1|.
/// ψ must be normalized (std::invalid_argument otherwise).
double completeness_check(const SymmetricScaling& scaling,
                          const StateVector& psi);
double completeness_check(const PeriodicScaling& scaling,
                          const StateVector& psi);

/// The normalized discrete Gaussian ψ_j ∝ e^{−x_j²/2} on the symmetric grid.
StateVector discrete_gaussian(const SymmetricScaling& scaling);

/// (N/2π)^{1/4} max_k |⟨v_k|ψ⟩ − ⟨u_k|ψ⟩| for the discrete Gaussian: the
/// distance between its scaled momentum and position wavefunctions, which
/// coincide for the continuum Gaussian. The value falls like e^{−πN/4} and
/// leaves double range near N ≈ 950, so it is evaluated in MPFR with
/// 64 + 2N bits and reported as log10 plus a decimal string.
struct GaussianDeviation {
  std::size_t n = 0;
  double log10_value = 0.0;
  std::string text;
};

GaussianDeviation gaussian_deviation(std::size_t n);

struct NormCheck {
  double max_offdiag = 0.0;
  double diag_deviation = 0.0;
};

/// Gram matrix of the periodic momentum kets against (ξ/2π)·I.
NormCheck periodic_norm_check(std::size_t n, double xi);
/// Gram matrix of the symmetric momentum kets against (N/2π)^{1/2}·I.
NormCheck symmetric_norm_check(std::size_t n);

enum class ConvergenceMode { Symmetric, Periodic };

struct ConvergenceRow {
  std::size_t n = 0;
  double overlap_dev = 0.0;
  /// Only for odd N.
  std::optional<GaussianDeviation> gaussian;
  double gram_dev = 0.0;
};

struct ConvergenceReport {
  ConvergenceMode mode = ConvergenceMode::Symmetric;
  double xi = 1.0;
  std::vector<ConvergenceRow> rows;

  bool gaussian_strictly_decreasing() const;
};

/// Symmetric-mode report; N values must be odd and strictly increasing.
ConvergenceReport gaussian_convergence(std::span<const std::size_t> ns);
/// Either mode; in periodic mode even N is allowed and has no Gaussian entry.
ConvergenceReport convergence_sweep(std::span<const std::size_t> ns,
                                    ConvergenceMode mode, double xi = 1.0);

// ---------------------------------------------------------------------------

/// A spacing of the form (numerator/denominator) · (2π)^{two_pi} · L^{length_power}.
struct ScaledSpacing {
  std::int64_t numerator = 1;
  std::int64_t denominator = 1;
  bool two_pi = false;
  int length_power = 0;
  double value = 0.0;
};

struct ScaledGrid {
  ScaledSpacing spacing;
  std::vector<double> points;
  double ket_scale = 0.0;
};

/// Non-symmetric scaling of the AZ subsystems with cell length L:
///   first factor (a):  x_j = L·j,        y_k = 2πk/(L·N_a)
///   second factor (b): x_σ = L·σ/N_b,    y_λ = 2πλ/L
struct AZSubsystemGrids {
  ScaledGrid position_a;
  ScaledGrid momentum_a;
  ScaledGrid position_b;
  ScaledGrid momentum_b;
};

AZSubsystemGrids az_subsystem_scaling(const FactorizationPlan& plan, double L);

/// Plane-wave identity ⟨q(x)|p(y)⟩ = (2π)^{-1/2} e^{ixy} on both subsystem
/// grids; max deviation.
double az_subsystem_overlap_deviation(const FactorizationPlan& plan, double L);

}  // namespace skq
