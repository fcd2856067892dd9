#pragma once

// Schwinger's kinematic pair on an N-dimensional space.
//
//   position basis  |u_j⟩ = e_j
//   shift           V|u_j⟩ = |u_{j−1}⟩
//   momentum basis  |v_k⟩ = N^{-1/2} Σ_j e^{2πi·jk/N} |u_j⟩   (columns of F)
//   clock           U = diag(e^{2πi·j/N}), so U|v_k⟩ = |v_{k+1}⟩
//
// giving ⟨u_k|v_j⟩ = N^{-1/2} e^{2πi·kj/N} and V^j U^k = e^{2πi·jk/N} U^k V^j.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "skq/algebra.hpp"

namespace skq {

UnitaryOperator shift_operator(std::size_t n);
UnitaryOperator clock_operator(std::size_t n);
/// F_{kj} = N^{-1/2} e^{2πi·kj/N}.
UnitaryOperator dft_matrix(std::size_t n);

class KinematicsSpace {
 public:
  KinematicsSpace(std::size_t n, std::size_t dim_cap = kDefaultDimCap);

  std::size_t dim() const noexcept { return n_; }
  const UnitaryOperator& shift() const noexcept { return shift_; }
  const UnitaryOperator& clock() const noexcept { return clock_; }
  const UnitaryOperator& dft() const noexcept { return dft_; }

  StateVector position_state(std::size_t j) const;
  StateVector momentum_state(std::size_t k) const;
  std::vector<StateVector> position_basis() const;
  std::vector<StateVector> momentum_basis() const;

 private:
  std::size_t n_;
  UnitaryOperator shift_;
  UnitaryOperator clock_;
  UnitaryOperator dft_;
};

/// Throws DimensionCap when n is 0 or exceeds dim_cap.
KinematicsSpace build_space(std::size_t n,
                            std::size_t dim_cap = kDefaultDimCap);

/// ‖V^j U^k − e^{2πi·jk/N} U^k V^j‖_max, with j and k reduced mod N.
double weyl_residual(const KinematicsSpace& space, std::int64_t j,
                     std::int64_t k);

/// Maximum of weyl_residual over all (j, k) in Z_N × Z_N.
double weyl_max_residual(const KinematicsSpace& space);

/// Eigenvalue read off from x and y = A·x: λ = y_m / x_m at the
/// largest-magnitude amplitude of x; residual = ‖y − λx‖_max.
struct EigenMeasurement {
  Complex eigenvalue;
  double residual = 0.0;
  /// Set when λ is within tolerance of an exact modulus-th root of unity.
  std::optional<PhaseExponent> exponent;

  bool is_eigenvector(double tol = kDefaultTolerance) const {
    return residual <= tol;
  }
};

EigenMeasurement measure_eigenphase(const StateVector& x,
                                    const StateVector& image,
                                    std::int64_t modulus,
                                    double tol = kDefaultTolerance);
EigenMeasurement measure_eigenphase(const UnitaryOperator& op,
                                    const StateVector& x, std::int64_t modulus,
                                    double tol = kDefaultTolerance);

/// Spectra of V and U read from their action on the known eigenbases
/// (momentum basis for V, position basis for U), sorted by numerator.
/// Throws std::runtime_error if some basis state is not an eigenvector.
std::vector<PhaseExponent> shift_spectrum(const KinematicsSpace& space);
std::vector<PhaseExponent> clock_spectrum(const KinematicsSpace& space);

}  // namespace skq
