#pragma once

// Modular variables on W(N1) ⊗ W(N2):
//
//   clock_mod = I ⊗ Û^{r2·N1}     shift_mod = V̂^{N2} ⊗ I
//
// commute, and the Aharonov–Zak states |v_{j1}⟩ ⊗ |u_{k2}⟩ are simultaneous
// eigenvectors with phases e^{2πi·j1·N2²/N} (shift) and e^{2πi·k2·r2·N1²/N}
// (clock).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "skq/algebra.hpp"
#include "skq/factorization.hpp"
#include "skq/kinematics.hpp"

namespace skq {

class ModularPair {
 public:
  explicit ModularPair(FactorizationPlan plan);

  const FactorizationPlan& plan() const noexcept { return plan_; }
  /// I ⊗ Û^{r2·N1}.
  const UnitaryOperator& clock_mod() const noexcept { return clock_mod_; }
  /// V̂^{N2} ⊗ I.
  const UnitaryOperator& shift_mod() const noexcept { return shift_mod_; }

  double commutator() const;

 private:
  FactorizationPlan plan_;
  UnitaryOperator clock_mod_;
  UnitaryOperator shift_mod_;
};

ModularPair modular_pair(FactorizationPlan plan);

struct AZState {
  std::int64_t j1 = 0;
  std::int64_t k2 = 0;
  StateVector ket;
};

/// Exact eigenphase over modulus N.
struct ModularPhase {
  PhaseExponent exponent;
};

struct AZEigenReport {
  AZState state;
  ModularPhase shift_phase;  // measured under shift_mod
  ModularPhase clock_phase;  // measured under clock_mod
  double shift_residual = 0.0;
  double clock_residual = 0.0;
  /// False when a measured eigenvalue is not an N-th root of unity.
  bool exact = false;
  /// j1·N2² mod N and k2·r2·N1² mod N.
  PhaseExponent predicted_shift;
  PhaseExponent predicted_clock;
  /// The indices j1·N2 and k2·r2·N1 as they appear in the printed
  /// eigenvalue formula; kept for the discrepancy report.
  PhaseExponent printed_shift;
  PhaseExponent printed_clock;

  bool matches_prediction() const {
    return exact && shift_phase.exponent == predicted_shift &&
           clock_phase.exponent == predicted_clock;
  }
  bool printed_shift_agrees() const {
    return exact && shift_phase.exponent == printed_shift;
  }
  bool printed_clock_agrees() const {
    return exact && clock_phase.exponent == printed_clock;
  }
};

/// |v_{j1}⟩ ⊗ |u_{k2}⟩. Throws IndexOutOfRange.
AZState make_az_state(const FactorizationPlan& plan, std::int64_t j1,
                      std::int64_t k2);

/// Closed-form exponents (mod N) of the AZ eigenphases, from integer
/// arithmetic on the factor phases.
PhaseExponent az_shift_exponent(const FactorizationPlan& plan, std::int64_t j1);
PhaseExponent az_clock_exponent(const FactorizationPlan& plan, std::int64_t k2);

/// Measures both eigenphases of one AZ state by operator application.
AZEigenReport az_state(const ModularPair& pair, std::int64_t j1,
                       std::int64_t k2);

/// All N AZ states, ordered by (j1, k2), measured in one batch.
std::vector<AZEigenReport> az_states(const ModularPair& pair);

// ---------------------------------------------------------------------------

/// Real potential sampled over one period (ℏ = 1).
struct KickPotential {
  std::size_t period = 0;
  std::vector<double> samples;

  /// Throws std::invalid_argument unless samples.size() == period > 0 and
  /// every sample is finite.
  void validate() const;
};

/// diag(e^{−iV(j mod period)}). Throws PeriodMismatch unless the period
/// divides the dimension.
UnitaryOperator kick_operator(const KinematicsSpace& space,
                              const KickPotential& pot);

/// c_n with e^{−iV(x)} = Σ_n c_n e^{2πi·n·x/period}, n = 0..period−1.
std::vector<Complex> kick_fourier_coefficients(const KickPotential& pot);

/// Σ_n c_n (Û^{N/period})^n, which must reproduce kick_operator.
UnitaryOperator kick_from_fourier(const KinematicsSpace& space,
                                  std::span<const Complex> coefficients);

// ---------------------------------------------------------------------------

struct CombExpansion {
  /// |v0⟩ ⊗ |u0⟩.
  StateVector state;
  /// ⟨v0 ⊗ v_j|comb⟩, j < N2.
  std::vector<Complex> momentum_coefficients;
  /// ⟨u_j ⊗ u0|comb⟩, j < N1.
  std::vector<Complex> position_coefficients;
};

CombExpansion dirac_comb(const FactorizationPlan& plan);

struct MeasurementResult {
  StateVector state;
  /// Born probability of the selected outcome.
  double probability = 0.0;
  /// ⟨initial|state⟩.
  Complex overlap;
  /// Tr(ρ1 ρ1') for the first-factor reduced states before and after.
  double first_factor_fidelity = 0.0;
  /// Set when the first factor is a momentum eigenstate.
  std::optional<AZState> az;
};

/// Projects the second factor onto |u_outcome⟩, leaving the first untouched.
/// Throws NotProductState when `initial` is not a product to 1e-10.
MeasurementResult projective_measurement(const FactorizationPlan& plan,
                                         const StateVector& initial,
                                         std::size_t outcome = 0);

/// First-factor reduced density matrix, row-major N1×N1.
std::vector<Complex> reduced_first_factor(const StateVector& state,
                                          std::size_t n1, std::size_t n2);

}  // namespace skq
