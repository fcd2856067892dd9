#pragma once

// Pseudo-degrees of freedom: a single N = N1·N2 dimensional degree of freedom
// realized on W(N1) ⊗ W(N2) when gcd(N1, N2) = 1.
//
//   V̂ = V̂1 ⊗ V̂2,  Û = Û1^{r1} ⊗ Û2^{r2},
//   |u_j⟩ = V̂^j |u0⟩⊗|u0⟩      (PaperTables)   or (V̂ᵗ)^j |u0⟩⊗|u0⟩ (PlaneWave)
//   |v_k⟩ = Û^k |v0⟩⊗|v0⟩      (both orientations)

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "skq/algebra.hpp"
#include "skq/kinematics.hpp"
#include "skq/numtheory.hpp"
#include "skq/report.hpp"

namespace skq {

struct IndexPair {
  std::int64_t first = 0;
  std::int64_t second = 0;

  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

struct PlanOptions {
  std::size_t dim_cap = kDefaultDimCap;
  /// Rebuild every composite basis state by operator iteration and compare
  /// with the index-map construction.
  bool cross_check = true;
};

class FactorizationPlan {
 public:
  const CoprimePair& pair() const noexcept { return pair_; }
  const ResiduePair& residues() const noexcept { return residues_; }
  Orientation orientation() const noexcept { return orientation_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(pair_.product()); }

  const KinematicsSpace& first() const noexcept { return first_; }
  const KinematicsSpace& second() const noexcept { return second_; }

  /// V̂1 ⊗ V̂2.
  const UnitaryOperator& shift() const noexcept { return shift_; }
  /// Û1^{r1} ⊗ Û2^{r2}.
  const UnitaryOperator& clock() const noexcept { return clock_; }

  /// j ↦ (j1, j2) for |u_j⟩ = |u_{j1}⟩ ⊗ |u_{j2}⟩.
  const std::vector<IndexPair>& position_map() const noexcept { return position_map_; }
  /// k ↦ (k·r1 mod N1, k·r2 mod N2).
  const std::vector<IndexPair>& momentum_map() const noexcept { return momentum_map_; }

  /// Index of |u_j⟩ in the tensor-product computational basis.
  std::size_t tensor_index(std::size_t j) const;

  StateVector position_state(std::size_t j) const;
  StateVector momentum_state(std::size_t k) const;

  /// Max entry difference between operator-iterated and index-map states;
  /// empty when the plan was built without cross_check.
  std::optional<double> construction_mismatch() const noexcept {
    return construction_mismatch_;
  }

 private:
  friend FactorizationPlan plan(std::int64_t, std::int64_t, Orientation,
                                const PlanOptions&);
  FactorizationPlan(CoprimePair pair, Orientation orientation,
                    std::size_t dim_cap);

  CoprimePair pair_;
  ResiduePair residues_;
  Orientation orientation_;
  KinematicsSpace first_;
  KinematicsSpace second_;
  UnitaryOperator shift_;
  UnitaryOperator clock_;
  std::vector<IndexPair> position_map_;
  std::vector<IndexPair> momentum_map_;
  std::vector<std::size_t> tensor_index_;
  std::optional<double> construction_mismatch_;
};

/// Throws NotCoprime, or DimensionCap when n1·n2 exceeds the cap.
FactorizationPlan plan(std::int64_t n1, std::int64_t n2,
                       Orientation orientation = Orientation::PaperTables,
                       const PlanOptions& options = {});

struct PlanVerification {
  /// ‖V̂Û − e^{2πi/N}ÛV̂‖_max, the generator form of the Weyl relation.
  double weyl_generator_residual = 0.0;
  /// max(‖V̂^N − I‖, ‖Û^N − I‖).
  double order_residual = 0.0;
  /// max_j ‖V̂|u_j⟩ − |u_{j∓1}⟩‖ (−1 PlaneWave, +1 PaperTables).
  double shift_action_residual = 0.0;
  /// max_k ‖Û|v_k⟩ − |v_{k+1}⟩‖.
  double clock_action_residual = 0.0;
  /// max |⟨u_j|v_k⟩ − N^{-1/2} e^{±2πi·jk/N}|, sign + for PlaneWave.
  double overlap_deviation = 0.0;
  /// Cells whose exact integer phase exponent differs from ±jk mod N.
  std::size_t phase_exponent_mismatches = 0;
  bool position_bijective = false;
  bool momentum_bijective = false;
  std::vector<ResiduePair> residue_solutions;
  bool residues_unique = false;
  std::optional<double> construction_mismatch;

  /// tol applies to operator residuals; construction uses phase_tol.
  std::vector<Check> checks(double tol = kDefaultTolerance,
                            double phase_tol = kPhaseTolerance) const;
  bool passed(double tol = kDefaultTolerance,
              double phase_tol = kPhaseTolerance) const;
};

PlanVerification verify_plan(const FactorizationPlan& plan);

/// ⟨u_j|v_k⟩ = ⟨u_{j1}|v_{k1}⟩⟨u_{j2}|v_{k2}⟩ evaluated from the factor DFT
/// entries through the index maps, for all j, k; no composite states are
/// formed. Same expected phase and sign convention as verify_plan.
struct OverlapScan {
  double deviation = 0.0;
  std::size_t exponent_mismatches = 0;
  /// max | |⟨u_j|v_k⟩|² − 1/N |.
  double unbiasedness = 0.0;
};

OverlapScan scan_overlaps(const FactorizationPlan& plan);

/// Lattice points (j1, j2) visited by V̂1⊗V̂2 starting at (0, 0), up to but
/// excluding the return to (0, 0). With require_coprime = false a
/// non-coprime pair is walked anyway, closing after lcm(n1, n2) points.
std::vector<IndexPair> single_line_walk(std::int64_t n1, std::int64_t n2,
                                        bool require_coprime = true);
std::vector<IndexPair> single_line_walk(const FactorizationPlan& plan);

/// Carry a W(N) vector/operator (position basis e_j) into the tensor basis.
StateVector embed_state(const FactorizationPlan& plan, const StateVector& x);
UnitaryOperator embed_operator(const FactorizationPlan& plan,
                               const UnitaryOperator& op);

}  // namespace skq
