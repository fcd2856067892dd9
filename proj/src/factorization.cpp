#include "skq/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "skq/errors.hpp"

namespace skq {
namespace {

std::size_t checked_product(std::int64_t n1, std::int64_t n2,
                            std::size_t dim_cap) {
  const CoprimePair p(n1, n2);
  const auto n = static_cast<std::size_t>(p.product());
  if (n > dim_cap) {
    throw DimensionCap("dimension " + std::to_string(n) + " exceeds cap " +
                       std::to_string(dim_cap));
  }
  return n;
}

bool is_bijection(const std::vector<IndexPair>& map, std::int64_t n1,
                  std::int64_t n2) {
  std::vector<bool> seen(static_cast<std::size_t>(n1 * n2), false);
  for (const IndexPair& p : map) {
    if (p.first < 0 || p.first >= n1 || p.second < 0 || p.second >= n2) {
      return false;
    }
    const auto cell = static_cast<std::size_t>(p.first * n2 + p.second);
    if (seen[cell]) return false;
    seen[cell] = true;
  }
  return map.size() == seen.size();
}

}  // namespace

FactorizationPlan::FactorizationPlan(CoprimePair pair, Orientation orientation,
                                     std::size_t dim_cap)
    : pair_(pair),
      residues_(skq::residues(pair)),
      orientation_(orientation),
      first_(static_cast<std::size_t>(pair.n1()), dim_cap),
      second_(static_cast<std::size_t>(pair.n2()), dim_cap) {
  shift_ = tensor_op(first_.shift(), second_.shift());
  clock_ = tensor_op(mat_power(first_.clock(), residues_.r1),
                     mat_power(second_.clock(), residues_.r2));

  const std::int64_t n = pair_.product();
  position_map_.reserve(static_cast<std::size_t>(n));
  momentum_map_.reserve(static_cast<std::size_t>(n));
  tensor_index_.reserve(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < n; ++j) {
    const auto [j1, j2] = crt_split(j, pair_, orientation_);
    position_map_.push_back({j1, j2});
    tensor_index_.push_back(static_cast<std::size_t>(j1 * pair_.n2() + j2));
    momentum_map_.push_back(
        {(j * residues_.r1) % pair_.n1(), (j * residues_.r2) % pair_.n2()});
  }
}

std::size_t FactorizationPlan::tensor_index(std::size_t j) const {
  if (j >= tensor_index_.size()) {
    throw IndexOutOfRange("position index " + std::to_string(j) +
                          " outside Z_" + std::to_string(dim()));
  }
  return tensor_index_[j];
}

StateVector FactorizationPlan::position_state(std::size_t j) const {
  return StateVector::basis(dim(), tensor_index(j));
}

StateVector FactorizationPlan::momentum_state(std::size_t k) const {
  if (k >= momentum_map_.size()) {
    throw IndexOutOfRange("momentum index " + std::to_string(k) +
                          " outside Z_" + std::to_string(dim()));
  }
  const IndexPair& m = momentum_map_[k];
  return tensor_state(first_.momentum_state(static_cast<std::size_t>(m.first)),
                      second_.momentum_state(static_cast<std::size_t>(m.second)));
}

FactorizationPlan plan(std::int64_t n1, std::int64_t n2,
                       Orientation orientation, const PlanOptions& options) {
  const std::size_t n = checked_product(n1, n2, options.dim_cap);
  FactorizationPlan result(CoprimePair(n1, n2), orientation, options.dim_cap);
  if (!options.cross_check) return result;

  // Operator route. (A⊗B)^j (a⊗b) = A^j a ⊗ B^j b, so iterate each factor.
  const KinematicsSpace& f1 = result.first();
  const KinematicsSpace& f2 = result.second();
  const bool transpose = orientation == Orientation::PlaneWave;
  const UnitaryOperator step1 = transpose ? adjoint(f1.shift()) : f1.shift();
  const UnitaryOperator step2 = transpose ? adjoint(f2.shift()) : f2.shift();
  const UnitaryOperator kick1 = mat_power(f1.clock(), result.residues().r1);
  const UnitaryOperator kick2 = mat_power(f2.clock(), result.residues().r2);

  StateVector a = f1.position_state(0);
  StateVector b = f2.position_state(0);
  StateVector c = f1.momentum_state(0);
  StateVector d = f2.momentum_state(0);
  double mismatch = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    mismatch = std::max(
        mismatch, max_abs_diff(tensor_state(a, b), result.position_state(j)));
    mismatch = std::max(
        mismatch, max_abs_diff(tensor_state(c, d), result.momentum_state(j)));
    a = apply(step1, a);
    b = apply(step2, b);
    c = apply(kick1, c);
    d = apply(kick2, d);
  }
  result.construction_mismatch_ = mismatch;
  return result;
}

// ---------------------------------------------------------------------------

std::vector<Check> PlanVerification::checks(double tol,
                                            double phase_tol) const {
  std::vector<Check> out = {
      {"weyl_generator_residual", weyl_generator_residual, tol},
      {"order_residual", order_residual, tol},
      {"shift_action_residual", shift_action_residual, tol},
      {"clock_action_residual", clock_action_residual, tol},
      {"overlap_deviation", overlap_deviation, tol},
      {"phase_exponent_mismatches",
       static_cast<double>(phase_exponent_mismatches), 0.0},
      {"position_map_not_bijective", position_bijective ? 0.0 : 1.0, 0.0},
      {"momentum_map_not_bijective", momentum_bijective ? 0.0 : 1.0, 0.0},
      {"residues_not_unique", residues_unique ? 0.0 : 1.0, 0.0},
  };
  if (construction_mismatch) {
    out.push_back({"construction_mismatch", *construction_mismatch, phase_tol});
  }
  return out;
}

bool PlanVerification::passed(double tol, double phase_tol) const {
  return all_passed(checks(tol, phase_tol));
}

PlanVerification verify_plan(const FactorizationPlan& plan) {
  PlanVerification report;
  const std::size_t n = plan.dim();
  const auto ni = static_cast<std::int64_t>(n);
  const std::int64_t n1 = plan.pair().n1();
  const std::int64_t n2 = plan.pair().n2();
  const UnitaryOperator& v = plan.shift();
  const UnitaryOperator& u = plan.clock();
  const UnitaryOperator id = UnitaryOperator::identity(n);

  const UnitaryOperator uv = compose(u, v);
  report.weyl_generator_residual =
      max_abs_diff(compose(v, u), scaled(uv, root_of_unity(1, ni)));
  report.order_residual = std::max(max_abs_diff(mat_power(v, ni), id),
                                   max_abs_diff(mat_power(u, ni), id));

  std::vector<StateVector> positions;
  std::vector<StateVector> momenta;
  positions.reserve(n);
  momenta.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    positions.push_back(plan.position_state(j));
    momenta.push_back(plan.momentum_state(j));
  }
  const UnitaryOperator pos = UnitaryOperator::from_columns(positions);
  const UnitaryOperator mom = UnitaryOperator::from_columns(momenta);

  const bool plane_wave = plan.orientation() == Orientation::PlaneWave;
  const UnitaryOperator v_pos = compose(v, pos);
  const UnitaryOperator u_mom = compose(u, mom);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t next = plane_wave ? (j + n - 1) % n : (j + 1) % n;
    for (std::size_t r = 0; r < n; ++r) {
      report.shift_action_residual = std::max(
          report.shift_action_residual, std::abs(v_pos(r, j) - pos(r, next)));
      report.clock_action_residual =
          std::max(report.clock_action_residual,
                   std::abs(u_mom(r, j) - mom(r, (j + 1) % n)));
    }
  }

  // ⟨u_j|v_k⟩ for all j, k at once.
  const UnitaryOperator overlap = compose(adjoint(pos), mom);
  const double amplitude = 1.0 / std::sqrt(static_cast<double>(n));
  const std::int64_t sign = plane_wave ? 1 : -1;
  for (std::size_t j = 0; j < n; ++j) {
    const IndexPair& pj = plan.position_map()[j];
    for (std::size_t k = 0; k < n; ++k) {
      const auto jk = static_cast<std::int64_t>(j * k);
      const PhaseExponent expected(sign * jk, ni);
      report.overlap_deviation =
          std::max(report.overlap_deviation,
                   std::abs(overlap(j, k) - amplitude * expected.to_complex()));
      const IndexPair& pk = plan.momentum_map()[k];
      const PhaseExponent from_maps = PhaseExponent(pj.first * pk.first, n1) +
                                      PhaseExponent(pj.second * pk.second, n2);
      if (!(from_maps == expected)) ++report.phase_exponent_mismatches;
    }
  }

  report.position_bijective = is_bijection(plan.position_map(), n1, n2);
  report.momentum_bijective = is_bijection(plan.momentum_map(), n1, n2);
  report.residue_solutions = residue_solutions(plan.pair());
  report.residues_unique = report.residue_solutions.size() == 1 &&
                           report.residue_solutions.front() == plan.residues();
  report.construction_mismatch = plan.construction_mismatch();
  return report;
}

OverlapScan scan_overlaps(const FactorizationPlan& plan) {
  OverlapScan scan;
  const std::size_t n = plan.dim();
  const auto ni = static_cast<std::int64_t>(n);
  const std::int64_t n1 = plan.pair().n1();
  const std::int64_t n2 = plan.pair().n2();
  const UnitaryOperator& f1 = plan.first().dft();
  const UnitaryOperator& f2 = plan.second().dft();
  const double amplitude = 1.0 / std::sqrt(static_cast<double>(n));
  const double inv = 1.0 / static_cast<double>(n);
  const std::int64_t sign = plan.orientation() == Orientation::PlaneWave ? 1 : -1;
  for (std::size_t j = 0; j < n; ++j) {
    const IndexPair& pj = plan.position_map()[j];
    for (std::size_t k = 0; k < n; ++k) {
      const IndexPair& pk = plan.momentum_map()[k];
      const Complex overlap =
          f1(static_cast<std::size_t>(pj.first), static_cast<std::size_t>(pk.first)) *
          f2(static_cast<std::size_t>(pj.second), static_cast<std::size_t>(pk.second));
      const PhaseExponent expected(sign * static_cast<std::int64_t>(j * k), ni);
      scan.deviation = std::max(
          scan.deviation, std::abs(overlap - amplitude * expected.to_complex()));
      scan.unbiasedness = std::max(scan.unbiasedness, std::abs(std::norm(overlap) - inv));
      const PhaseExponent from_maps = PhaseExponent(pj.first * pk.first, n1) +
                                      PhaseExponent(pj.second * pk.second, n2);
      if (!(from_maps == expected)) ++scan.exponent_mismatches;
    }
  }
  return scan;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<IndexPair> walk(const UnitaryOperator& step, std::int64_t n2) {
  const std::size_t n = step.dim();
  std::vector<IndexPair> points;
  StateVector x = StateVector::basis(n, 0);
  for (std::size_t guard = 0; guard <= n; ++guard) {
    std::size_t at = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(x[i]) > std::abs(x[at])) at = i;
    }
    if (!points.empty() && at == 0) return points;
    const auto ai = static_cast<std::int64_t>(at);
    points.push_back({ai / n2, ai % n2});
    x = apply(step, x);
  }
  throw std::logic_error("single_line_walk: orbit failed to close");
}

}  // namespace

std::vector<IndexPair> single_line_walk(std::int64_t n1, std::int64_t n2,
                                        bool require_coprime) {
  if (require_coprime) static_cast<void>(CoprimePair(n1, n2));
  if (n1 < 1 || n2 < 1) {
    throw std::invalid_argument("single_line_walk: factors must be positive");
  }
  return walk(tensor_op(shift_operator(static_cast<std::size_t>(n1)),
                        shift_operator(static_cast<std::size_t>(n2))),
              n2);
}

std::vector<IndexPair> single_line_walk(const FactorizationPlan& plan) {
  return walk(plan.shift(), plan.pair().n2());
}

StateVector embed_state(const FactorizationPlan& plan, const StateVector& x) {
  if (x.dim() != plan.dim()) {
    throw DimensionMismatch("embed_state: expected dimension " +
                            std::to_string(plan.dim()));
  }
  std::vector<Complex> out(x.dim());
  for (std::size_t j = 0; j < x.dim(); ++j) out[plan.tensor_index(j)] = x[j];
  return StateVector(std::move(out));
}

UnitaryOperator embed_operator(const FactorizationPlan& plan,
                               const UnitaryOperator& op) {
  const std::size_t n = plan.dim();
  if (op.dim() != n) {
    throw DimensionMismatch("embed_operator: expected dimension " +
                            std::to_string(n));
  }
  std::vector<Complex> out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t ti = plan.tensor_index(i);
    for (std::size_t j = 0; j < n; ++j) {
      out[ti * n + plan.tensor_index(j)] = op(i, j);
    }
  }
  return {n, std::move(out)};
}

}  // namespace skq
