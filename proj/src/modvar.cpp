#include "skq/modvar.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "skq/errors.hpp"

namespace skq {
namespace {

void require_az_indices(const FactorizationPlan& plan, std::int64_t j1,
                        std::int64_t k2) {
  if (j1 < 0 || j1 >= plan.pair().n1() || k2 < 0 || k2 >= plan.pair().n2()) {
    throw IndexOutOfRange("AZ state (" + std::to_string(j1) + "," +
                          std::to_string(k2) + ") outside Z_" +
                          std::to_string(plan.pair().n1()) + " x Z_" +
                          std::to_string(plan.pair().n2()));
  }
}

AZEigenReport assemble(const FactorizationPlan& plan, AZState state,
                       const StateVector& shift_image,
                       const StateVector& clock_image) {
  const auto n = static_cast<std::int64_t>(plan.dim());
  const EigenMeasurement s = measure_eigenphase(state.ket, shift_image, n);
  const EigenMeasurement c = measure_eigenphase(state.ket, clock_image, n);

  AZEigenReport r;
  r.shift_residual = s.residual;
  r.clock_residual = c.residual;
  r.exact = s.exponent.has_value() && c.exponent.has_value();
  if (s.exponent) r.shift_phase.exponent = *s.exponent;
  if (c.exponent) r.clock_phase.exponent = *c.exponent;
  r.predicted_shift = az_shift_exponent(plan, state.j1);
  r.predicted_clock = az_clock_exponent(plan, state.k2);
  r.printed_shift = PhaseExponent(state.j1 * plan.pair().n2(), n);
  r.printed_clock =
      PhaseExponent(state.k2 * plan.residues().r2 * plan.pair().n1(), n);
  r.state = std::move(state);
  return r;
}

}  // namespace

ModularPair::ModularPair(FactorizationPlan plan) : plan_(std::move(plan)) {
  const KinematicsSpace& f1 = plan_.first();
  const KinematicsSpace& f2 = plan_.second();
  const std::int64_t n1 = plan_.pair().n1();
  const std::int64_t n2 = plan_.pair().n2();
  clock_mod_ = tensor_op(UnitaryOperator::identity(f1.dim()),
                         mat_power(f2.clock(), plan_.residues().r2 * n1));
  shift_mod_ = tensor_op(mat_power(f1.shift(), n2),
                         UnitaryOperator::identity(f2.dim()));
}

double ModularPair::commutator() const {
  return commutator_norm(clock_mod_, shift_mod_);
}

ModularPair modular_pair(FactorizationPlan plan) {
  return ModularPair(std::move(plan));
}

AZState make_az_state(const FactorizationPlan& plan, std::int64_t j1,
                      std::int64_t k2) {
  require_az_indices(plan, j1, k2);
  return {j1, k2,
          tensor_state(plan.first().momentum_state(static_cast<std::size_t>(j1)),
                       plan.second().position_state(static_cast<std::size_t>(k2)))};
}

PhaseExponent az_shift_exponent(const FactorizationPlan& plan, std::int64_t j1) {
  // V̂1^{N2}|v_{j1}⟩ = e^{2πi·j1·N2/N1}|v_{j1}⟩
  const std::int64_t n1 = plan.pair().n1();
  return PhaseExponent(j1 * plan.pair().n2(), n1).rescaled(plan.pair().product());
}

PhaseExponent az_clock_exponent(const FactorizationPlan& plan, std::int64_t k2) {
  // Û2^{r2·N1}|u_{k2}⟩ = e^{2πi·k2·r2·N1/N2}|u_{k2}⟩
  const std::int64_t n2 = plan.pair().n2();
  return PhaseExponent(k2 * plan.residues().r2 * plan.pair().n1(), n2)
      .rescaled(plan.pair().product());
}

AZEigenReport az_state(const ModularPair& pair, std::int64_t j1,
                       std::int64_t k2) {
  AZState state = make_az_state(pair.plan(), j1, k2);
  const StateVector shift_image = apply(pair.shift_mod(), state.ket);
  const StateVector clock_image = apply(pair.clock_mod(), state.ket);
  return assemble(pair.plan(), std::move(state), shift_image, clock_image);
}

std::vector<AZEigenReport> az_states(const ModularPair& pair) {
  const FactorizationPlan& plan = pair.plan();
  std::vector<AZState> states;
  std::vector<StateVector> kets;
  states.reserve(plan.dim());
  kets.reserve(plan.dim());
  for (std::int64_t j1 = 0; j1 < plan.pair().n1(); ++j1) {
    for (std::int64_t k2 = 0; k2 < plan.pair().n2(); ++k2) {
      states.push_back(make_az_state(plan, j1, k2));
      kets.push_back(states.back().ket);
    }
  }
  // The AZ states form a basis; apply both operators to all of them at once.
  const UnitaryOperator basis = UnitaryOperator::from_columns(kets);
  const UnitaryOperator shifted = compose(pair.shift_mod(), basis);
  const UnitaryOperator clocked = compose(pair.clock_mod(), basis);

  std::vector<AZEigenReport> out;
  out.reserve(states.size());
  for (std::size_t c = 0; c < states.size(); ++c) {
    out.push_back(assemble(plan, std::move(states[c]), shifted.column(c),
                           clocked.column(c)));
  }
  return out;
}

// ---------------------------------------------------------------------------

void KickPotential::validate() const {
  if (period == 0) throw std::invalid_argument("kick potential: period is 0");
  if (samples.size() != period) {
    throw std::invalid_argument("kick potential: " +
                                std::to_string(samples.size()) +
                                " samples for period " + std::to_string(period));
  }
  for (double s : samples) {
    if (!std::isfinite(s)) {
      throw std::invalid_argument("kick potential: non-finite sample");
    }
  }
}

UnitaryOperator kick_operator(const KinematicsSpace& space,
                              const KickPotential& pot) {
  pot.validate();
  if (space.dim() % pot.period != 0) {
    throw PeriodMismatch("period " + std::to_string(pot.period) +
                         " does not divide dimension " +
                         std::to_string(space.dim()));
  }
  std::vector<Complex> diag(space.dim());
  for (std::size_t j = 0; j < space.dim(); ++j) {
    diag[j] = std::polar(1.0, -pot.samples[j % pot.period]);
  }
  return UnitaryOperator::diagonal(diag);
}

std::vector<Complex> kick_fourier_coefficients(const KickPotential& pot) {
  pot.validate();
  const auto p = static_cast<std::int64_t>(pot.period);
  std::vector<Complex> c(pot.period);
  for (std::int64_t n = 0; n < p; ++n) {
    Complex s{};
    for (std::int64_t x = 0; x < p; ++x) {
      s += std::polar(1.0, -pot.samples[static_cast<std::size_t>(x)]) *
           root_of_unity(-n * x, p);
    }
    c[static_cast<std::size_t>(n)] = s / static_cast<double>(p);
  }
  return c;
}

UnitaryOperator kick_from_fourier(const KinematicsSpace& space,
                                  std::span<const Complex> coefficients) {
  const std::size_t p = coefficients.size();
  if (p == 0 || space.dim() % p != 0) {
    throw PeriodMismatch("period " + std::to_string(p) +
                         " does not divide dimension " +
                         std::to_string(space.dim()));
  }
  const UnitaryOperator step = mat_power(
      space.clock(), static_cast<std::int64_t>(space.dim() / p));
  const std::size_t n = space.dim();
  std::vector<Complex> sum(n * n);
  UnitaryOperator power = UnitaryOperator::identity(n);
  for (std::size_t k = 0; k < p; ++k) {
    const auto e = power.entries();
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += coefficients[k] * e[i];
    power = compose(power, step);
  }
  return {n, std::move(sum)};
}

// ---------------------------------------------------------------------------

CombExpansion dirac_comb(const FactorizationPlan& plan) {
  const KinematicsSpace& f1 = plan.first();
  const KinematicsSpace& f2 = plan.second();
  CombExpansion out;
  out.state = tensor_state(f1.momentum_state(0), f2.position_state(0));
  const StateVector v0 = f1.momentum_state(0);
  for (std::size_t j = 0; j < f2.dim(); ++j) {
    out.momentum_coefficients.push_back(
        inner(tensor_state(v0, f2.momentum_state(j)), out.state));
  }
  const StateVector u0 = f2.position_state(0);
  for (std::size_t j = 0; j < f1.dim(); ++j) {
    out.position_coefficients.push_back(
        inner(tensor_state(f1.position_state(j), u0), out.state));
  }
  return out;
}

std::vector<Complex> reduced_first_factor(const StateVector& state,
                                          std::size_t n1, std::size_t n2) {
  if (state.dim() != n1 * n2) {
    throw DimensionMismatch("reduced_first_factor: dimension " +
                            std::to_string(state.dim()) + " != " +
                            std::to_string(n1) + "*" + std::to_string(n2));
  }
  std::vector<Complex> rho(n1 * n1);
  for (std::size_t a = 0; a < n1; ++a) {
    for (std::size_t b = 0; b < n1; ++b) {
      Complex s{};
      for (std::size_t s2 = 0; s2 < n2; ++s2) {
        s += state[a * n2 + s2] * std::conj(state[b * n2 + s2]);
      }
      rho[a * n1 + b] = s;
    }
  }
  return rho;
}

MeasurementResult projective_measurement(const FactorizationPlan& plan,
                                         const StateVector& initial,
                                         std::size_t outcome) {
  const auto n1 = static_cast<std::size_t>(plan.pair().n1());
  const auto n2 = static_cast<std::size_t>(plan.pair().n2());
  if (initial.dim() != plan.dim()) {
    throw DimensionMismatch("projective_measurement: dimension " +
                            std::to_string(initial.dim()) + " != " +
                            std::to_string(plan.dim()));
  }
  if (outcome >= n2) {
    throw IndexOutOfRange("outcome " + std::to_string(outcome) +
                          " outside Z_" + std::to_string(n2));
  }
  const StateVector psi = initial.normalized();

  // Rank-one test on the N1×N2 amplitude matrix.
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < psi.dim(); ++i) {
    if (std::abs(psi[i]) > std::abs(psi[pivot])) pivot = i;
  }
  const std::size_t pa = pivot / n2;
  const std::size_t pb = pivot % n2;
  std::vector<Complex> left(n1);
  std::vector<Complex> right(n2);
  for (std::size_t a = 0; a < n1; ++a) left[a] = psi[a * n2 + pb];
  for (std::size_t b = 0; b < n2; ++b) right[b] = psi[pa * n2 + b] / psi[pivot];
  double defect = 0.0;
  for (std::size_t a = 0; a < n1; ++a) {
    for (std::size_t b = 0; b < n2; ++b) {
      defect = std::max(defect, std::abs(psi[a * n2 + b] - left[a] * right[b]));
    }
  }
  if (defect > kDefaultTolerance) {
    throw NotProductState("initial state is not a product state (defect " +
                          std::to_string(defect) + ")");
  }

  std::vector<Complex> projected(psi.dim());
  for (std::size_t a = 0; a < n1; ++a) {
    projected[a * n2 + outcome] = psi[a * n2 + outcome];
  }
  MeasurementResult result;
  StateVector raw(std::move(projected));
  const double norm = raw.norm();
  if (norm == 0.0) {
    throw std::domain_error("measurement outcome has zero probability");
  }
  result.probability = norm * norm;
  result.state = raw.scaled(1.0 / norm);
  result.overlap = inner(psi, result.state);

  const std::vector<Complex> before = reduced_first_factor(psi, n1, n2);
  const std::vector<Complex> after = reduced_first_factor(result.state, n1, n2);
  Complex trace{};
  for (std::size_t a = 0; a < n1; ++a) {
    for (std::size_t b = 0; b < n1; ++b) trace += before[a * n1 + b] * after[b * n1 + a];
  }
  result.first_factor_fidelity = trace.real();

  const StateVector first = StateVector(left).normalized();
  for (std::size_t j = 0; j < n1; ++j) {
    if (std::abs(inner(plan.first().momentum_state(j), first)) >=
        1.0 - kDefaultTolerance) {
      result.az = make_az_state(plan, static_cast<std::int64_t>(j),
                                static_cast<std::int64_t>(outcome));
      break;
    }
  }
  return result;
}

}  // namespace skq
