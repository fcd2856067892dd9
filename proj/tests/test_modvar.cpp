#include <doctest.h>

#include <cmath>
#include <random>

#include "skq/errors.hpp"
#include "skq/modvar.hpp"

using namespace skq;

namespace {

KickPotential random_potential(std::size_t period, std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  KickPotential pot{period, {}};
  for (std::size_t i = 0; i < period; ++i) pot.samples.push_back(d(rng));
  return pot;
}

}  // namespace

TEST_SUITE("modvar") {

TEST_CASE("modular pair commutes") {
  for (auto [a, b] : {std::pair{2, 3}, {3, 5}}) {
    const ModularPair m(plan(a, b));
    CHECK(m.commutator() <= 1e-12);
    CHECK(unitarity_residual(m.clock_mod()) <= 1e-12);
    CHECK(unitarity_residual(m.shift_mod()) <= 1e-12);
  }
}

TEST_CASE("AZ states of the worked examples") {
  for (auto [a, b] : {std::pair{2, 3}, {3, 5}}) {
    const ModularPair m(plan(a, b));
    const auto r = az_state(m, 1, 2);
    CHECK(r.shift_residual <= 1e-10);
    CHECK(r.clock_residual <= 1e-10);
    CHECK(r.matches_prediction());
    CHECK(std::abs(r.state.ket.norm() - 1.0) <= 1e-12);
  }
  const ModularPair m(plan(3, 5));
  const auto zero = az_state(m, 0, 0);
  CHECK(zero.shift_phase.exponent == PhaseExponent(0, 15));
  CHECK(zero.clock_phase.exponent == PhaseExponent(0, 15));
  CHECK_THROWS_AS(az_state(m, 3, 0), IndexOutOfRange);
  CHECK_THROWS_AS(az_state(m, 0, 5), IndexOutOfRange);
}

TEST_CASE("closed-form exponents") {
  // j1*N2^2 mod N and k2*r2*N1^2 mod N
  const auto p = plan(3, 5);
  for (std::int64_t j1 = 0; j1 < 3; ++j1) {
    CHECK(az_shift_exponent(p, j1) == PhaseExponent(j1 * 25, 15));
  }
  for (std::int64_t k2 = 0; k2 < 5; ++k2) {
    CHECK(az_clock_exponent(p, k2) == PhaseExponent(k2 * 2 * 9, 15));
  }
}

TEST_CASE("printed eigenvalue indices") {
  // agree on the shift side for N=6; the clock side only at k2 = 0
  const ModularPair six(plan(2, 3));
  for (const auto& r : az_states(six)) {
    CHECK(r.printed_shift_agrees());
    CHECK(r.printed_clock_agrees() == (r.state.k2 == 0));
  }
  const ModularPair fifteen(plan(3, 5));
  std::size_t disagreements = 0;
  for (const auto& r : az_states(fifteen)) {
    CHECK(r.matches_prediction());
    disagreements += !r.printed_shift_agrees() || !r.printed_clock_agrees();
  }
  CHECK(disagreements > 0);
}

TEST_CASE("batched and single AZ measurements agree") {
  const ModularPair m(plan(4, 7, Orientation::PlaneWave));
  const auto all = az_states(m);
  REQUIRE(all.size() == 28);
  for (const auto& r : all) {
    const auto one = az_state(m, r.state.j1, r.state.k2);
    CHECK(one.shift_phase.exponent == r.shift_phase.exponent);
    CHECK(one.clock_phase.exponent == r.clock_phase.exponent);
  }
}

TEST_CASE("AZ sweep over every coprime pair with N <= 512") {
  std::size_t pairs = 0;
  std::size_t bad = 0;
  double worst = 0.0;
  double commutator = 0.0;
  for (std::int64_t n1 = 1; n1 <= 512; ++n1) {
    for (std::int64_t n2 = 1; n1 * n2 <= 512; ++n2) {
      if (gcd(n1, n2) != 1 || n1 * n2 < 2) continue;
      PlanOptions o;
      o.cross_check = false;
      const ModularPair m(plan(n1, n2, Orientation::PaperTables, o));
      commutator = std::max(commutator, m.commutator());
      for (const auto& r : az_states(m)) {
        worst = std::max({worst, r.shift_residual, r.clock_residual});
        bad += !r.matches_prediction();
      }
      ++pairs;
    }
  }
  CHECK(commutator <= 1e-10);
  CHECK(worst <= 1e-10);
  CHECK(bad == 0);
  CHECK(pairs > 500);
}

TEST_CASE("kick operator basics") {
  const KinematicsSpace s(6);
  CHECK(max_abs_diff(kick_operator(s, {3, {0.0, 0.0, 0.0}}), UnitaryOperator::identity(6)) == 0.0);
  std::mt19937 rng(17);
  const auto pot = random_potential(3, rng);
  const auto k = kick_operator(s, pot);
  CHECK(unitarity_residual(k) <= 1e-12);
  for (std::size_t r = 0; r < 6; ++r) {
    for (std::size_t c = 0; c < 6; ++c) {
      if (r != c) CHECK(k(r, c) == Complex{});
    }
  }
  CHECK(max_abs_diff(kick_from_fourier(s, kick_fourier_coefficients(pot)), k) <= 1e-12);
  CHECK_THROWS_AS(kick_operator(s, {4, {0, 0, 0, 0}}), PeriodMismatch);
  CHECK_THROWS_AS((KickPotential{3, {0.0, 1.0}}.validate()), std::invalid_argument);
}

TEST_CASE("kicked plane wave is a shift_mod eigenstate") {
  std::mt19937 rng(2024);
  for (auto [n1, n2] : {std::pair{2, 3}, {3, 5}}) {
    const auto p = plan(n1, n2);
    const ModularPair m(p);
    const KinematicsSpace s(p.dim());
    for (int t = 0; t < 20; ++t) {
      const auto pot = random_potential(static_cast<std::size_t>(n2), rng);
      const auto k = embed_operator(p, kick_operator(s, pot));
      const auto kicked = apply(k, p.momentum_state(0));
      const auto e = measure_eigenphase(m.shift_mod(), kicked, static_cast<std::int64_t>(p.dim()));
      CHECK(e.residual <= 1e-10);
      REQUIRE(e.exponent);
      CHECK(*e.exponent == PhaseExponent(0, 1));
      CHECK(commutator_norm(k, m.shift_mod()) <= 1e-10);
      CHECK(commutator_norm(k, m.clock_mod()) <= 1e-10);
    }
  }
}

TEST_CASE("kicked plane wave is generally not a clock_mod eigenstate") {
  const auto p = plan(2, 3);
  const ModularPair m(p);
  const KinematicsSpace s(6);
  const auto k = embed_operator(p, kick_operator(s, {3, {0.0, 1.0, 2.5}}));
  const auto e = measure_eigenphase(m.clock_mod(), apply(k, p.momentum_state(0)), 6);
  CHECK(e.residual > 1e-3);
}

TEST_CASE("dirac comb expansions") {
  const auto p = plan(2, 3);
  const auto c = dirac_comb(p);
  CHECK(std::abs(c.state.norm() - 1.0) <= 1e-12);
  REQUIRE(c.momentum_coefficients.size() == 3);
  REQUIRE(c.position_coefficients.size() == 2);
  for (const auto& z : c.momentum_coefficients) CHECK(std::abs(std::abs(z) - 1.0 / std::sqrt(3.0)) <= 1e-12);
  for (const auto& z : c.position_coefficients) CHECK(std::abs(std::abs(z) - 1.0 / std::sqrt(2.0)) <= 1e-12);

  // reassemble the state from each expansion
  const auto& f1 = p.first();
  const auto& f2 = p.second();
  std::vector<Complex> from_momenta(6);
  std::vector<Complex> from_positions(6);
  for (std::size_t j = 0; j < 3; ++j) {
    const auto t = tensor_state(f1.momentum_state(0), f2.momentum_state(j));
    for (std::size_t i = 0; i < 6; ++i) from_momenta[i] += c.momentum_coefficients[j] * t[i];
  }
  for (std::size_t j = 0; j < 2; ++j) {
    const auto t = tensor_state(f1.position_state(j), f2.position_state(0));
    for (std::size_t i = 0; i < 6; ++i) from_positions[i] += c.position_coefficients[j] * t[i];
  }
  CHECK(max_abs_diff(StateVector(from_momenta), c.state) <= 1e-12);
  CHECK(max_abs_diff(StateVector(from_positions), c.state) <= 1e-12);
}

TEST_CASE("projective measurement") {
  for (auto [n1, n2] : {std::pair{2, 3}, {3, 5}}) {
    const auto p = plan(n1, n2);
    const auto v0v0 = tensor_state(p.first().momentum_state(0), p.second().momentum_state(0));
    const auto r = projective_measurement(p, v0v0);
    const auto expected = tensor_state(p.first().momentum_state(0), p.second().position_state(0));
    CHECK(max_abs_diff(r.state, expected) <= 1e-12);
    CHECK(std::abs(std::abs(r.overlap) - 1.0 / std::sqrt(double(n2))) <= 1e-12);
    CHECK(std::abs(r.probability - 1.0 / double(n2)) <= 1e-12);
    CHECK(std::abs(r.first_factor_fidelity - 1.0) <= 1e-10);
    REQUIRE(r.az);
    CHECK(r.az->j1 == 0);
    CHECK(r.az->k2 == 0);
  }
  const auto p = plan(2, 3);
  const auto entangled = StateVector(std::vector<Complex>{1, 0, 0, 0, 1, 0}).normalized();
  CHECK_THROWS_AS(projective_measurement(p, entangled), NotProductState);
  const auto u0u1 = tensor_state(p.first().position_state(0), p.second().position_state(1));
  CHECK_THROWS_AS(projective_measurement(p, u0u1, 0), std::domain_error);
}

}  // TEST_SUITE
