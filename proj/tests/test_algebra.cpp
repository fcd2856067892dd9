#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "skq/algebra.hpp"
#include "skq/errors.hpp"
#include "skq/kinematics.hpp"

using namespace skq;

namespace {

StateVector random_state(std::size_t n, std::mt19937& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> a(n);
  for (auto& x : a) x = {g(rng), g(rng)};
  return StateVector(std::move(a)).normalized();
}

UnitaryOperator random_unitary(std::size_t n, std::mt19937& rng) {
  // diagonal phases sandwiched between DFTs: unitary but dense
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  std::vector<Complex> d(n);
  for (auto& x : d) x = std::polar(1.0, u(rng));
  const UnitaryOperator f = dft_matrix(n);
  return compose(f, compose(UnitaryOperator::diagonal(d), adjoint(f)));
}

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("tensor_state basis index arithmetic") {
  const auto e = tensor_state(StateVector::basis(2, 0), StateVector::basis(3, 0));
  CHECK(max_abs_diff(e, StateVector::basis(6, 0)) == 0.0);
  const auto f = tensor_state(StateVector::basis(2, 1), StateVector::basis(3, 2));
  CHECK(max_abs_diff(f, StateVector::basis(6, 5)) == 0.0);
}

TEST_CASE("tensor_state norm is multiplicative") {
  std::mt19937 rng(7);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_state(1 + t % 5, rng);
    const auto b = random_state(2 + t % 7, rng);
    CHECK(std::abs(tensor_state(a, b).norm() - 1.0) <= 1e-12);
  }
}

TEST_CASE("tensor_op identity and mixed product") {
  CHECK(max_abs_diff(tensor_op(UnitaryOperator::identity(2), UnitaryOperator::identity(3)),
                     UnitaryOperator::identity(6)) == 0.0);
  std::mt19937 rng(11);
  for (int t = 0; t < 10; ++t) {
    const auto A = random_unitary(3, rng);
    const auto B = random_unitary(4, rng);
    const auto a = random_state(3, rng);
    const auto b = random_state(4, rng);
    CHECK(max_abs_diff(apply(tensor_op(A, B), tensor_state(a, b)),
                       tensor_state(apply(A, a), apply(B, b))) <= 1e-12);
  }
}

TEST_CASE("shift tensor shift on e0") {
  const auto vv = tensor_op(shift_operator(2), shift_operator(3));
  CHECK(max_abs_diff(apply(vv, StateVector::basis(6, 0)), StateVector::basis(6, 5)) == 0.0);
}

TEST_CASE("inner products") {
  CHECK(inner(StateVector::basis(3, 0), StateVector::basis(3, 0)) == Complex(1.0, 0.0));
  CHECK(inner(StateVector::basis(3, 0), StateVector::basis(3, 1)) == Complex(0.0, 0.0));
  const KinematicsSpace s(4);
  const Complex z = inner(s.position_state(1), s.momentum_state(1));
  CHECK(std::abs(z - Complex(0.0, 0.5)) <= 1e-15);
}

TEST_CASE("inner is conjugate-linear in the first slot") {
  std::mt19937 rng(3);
  const auto a = random_state(5, rng);
  const auto b = random_state(5, rng);
  const Complex c{0.3, -1.2};
  CHECK(std::abs(inner(a.scaled(c), b) - std::conj(c) * inner(a, b)) <= 1e-14);
  CHECK(std::abs(inner(a, b) - std::conj(inner(b, a))) <= 1e-15);
}

TEST_CASE("apply, compose, adjoint, mat_power") {
  std::mt19937 rng(5);
  const auto x = random_state(7, rng);
  CHECK(max_abs_diff(apply(UnitaryOperator::identity(7), x), x) == 0.0);
  for (std::size_t n : {1u, 2u, 5u, 12u, 31u}) {
    CHECK(max_abs_diff(mat_power(shift_operator(n), static_cast<std::int64_t>(n)),
                       UnitaryOperator::identity(n)) <= 1e-10);
    const auto A = random_unitary(n, rng);
    CHECK(max_abs_diff(compose(A, adjoint(A)), UnitaryOperator::identity(n)) <= 1e-10);
    CHECK(unitarity_residual(A) <= 1e-10);
  }
  const auto A = random_unitary(6, rng);
  CHECK(max_abs_diff(mat_power(A, -3), adjoint(mat_power(A, 3))) <= 1e-12);
  CHECK(max_abs_diff(mat_power(A, 5), compose(mat_power(A, 2), mat_power(A, 3))) <= 1e-12);
  CHECK(max_abs_diff(mat_power(A, 0), UnitaryOperator::identity(6)) == 0.0);
}

TEST_CASE("dimension mismatches throw") {
  CHECK_THROWS_AS(inner(StateVector::basis(2, 0), StateVector::basis(3, 0)), DimensionMismatch);
  CHECK_THROWS_AS(apply(UnitaryOperator::identity(2), StateVector::basis(3, 0)), DimensionMismatch);
  CHECK_THROWS_AS(compose(UnitaryOperator::identity(2), UnitaryOperator::identity(3)), DimensionMismatch);
  CHECK_THROWS_AS(StateVector::basis(3, 3), IndexOutOfRange);
  CHECK_THROWS_AS(UnitaryOperator(2, std::vector<Complex>(3)), DimensionMismatch);
  CHECK_THROWS_AS(StateVector(std::vector<Complex>{{NAN, 0.0}}), std::invalid_argument);
}

TEST_CASE("phase exponents") {
  CHECK(PhaseExponent(2, 6) == PhaseExponent(1, 3));
  CHECK(PhaseExponent(-1, 6).numerator() == 5);
  CHECK(PhaseExponent(1, 2) + PhaseExponent(1, 3) == PhaseExponent(5, 6));
  CHECK(-PhaseExponent(1, 6) == PhaseExponent(5, 6));
  CHECK(PhaseExponent(1, 3).rescaled(15).numerator() == 5);
  CHECK_THROWS_AS(PhaseExponent(1, 3).rescaled(10), std::domain_error);
  CHECK(std::abs(PhaseExponent(1, 4).to_complex() - Complex(0.0, 1.0)) == 0.0);
  CHECK(root_of_unity(3, 6) == Complex(-1.0, 0.0));
}

TEST_CASE("monomial operators agree with dense arithmetic") {
  for (std::size_t n : {1u, 3u, 8u}) {
    const auto v = MonomialOperator::from_dense(shift_operator(n));
    const auto u = MonomialOperator::from_dense(clock_operator(n));
    REQUIRE(v);
    REQUIRE(u);
    CHECK(max_abs_diff(compose(*v, *u).to_dense(), compose(shift_operator(n), clock_operator(n))) <= 1e-15);
    const auto w = compose(*u, *v);
    CHECK(max_abs_diff(*v, *u) == doctest::Approx(max_abs_diff(shift_operator(n), clock_operator(n))));
    CHECK(max_abs_diff(w.to_dense(), compose(clock_operator(n), shift_operator(n))) <= 1e-15);
  }
  CHECK_FALSE(MonomialOperator::from_dense(dft_matrix(3)).has_value());
}

}  // TEST_SUITE
