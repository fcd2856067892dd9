#include "skq/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "skq/errors.hpp"

namespace skq {
namespace {

std::int64_t reduce(std::int64_t value, std::int64_t m) {
  const std::int64_t r = value % m;
  return r < 0 ? r + m : r;
}

std::vector<Complex> roots_table(std::size_t n) {
  std::vector<Complex> roots(n);
  for (std::size_t m = 0; m < n; ++m) {
    roots[m] = root_of_unity(static_cast<std::int64_t>(m),
                             static_cast<std::int64_t>(n));
  }
  return roots;
}

// max |a_ij − phase·b_ij|
double phased_diff(const UnitaryOperator& a, const UnitaryOperator& b,
                   Complex phase) {
  const auto ae = a.entries();
  const auto be = b.entries();
  double m = 0.0;
  for (std::size_t i = 0; i < ae.size(); ++i) {
    m = std::max(m, std::abs(ae[i] - phase * be[i]));
  }
  return m;
}

}  // namespace

UnitaryOperator shift_operator(std::size_t n) {
  std::vector<std::size_t> target(n);
  for (std::size_t j = 0; j < n; ++j) target[j] = (j + n - 1) % n;
  return UnitaryOperator::permutation(target);
}

UnitaryOperator clock_operator(std::size_t n) {
  return UnitaryOperator::diagonal(roots_table(n));
}

UnitaryOperator dft_matrix(std::size_t n) {
  const std::vector<Complex> roots = roots_table(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<Complex> e(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) e[k * n + j] = scale * roots[(k * j) % n];
  }
  return {n, std::move(e)};
}

KinematicsSpace::KinematicsSpace(std::size_t n, std::size_t dim_cap) : n_(n) {
  if (n == 0 || n > dim_cap) {
    throw DimensionCap("dimension " + std::to_string(n) +
                       " outside [1, " + std::to_string(dim_cap) + "]");
  }
  shift_ = shift_operator(n);
  clock_ = clock_operator(n);
  dft_ = dft_matrix(n);
}

StateVector KinematicsSpace::position_state(std::size_t j) const {
  return StateVector::basis(n_, j);
}

StateVector KinematicsSpace::momentum_state(std::size_t k) const {
  return dft_.column(k);
}

std::vector<StateVector> KinematicsSpace::position_basis() const {
  std::vector<StateVector> out;
  out.reserve(n_);
  for (std::size_t j = 0; j < n_; ++j) out.push_back(position_state(j));
  return out;
}

std::vector<StateVector> KinematicsSpace::momentum_basis() const {
  std::vector<StateVector> out;
  out.reserve(n_);
  for (std::size_t k = 0; k < n_; ++k) out.push_back(momentum_state(k));
  return out;
}

KinematicsSpace build_space(std::size_t n, std::size_t dim_cap) {
  return KinematicsSpace(n, dim_cap);
}

double weyl_residual(const KinematicsSpace& space, std::int64_t j,
                     std::int64_t k) {
  const auto n = static_cast<std::int64_t>(space.dim());
  j = reduce(j, n);
  k = reduce(k, n);
  const UnitaryOperator vj = mat_power(space.shift(), j);
  const UnitaryOperator uk = mat_power(space.clock(), k);
  return phased_diff(compose(vj, uk), compose(uk, vj), root_of_unity(j * k, n));
}

double weyl_max_residual(const KinematicsSpace& space) {
  const auto n = static_cast<std::int64_t>(space.dim());
  const auto v = MonomialOperator::from_dense(space.shift());
  const auto u = MonomialOperator::from_dense(space.clock());
  double worst = 0.0;
  if (v && u) {
    MonomialOperator vj = MonomialOperator::identity(space.dim());
    for (std::int64_t j = 0; j < n; ++j) {
      MonomialOperator uk = MonomialOperator::identity(space.dim());
      for (std::int64_t k = 0; k < n; ++k) {
        worst = std::max(worst, max_abs_diff(compose(vj, uk),
                                             scaled(compose(uk, vj),
                                                    root_of_unity(j * k, n))));
        uk = compose(uk, *u);
      }
      vj = compose(vj, *v);
    }
    return worst;
  }
  UnitaryOperator vj = UnitaryOperator::identity(space.dim());
  for (std::int64_t j = 0; j < n; ++j) {
    UnitaryOperator uk = UnitaryOperator::identity(space.dim());
    for (std::int64_t k = 0; k < n; ++k) {
      worst = std::max(worst, phased_diff(compose(vj, uk), compose(uk, vj),
                                          root_of_unity(j * k, n)));
      uk = compose(uk, space.clock());
    }
    vj = compose(vj, space.shift());
  }
  return worst;
}

EigenMeasurement measure_eigenphase(const StateVector& x,
                                    const StateVector& image,
                                    std::int64_t modulus, double tol) {
  if (x.dim() != image.dim()) {
    throw DimensionMismatch("measure_eigenphase: dimension mismatch");
  }
  if (x.dim() == 0) throw std::invalid_argument("measure_eigenphase: empty");
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < x.dim(); ++i) {
    if (std::abs(x[i]) > std::abs(x[pivot])) pivot = i;
  }
  if (x[pivot] == Complex{}) {
    throw std::domain_error("measure_eigenphase: zero vector");
  }
  EigenMeasurement m;
  m.eigenvalue = image[pivot] / x[pivot];
  for (std::size_t i = 0; i < x.dim(); ++i) {
    m.residual = std::max(m.residual, std::abs(image[i] - m.eigenvalue * x[i]));
  }
  const double turns = std::arg(m.eigenvalue) / (2.0 * std::numbers::pi);
  const PhaseExponent candidate(
      static_cast<std::int64_t>(std::llround(turns * static_cast<double>(modulus))),
      modulus);
  if (std::abs(candidate.to_complex() - m.eigenvalue) <= tol) {
    m.exponent = candidate;
  }
  return m;
}

EigenMeasurement measure_eigenphase(const UnitaryOperator& op,
                                    const StateVector& x, std::int64_t modulus,
                                    double tol) {
  return measure_eigenphase(x, apply(op, x), modulus, tol);
}

namespace {

std::vector<PhaseExponent> spectrum_on(const UnitaryOperator& op,
                                       const std::vector<StateVector>& basis,
                                       std::int64_t n) {
  std::vector<PhaseExponent> out;
  out.reserve(basis.size());
  for (const StateVector& x : basis) {
    const EigenMeasurement m = measure_eigenphase(op, x, n);
    if (!m.is_eigenvector() || !m.exponent) {
      throw std::runtime_error("basis state is not an eigenvector");
    }
    out.push_back(*m.exponent);
  }
  std::sort(out.begin(), out.end(),
            [](const PhaseExponent& a, const PhaseExponent& b) {
              return a.numerator() < b.numerator();
            });
  return out;
}

}  // namespace

std::vector<PhaseExponent> shift_spectrum(const KinematicsSpace& space) {
  return spectrum_on(space.shift(), space.momentum_basis(),
                     static_cast<std::int64_t>(space.dim()));
}

std::vector<PhaseExponent> clock_spectrum(const KinematicsSpace& space) {
  return spectrum_on(space.clock(), space.position_basis(),
                     static_cast<std::int64_t>(space.dim()));
}

}  // namespace skq
