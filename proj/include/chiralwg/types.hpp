#pragma once

#include <complex>

#include <Eigen/Dense>

namespace chiralwg {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Uniform grid of `points` values covering [start, stop]; a single point
/// collapses to `start`.
inline Vector linspaced(double start, double stop, int points) {
  if (points < 1) throw std::invalid_argument("linspaced: points must be >= 1");
  if (points == 1) return Vector::Constant(1, start);
  return Vector::LinSpaced(points, start, stop);
}

/// Logarithmic grid; both endpoints must be positive.
inline Vector logspaced(double start, double stop, int points) {
  if (start <= 0.0 || stop <= 0.0)
    throw std::invalid_argument("logspaced: endpoints must be positive");
  Vector g = linspaced(std::log(start), std::log(stop), points);
  return g.array().exp();
}

}  // namespace chiralwg
