#pragma once

#include <array>
#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "svl/correlations.hpp"
#include "svl/qstate.hpp"

namespace svl {

// Unit vector (sin t cos p, sin t sin p, cos t).
struct BlochVector {
  double theta = 0.0;
  double phi = 0.0;

  Eigen::Vector3d cartesian() const;
  // Polar angle in [0, pi], azimuth in (-pi, pi]. The input need not be unit length.
  static BlochVector from_cartesian(const Eigen::Vector3d& v);
};

// Two measurement directions per party: (a, a') for the first qubit, (b, b')
// for the second and (c, c') for the third.
struct SvetlichnySettings {
  BlochVector a, a_p, b, b_p, c, c_p;

  std::array<double, 12> to_angles() const;
  static SvetlichnySettings from_angles(std::span<const double, 12> angles);
};

// b + b' = 2 cos(omega) d and b - b' = 2 sin(omega) d', with d . d' = 0.
struct BbDecomposition {
  BlochVector d;
  BlochVector d_p;
  double omega = 0.0;
};

using Matrix8cd = Eigen::Matrix<Complex, 8, 8>;

// v . sigma
Eigen::Matrix2cd observable(const BlochVector& v);

// A((B+B')C + (B-B')C') + A'((B-B')C - (B+B')C')
Matrix8cd svetlichny_operator(const SvetlichnySettings& s);

// Tr(S rho) through the explicit 8x8 operator.
double svetlichny_value(const DensityMatrix& rho, const SvetlichnySettings& s);

// Same quantity from the correlation tensor; used in the optimiser's inner loop.
double svetlichny_value(const CorrelationTensor3& m, const SvetlichnySettings& s);

// Tr(S rho) rebuilt from decompose_bb(b, b'):
// 2[cos w <ADC> + sin w <AD'C'> + sin w <A'D'C> - cos w <A'DC'>].
double svetlichny_value_omega_form(const DensityMatrix& rho, const SvetlichnySettings& s);

// When one of d, d' is left free (b = +-b'), it is x-hat orthogonalised
// against the fixed direction, or y-hat if x-hat is collinear with it.
BbDecomposition decompose_bb(const BlochVector& b, const BlochVector& b_p);

// max sum_i u_i x_i + v_i y_i subject to sum_i x_i^2 + y_i^2 = 1.
double lagrange_max(const std::array<double, 4>& u, const std::array<double, 4>& v);

struct OptimizerOptions {
  int restarts = 64;
  int max_iter = 2000;
  double tol = 1e-10;
  std::uint64_t seed = 42;
  int threads = 0;  // 0: hardware concurrency
};

struct MaximizeResult {
  double value = 0.0;
  SvetlichnySettings argmax;
  // Whether the restart that produced `value` met the simplex tolerance.
  bool converged = false;
  int best_restart = -1;
};

// Multi-start Nelder-Mead over the twelve polar/azimuthal angles. Restart r
// draws its starting point from a generator seeded by (seed, r), so the first
// k restarts are identical for every restart count >= k. The returned value is
// svetlichny_value(rho, argmax).
MaximizeResult maximize_svetlichny(const DensityMatrix& rho, const OptimizerOptions& opts = {});

}  // namespace svl
