#pragma once

#include <array>

#include <Eigen/Dense>

#include "svl/qstate.hpp"

namespace svl {

// Pauli matrix by zero-based index: 0 -> sigma_x, 1 -> sigma_y, 2 -> sigma_z.
Eigen::Matrix2cd pauli(int index);

// m(i,j,k) = Tr(rho sigma_i (x) sigma_j (x) sigma_k) with zero-based Pauli indices.
struct CorrelationTensor3 {
  std::array<double, 27> m{};

  double operator()(int i, int j, int k) const { return m[static_cast<std::size_t>(9 * i + 3 * j + k)]; }
  double& operator()(int i, int j, int k) { return m[static_cast<std::size_t>(9 * i + 3 * j + k)]; }

  // Trilinear form sum_ijk m_ijk u_i v_j w_k.
  double contract(const Eigen::Vector3d& u, const Eigen::Vector3d& v, const Eigen::Vector3d& w) const;
};

// t(i,j) = Tr(rho sigma_i (x) sigma_j).
struct CorrelationMatrix2 {
  Eigen::Matrix3d t = Eigen::Matrix3d::Zero();
};

using FlattenedTensor = Eigen::Matrix<double, 3, 9>;

CorrelationTensor3 correlation_tensor(const DensityMatrix& rho);
CorrelationMatrix2 correlation_matrix(const DensityMatrix& rho);

// Row j (the second party), column 3*i + k.
FlattenedTensor flatten_M(const CorrelationTensor3& t);

// Singular values of a 3x9 matrix in descending order, taken as square roots
// of the eigenvalues of the 3x3 Gram matrix M M^T.
Eigen::Vector3d singular_values(const FlattenedTensor& m);

// 4 * largest singular value of flatten_M(correlation_tensor(rho)).
double svetlichny_upper_bound(const DensityMatrix& rho);

// Largest |Tr(rho B_CHSH)| over all settings: 2 sqrt(mu_1 + mu_2), with mu the
// two largest eigenvalues of T^T T.
double chsh_max(const DensityMatrix& rho);

// Recomputes 4 lambda_1 for the three-qubit GHZ state and throws
// std::logic_error unless it equals 4 sqrt(2). Runs once per process before the
// first bound is evaluated.
void check_flattening_convention();

}  // namespace svl
