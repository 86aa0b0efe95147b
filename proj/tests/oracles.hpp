#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the optimiser or the correlation module.

#include <array>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "svl/qstate.hpp"

namespace svl::oracle {

using Tensor27 = std::array<double, 27>;  // index 9*i + 3*j + k

// m_ijk from the action of Pauli strings on basis vectors, no Kronecker products.
Tensor27 pauli_string_tensor(const Eigen::MatrixXcd& rho);

// Tr(rho P_i (x) P_j) for a two-qubit matrix, same technique.
Eigen::Matrix3d pauli_string_matrix(const Eigen::MatrixXcd& rho);

// Directions of the angle grid theta = j*pi/theta_steps (j = 0..theta_steps),
// phi = k*2pi/phi_steps (k < phi_steps), poles listed once.
std::vector<Eigen::Vector3d> grid_directions(int theta_steps, int phi_steps);

// Exact maximum of Tr(S rho) over every setting whose twelve angles lie on the
// grid. Enumerates all (b, b', c, c'); the inner maxima over a and a' separate
// and are taken over the grid in closed form.
double grid_max_svetlichny(const Tensor27& m, int theta_steps, int phi_steps);

// Same maximum by plain enumeration of all six directions. Small grids only.
double brute_grid_max_svetlichny(const Tensor27& m, int theta_steps, int phi_steps);

// Svetlichny value for explicit Cartesian settings via the trilinear form.
double svetlichny_from_tensor(const Tensor27& m, const std::array<Eigen::Vector3d, 6>& s);

// Tr(rho B_CHSH) with B = a.s (x) (b+b').s + a'.s (x) (b-b').s, built explicitly.
double chsh_value(const Eigen::MatrixXcd& rho, const Eigen::Vector3d& a, const Eigen::Vector3d& ap,
                  const Eigen::Vector3d& b, const Eigen::Vector3d& bp);

// Maximise w . z over the unit sphere by projected gradient ascent.
double projected_gradient_max(const std::vector<double>& w, int iterations = 2000, double step = 0.1);

Eigen::Vector3d random_unit_vector(std::mt19937_64& rng);
Eigen::MatrixXcd random_density(int num_qubits, std::mt19937_64& rng);
Eigen::VectorXcd random_pure(int num_qubits, std::mt19937_64& rng);
Eigen::Matrix2cd random_su2(std::mt19937_64& rng);

// (U (x) U (x) ... (x) U) rho (...)^dagger
Eigen::MatrixXcd rotate_all(const Eigen::MatrixXcd& rho, const Eigen::Matrix2cd& u, int num_qubits);

DensityMatrix as_density(int num_qubits, const Eigen::MatrixXcd& rho);

}  // namespace svl::oracle
