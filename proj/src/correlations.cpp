#include "svl/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "svl/errors.hpp"

namespace svl {

namespace {

// Tr(rho O) for Hermitian rho without forming the product.
Complex trace_product(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& op) {
  return (rho.array() * op.transpose().array()).sum();
}

}  // namespace

Eigen::Matrix2cd pauli(int index) {
  Eigen::Matrix2cd s;
  switch (index) {
    case 0: s << 0, 1, 1, 0; break;
    case 1: s << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 2: s << 1, 0, 0, -1; break;
    default: throw IndexError("Pauli index must be 0, 1 or 2");
  }
  return s;
}

double CorrelationTensor3::contract(const Eigen::Vector3d& u, const Eigen::Vector3d& v,
                                    const Eigen::Vector3d& w) const {
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    double inner = 0.0;
    for (int j = 0; j < 3; ++j) {
      const double* row = &m[static_cast<std::size_t>(9 * i + 3 * j)];
      inner += v[j] * (row[0] * w[0] + row[1] * w[1] + row[2] * w[2]);
    }
    total += u[i] * inner;
  }
  return total;
}

CorrelationTensor3 correlation_tensor(const DensityMatrix& rho) {
  if (rho.num_qubits() != 3) throw InvalidArity("correlation tensor needs a three-qubit state");
  CorrelationTensor3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Eigen::Matrix4cd ij = Eigen::kroneckerProduct(pauli(i), pauli(j));
      for (int k = 0; k < 3; ++k) {
        const Eigen::MatrixXcd op = Eigen::kroneckerProduct(ij, pauli(k));
        out(i, j, k) = trace_product(rho.entries(), op).real();
      }
    }
  }
  return out;
}

CorrelationMatrix2 correlation_matrix(const DensityMatrix& rho) {
  if (rho.num_qubits() != 2) throw InvalidArity("correlation matrix needs a two-qubit state");
  CorrelationMatrix2 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Eigen::MatrixXcd op = Eigen::kroneckerProduct(pauli(i), pauli(j));
      out.t(i, j) = trace_product(rho.entries(), op).real();
    }
  }
  return out;
}

FlattenedTensor flatten_M(const CorrelationTensor3& t) {
  FlattenedTensor out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out(j, 3 * i + k) = t(i, j, k);
  return out;
}

Eigen::Vector3d singular_values(const FlattenedTensor& m) {
  const Eigen::Matrix3d gram = m * m.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(gram, Eigen::EigenvaluesOnly);
  // Eigen returns ascending eigenvalues.
  Eigen::Vector3d ev = eig.eigenvalues();
  return {std::sqrt(std::max(ev[2], 0.0)), std::sqrt(std::max(ev[1], 0.0)), std::sqrt(std::max(ev[0], 0.0))};
}

void check_flattening_convention() {
  static std::once_flag once;
  std::call_once(once, [] {
    const double lambda1 = singular_values(flatten_M(correlation_tensor(to_density(make_gghz(3, std::numbers::pi / 4)))))[0];
    if (std::abs(4.0 * lambda1 - 4.0 * std::numbers::sqrt2) > 1e-12) {
      throw std::logic_error("flattening convention broken: 4*lambda_1(GHZ) != 4*sqrt(2)");
    }
  });
}

double svetlichny_upper_bound(const DensityMatrix& rho) {
  check_flattening_convention();
  return 4.0 * singular_values(flatten_M(correlation_tensor(rho)))[0];
}

double chsh_max(const DensityMatrix& rho) {
  const Eigen::Matrix3d t = correlation_matrix(rho).t;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(t.transpose() * t, Eigen::EigenvaluesOnly);
  const Eigen::Vector3d mu = eig.eigenvalues();
  return 2.0 * std::sqrt(std::max(mu[2] + mu[1], 0.0));
}

}  // namespace svl
